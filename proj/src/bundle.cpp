#include "entsec/bundle.hpp"

#include <cmath>

namespace entsec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 2.0 * kPi;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

} // namespace

Mesh make_mesh_s2(int n) {
    if (n < 2) throw input_error("make_mesh_s2: need at least 2 latitude bands");
    const int m = 2 * n;
    const int nvert = 2 + (n - 1) * m;
    Mesh mesh;
    mesh.base = BaseSpace::S2;
    mesh.resolution = n;
    mesh.params.resize(nvert, 2);
    mesh.points.resize(nvert, 3);
    mesh.grid = {n, m, 0, 0};

    auto set_vertex = [&](int v, double theta, double phi) {
        mesh.params.row(v) << theta, phi;
        mesh.points.row(v) << std::sin(theta) * std::cos(phi),
            std::sin(theta) * std::sin(phi), std::cos(theta);
    };
    set_vertex(0, 0.0, 0.0);
    auto vid = [&](int j, int i) { return 1 + (j - 1) * m + (i % m); };
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < m; ++i) set_vertex(vid(j, i), j * kPi / n, i * kTwoPi / m);
    const int south = nvert - 1;
    set_vertex(south, kPi, 0.0);

    const double dphi = kTwoPi / m;
    auto band = [&](int j) { return std::cos(j * kPi / n) - std::cos((j + 1) * kPi / n); };
    for (int i = 0; i < m; ++i) {
        mesh.cells.push_back({0, vid(1, i), vid(1, i + 1)});
        mesh.cell_volume.conservativeResize(mesh.cells.size());
        mesh.cell_volume(mesh.cells.size() - 1) = band(0) * dphi;
    }
    for (int j = 1; j + 1 < n; ++j)
        for (int i = 0; i < m; ++i) {
            mesh.cells.push_back({vid(j, i), vid(j + 1, i), vid(j + 1, i + 1), vid(j, i + 1)});
            mesh.cell_volume.conservativeResize(mesh.cells.size());
            mesh.cell_volume(mesh.cells.size() - 1) = band(j) * dphi;
        }
    for (int i = 0; i < m; ++i) {
        mesh.cells.push_back({south, vid(n - 1, i + 1), vid(n - 1, i)});
        mesh.cell_volume.conservativeResize(mesh.cells.size());
        mesh.cell_volume(mesh.cells.size() - 1) = band(n - 1) * dphi;
    }
    return mesh;
}

namespace {

Eigen::Vector4d hopf_point(double eta, double t1, double t2) {
    return {std::cos(eta) * std::cos(t1), std::cos(eta) * std::sin(t1),
            std::sin(eta) * std::cos(t2), std::sin(eta) * std::sin(t2)};
}

} // namespace

Mesh make_mesh_s3(int n) {
    if (n < 2) throw input_error("make_mesh_s3: resolution must be >= 2");
    Mesh mesh;
    mesh.base = BaseSpace::S3;
    mesh.resolution = n;
    mesh.grid = {n, n, n, 0};
    const int nvert = (n + 1) * n * n;
    mesh.params.resize(nvert, 3);
    mesh.points.resize(nvert, 4);
    const double deta = 0.5 * kPi / n, dth = kTwoPi / n;
    auto vid = [&](int l, int j, int k) { return (l * n + (j % n)) * n + (k % n); };
    for (int l = 0; l <= n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                int v = vid(l, j, k);
                double eta = l * deta, t1 = j * dth, t2 = k * dth;
                mesh.params.row(v) << eta, t1, t2;
                mesh.points.row(v) = hopf_point(eta, t1, t2).transpose();
            }
    mesh.cell_volume.resize(n * n * n);
    int c = 0;
    for (int l = 0; l < n; ++l) {
        double sl = std::sin(l * deta), sh = std::sin((l + 1) * deta);
        double band = 0.5 * (sh * sh - sl * sl);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                mesh.cells.push_back({vid(l, j, k), vid(l, j + 1, k), vid(l, j + 1, k + 1),
                                      vid(l, j, k + 1), vid(l + 1, j, k), vid(l + 1, j + 1, k),
                                      vid(l + 1, j + 1, k + 1), vid(l + 1, j, k + 1)});
                mesh.cell_volume(c++) = band * dth * dth;
            }
    }
    return mesh;
}

Mesh make_mesh_s4(int n_phi, int n_s3) {
    if (n_phi < 3 || n_s3 < 3) throw input_error("make_mesh_s4: resolution too low");
    const int nh = std::max(2, n_s3 / 2);
    const int per_level = nh * n_s3 * n_s3;
    const int nvert = 2 + (n_phi - 1) * per_level;
    Mesh mesh;
    mesh.base = BaseSpace::S4;
    mesh.resolution = n_phi;
    mesh.grid = {n_phi, nh, n_s3, n_s3};
    mesh.params.resize(nvert, 4);
    mesh.points.resize(nvert, 5);

    const double deta = 0.5 * kPi / nh, dth = kTwoPi / n_s3;
    auto s3_index = [&](int a, int j, int k) {
        return (a * n_s3 + (j % n_s3)) * n_s3 + (k % n_s3);
    };
    auto vid = [&](int lvl, int s3) { return 1 + (lvl - 1) * per_level + s3; };

    mesh.params.row(0) << 0.0, 0.0, 0.0, 0.0;
    mesh.points.row(0) << 1, 0, 0, 0, 0;
    for (int lvl = 1; lvl < n_phi; ++lvl) {
        double phi = lvl * kPi / n_phi;
        for (int a = 0; a < nh; ++a)
            for (int j = 0; j < n_s3; ++j)
                for (int k = 0; k < n_s3; ++k) {
                    // cell-centered eta avoids duplicated points on the Hopf axes
                    double eta = (a + 0.5) * deta, t1 = j * dth, t2 = k * dth;
                    int v = vid(lvl, s3_index(a, j, k));
                    mesh.params.row(v) << phi, eta, t1, t2;
                    Eigen::Vector4d u = hopf_point(eta, t1, t2);
                    mesh.points(v, 0) = std::cos(phi);
                    mesh.points.row(v).tail(4) = std::sin(phi) * u.transpose();
                }
    }
    const int south = nvert - 1;
    mesh.params.row(south) << kPi, 0.0, 0.0, 0.0;
    mesh.points.row(south) << -1, 0, 0, 0, 0;

    // volume bookkeeping: phi bands times S3 patches around each sample
    auto band_vol = [&](double p0, double p1) {
        auto F = [](double p) { return -std::cos(p) + std::pow(std::cos(p), 3) / 3.0; };
        return F(p1) - F(p0);
    };
    auto s3_patch = [&](int a) {
        double e0 = a * deta, e1 = (a + 1) * deta;
        return 0.5 * (std::sin(e1) * std::sin(e1) - std::sin(e0) * std::sin(e0)) * dth * dth;
    };
    std::vector<double> vols;
    const double dphi_half = 0.5 * kPi / n_phi;
    for (int lvl = 1; lvl < n_phi; ++lvl) {
        double phi = lvl * kPi / n_phi;
        double p0 = (lvl == 1) ? 0.0 : phi - dphi_half;
        double p1 = (lvl == n_phi - 1) ? kPi : phi + dphi_half;
        double bv = band_vol(p0, p1);
        for (int a = 0; a < nh; ++a)
            for (int j = 0; j < n_s3; ++j)
                for (int k = 0; k < n_s3; ++k) {
                    mesh.cells.push_back({vid(lvl, s3_index(a, j, k))});
                    vols.push_back(bv * s3_patch(a));
                }
    }
    mesh.cell_volume = Eigen::Map<Eigen::VectorXd>(vols.data(), vols.size());
    return mesh;
}

Mesh make_mesh_t4(int n) {
    if (n < 3) throw input_error("make_mesh_t4: resolution must be >= 3");
    Mesh mesh;
    mesh.base = BaseSpace::T4;
    mesh.resolution = n;
    mesh.grid = {n, n, n, n};
    const int nvert = n * n * n * n;
    mesh.params.resize(nvert, 4);
    mesh.points.resize(nvert, 4);
    const double d = kTwoPi / n;
    auto vid = [&](int a, int b, int c, int e) {
        return ((((a % n) * n + (b % n)) * n + (c % n)) * n + (e % n));
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    int v = vid(a, b, c, e);
                    mesh.params.row(v) << a * d, b * d, c * d, e * d;
                    mesh.points.row(v) = mesh.params.row(v);
                }
    mesh.cell_volume = Eigen::VectorXd::Constant(nvert, d * d * d * d);
    mesh.cells.reserve(nvert);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    std::vector<int> corners;
                    for (int da = 0; da < 2; ++da)
                        for (int db = 0; db < 2; ++db)
                            for (int dc = 0; dc < 2; ++dc)
                                for (int de = 0; de < 2; ++de)
                                    corners.push_back(vid(a + da, b + db, c + dc, e + de));
                    mesh.cells.push_back(std::move(corners));
                }
    return mesh;
}

Eigen::Matrix2cd hopf_clutching(const Eigen::Vector4d& q) {
    if (std::abs(q.norm() - 1.0) > 1e-12)
        throw input_error("hopf_clutching: quaternion is not unit");
    Eigen::Matrix2cd m;
    m << cxd(q(0), q(1)), cxd(q(2), q(3)), cxd(-q(2), q(3)), cxd(q(0), -q(1));
    return m;
}

Eigen::Vector4d quat_mul(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
    return {p(0) * q(0) - p(1) * q(1) - p(2) * q(2) - p(3) * q(3),
            p(0) * q(1) + p(1) * q(0) + p(2) * q(3) - p(3) * q(2),
            p(0) * q(2) - p(1) * q(3) + p(2) * q(0) + p(3) * q(1),
            p(0) * q(3) + p(1) * q(2) - p(2) * q(1) + p(3) * q(0)};
}

Eigen::Matrix3cd sym2_restrict(const Eigen::Matrix2cd& c) {
    static const Eigen::Matrix<cxd, 4, 3> P = [] {
        Eigen::Matrix<cxd, 4, 3> p = Eigen::Matrix<cxd, 4, 3>::Zero();
        const double is2 = 1.0 / std::sqrt(2.0);
        p(0, 0) = 1.0;
        p(1, 1) = is2;
        p(2, 1) = is2;
        p(3, 2) = 1.0;
        return p;
    }();
    Eigen::Matrix4cd cc;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            cc.block<2, 2>(2 * i, 2 * j) = c(i, j) * c;
    return P.adjoint() * cc * P;
}

ChartedBundle trivial_bundle(BaseSpace base, int fiber_dim) {
    return {base, fiber_dim, [fiber_dim](const Eigen::VectorXd&) {
                return Eigen::MatrixXcd::Identity(fiber_dim, fiber_dim);
            }};
}

ChartedBundle line_bundle_s2(int c1) {
    return {BaseSpace::S2, 1, [c1](const Eigen::VectorXd& x) {
                double az = std::atan2(x(1), x(0));
                Eigen::MatrixXcd m(1, 1);
                m(0, 0) = std::exp(cxd(0.0, c1 * az));
                return m;
            }};
}

ChartedBundle hopf_bundle_s4() {
    return {BaseSpace::S4, 2, [](const Eigen::VectorXd& x) {
                Eigen::Vector4d u = x.tail(4);
                double n = u.norm();
                if (n < 1e-12)
                    throw input_error("hopf_bundle_s4: transition evaluated at a pole");
                return Eigen::MatrixXcd(hopf_clutching(u / n));
            }};
}

ChartedBundle conj_bundle(const ChartedBundle& b) {
    auto t = b.transition;
    return {b.base, b.fiber_dim,
            [t](const Eigen::VectorXd& x) { return Eigen::MatrixXcd(t(x).conjugate()); }};
}

ChartedBundle tensor_bundle(const ChartedBundle& b1, const ChartedBundle& b2) {
    if (b1.base != b2.base) throw input_error("tensor_bundle: base spaces differ");
    auto t1 = b1.transition, t2 = b2.transition;
    return {b1.base, b1.fiber_dim * b2.fiber_dim,
            [t1, t2](const Eigen::VectorXd& x) { return kron(t1(x), t2(x)); }};
}

ChartedBundle sym2_bundle(const ChartedBundle& b) {
    if (b.fiber_dim != 2) throw input_error("sym2_bundle: fiber dimension must be 2");
    auto t = b.transition;
    return {b.base, 3, [t](const Eigen::VectorXd& x) {
                return Eigen::MatrixXcd(sym2_restrict(t(x)));
            }};
}

ChartedBundle lambda2_bundle(const ChartedBundle& b) {
    if (b.fiber_dim != 2) throw input_error("lambda2_bundle: fiber dimension must be 2");
    auto t = b.transition;
    return {b.base, 1, [t](const Eigen::VectorXd& x) {
                Eigen::MatrixXcd m(1, 1);
                m(0, 0) = t(x).determinant();
                return m;
            }};
}

DegreeResult clutching_degree(const std::function<Eigen::Matrix2cd(const Eigen::Vector4d&)>& c,
                              const Mesh& mesh) {
    if (mesh.base != BaseSpace::S3)
        throw input_error("clutching_degree: mesh must discretize S3");
    const int n0 = mesh.grid[0], n1 = mesh.grid[1], n2 = mesh.grid[2];
    const double d0 = 0.5 * kPi / n0, d1 = kTwoPi / n1, d2 = kTwoPi / n2;
    const double h0 = 0.5 * d0, h1 = 0.5 * d1, h2 = 0.5 * d2;

    auto at = [&](double eta, double t1, double t2) { return c(hopf_point(eta, t1, t2)); };

    double total = 0.0;
    for (int i = 0; i < n0; ++i) {
        double eta = (i + 0.5) * d0;
        for (int j = 0; j < n1; ++j) {
            double t1 = (j + 0.5) * d1;
            for (int k = 0; k < n2; ++k) {
                double t2 = (k + 0.5) * d2;
                Eigen::Matrix2cd c0inv = at(eta, t1, t2).adjoint();
                Eigen::Matrix2cd A0 = c0inv * (at(eta + h0, t1, t2) - at(eta - h0, t1, t2)) / (2 * h0);
                Eigen::Matrix2cd A1 = c0inv * (at(eta, t1 + h1, t2) - at(eta, t1 - h1, t2)) / (2 * h1);
                Eigen::Matrix2cd A2 = c0inv * (at(eta, t1, t2 + h2) - at(eta, t1, t2 - h2)) / (2 * h2);
                double form = 3.0 * (A0 * (A1 * A2 - A2 * A1)).trace().real();
                total += form * d0 * d1 * d2;
            }
        }
    }
    // orientation fixed so the identity map on unit quaternions has degree +1
    double raw = total / (24.0 * kPi * kPi);
    DegreeResult r;
    r.degree = static_cast<int>(std::lround(raw));
    r.residual = std::abs(raw - r.degree);
    if (r.residual > 0.2)
        throw resolution_error("clutching_degree: residual " + std::to_string(r.residual) +
                               " exceeds 0.2; refine the mesh");
    return r;
}

int winding_c1(const std::function<cxd(double)>& t, int n_samples) {
    if (n_samples < 64) throw input_error("winding_c1: need at least 64 samples");
    double total = 0.0;
    cxd prev = t(0.0);
    for (int i = 1; i <= n_samples; ++i) {
        cxd cur = t(kTwoPi * i / n_samples);
        if (std::abs(prev) < 1e-300 || std::abs(cur) < 1e-300)
            throw input_error("winding_c1: map vanishes");
        double inc = std::arg(cur / prev);
        if (std::abs(inc) > 0.9 * kPi)
            throw resolution_error("winding_c1: phase increment near pi, aliasing");
        total += inc;
        prev = cur;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

int chern1_berry(const Mesh& s2, const Eigen::MatrixXcd& values) {
    if (s2.base != BaseSpace::S2) throw input_error("chern1_berry: mesh must discretize S2");
    if (values.rows() != s2.n_vertices())
        throw input_error("chern1_berry: one fiber value per vertex required");
    for (int v = 0; v < values.rows(); ++v)
        if (values.row(v).norm() < 1e-12)
            throw input_error("chern1_berry: vanishing section value at vertex " +
                              std::to_string(v));
    double total = 0.0;
    for (const auto& cell : s2.cells) {
        cxd prod = 1.0;
        for (size_t e = 0; e < cell.size(); ++e) {
            int a = cell[e], b = cell[(e + 1) % cell.size()];
            cxd link = (values.row(a).conjugate().array() * values.row(b).array()).sum();
            if (std::abs(link) < 1e-12)
                throw resolution_error("chern1_berry: orthogonal neighbors, mesh too coarse");
            prod *= link / std::abs(link);
        }
        double ph = std::arg(prod);
        if (std::abs(ph) > 0.95 * kPi)
            throw resolution_error("chern1_berry: plaquette phase near pi");
        total += ph;
    }
    // orientation fixed so the spinor section of the c1=1 bundle gives +1
    double raw = total / kTwoPi;
    int c = static_cast<int>(std::lround(raw));
    if (std::abs(raw - c) > 0.01)
        throw consistency_error("chern1_berry: non-integer curvature sum " + std::to_string(raw));
    return c;
}

namespace {

double collapse_bump(double t) {
    // C^2 smoothstep, constant 0 / 1 outside [0,1]
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

constexpr double kCollapseSupport = 0.9 * kPi;

} // namespace

double collapse_polar_angle(const Eigen::Vector4d& angles) {
    Eigen::Vector4d d;
    for (int i = 0; i < 4; ++i) {
        double x = std::fmod(angles(i), kTwoPi);
        if (x < 0) x += kTwoPi;
        d(i) = x - kPi;
    }
    return kPi * collapse_bump(d.norm() / kCollapseSupport);
}

Eigen::Matrix<double, 5, 1> collapse_t4_to_s4(const Eigen::Vector4d& angles) {
    Eigen::Vector4d d;
    for (int i = 0; i < 4; ++i) {
        double x = std::fmod(angles(i), kTwoPi);
        if (x < 0) x += kTwoPi;
        d(i) = x - kPi;
    }
    double r = d.norm();
    double phi = kPi * collapse_bump(r / kCollapseSupport);
    Eigen::Vector4d u = r > 1e-15 ? Eigen::Vector4d(d / r) : Eigen::Vector4d(1, 0, 0, 0);
    Eigen::Matrix<double, 5, 1> x;
    x(0) = std::cos(phi);
    x.tail(4) = std::sin(phi) * u;
    return x;
}

double collapse_equator_radius() {
    // smoothstep crosses 1/2 at its midpoint
    return 0.5 * kCollapseSupport;
}

ChartedBundle pullback_t4(const ChartedBundle& s4_bundle) {
    if (s4_bundle.base != BaseSpace::S4)
        throw input_error("pullback_t4: input must be an S4 bundle");
    auto t = s4_bundle.transition;
    return {BaseSpace::T4, s4_bundle.fiber_dim, [t](const Eigen::VectorXd& angles) {
                Eigen::Matrix<double, 5, 1> x = collapse_t4_to_s4(angles.head(4));
                return t(Eigen::VectorXd(x));
            }};
}

double polar_angle(const Mesh& mesh, int v) {
    switch (mesh.base) {
        case BaseSpace::S2:
        case BaseSpace::S4:
            return mesh.params(v, 0);
        case BaseSpace::T4:
            return collapse_polar_angle(mesh.params.row(v).transpose());
        default:
            throw input_error("polar_angle: base has no polar decomposition");
    }
}

Eigen::VectorXd transition_point(const Mesh& mesh, int v) {
    return mesh.points.row(v).transpose();
}

double seam_check(const SectionField& s) {
    if (!s.mesh) throw input_error("seam_check: section has no mesh");
    double worst = 0.0;
    for (int v = 0; v < s.mesh->n_vertices(); ++v) {
        if (!s.in_north[v] || !s.in_south[v]) continue;
        Eigen::MatrixXcd T = s.bundle.transition(transition_point(*s.mesh, v));
        double err = (s.north.row(v).transpose() - T * s.south.row(v).transpose()).norm();
        worst = std::max(worst, err);
    }
    return worst;
}

} // namespace entsec
