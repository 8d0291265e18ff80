#include "entsec/slocc.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace entsec {

std::string to_string(SloccClass c) {
    switch (c) {
        case SloccClass::ProductABC: return "A-B-C";
        case SloccClass::BiSep_A_BC: return "A-BC";
        case SloccClass::BiSep_B_CA: return "B-CA";
        case SloccClass::BiSep_C_AB: return "C-AB";
        case SloccClass::W: return "W";
        case SloccClass::GHZ: return "GHZ";
    }
    return "?";
}

namespace {

int tier(SloccClass c) {
    switch (c) {
        case SloccClass::ProductABC: return 0;
        case SloccClass::BiSep_A_BC:
        case SloccClass::BiSep_B_CA:
        case SloccClass::BiSep_C_AB: return 1;
        default: return 2;
    }
}

} // namespace

bool slocc_geq(SloccClass hi, SloccClass lo) {
    if (hi == lo) return true;
    return tier(hi) > tier(lo);
}

namespace {

Eigen::Matrix2cd reshape_bc(const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd M;
    // row = B index, column = C index
    M << v(0), v(1), v(2), v(3);
    return M;
}

} // namespace

SimpleVectorCount simple_vector_count(const Eigen::Vector4cd& v1,
                                      const Eigen::Vector4cd& v2,
                                      const SloccOptions& opt) {
    double n1 = v1.squaredNorm(), n2 = v2.squaredNorm();
    if (n1 == 0.0 || n2 == 0.0)
        throw input_error("simple_vector_count: zero input vector");
    double overlap = std::norm(v1.dot(v2)) / (n1 * n2);
    if (1.0 - overlap < opt.independence_tol)
        throw input_error("simple_vector_count: inputs are linearly dependent");

    Eigen::Matrix2cd M1 = reshape_bc(v1), M2 = reshape_bc(v2);
    SimpleVectorCount out;
    out.a = M1.determinant();
    out.c = M2.determinant();
    out.b = (M1 + M2).determinant() - out.a - out.c;
    out.discriminant = out.b * out.b - 4.0 * out.a * out.c;

    double scale = std::max({std::abs(out.a), std::abs(out.b), std::abs(out.c)});
    if (scale <= opt.discriminant_tol * std::max(n1, n2)) {
        out.kind = SimpleVectorKind::IdenticallyDegenerate;
    } else if (std::abs(out.discriminant) <= opt.discriminant_tol * scale * scale) {
        out.kind = SimpleVectorKind::DoubleRoot;
    } else {
        out.kind = SimpleVectorKind::TwoDistinct;
    }
    return out;
}

namespace {

struct RankData {
    std::array<int, 3> ranks;
    int rank1_count;
    int rank1_index; // first factor with rank 1, or -1
};

RankData local_ranks(const PureState& psi, const SloccOptions& opt) {
    RankData rd{};
    rd.ranks = {schmidt_rank(psi, {0}, {1, 2}, opt.rank_threshold),
                schmidt_rank(psi, {1}, {2, 0}, opt.rank_threshold),
                schmidt_rank(psi, {2}, {0, 1}, opt.rank_threshold)};
    rd.rank1_count = 0;
    rd.rank1_index = -1;
    for (int i = 0; i < 3; ++i) {
        if (rd.ranks[i] == 1) {
            ++rd.rank1_count;
            if (rd.rank1_index < 0) rd.rank1_index = i;
        }
    }
    return rd;
}

// Orthogonal basis of range(rho_BC): the top-2 eigenvectors.
std::pair<Eigen::Vector4cd, Eigen::Vector4cd> range_basis_bc(const PureState& psi) {
    DensityMatrix rho = partial_trace(psi, {1, 2});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.m);
    // eigenvalues ascending; take the top two
    Eigen::Vector4cd e1 = es.eigenvectors().col(3);
    Eigen::Vector4cd e2 = es.eigenvectors().col(2);
    return {e1, e2};
}

} // namespace

Classification classify3_full(const PureState& psi, const SloccOptions& opt) {
    if (psi.dims != std::vector<int>{2, 2, 2})
        throw input_error("classify3: dims must be (2,2,2)");
    Classification out;
    out.discriminant_abs = std::numeric_limits<double>::quiet_NaN();
    RankData rd = local_ranks(psi, opt);
    out.ranks = rd.ranks;

    if (rd.rank1_count >= 2) {
        // With two local ranks equal to 1 the third is forced; classify as
        // fully product at tolerance.
        out.cls = SloccClass::ProductABC;
        return out;
    }
    if (rd.rank1_count == 1) {
        switch (rd.rank1_index) {
            case 0: out.cls = SloccClass::BiSep_A_BC; return out;
            case 1: out.cls = SloccClass::BiSep_B_CA; return out;
            default: out.cls = SloccClass::BiSep_C_AB; return out;
        }
    }

    auto [e1, e2] = range_basis_bc(psi);
    SimpleVectorCount svc = simple_vector_count(e1, e2, opt);
    out.discriminant_abs = std::abs(svc.discriminant);
    switch (svc.kind) {
        case SimpleVectorKind::TwoDistinct: out.cls = SloccClass::GHZ; return out;
        case SimpleVectorKind::DoubleRoot: out.cls = SloccClass::W; return out;
        default:
            throw consistency_error(
                "classify3: identically degenerate pencil with all local ranks 2; "
                "tolerance failure");
    }
}

SloccClass classify3(const PureState& psi, const SloccOptions& opt) {
    return classify3_full(psi, opt).cls;
}

Eigen::VectorXcd GhzNormalForm::reconstruct() const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
    for (int t = 0; t < 2; ++t)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    out(4 * i + 2 * j + k) += a[t](i) * b[t](j) * c[t](k);
    return out;
}

namespace {

// Roots of a x^2 + b xy + c y^2 as projective pairs (x:y), assuming two
// distinct roots.
std::array<Eigen::Vector2cd, 2> pencil_roots(cxd a, cxd b, cxd c) {
    cxd disc = b * b - 4.0 * a * c;
    cxd sq = std::sqrt(disc);
    // pick the sign that avoids cancellation in b + sq
    if (std::abs(b + sq) < std::abs(b - sq)) sq = -sq;
    cxd q = -0.5 * (b + sq);
    std::array<Eigen::Vector2cd, 2> roots;
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (std::max(std::abs(a), std::abs(c)) <= 1e-15 * scale) {
        // pure cross term b xy: the roots are the coordinate axes
        roots[0] << 1.0, 0.0;
        roots[1] << 0.0, 1.0;
        return roots;
    }
    if (std::abs(c) >= std::abs(a)) {
        // t = y/x: a + b t + c t^2 = 0 -> t1 = q/c, t2 = a/q
        roots[0] << 1.0, q / c;
        roots[1] << 1.0, a / q;
    } else {
        // s = x/y: c + b s + a s^2 = 0 -> s1 = q/a, s2 = c/q
        roots[0] << q / a, 1.0;
        roots[1] << c / q, 1.0;
    }
    return roots;
}

} // namespace

GhzNormalForm ghz_normal_form(const PureState& psi, const SloccOptions& opt) {
    if (classify3(psi, opt) != SloccClass::GHZ)
        throw input_error("ghz_normal_form: state is not GHZ-class");

    auto [e1, e2] = range_basis_bc(psi);
    SimpleVectorCount svc = simple_vector_count(e1, e2, opt);
    auto roots = pencil_roots(svc.a, svc.b, svc.c);

    GhzNormalForm nf;
    Eigen::Matrix<cxd, 4, 2> S;
    for (int t = 0; t < 2; ++t) {
        Eigen::Vector4cd s = roots[t](0) * e1 + roots[t](1) * e2;
        Eigen::Matrix2cd Ms = reshape_bc(s);
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(Ms, Eigen::ComputeFullU | Eigen::ComputeFullV);
        nf.b[t] = svd.matrixU().col(0);
        nf.c[t] = svd.matrixV().col(0).conjugate();
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                S(2 * j + k, t) = nf.b[t](j) * nf.c[t](k);
    }

    // psi_{alpha,m} = sum_t a_t(alpha) s_t(m); solve for the a_t.
    Eigen::Matrix<cxd, 4, 2> PsiT;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int m = 0; m < 4; ++m)
            PsiT(m, alpha) = psi.amps(4 * alpha + m);
    Eigen::Matrix2cd A = S.colPivHouseholderQr().solve(PsiT);
    nf.a[0] = A.row(0).transpose();
    nf.a[1] = A.row(1).transpose();
    return nf;
}

namespace {

Eigen::Matrix2cd random_invertible2_impl(std::mt19937_64& rng, double cond_cap) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::Matrix2cd M;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M(i, j) = cxd(nd(rng), nd(rng));
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector2d sv = svd.singularValues();
    if (sv(0) == 0.0) sv(0) = 1.0;
    sv(1) = std::max(sv(1), sv(0) / cond_cap);
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
}

} // namespace

Eigen::Matrix2cd random_invertible2(std::uint64_t seed, double cond_cap) {
    std::mt19937_64 rng(seed);
    return random_invertible2_impl(rng, cond_cap);
}

PureState random_slocc_orbit(const PureState& psi, std::uint64_t seed) {
    if (psi.dims != std::vector<int>{2, 2, 2})
        throw input_error("random_slocc_orbit: dims must be (2,2,2)");
    std::mt19937_64 rng(seed);
    Eigen::Matrix2cd M1 = random_invertible2_impl(rng, 20.0);
    Eigen::Matrix2cd M2 = random_invertible2_impl(rng, 20.0);
    Eigen::Matrix2cd M3 = random_invertible2_impl(rng, 20.0);

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                cxd acc = 0.0;
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q)
                        for (int r = 0; r < 2; ++r)
                            acc += M1(i, p) * M2(j, q) * M3(k, r) * psi.amps(4 * p + 2 * q + r);
                out(4 * i + 2 * j + k) = acc;
            }
    return PureState({2, 2, 2}, out);
}

} // namespace entsec
