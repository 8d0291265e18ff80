#include "entsec/symgeo.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace entsec {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Eigen::Vector2d singular_values(const MMat& M) {
    Eigen::JacobiSVD<MMat> svd(M);
    return svd.singularValues();
}

MMat restore_hs_norm(const MMat& M) {
    double n = M.norm();
    if (n == 0.0) throw input_error("symgeo: zero matrix");
    return M * (kSqrt2 / n);
}

} // namespace

double SymState::sym_norm2() const {
    return std::norm(a) + 2.0 * std::norm(b) + std::norm(c);
}

bool SymState::is_normalized(double tol) const {
    return std::abs(sym_norm2() - 2.0) <= tol;
}

SymState SymState::normalized() const {
    double n = std::sqrt(sym_norm2());
    if (n == 0.0) throw input_error("SymState: zero state");
    double z = kSqrt2 / n;
    return {a * z, b * z, c * z};
}

PureState SymState::to_two_qubit() const {
    Eigen::VectorXcd amps(4);
    amps << a, b, b, c;
    return PureState({2, 2}, amps).normalized();
}

MMat to_m(const SymState& s) {
    MMat M;
    M << s.a, s.b, s.b, s.c;
    return M;
}

SymState from_m(const MMat& M) {
    double scale = M.cwiseAbs().maxCoeff();
    if (std::abs(M(0, 1) - M(1, 0)) > 1e-10 * std::max(scale, 1.0))
        throw input_error("from_m: matrix is not symmetric");
    return {M(0, 0), 0.5 * (M(0, 1) + M(1, 0)), M(1, 1)};
}

StratumReport stratum(const MMat& M, const SymGeoOptions& opt) {
    StratumReport r;
    Eigen::Vector2d sv = singular_values(M);
    r.sigma_min = sv(1);
    r.unitarity_defect = (M * M.adjoint() - MMat::Identity()).norm();
    if (sv(1) < opt.singular_rel_tol * sv(0))
        r.stratum = SymStratum::Product;
    else if (r.unitarity_defect < opt.max_defect_tol)
        r.stratum = SymStratum::Max;
    else
        r.stratum = SymStratum::Intermediate;
    return r;
}

namespace {

MMat max_flow_step(const MMat& M, double s) {
    Eigen::SelfAdjointEigenSolver<MMat> es(M * M.adjoint());
    Eigen::Vector2d lam = es.eigenvalues().cwiseMax(0.0);
    Eigen::Vector2d f;
    for (int i = 0; i < 2; ++i)
        f(i) = (1.0 + s * std::sqrt(lam(i))) / (1.0 + s * lam(i));
    MMat F = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
    return restore_hs_norm(F * M);
}

} // namespace

MMat flow_to_max(const MMat& M, double s, const SymGeoOptions& opt) {
    if (s < 0.0) throw input_error("flow_to_max: s must be nonnegative");
    Eigen::Vector2d sv = singular_values(M);
    if (s > opt.s_cap_max_flow && sv(1) < opt.singular_rel_tol * sv(0))
        throw input_error("flow_to_max: singular M is outside the retraction domain");
    if (s == 0.0) return restore_hs_norm(M);
    if (s <= opt.s_cap_max_flow) return max_flow_step(M, s);

    // Large s stands for the retraction endpoint. A single application of the
    // rational map stalls at a defect of (1 - sigma)/(1 + s sigma^2), which
    // for small sigma_min never reaches the advertised accuracy no matter how
    // big s is; a short geometric schedule squeezes the defect down at every
    // stage instead.
    MMat out = max_flow_step(M, 32.0);
    out = max_flow_step(out, opt.s_cap_max_flow);
    return max_flow_step(out, s);
}

MMat flow_to_product(const MMat& M, double s, const SymGeoOptions& opt) {
    if (s < 0.0) throw input_error("flow_to_product: s must be nonnegative");
    Eigen::Vector2d sv = singular_values(M);
    if (s > opt.s_cap_product_flow && sv(0) - sv(1) < opt.singular_rel_tol * sv(0))
        throw input_error("flow_to_product: equal singular values, flow undefined on Max");
    if (s == 0.0) return restore_hs_norm(M);

    Eigen::SelfAdjointEigenSolver<MMat> es(M * M.adjoint());
    Eigen::Vector2d lam = es.eigenvalues().cwiseMax(0.0);
    // factor out exp(s*lam_max); absorbed by the norm restoration
    double lmax = lam.maxCoeff();
    Eigen::Vector2d g;
    for (int i = 0; i < 2; ++i) g(i) = std::exp(s * (lam(i) - lmax));
    MMat G = es.eigenvectors() * g.asDiagonal() * es.eigenvectors().adjoint();
    return restore_hs_norm(G * M);
}

bool RP2Point::same_as(const RP2Point& o, double tol) const {
    return (v - o.v).norm() <= tol || (v + o.v).norm() <= tol;
}

RP2Point max_to_rp2(const MMat& M, const SymGeoOptions& opt) {
    StratumReport r = stratum(M, opt);
    if (r.stratum != SymStratum::Max)
        throw input_error("max_to_rp2: matrix is not in Max (unitarity defect " +
                          std::to_string(r.unitarity_defect) + ")");
    cxd det = M.determinant();
    MMat Mn = M / std::sqrt(det); // principal branch; residual sign is the RP2 identification
    cxd a = Mn(0, 0);
    cxd b = 0.5 * (Mn(0, 1) + Mn(1, 0));
    RP2Point p{Eigen::Vector3d(a.real(), a.imag(), b.imag())};
    double n = p.v.norm();
    if (std::abs(n - 1.0) > 1e-6)
        throw consistency_error("max_to_rp2: normal form has non-unit coordinates");
    p.v /= n;
    return p;
}

MMat rp2_to_max(const RP2Point& p) {
    if (std::abs(p.v.norm() - 1.0) > 1e-12)
        throw input_error("rp2_to_max: point is not on the unit sphere");
    cxd a(p.v(0), p.v(1));
    cxd b(0.0, p.v(2));
    MMat M;
    M << a, b, b, std::conj(a);
    return restore_hs_norm(M);
}

} // namespace entsec
