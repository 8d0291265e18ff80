#include "entsec/tqft.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace entsec {

TqftParams TqftParams::from_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw input_error("TqftParams: delta must lie in (0,1)");
    return TqftParams{delta, std::nullopt};
}

TqftParams TqftParams::from_preset(const std::string& name) {
    if (name == "semion") {
        // d = (1,1), D = sqrt(2)
        return TqftParams{1.0 / std::sqrt(2.0), name};
    }
    if (name == "fibonacci") {
        // d = (1, phi), D^2 = 1 + phi^2 = 2 + phi
        double phi = 0.5 * (1.0 + std::sqrt(5.0));
        return TqftParams{1.0 / std::sqrt(2.0 + phi), name};
    }
    throw input_error("TqftParams: unknown preset '" + name + "'");
}

std::array<double, 8> filling_table(const TqftParams& p) {
    double d = p.delta;
    // index bits (a,b,c), 0 = meridian, 1 = longitude
    // 0 longitudes: S^3; 1: S^1 x S^2; 2: S^1 x S^2 # S^1 x S^2; 3: T^3
    return {d, 1.0, 1.0, d, 1.0, d, d, 2.0};
}

PureState borromean_state(const TqftParams& p) {
    auto t = filling_table(p);
    Eigen::VectorXcd amps(8);
    for (int i = 0; i < 8; ++i) amps(i) = t[i];
    return PureState({2, 2, 2}, amps);
}

Eigen::Matrix2d gram_matrix(const TqftParams& p) {
    Eigen::Matrix2d g;
    g << 1.0, p.delta, p.delta, 1.0;
    return g;
}

Eigen::Matrix4d rho_bc(const TqftParams& p) {
    // coordinate-wise contraction over the A index, independent of the
    // generic partial_trace path
    auto t = filling_table(p);
    Eigen::Matrix4d rho;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            rho(m, n) = t[m] * t[n] + t[4 + m] * t[4 + n];
    return rho;
}

Eigen::Matrix4d rho_bc_closed_form(double delta) {
    double d = delta, d2 = delta * delta;
    Eigen::Matrix4d rho;
    rho << d2 + 1, 2 * d, 2 * d, d2 + 2,
           2 * d, d2 + 1, d2 + 1, 3 * d,
           2 * d, d2 + 1, d2 + 1, 3 * d,
           d2 + 2, 3 * d, 3 * d, d2 + 4;
    return rho;
}

std::array<Eigen::Vector4d, 2> range_span(const TqftParams& p) {
    double d = p.delta;
    std::array<Eigen::Vector4d, 2> span = {Eigen::Vector4d(d, 1, 1, d),
                                           Eigen::Vector4d(1, d, d, 2)};
    // verify both lie in range(rho_BC)
    Eigen::Matrix4d rho = rho_bc(p);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
    Eigen::Matrix<double, 4, 2> top = es.eigenvectors().rightCols<2>();
    for (const auto& v : span) {
        double residual = (v - top * (top.transpose() * v)).norm() / v.norm();
        if (residual > 1e-10)
            throw consistency_error("range_span: spanning vector leaves range(rho_BC), residual " +
                                    std::to_string(residual));
    }
    return span;
}

SimpleQuadratic simple_quadratic(const TqftParams& p) {
    double d = p.delta, d2 = p.delta * p.delta;
    SimpleQuadratic q;
    q.a = 1.0 - d2;
    q.b = d;
    q.c = d2 - 2.0;
    q.discriminant = d2 - 4.0 * (1.0 - d2) * (d2 - 2.0);
    return q;
}

SloccClass classify_borromean(const TqftParams& p) {
    // quadratic route: a double root would need discriminant zero, which the
    // double-root locus 4a^2 - 11a + 8 = 0 (a = delta^2) forbids for real delta
    SimpleQuadratic q = simple_quadratic(p);
    SloccClass from_quadratic =
        std::abs(q.discriminant) > 1e-12 ? SloccClass::GHZ : SloccClass::W;

    SloccClass generic = classify3(borromean_state(p));
    if (generic != from_quadratic)
        throw consistency_error("classify_borromean: quadratic route (" +
                                to_string(from_quadratic) + ") disagrees with classify3 (" +
                                to_string(generic) + ") at delta=" + std::to_string(p.delta));
    return generic;
}

} // namespace entsec
