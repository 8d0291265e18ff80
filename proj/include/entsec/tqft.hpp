#pragma once

#include <array>
#include <optional>
#include <string>

#include "entsec/slocc.hpp"
#include "entsec/states.hpp"

namespace entsec {

/// A rank-2 theory is pinned down here by delta = Z(S^3) = 1/D alone.
struct TqftParams {
    double delta;
    std::optional<std::string> preset;

    static TqftParams from_delta(double delta);
    /// "semion" (d = (1,1)) or "fibonacci" (d = (1,phi)).
    static TqftParams from_preset(const std::string& name);
};

/// The 8 partition-function values of the meridian/longitude fillings,
/// indexed by the (a,b,c) filling pattern with 0 = meridian, 1 = longitude.
std::array<double, 8> filling_table(const TqftParams& p);

/// The Borromean-complement state with those values as coordinates,
/// dims (2,2,2).
PureState borromean_state(const TqftParams& p);

/// Gram matrix [[1, delta], [delta, 1]] of the non-orthonormal torus basis.
Eigen::Matrix2d gram_matrix(const TqftParams& p);

/// rho_BC by coordinate-wise contraction over the A index; matches the
/// closed-form 4x4 table in delta.
Eigen::Matrix4d rho_bc(const TqftParams& p);

/// The same matrix from its closed-form entries, for cross-checking.
Eigen::Matrix4d rho_bc_closed_form(double delta);

/// The two spanning vectors (delta,1,1,delta) and (1,delta,delta,2) of
/// range(rho_BC).
std::array<Eigen::Vector4d, 2> range_span(const TqftParams& p);

struct SimpleQuadratic {
    double a, b, c;     // (1-delta^2) p^2 + delta p + (delta^2 - 2)
    double discriminant; // delta^2 - 4(1-delta^2)(delta^2-2)
};
SimpleQuadratic simple_quadratic(const TqftParams& p);

/// Always GHZ; internally cross-checks the quadratic route against the
/// generic classifier and throws consistency_error on disagreement.
SloccClass classify_borromean(const TqftParams& p);

} // namespace entsec
