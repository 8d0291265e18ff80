#pragma once

#include <cstdint>

#include "entsec/states.hpp"

namespace entsec {

/// Symmetric two-qubit state a|00> + b(|01>+|10>) + c|11>, normalized so
/// |a|^2 + 2|b|^2 + |c|^2 = 2.
struct SymState {
    cxd a, b, c;

    double sym_norm2() const; // |a|^2 + 2|b|^2 + |c|^2
    bool is_normalized(double tol = 1e-10) const;
    SymState normalized() const;
    /// The corresponding two-qubit state (a, b, b, c), l2-normalized.
    PureState to_two_qubit() const;
};

/// The 2x2 symmetric matrix (a b; b c) attached to a SymState; Hilbert-
/// Schmidt norm sqrt(2) under the state normalization above.
using MMat = Eigen::Matrix2cd;

enum class SymStratum : std::uint8_t { Product, Max, Intermediate };

struct StratumReport {
    SymStratum stratum;
    double sigma_min;
    double unitarity_defect; // || M M* - I ||_F
};

/// Point of RP^2: unit vector in R^3 identified with its negation.
struct RP2Point {
    Eigen::Vector3d v;
    bool same_as(const RP2Point& o, double tol = 1e-10) const;
};

struct SymGeoOptions {
    double singular_rel_tol = 1e-9; // sigma_min < tol * sigma_max => singular
    double max_defect_tol = 1e-8;   // Frobenius unitarity defect for Max
    double s_cap_max_flow = 1e3;    // flow_to_max rejects singular M past this
    double s_cap_product_flow = 50; // flow_to_product rejects Max past this
};

MMat to_m(const SymState& s);
SymState from_m(const MMat& M);

StratumReport stratum(const MMat& M, const SymGeoOptions& opt = {});

/// Retraction flow toward the maximally-entangled locus:
/// Z_s f_s(M M*) M with f_s(x) = (1+s sqrt(x))/(1+s x), HS norm restored.
MMat flow_to_max(const MMat& M, double s, const SymGeoOptions& opt = {});

/// Retraction flow toward the product quadric:
/// Z'_s g_s(M M*) M with g_s(x) = exp(s x), largest eigenvalue factored out
/// before exponentiating.
MMat flow_to_product(const MMat& M, double s, const SymGeoOptions& opt = {});

RP2Point max_to_rp2(const MMat& M, const SymGeoOptions& opt = {});
MMat rp2_to_max(const RP2Point& p);

} // namespace entsec
