#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "entsec/states.hpp"

namespace entsec {

/// The six three-qubit SLOCC classes.
enum class SloccClass : std::uint8_t {
    ProductABC,
    BiSep_A_BC,
    BiSep_B_CA,
    BiSep_C_AB,
    W,
    GHZ,
};

std::string to_string(SloccClass c);

/// Partial order of the class diagram: GHZ and W dominate the biseparable
/// classes, which dominate the fully product class. GHZ and W are
/// incomparable, as are the three biseparable classes among themselves.
bool slocc_geq(SloccClass hi, SloccClass lo);

enum class SimpleVectorKind : std::uint8_t {
    TwoDistinct,
    DoubleRoot,
    IdenticallyDegenerate,
};

/// det(x*M1 + y*M2) = a x^2 + b xy + c y^2 for the reshaped pencil, plus the
/// discriminant classification.
struct SimpleVectorCount {
    SimpleVectorKind kind;
    cxd a, b, c;
    cxd discriminant; // b^2 - 4ac
};

struct GhzNormalForm {
    // psi = |a1>|b1>|c1> + |a2>|b2>|c2>
    std::array<Eigen::Vector2cd, 2> a, b, c;
    Eigen::VectorXcd reconstruct() const; // flat (2,2,2) amplitudes
};

struct SloccOptions {
    double rank_threshold = 1e-9;       // relative singular-value cutoff
    double discriminant_tol = 1e-8;     // |disc| <= tol * scale^2 => double root
    double independence_tol = 1e-10;    // sin^2 of the angle between v1, v2
};

/// Classify the pencil x*v1 + y*v2 in C^2 (x) C^2 by its simple (tensor-rank
/// one) members. Reshape convention: row = B index, column = C index.
SimpleVectorCount simple_vector_count(const Eigen::Vector4cd& v1,
                                      const Eigen::Vector4cd& v2,
                                      const SloccOptions& opt = {});

/// Three-qubit SLOCC classification from local ranks and, in the all-rank-2
/// case, the simple-vector count in range(rho_BC).
SloccClass classify3(const PureState& psi, const SloccOptions& opt = {});

/// Full classification output for serialization: class, the three local
/// ranks, and the pencil discriminant when it was computed (NaN otherwise).
struct Classification {
    SloccClass cls;
    std::array<int, 3> ranks;
    double discriminant_abs;
};
Classification classify3_full(const PureState& psi, const SloccOptions& opt = {});

/// Two-term normal form of a GHZ-class state via the biorthogonal
/// construction; term order is not canonical.
GhzNormalForm ghz_normal_form(const PureState& psi, const SloccOptions& opt = {});

/// Apply a random invertible M1 (x) M2 (x) M3, condition numbers capped at 20.
PureState random_slocc_orbit(const PureState& psi, std::uint64_t seed);

/// Random invertible 2x2 with condition number capped at `cond_cap`.
Eigen::Matrix2cd random_invertible2(std::uint64_t seed, double cond_cap = 20.0);

} // namespace entsec
