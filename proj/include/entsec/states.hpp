#pragma once

#include <complex>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entsec/errors.hpp"

namespace entsec {

using cxd = std::complex<double>;

/// A pure state on a tensor product of finite-dimensional factors.
/// Amplitudes are stored with the first factor as the slowest-varying index.
struct PureState {
    std::vector<int> dims;
    Eigen::VectorXcd amps;

    PureState() = default;
    PureState(std::vector<int> dims_, Eigen::VectorXcd amps_);

    int factor_count() const { return static_cast<int>(dims.size()); }
    long total_dim() const;
    double norm() const { return amps.norm(); }
    bool is_normalized(double tol = 1e-12) const;
    PureState normalized() const;

    /// Flat index from one index per factor.
    long flat_index(const std::vector<int>& idx) const;
};

/// Hermitian positive-semidefinite matrix, trace carried in the entries.
struct DensityMatrix {
    Eigen::MatrixXcd m;

    DensityMatrix() = default;
    explicit DensityMatrix(Eigen::MatrixXcd m_);

    int dim() const { return static_cast<int>(m.rows()); }
    double trace() const { return m.trace().real(); }
    /// Eigenvalues, ascending. Throws consistency_error when an eigenvalue
    /// is below -1e-10.
    Eigen::VectorXd eigenvalues() const;
    /// Numerical rank: singular values above rel_threshold * largest.
    int rank(double rel_threshold = 1e-9) const;
};

struct SchmidtData {
    Eigen::VectorXd coeffs;      // nonincreasing, nonnegative
    Eigen::MatrixXcd left_basis; // orthonormal columns
    Eigen::MatrixXcd right_basis;

    /// || sum_k coeffs[k] |u_k>|v_k> ||, as a flat vector in (left x right)
    /// ordering with left slowest.
    Eigen::VectorXcd reconstruct() const;
};

/// Reduced density matrix over the kept factors; coordinate-wise contraction
/// over the traced indices.
DensityMatrix partial_trace(const PureState& psi, const std::set<int>& keep);

/// Schmidt decomposition across a bipartition of the tensor factors. The
/// bipartition need not be contiguous; coefficients come back sorted
/// nonincreasing.
SchmidtData schmidt(const PureState& psi, const std::set<int>& left,
                    const std::set<int>& right);

int schmidt_rank(const PureState& psi, const std::set<int>& left,
                 const std::set<int>& right, double rel_threshold = 1e-9);

/// Von Neumann entropy, natural log. The input is trace-normalized
/// internally; eigenvalues below 1e-12 contribute zero.
double entropy(const DensityMatrix& rho);

/// E = 2*l1*l2 from the Schmidt coefficients of the normalized two-qubit
/// state. 0 iff product, 1 iff the coefficients are equal.
double two_qubit_concurrence_like(const PureState& psi);

PureState read_state(std::istream& in);
PureState read_state_file(const std::string& path);
void write_state(const PureState& psi, std::ostream& out);
void write_state_file(const PureState& psi, const std::string& path);

/// Convenience kets used throughout the tests and CLI.
PureState make_ghz();
PureState make_w();
PureState make_bell();

} // namespace entsec
