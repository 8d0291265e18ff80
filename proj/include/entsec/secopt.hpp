#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "entsec/bundle.hpp"

namespace entsec {

enum class EntMeasure : std::uint8_t { ConcurrenceLike, Entropy };

/// Pointwise entanglement of a fiber vector. Dimension 4 is read as a
/// two-qubit state; dimension 3 is embedded into C^2 (x) C^2 through the
/// orthonormal symmetric basis first.
double fiber_entanglement(const Eigen::VectorXcd& v, EntMeasure m = EntMeasure::ConcurrenceLike);

Eigen::VectorXd entanglement_profile(const SectionField& s,
                                     EntMeasure m = EntMeasure::ConcurrenceLike);

enum class SectionObjective : std::uint8_t { MinMaxEntanglement, MaxMinEntanglement };

/// Smooth finite-dimensional family of nonvanishing sections. Fiber values
/// come from low-order polynomial expansions in the embedding coordinates
/// plus smooth anchor-bump residual corrections, one expansion per chart,
/// blended through the transition map and renormalized to unit fiber norm.
/// The varying part of each expansion is softly capped below its constant
/// term, so expansions stay bounded away from zero over the whole base (not
/// just at mesh vertices) and the family has a genuine smoothness scale.
/// Decoded sections pass seam_check by construction and never vanish.
class SectionDecoder {
public:
    SectionDecoder(ChartedBundle bundle, const Mesh& mesh, int n_anchors = 8);

    int n_params() const { return n_params_; }
    const Mesh& mesh() const { return *mesh_; }
    const ChartedBundle& bundle() const { return bundle_; }

    SectionField decode(const Eigen::VectorXd& params) const;
    /// Per-vertex fiber values in the home chart only (fast path for the
    /// optimizer loop).
    void decode_values(const Eigen::VectorXd& params, Eigen::MatrixXcd& out) const;

    // per-vertex data shared with the optimizer (read-only)
    int fiber_dim() const { return k_; }
    int n_features() const { return n_basis_ + n_anchors_; }
    const Eigen::MatrixXcd& features() const { return gmat_; }
    /// Upper bound on the norm of the non-constant feature vector at any base
    /// point; used to cap the varying part of each chart expansion.
    double feature_bound() const { return feature_bound_; }
    double blend(int v) const { return weight_(v); }
    bool home_north(int v) const { return home_north_[v] != 0; }
    const Eigen::MatrixXcd& transition_at(int v) const { return trans_[v]; }

private:
    ChartedBundle bundle_;
    const Mesh* mesh_;
    int k_, n_anchors_, n_basis_, n_params_;
    double feature_bound_;
    Eigen::MatrixXcd gmat_;              // n_vertices x (n_basis + n_anchors)
    Eigen::VectorXd weight_;             // chart blend weight per vertex
    std::vector<std::uint8_t> home_north_, in_north_, in_south_;
    std::vector<Eigen::MatrixXcd> trans_; // cached transition per blended vertex
};

struct OptConfig {
    int resolution = 4;
    int anchors = 4; // residual-bump count per chart expansion
    int restarts = 20;
    int max_iterations = 5000;
    std::uint64_t seed = 0;
    EntMeasure measure = EntMeasure::ConcurrenceLike;
    int threads = 0; // 0 = hardware concurrency
    int trace_stride = 10;
};

struct OptReport {
    std::string experiment;
    double best_objective = 0.0;        // re-evaluated on the evaluation grid
    double bookkeeping_objective = 0.0; // optimizer-side value for the same section
    double search_objective = 0.0;      // best restart's value on the search grid
    double profile_min = 0.0, profile_max = 0.0;
    int witness_vertex = -1;
    double seam_error = 0.0;
    int best_restart = -1;
    std::vector<double> restart_objectives;
    std::vector<std::uint8_t> restart_converged;
    std::vector<std::uint64_t> restart_seeds;
    std::vector<double> trace; // objective trace of the best restart
    Eigen::VectorXd best_params; // decoder coefficients of the best section
    SectionField best_section;
    std::shared_ptr<const Mesh> mesh_storage; // set when the report owns its mesh
};

OptReport optimize_section(const ChartedBundle& bundle, const Mesh& mesh,
                           SectionObjective objective, const OptConfig& cfg);

/// Named experiments:
///   example1_line, example2_tensor, example2p_sym2, example2p_singlet,
///   t4_pullback_control
OptReport experiment(const std::string& name, const OptConfig& cfg = {});

} // namespace entsec
