#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entsec/bundle.hpp"
#include "entsec/secopt.hpp"
#include "entsec/slocc.hpp"
#include "entsec/symgeo.hpp"
#include "entsec/tqft.hpp"

namespace py = pybind11;
using namespace entsec;

namespace {

PureState make_state(const std::vector<int>& dims, const Eigen::VectorXcd& amps) {
    return {dims, amps};
}

py::dict report_dict(const OptReport& rep) {
    py::dict d;
    d["experiment"] = rep.experiment;
    d["best_objective"] = rep.best_objective;
    d["bookkeeping_objective"] = rep.bookkeeping_objective;
    d["search_objective"] = rep.search_objective;
    d["profile_min"] = rep.profile_min;
    d["profile_max"] = rep.profile_max;
    d["witness_vertex"] = rep.witness_vertex;
    d["seam_error"] = rep.seam_error;
    d["best_restart"] = rep.best_restart;
    d["restart_objectives"] = rep.restart_objectives;
    d["restart_converged"] = rep.restart_converged;
    d["restart_seeds"] = rep.restart_seeds;
    d["trace"] = rep.trace;
    return d;
}

OptConfig config_from(int resolution, int anchors, int restarts, int iterations,
                      std::uint64_t seed, const std::string& measure, int threads) {
    OptConfig cfg;
    cfg.resolution = resolution;
    cfg.anchors = anchors;
    cfg.restarts = restarts;
    cfg.max_iterations = iterations;
    cfg.seed = seed;
    cfg.threads = threads;
    if (measure == "entropy")
        cfg.measure = EntMeasure::Entropy;
    else if (measure == "concurrence")
        cfg.measure = EntMeasure::ConcurrenceLike;
    else
        throw input_error("measure must be 'concurrence' or 'entropy'");
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entanglement-of-sections laboratory (C++ core)";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<consistency_error>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception<resolution_error>(m, "ResolutionError", PyExc_RuntimeError);

    py::class_<PureState>(m, "PureState")
        .def(py::init(&make_state), py::arg("dims"), py::arg("amps"))
        .def_readonly("dims", &PureState::dims)
        .def_readonly("amps", &PureState::amps)
        .def("norm", &PureState::norm)
        .def("normalized", &PureState::normalized);

    m.def("make_ghz", &make_ghz);
    m.def("make_w", &make_w);
    m.def("make_bell", &make_bell);

    m.def(
        "partial_trace",
        [](const PureState& psi, const std::set<int>& keep) {
            return partial_trace(psi, keep).m;
        },
        py::arg("psi"), py::arg("keep"));
    m.def(
        "entropy",
        [](const Eigen::MatrixXcd& rho) { return entropy(DensityMatrix(rho)); },
        py::arg("rho"));
    m.def(
        "schmidt_coefficients",
        [](const PureState& psi, const std::set<int>& left, const std::set<int>& right) {
            return schmidt(psi, left, right).coeffs;
        },
        py::arg("psi"), py::arg("left"), py::arg("right"));
    m.def("schmidt_rank", &schmidt_rank, py::arg("psi"), py::arg("left"), py::arg("right"),
          py::arg("rel_threshold") = 1e-9);
    m.def("two_qubit_concurrence_like", &two_qubit_concurrence_like, py::arg("psi"));

    m.def(
        "classify3",
        [](const PureState& psi) {
            Classification full = classify3_full(psi);
            py::dict d;
            d["class"] = to_string(full.cls);
            d["ranks"] = full.ranks;
            d["discriminant"] = full.discriminant_abs;
            return d;
        },
        py::arg("psi"));
    m.def("random_slocc_orbit", &random_slocc_orbit, py::arg("psi"), py::arg("seed"));

    m.def(
        "stratum",
        [](const Eigen::Matrix2cd& M) {
            StratumReport r = stratum(M);
            const char* name = r.stratum == SymStratum::Product ? "product"
                               : r.stratum == SymStratum::Max   ? "max"
                                                                : "intermediate";
            return py::make_tuple(name, r.sigma_min, r.unitarity_defect);
        },
        py::arg("M"));
    m.def(
        "flow_to_max",
        [](const Eigen::Matrix2cd& M, double s) { return flow_to_max(M, s); },
        py::arg("M"), py::arg("s"));
    m.def(
        "flow_to_product",
        [](const Eigen::Matrix2cd& M, double s) { return flow_to_product(M, s); },
        py::arg("M"), py::arg("s"));

    m.def("hopf_clutching", &hopf_clutching, py::arg("q"));
    m.def(
        "clutching_degree",
        [](const std::string& map, int resolution) {
            std::function<Eigen::Matrix2cd(const Eigen::Vector4d&)> c;
            if (map == "constant")
                c = [](const Eigen::Vector4d&) { return Eigen::Matrix2cd::Identity().eval(); };
            else if (map == "hopf")
                c = [](const Eigen::Vector4d& q) { return Eigen::Matrix2cd(hopf_clutching(q)); };
            else if (map == "hopf-squared")
                c = [](const Eigen::Vector4d& q) {
                    return Eigen::Matrix2cd(hopf_clutching(quat_mul(q, q)));
                };
            else
                throw input_error("clutching_degree: unknown map '" + map + "'");
            DegreeResult d = clutching_degree(c, make_mesh_s3(resolution));
            return py::make_tuple(d.degree, d.residual);
        },
        py::arg("map"), py::arg("resolution") = 24);

    m.def(
        "borromean",
        [](double delta) {
            TqftParams p = TqftParams::from_delta(delta);
            SimpleQuadratic q = simple_quadratic(p);
            py::dict d;
            d["state"] = borromean_state(p).amps;
            d["rho_bc"] = rho_bc(p);
            d["quadratic"] = py::make_tuple(q.a, q.b, q.c);
            d["discriminant"] = q.discriminant;
            d["class"] = to_string(classify_borromean(p));
            return d;
        },
        py::arg("delta"));

    m.def(
        "experiment",
        [](const std::string& name, int resolution, int anchors, int restarts, int iterations,
           std::uint64_t seed, const std::string& measure, int threads) {
            return report_dict(experiment(
                name, config_from(resolution, anchors, restarts, iterations, seed, measure,
                                  threads)));
        },
        py::arg("name"), py::arg("resolution") = 4, py::arg("anchors") = 4,
        py::arg("restarts") = 20, py::arg("iterations") = 5000, py::arg("seed") = 0,
        py::arg("measure") = "concurrence", py::arg("threads") = 0);

    m.def(
        "fiber_entanglement",
        [](const Eigen::VectorXcd& v, const std::string& measure) {
            return fiber_entanglement(v, measure == "entropy" ? EntMeasure::Entropy
                                                              : EntMeasure::ConcurrenceLike);
        },
        py::arg("v"), py::arg("measure") = "concurrence");
}
