#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entsec/bundle.hpp"
#include "entsec/secopt.hpp"
#include "entsec/slocc.hpp"
#include "entsec/symgeo.hpp"
#include "entsec/tqft.hpp"

// keys in sorted order so identical runs produce byte-identical output
using json = nlohmann::json;
using namespace entsec;

namespace {

/// Write to `path` atomically (temp file + rename), or to stdout when empty.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw input_error("cannot open " + tmp + " for writing");
        f << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw input_error("cannot rename " + tmp + " to " + path);
}

cxd parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw input_error("cannot parse complex number '" + s + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw input_error("cannot parse complex number '" + s + "'");
    }
    return {re, im};
}

json classification_json(const Classification& full) {
    json out;
    out["class"] = to_string(full.cls);
    out["ranks"] = full.ranks;
    if (std::isnan(full.discriminant_abs))
        out["discriminant"] = nullptr;
    else
        out["discriminant"] = full.discriminant_abs;
    return out;
}

int run_classify(const std::string& state_path, const std::string& out_path) {
    PureState psi = read_state_file(state_path);
    emit(classification_json(classify3_full(psi)).dump(2) + "\n", out_path);
    return 0;
}

int run_entropy(const std::string& state_path, std::vector<int> keep,
                const std::string& out_path) {
    PureState psi = read_state_file(state_path);
    std::set<int> left(keep.begin(), keep.end());
    std::set<int> right;
    for (int i = 0; i < psi.factor_count(); ++i)
        if (!left.count(i)) right.insert(i);
    SchmidtData sd = schmidt(psi.normalized(), left, right);
    json out;
    out["entropy"] = entropy(partial_trace(psi.normalized(), left));
    out["keep"] = keep;
    out["schmidt_coefficients"] = std::vector<double>(sd.coeffs.data(),
                                                      sd.coeffs.data() + sd.coeffs.size());
    out["schmidt_rank"] = schmidt_rank(psi, left, right);
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_symflow(const std::string& a, const std::string& b, const std::string& c,
                const std::string& flow, double s_max, int steps,
                const std::string& out_path) {
    SymState s0{parse_complex(a), parse_complex(b), parse_complex(c)};
    MMat M = to_m(s0.normalized());
    bool to_max = flow == "max";
    if (s_max <= 0.0) s_max = to_max ? 1e6 : 200.0;

    std::ostringstream csv;
    csv << "s,a_re,a_im,b_re,b_im,c_re,c_im,sigma_min,unitarity_defect,E\n";
    auto row = [&](double s) {
        MMat Ms = to_max ? flow_to_max(M, s) : flow_to_product(M, s);
        SymState st = from_m(Ms);
        StratumReport r = stratum(Ms);
        double E = two_qubit_concurrence_like(st.to_two_qubit());
        char line[512];
        std::snprintf(line, sizeof line,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s,
                      st.a.real(), st.a.imag(), st.b.real(), st.b.imag(), st.c.real(),
                      st.c.imag(), r.sigma_min, r.unitarity_defect, E);
        csv << line;
    };
    row(0.0);
    // geometric ladder from 1e-2 up to s_max
    for (int i = 1; i <= steps; ++i)
        row(1e-2 * std::pow(s_max / 1e-2, static_cast<double>(i) / steps));
    emit(csv.str(), out_path);
    return 0;
}

int run_chern(const std::string& map, int resolution, const std::string& out_path) {
    std::function<Eigen::Matrix2cd(const Eigen::Vector4d&)> c;
    if (map == "constant") {
        c = [](const Eigen::Vector4d&) { return Eigen::Matrix2cd::Identity().eval(); };
    } else if (map == "hopf") {
        c = [](const Eigen::Vector4d& q) { return Eigen::Matrix2cd(hopf_clutching(q)); };
    } else if (map == "hopf-squared") {
        c = [](const Eigen::Vector4d& q) {
            return Eigen::Matrix2cd(hopf_clutching(quat_mul(q, q)));
        };
    } else {
        throw input_error("chern: unknown map '" + map + "'");
    }
    DegreeResult d = clutching_degree(c, make_mesh_s3(resolution));
    json out;
    out["degree"] = d.degree;
    out["map"] = map;
    out["residual"] = d.residual;
    out["resolution"] = resolution;
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_optimize(const std::string& name, const OptConfig& cfg, const std::string& out_path) {
    OptReport rep = experiment(name, cfg);
    json out;
    out["best_objective"] = rep.best_objective;
    out["best_restart"] = rep.best_restart;
    out["bookkeeping_objective"] = rep.bookkeeping_objective;
    out["experiment"] = rep.experiment;
    out["iterations"] = cfg.max_iterations;
    out["profile_max"] = rep.profile_max;
    out["profile_min"] = rep.profile_min;
    out["resolution"] = cfg.resolution;
    out["restart_converged"] = rep.restart_converged;
    out["restart_objectives"] = rep.restart_objectives;
    out["restart_seeds"] = rep.restart_seeds;
    out["search_objective"] = rep.search_objective;
    out["seam_error"] = rep.seam_error;
    out["seed"] = cfg.seed;
    out["trace"] = rep.trace;
    out["witness_vertex"] = rep.witness_vertex;
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

int run_borromean(double delta, const std::string& preset, bool sweep,
                  const std::string& out_path) {
    TqftParams p = preset.empty() ? TqftParams::from_delta(delta)
                                  : TqftParams::from_preset(preset);
    PureState psi = borromean_state(p);
    Eigen::Matrix4d r = rho_bc(p);
    SimpleQuadratic q = simple_quadratic(p);

    json out;
    out["class"] = to_string(classify_borromean(p));
    out["delta"] = p.delta;
    json state;
    state["dims"] = psi.dims;
    std::vector<double> re(8), im(8);
    for (int i = 0; i < 8; ++i) {
        re[i] = psi.amps(i).real();
        im[i] = psi.amps(i).imag();
    }
    state["im"] = im;
    state["re"] = re;
    out["state"] = state;
    std::vector<std::vector<double>> rows(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = r(i, j);
    out["rho_bc"] = rows;
    out["quadratic"] = {{"a", q.a}, {"b", q.b}, {"c", q.c}};
    out["discriminant"] = q.discriminant;

    if (sweep) {
        int count = 0;
        double min_disc = 1e300;
        bool all_ghz = true;
        for (int i = 1; i < 1000; ++i) {
            TqftParams pi = TqftParams::from_delta(i * 1e-3);
            all_ghz = all_ghz && classify_borromean(pi) == SloccClass::GHZ;
            min_disc = std::min(min_disc, std::abs(simple_quadratic(pi).discriminant));
            ++count;
        }
        out["sweep"] = {{"all_ghz", all_ghz}, {"count", count},
                        {"min_abs_discriminant", min_disc}};
    }
    emit(out.dump(2) + "\n", out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-of-sections laboratory: few-qubit state classification, "
                 "symmetric-state retraction flows, bundle characteristic numbers, "
                 "constrained section optimization, and the Borromean-ring state"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write output atomically to this file instead of stdout")
        ->capture_default_str();

    // classify
    auto* classify = app.add_subcommand(
        "classify", "three-qubit SLOCC class from local ranks and the simple-vector count");
    std::string state_path;
    classify->add_option("--state", state_path, "state JSON file {dims, re, im}")->required();

    // entropy
    auto* entropy_cmd = app.add_subcommand(
        "entropy", "entanglement entropy and Schmidt data across a bipartition");
    std::string entropy_state;
    std::vector<int> keep{0};
    entropy_cmd->add_option("--state", entropy_state, "state JSON file")->required();
    entropy_cmd->add_option("--keep", keep, "factor indices kept by the partial trace")
        ->capture_default_str();

    // symflow
    auto* symflow = app.add_subcommand(
        "symflow", "retraction-flow trajectory of a symmetric two-qubit state (CSV)");
    std::string fa{"1"}, fb{"0"}, fc{"1"}, flow{"max"};
    double s_max = 0.0;
    int steps = 40;
    symflow->add_option("--a", fa, "amplitude of |00>, as re or re,im")->capture_default_str();
    symflow->add_option("--b", fb, "amplitude of (|01>+|10>)")->capture_default_str();
    symflow->add_option("--c", fc, "amplitude of |11>")->capture_default_str();
    symflow->add_option("--flow", flow, "target locus: max or product")
        ->check(CLI::IsMember({"max", "product"}))
        ->capture_default_str();
    symflow->add_option("--s-max", s_max, "largest flow parameter (0 = per-flow default)")
        ->capture_default_str();
    symflow->add_option("--steps", steps, "ladder steps after s = 0")->capture_default_str();

    // chern
    auto* chern = app.add_subcommand(
        "chern", "second Chern number of a clutching map by the volume integral over S3");
    std::string map{"hopf"};
    int resolution = 48;
    chern->add_option("--map", map, "constant, hopf, or hopf-squared")
        ->check(CLI::IsMember({"constant", "hopf", "hopf-squared"}))
        ->capture_default_str();
    chern->add_option("--resolution", resolution, "cells per S3 coordinate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // optimize
    auto* optimize = app.add_subcommand(
        "optimize", "search for a nonvanishing section minimizing worst-case entanglement");
    std::string experiment_name;
    OptConfig cfg;
    std::string measure{"concurrence"};
    optimize
        ->add_option("--experiment", experiment_name,
                     "example1_line | example2_tensor | example2p_sym2 | example2p_singlet | "
                     "t4_pullback_control")
        ->required();
    optimize->add_option("--resolution", cfg.resolution, "base mesh resolution")
        ->capture_default_str();
    optimize->add_option("--restarts", cfg.restarts, "independent restarts")
        ->capture_default_str();
    optimize->add_option("--iterations", cfg.max_iterations, "iteration budget per restart")
        ->capture_default_str();
    optimize->add_option("--seed", cfg.seed, "base random seed")->capture_default_str();
    optimize->add_option("--anchors", cfg.anchors, "residual bumps per chart expansion")
        ->capture_default_str();
    optimize->add_option("--threads", cfg.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    optimize->add_option("--measure", measure, "pointwise measure: concurrence or entropy")
        ->check(CLI::IsMember({"concurrence", "entropy"}))
        ->capture_default_str();

    // borromean
    auto* borromean = app.add_subcommand(
        "borromean", "Borromean-ring state of a rank-2 theory: reduced matrix, quadratic, class");
    double delta = 0.5;
    std::string preset;
    bool sweep = false;
    borromean->add_option("--delta", delta, "Z(S^3) value in (0,1)")->capture_default_str();
    borromean->add_option("--preset", preset, "semion or fibonacci");
    borromean->add_flag("--sweep", sweep, "also scan 999 delta grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // any usage problem maps to the input-error exit code
    }

    try {
        if (classify->parsed()) return run_classify(state_path, out_path);
        if (entropy_cmd->parsed()) return run_entropy(entropy_state, keep, out_path);
        if (symflow->parsed()) return run_symflow(fa, fb, fc, flow, s_max, steps, out_path);
        if (chern->parsed()) return run_chern(map, resolution, out_path);
        if (optimize->parsed()) {
            cfg.measure = measure == "entropy" ? EntMeasure::Entropy
                                               : EntMeasure::ConcurrenceLike;
            return run_optimize(experiment_name, cfg, out_path);
        }
        if (borromean->parsed()) return run_borromean(delta, preset, sweep, out_path);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const consistency_error& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 3;
    } catch (const resolution_error& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
