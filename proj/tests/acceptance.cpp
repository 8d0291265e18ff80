// Acceptance gate: one line of output per criterion, nonzero exit when any
// criterion fails. Budgets and tolerances are pinned; the obstruction-witness
// criterion runs the full default optimization budget and dominates the
// runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "entsec/secopt.hpp"
#include "entsec/slocc.hpp"
#include "entsec/symgeo.hpp"
#include "entsec/tqft.hpp"

using namespace entsec;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion(int number, const std::string& name, double budget_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    if (dt > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!ok) ++g_failures;
    std::printf("criterion %d (%s): %s (%.1fs%s%s)\n", number, name.c_str(),
                ok ? "PASS" : "FAIL", dt, detail.empty() ? "" : "; ", detail.c_str());
    std::fflush(stdout);
}

PureState rep(SloccClass c) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
    switch (c) {
        case SloccClass::ProductABC: amps(0) = 1; break;
        case SloccClass::BiSep_A_BC: amps(0) = amps(3) = 1; break;
        case SloccClass::BiSep_B_CA: amps(0) = amps(5) = 1; break;
        case SloccClass::BiSep_C_AB: amps(0) = amps(6) = 1; break;
        case SloccClass::W: amps(1) = amps(2) = amps(4) = 1; break;
        case SloccClass::GHZ: amps(0) = amps(7) = 1; break;
    }
    return PureState({2, 2, 2}, amps).normalized();
}

const SloccClass kAll[] = {SloccClass::ProductABC, SloccClass::BiSep_A_BC,
                           SloccClass::BiSep_B_CA, SloccClass::BiSep_C_AB,
                           SloccClass::W,          SloccClass::GHZ};

PureState random_three_qubit(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd amps(8);
    for (int i = 0; i < 8; ++i) amps(i) = cxd(g(rng), g(rng));
    return PureState({2, 2, 2}, amps).normalized();
}

double min_sv_2x2(const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd m;
    m << v(0), v(1), v(2), v(3);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    return svd.singularValues()(1);
}

} // namespace

int main() {
    criterion(1, "class table", 1.0, [](std::string& detail) {
        for (SloccClass c : kAll)
            if (classify3(rep(c)) != c) {
                detail = "misclassified " + to_string(c);
                return false;
            }
        detail = "6/6 representatives";
        return true;
    });

    criterion(2, "orbit invariance", 30.0, [](std::string& detail) {
        int checked = 0;
        for (SloccClass c : kAll)
            for (std::uint64_t seed = 0; seed < 1000; ++seed, ++checked)
                if (classify3(random_slocc_orbit(rep(c), seed)) != c) {
                    detail = to_string(c) + " broken at seed " + std::to_string(seed);
                    return false;
                }
        detail = std::to_string(checked) + " orbits, 0 failures";
        return true;
    });

    criterion(3, "two-term normal form", 30.0, [](std::string& detail) {
        double worst_rec = 0.0, worst_rank = 0.0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            PureState psi = random_slocc_orbit(rep(SloccClass::GHZ), seed);
            GhzNormalForm nf = ghz_normal_form(psi);
            worst_rec = std::max(worst_rec, (nf.reconstruct() - psi.amps).norm());
            for (int i = 0; i < 2; ++i) {
                Eigen::Vector4cd bc;
                bc << nf.b[i](0) * nf.c[i](0), nf.b[i](0) * nf.c[i](1),
                    nf.b[i](1) * nf.c[i](0), nf.b[i](1) * nf.c[i](1);
                worst_rank = std::max(worst_rank, min_sv_2x2(bc) / bc.norm());
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "reconstruction %.2e, term rank defect %.2e",
                      worst_rec, worst_rank);
        detail = buf;
        return worst_rec < 1e-8 && worst_rank < 1e-9;
    });

    criterion(4, "Borromean exactness", 10.0, [](std::string& detail) {
        double worst = 0.0, min_disc = 1e300;
        for (int i = 1; i < 1000; ++i) {
            double d = i * 1e-3;
            TqftParams p = TqftParams::from_delta(d);
            // the printed table, rebuilt literally
            Eigen::Matrix4d table;
            table << d * d + 1, 2 * d, 2 * d, d * d + 2,
                     2 * d, d * d + 1, d * d + 1, 3 * d,
                     2 * d, d * d + 1, d * d + 1, 3 * d,
                     d * d + 2, 3 * d, 3 * d, d * d + 4;
            worst = std::max(worst, (rho_bc(p) - table).cwiseAbs().maxCoeff());
            SimpleQuadratic q = simple_quadratic(p);
            min_disc = std::min(min_disc, std::abs(q.discriminant));
            if (classify_borromean(p) != SloccClass::GHZ) {
                detail = "non-GHZ at delta " + std::to_string(d);
                return false;
            }
        }
        bool locus = (11 * 11 - 4 * 4 * 8) == -7;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "table error %.2e, min |disc| %.3f, double-root locus 121-128=-7 %s",
                      worst, min_disc, locus ? "ok" : "wrong");
        detail = buf;
        return worst < 1e-12 && min_disc > 1e-6 && locus;
    });

    criterion(5, "characteristic numbers", 120.0, [](std::string& detail) {
        if (winding_c1([](double th) { return std::exp(cxd(0, th)); }, 256) != 1) return false;
        if (winding_c1([](double th) { return std::exp(cxd(0, -th)); }, 256) != -1) return false;
        if (winding_c1([](double) { return cxd(1, 0); }, 256) != 0) return false;
        Mesh s3 = make_mesh_s3(48);
        DegreeResult d0 = clutching_degree(
            [](const Eigen::Vector4d&) { return Eigen::Matrix2cd::Identity().eval(); }, s3);
        DegreeResult d1 = clutching_degree(
            [](const Eigen::Vector4d& q) { return Eigen::Matrix2cd(hopf_clutching(q)); }, s3);
        DegreeResult d2 = clutching_degree(
            [](const Eigen::Vector4d& q) {
                return Eigen::Matrix2cd(hopf_clutching(quat_mul(q, q)));
            },
            s3);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "winding +1/-1/0 exact; degrees %d/%d/%d residuals %.4f/%.4f/%.4f",
                      d0.degree, d1.degree, d2.degree, d0.residual, d1.residual, d2.residual);
        detail = buf;
        return d0.degree == 0 && d1.degree == 1 && d2.degree == 2 && d0.residual < 0.1 &&
               d1.residual < 0.1 && d2.residual < 0.1;
    });

    criterion(6, "retraction flows", 60.0, [](std::string& detail) {
        std::mt19937_64 rng(2024);
        std::normal_distribution<double> g(0.0, 1.0);
        int done = 0;
        double worst_max = 0.0, worst_prod = 0.0, worst_shape = 0.0;
        const double ladder_max[] = {0.0, 1.0, 10.0, 1e3, 1e6};
        const double ladder_prod[] = {0.0, 1.0, 10.0, 50.0, 200.0};
        while (done < 1000) {
            SymState s{cxd(g(rng), g(rng)), cxd(g(rng), g(rng)), cxd(g(rng), g(rng))};
            MMat M = to_m(s.normalized());
            Eigen::JacobiSVD<MMat> svd(M);
            double smin = svd.singularValues()(1);
            double gap = svd.singularValues()(0) - smin;
            if (smin < 0.05 || gap < 0.05) continue; // admissible for both flows
            ++done;
            for (double sv : ladder_max) {
                MMat F = flow_to_max(M, sv);
                worst_shape = std::max({worst_shape, (F - F.transpose()).norm(),
                                        std::abs(F.norm() - std::sqrt(2.0))});
            }
            for (double sv : ladder_prod) {
                MMat F = flow_to_product(M, sv);
                worst_shape = std::max({worst_shape, (F - F.transpose()).norm(),
                                        std::abs(F.norm() - std::sqrt(2.0))});
            }
            worst_max = std::max(worst_max, stratum(flow_to_max(M, 1e6)).unitarity_defect);
            Eigen::JacobiSVD<MMat> send(flow_to_product(M, 200.0));
            worst_prod = std::max(worst_prod, send.singularValues()(1));
        }
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "max-defect %.2e, product sigma_min %.2e, symmetry/norm drift %.2e",
                      worst_max, worst_prod, worst_shape);
        detail = buf;
        return worst_max < 1e-5 && worst_prod < 1e-6 && worst_shape < 1e-10;
    });

    criterion(7, "obstruction witness", 1800.0, [](std::string& detail) {
        OptConfig cfg; // default resolution, 20 restarts, 5000 iterations, seed 0
        Mesh control_mesh = make_mesh_s4(3 * cfg.resolution, cfg.resolution);
        OptReport control = optimize_section(trivial_bundle(BaseSpace::S4, 4), control_mesh,
                                             SectionObjective::MinMaxEntanglement, cfg);
        OptReport sym = experiment("example2p_sym2", cfg);
        OptReport ten = experiment("example2_tensor", cfg);
        double sym_floor = 1e300, ten_floor = 1e300;
        for (double o : sym.restart_objectives) sym_floor = std::min(sym_floor, o);
        for (double o : ten.restart_objectives) ten_floor = std::min(ten_floor, o);
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "control %.4f < 0.05; sym2 floor %.4f >= 0.5, witness %.4f >= 0.9; "
                      "tensor floor %.4f >= 0.1",
                      control.best_objective, sym_floor, sym.profile_max, ten_floor);
        detail = buf;
        return control.best_objective < 0.05 && sym_floor >= 0.5 && sym.profile_max >= 0.9 &&
               ten_floor >= 0.1;
    });

    criterion(8, "cross-path consistency", 10.0, [](std::string& detail) {
        double worst = 0.0;
        for (int i = 1; i < 1000; ++i) {
            TqftParams p = TqftParams::from_delta(i * 1e-3);
            DensityMatrix generic = partial_trace(borromean_state(p), {1, 2});
            worst = std::max(worst,
                             (rho_bc(p).cast<cxd>() - generic.m).cwiseAbs().maxCoeff());
            // classify_borromean throws on any disagreement between the
            // quadratic route and the generic classifier
            if (classify_borromean(p) != SloccClass::GHZ) return false;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "path difference %.2e over 999 grid points", worst);
        detail = buf;
        return worst < 1e-12;
    });

    criterion(9, "entropy and Schmidt sanity", 10.0, [](std::string& detail) {
        double bell = entropy(partial_trace(make_bell(), {0}));
        if (std::abs(bell - std::log(2.0)) > 1e-12) {
            detail = "Bell entropy off";
            return false;
        }
        Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
        amps(0) = 1.0;
        if (entropy(partial_trace(PureState({2, 2}, amps), {0})) > 1e-12) {
            detail = "product entropy nonzero";
            return false;
        }
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            PureState psi = random_three_qubit(seed);
            worst = std::max(worst, std::abs(entropy(partial_trace(psi, {0})) -
                                             entropy(partial_trace(psi, {1, 2}))));
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "Bell ln2 exact; purity symmetry drift %.2e", worst);
        detail = buf;
        return worst < 1e-9;
    });

    std::printf("%s: %d/9 criteria passed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
