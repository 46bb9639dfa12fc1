// Acceptance harness: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.  Tolerances are stated inline with each
// check; comparisons are tolerance-based, never string-based.
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qrep/chain/link.hpp"
#include "qrep/errors.hpp"
#include "qrep/rate/optimize.hpp"
#include "qrep/wtime/sim.hpp"
#include "test_util.hpp"

using namespace qrep;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  %-13s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) {
        ++failures;
    }
}

std::string fmt(double x) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.6g", x);
    return b;
}

bool within(double value, double expect, double rel) {
    return std::abs(value / expect - 1.0) <= rel;
}

chain::repeater_params params_at(double l_km, int n, double beta_sq) {
    chain::repeater_params p;
    p.L_km = l_km;
    p.n = n;
    p.beta_sq = beta_sq;
    return p;
}

// Closed-form distribution times at the four reference operating points, 3%.
void criterion_1() {
    struct point {
        double l;
        int n;
        double b2;
        double expect;
    };
    const std::vector<point> pts = {
        {1000.0, 3, 0.11, 250.0},
        {1500.0, 3, 0.11, 1560.0},
        {2000.0, 4, 0.08, 6000.0},
        {2500.0, 4, 0.08, 15300.0},
    };
    bool pass = true;
    std::string detail = "T(L) vs reference within 3%:";
    for (const auto& pt : pts) {
        double t = rate::t_tot_sps(params_at(pt.l, pt.n, pt.b2));
        pass = pass && within(t, pt.expect, 0.03);
        detail += " " + fmt(t) + "/" + fmt(pt.expect);
    }
    report("criterion-1", pass, detail);
}

// Optimizer lands in the reference (n, beta_sq) windows at all four
// distances.
void criterion_2() {
    bool pass = true;
    std::string detail = "optimum (n, beta_sq):";
    chain::repeater_params base;
    for (double l : {1000.0, 1500.0}) {
        auto o = rate::optimize_sps(l, base);
        pass = pass && o.n == 3 && std::abs(o.beta_sq - 0.11) <= 0.01;
        detail += " (" + std::to_string(o.n) + ", " + fmt(o.beta_sq) + ")";
    }
    for (double l : {2000.0, 2500.0}) {
        auto o = rate::optimize_sps(l, base);
        pass = pass && o.n == 4 && std::abs(o.beta_sq - 0.08) <= 0.01;
        detail += " (" + std::to_string(o.n) + ", " + fmt(o.beta_sq) + ")";
    }
    report("criterion-2", pass, detail + " vs (3, 0.11+-0.01) x2, (4, 0.08+-0.01) x2");
}

// Two-photon emission threshold for F = 0.9, 3%.
void criterion_3() {
    double p2 = rate::twophoton_threshold(params_at(1000.0, 3, 0.11), 0.9);
    report("criterion-3", within(p2, 3.7e-4, 0.03),
           "p2 threshold " + fmt(p2) + " vs 3.7e-04 within 3%");
}

// Dark-count fidelity: affine, decreasing, exactly 1 at zero darks; the
// computed threshold is reported next to the reference value without being
// forced to agree.
void criterion_4() {
    auto p = params_at(1000.0, 3, 0.11);
    double f0 = rate::fidelity_dark(p, 0.0);
    double f1 = rate::fidelity_dark(p, 1e-6);
    double f2 = rate::fidelity_dark(p, 2e-6);
    double f3 = rate::fidelity_dark(p, 3e-6);
    bool affine = std::abs((f3 - f2) - (f2 - f1)) < 1e-12;
    bool decreasing = f0 > f1 && f1 > f2 && f2 > f3;
    double thr = rate::dark_threshold(p, 0.9);
    bool pass = f0 == 1.0 && affine && decreasing && thr > 0.0;
    report("criterion-4", pass,
           "F(0)=" + fmt(f0) + ", affine and decreasing; computed F=0.9 threshold " + fmt(thr) +
               " reported beside reference 4.6e-06 (agreement not required)");
}

// Ideal-link heralded state: three-component weights and unit
// one-excitation fidelity to 1e-12.
void criterion_5() {
    chain::link_spec spec;
    spec.source = chain::source_model::single_photon(1.0);
    spec.beta_sq = 0.11;
    spec.eta_t = 1e-13;
    spec.detector = fock::detector_model{1.0, 0.0};
    auto link = chain::elementary_link(spec);
    bool pass = std::abs(link.w_vac - 0.11) <= 1e-12 && std::abs(link.w_single - 0.89) <= 1e-12 &&
                link.w_double <= 1e-12 && std::abs(link.f_single - 1.0) <= 1e-12;
    report("criterion-5", pass,
           "weights (" + fmt(link.w_vac) + ", " + fmt(link.w_single) + ", " +
               fmt(link.w_double) + ") vs (0.11, 0.89, 0), f_single " + fmt(link.f_single));
}

// Link creation probabilities against the rounded reference values, 15%.
void criterion_6() {
    chain::repeater_params sps;
    auto sps_link = chain::elementary_link(sps);
    report("criterion-6a", within(sps_link.p_success, 0.01, 0.15),
           "single-photon P0 " + fmt(sps_link.p_success) + " vs 0.01 within 15%");

    chain::repeater_params dlcz;
    dlcz.source = chain::source_model::pair(0.003);
    auto pair_link = chain::elementary_link(dlcz);
    report("criterion-6b", within(pair_link.p_success, 1e-4, 0.15),
           "pair-source P0 " + fmt(pair_link.p_success) + " vs 1e-04 within 15%");
}

// Pair-source baseline calibration and the speed-up ordering over distance.
void criterion_7() {
    chain::repeater_params base;
    auto table = rate::gain_table({1000.0, 1500.0, 2000.0, 2500.0}, 0.9, base);
    const auto& d0 = table[0].dlcz;
    bool p_ok = d0.p >= 0.002 && d0.p <= 0.004;
    bool t_ok = d0.t_tot_s >= 4600.0 / 2.0 && d0.t_tot_s <= 4600.0 * 2.0;
    bool increasing = true;
    double prev = 0.0;
    for (const auto& row : table) {
        increasing = increasing && row.gain > prev;
        prev = row.gain;
    }
    bool g0_ok = table[0].gain >= 12.0 && table[0].gain <= 25.0;
    bool g3_ok = table[3].gain >= 30.0;
    report("criterion-7", p_ok && t_ok && increasing && g0_ok && g3_ok,
           "calibrated p " + fmt(d0.p) + " in [0.002, 0.004], T " + fmt(d0.t_tot_s) +
               " within 2x of 4600; gains " + fmt(table[0].gain) + ", " + fmt(table[1].gain) +
               ", " + fmt(table[2].gain) + ", " + fmt(table[3].gain));
}

// Emission-probability crossover at 1000 km.
void criterion_8() {
    chain::repeater_params base;
    double p1x = rate::crossover_p1(1000.0, base, 0.9);
    report("criterion-8", p1x >= 0.60 && p1x <= 0.75,
           "p1 crossover " + fmt(p1x) + " in [0.60, 0.75]");
}

// Randomized state-library invariants plus the simulator against the
// closed-form waiting time.
void criterion_9() {
    std::mt19937_64 gen(7);
    fock::mode_register reg({"x", "y"}, 2);
    std::uniform_real_distribution<double> usplit(0.05, 0.95);
    std::uniform_real_distribution<double> ueta(0.0, 1.0);
    bool fock_ok = true;
    for (int i = 0; i < 1000 && fock_ok; ++i) {
        auto psi = testutil::random_pure_bounded(reg, gen, 2);
        auto spec = fock::beam_splitter_spec::from_beta_sq(usplit(gen));
        auto out = fock::apply_beamsplitter(psi, "x", "y", spec);
        double norm = 0.0;
        for (const auto& a : out.amp) {
            norm += std::norm(a);
        }
        fock_ok = fock_ok && std::abs(norm - 1.0) < 1e-10;

        auto rho = testutil::random_mixed_bounded(reg, gen, 2);
        auto lossy = fock::apply_loss(rho, "x", ueta(gen));
        fock_ok = fock_ok && std::abs(lossy.trace() - rho.trace()) < 1e-10;
        fock_ok = fock_ok && testutil::min_eigenvalue_above(lossy, 1e-10);
    }
    auto hom = fock::apply_beamsplitter(fock::prepare(reg, {1, 1}), "x", "y",
                                        fock::beam_splitter_spec::balanced());
    bool hom_ok = std::norm(hom.amp[reg.pack({1, 1})]) <= 1e-12;

    wtime::sim_config geo;
    geo.p_levels = {0.02, 1.0};
    geo.trials = 100000;
    geo.seed = 17;
    auto geo_res = wtime::simulate(geo);
    bool geo_ok = std::abs(geo_res.mean_s - 50.0) < 3.0 * geo_res.stderr_s;

    const std::vector<std::vector<double>> stage_sets = {
        {0.4, 0.3, 0.5},
        {0.5, 0.35, 0.3, 0.4},
        {0.5, 0.3, 0.3, 0.3, 0.5},
    };
    bool bracket_ok = true;
    std::string ratios;
    for (const auto& stages : stage_sets) {
        wtime::sim_config cfg;
        cfg.p_levels = stages;
        cfg.trials = 100000;
        cfg.seed = 21;
        auto res = wtime::simulate(cfg);
        std::vector<double> swaps(stages.begin() + 1, stages.end() - 1);
        double predicted =
            rate::t_tot_generic(stages.front(), swaps, stages.back(), 2.0e5, 2.0e8);
        double ratio = res.mean_s / predicted;
        bracket_ok = bracket_ok && ratio > 0.6 && ratio < 1.5;
        ratios += " " + fmt(ratio);
    }
    report("criterion-9", fock_ok && hom_ok && geo_ok && bracket_ok,
           "1000 randomized unitarity/trace/positivity cases, interference null, geometric "
           "law within 3 sigma, mean/prediction ratios" + ratios + " in [0.6, 1.5]");
}

// Post-selection fidelity is blind to the vacuum weight of either input.
void criterion_10() {
    std::mt19937_64 gen(99);
    fock::mode_register reg({"a", "z"}, 2);
    std::uniform_real_distribution<double> uw(0.0, 0.9);
    std::normal_distribution<double> g;

    auto random_single_sector = [&]() {
        fock::mixed_state rho(reg);
        const std::size_t i01 = reg.pack({0, 1});
        const std::size_t i10 = reg.pack({1, 0});
        double total = 0.0;
        for (int k = 0; k < 2; ++k) {
            fock::cplx c0(g(gen), g(gen));
            fock::cplx c1(g(gen), g(gen));
            double norm = std::sqrt(std::norm(c0) + std::norm(c1));
            c0 /= norm;
            c1 /= norm;
            double w = 0.2 + std::abs(g(gen));
            const std::size_t d = reg.dim();
            rho.rho[i01 * d + i01] += w * std::norm(c0);
            rho.rho[i01 * d + i10] += w * c0 * std::conj(c1);
            rho.rho[i10 * d + i01] += w * c1 * std::conj(c0);
            rho.rho[i10 * d + i10] += w * std::norm(c1);
            total += w;
        }
        for (auto& x : rho.rho) {
            x /= total;
        }
        return rho;
    };

    auto with_vacuum = [&](const fock::mixed_state& sector, double w_vac) {
        fock::mixed_state rho(reg);
        const std::size_t vac = reg.pack({0, 0});
        const std::size_t d = reg.dim();
        for (std::size_t i = 0; i < rho.rho.size(); ++i) {
            rho.rho[i] = (1.0 - w_vac) * sector.rho[i];
        }
        rho.rho[vac * d + vac] += w_vac;
        chain::link_outcome link;
        link.p_success = 1.0;
        link.state = rho;
        return link;
    };

    bool pass = true;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto sector_a = random_single_sector();
        auto sector_b = random_single_sector();
        auto ref = chain::postselect(with_vacuum(sector_a, uw(gen)),
                                     with_vacuum(sector_b, uw(gen)), 0.81);
        auto alt = chain::postselect(with_vacuum(sector_a, uw(gen)),
                                     with_vacuum(sector_b, uw(gen)), 0.81);
        double diff = std::abs(ref.fidelity - alt.fidelity);
        worst = std::max(worst, diff);
        pass = pass && diff <= 1e-12;
    }
    report("criterion-10", pass,
           "fidelity shift under random vacuum admixture <= 1e-12 (worst " + fmt(worst) + ")");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion check(s) failed\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
