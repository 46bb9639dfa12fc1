#include "qrep/rate/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrep/chain/link.hpp"
#include "qrep/errors.hpp"

namespace qrep::rate {

namespace {

constexpr int k_min_level = 1;
constexpr int k_max_level = 5;
constexpr double k_coarse_step = 0.005;
constexpr double k_fine_step = 5e-4;

chain::repeater_params sps_point(const chain::repeater_params& base, double l_km, int n,
                                 double beta_sq) {
    chain::repeater_params p = base;
    p.L_km = l_km;
    p.n = n;
    p.beta_sq = beta_sq;
    if (p.source.kind != chain::source_model::kind_t::single_photon)
        p.source = chain::source_model::single_photon(0.95);
    return p;
}

double dlcz_fidelity(const chain::repeater_params& base, double l_km, int n, double p,
                     chain::chain_report* report = nullptr) {
    chain::repeater_params params = base;
    params.L_km = l_km;
    params.n = n;
    params.source = chain::source_model::pair(p);
    chain::chain_report r = chain::chain_analysis(params);
    const double fidelity = r.fidelity;
    if (report) *report = std::move(r);
    return fidelity;
}

}  // namespace

sps_optimum optimize_sps(double l_km, const chain::repeater_params& base) {
    if (l_km <= 0.0) throw invalid_parameter("distance must be positive");

    sps_optimum best;
    best.t_tot_s = std::numeric_limits<double>::infinity();
    for (int n = k_min_level; n <= k_max_level; ++n) {
        double coarse_best = std::numeric_limits<double>::infinity();
        double coarse_b2 = 0.0;
        for (int i = 1; i * k_coarse_step < 1.0; ++i) {
            const double b2 = i * k_coarse_step;
            const double t = t_tot_sps(sps_point(base, l_km, n, b2));
            if (t < coarse_best) {
                coarse_best = t;
                coarse_b2 = b2;
            }
        }
        for (int j = -10; j <= 10; ++j) {
            const double b2 = coarse_b2 + j * k_fine_step;
            if (b2 <= 0.0 || b2 >= 1.0) continue;
            const double t = t_tot_sps(sps_point(base, l_km, n, b2));
            if (t < best.t_tot_s) {
                best.t_tot_s = t;
                best.n = n;
                best.beta_sq = b2;
            }
        }
    }
    return best;
}

dlcz_optimum dlcz_at_level(double l_km, int n, double target_f,
                           const chain::repeater_params& base) {
    if (l_km <= 0.0) throw invalid_parameter("distance must be positive");
    if (target_f <= 0.5 || target_f >= 1.0)
        throw invalid_parameter("target fidelity must lie in (0.5, 1)");

    // The chain fidelity rises to one as the emission probability vanishes
    // and falls monotonically with it, so a sign change brackets the target.
    double lo = 1e-7;
    if (dlcz_fidelity(base, l_km, n, lo) < target_f)
        throw infeasible_error("target fidelity unreachable at this nesting level");
    double hi = 1e-3;
    while (dlcz_fidelity(base, l_km, n, hi) >= target_f) {
        hi *= 2.0;
        if (hi >= 1.9) throw infeasible_error("fidelity never drops to the target");
    }
    while (hi - lo > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (dlcz_fidelity(base, l_km, n, mid) >= target_f)
            lo = mid;
        else
            hi = mid;
    }

    dlcz_optimum out;
    out.p = 0.5 * (lo + hi);
    out.n = n;
    chain::chain_report report;
    out.fidelity = dlcz_fidelity(base, l_km, n, out.p, &report);
    out.t_tot_s = report.t_tot_s;
    return out;
}

dlcz_optimum dlcz_baseline(double l_km, double target_f, const chain::repeater_params& base) {
    dlcz_optimum best;
    best.t_tot_s = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int n = k_min_level; n <= k_max_level; ++n) {
        dlcz_optimum candidate;
        try {
            candidate = dlcz_at_level(l_km, n, target_f, base);
        } catch (const infeasible_error&) {
            continue;
        }
        if (candidate.t_tot_s < best.t_tot_s) {
            best = candidate;
            found = true;
        }
    }
    if (!found) throw infeasible_error("target fidelity unreachable at every nesting level");
    return best;
}

std::vector<gain_row> gain_table(const std::vector<double>& distances_km, double target_f,
                                 const chain::repeater_params& base) {
    if (distances_km.empty()) throw invalid_parameter("distance list must not be empty");
    std::vector<gain_row> rows;
    rows.reserve(distances_km.size());
    for (double d : distances_km) {
        gain_row row;
        row.distance_km = d;
        row.sps = optimize_sps(d, base);
        row.dlcz = dlcz_baseline(d, target_f, base);
        row.gain = row.dlcz.t_tot_s / row.sps.t_tot_s;
        rows.push_back(row);
    }
    return rows;
}

double crossover_p1(double l_km, const chain::repeater_params& base, double target_f) {
    const dlcz_optimum baseline = dlcz_baseline(l_km, target_f, base);
    const auto sps_time = [&](double p1) {
        chain::repeater_params b = base;
        b.source = chain::source_model::single_photon(p1);
        return optimize_sps(l_km, b).t_tot_s;
    };

    double lo = 0.05;
    double hi = 1.0;
    if (sps_time(hi) >= baseline.t_tot_s) return hi;
    if (sps_time(lo) <= baseline.t_tot_s) return lo;
    for (int iter = 0; iter < 40; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sps_time(mid) >= baseline.t_tot_s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qrep::rate
