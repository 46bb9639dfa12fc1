#pragma once

#include <vector>

#include "qrep/rate/formulas.hpp"

namespace qrep::rate {

struct sps_optimum {
    double t_tot_s = 0.0;
    int n = 0;
    double beta_sq = 0.0;
};

// Minimizes the closed-form distribution time over nesting level (1..5) and
// splitter transmission (coarse 0.005 grid, locally refined to 5e-4).  Ties
// break toward the smaller level, then the smaller transmission, so results
// do not depend on evaluation order.
sps_optimum optimize_sps(double l_km, const chain::repeater_params& base);

struct dlcz_optimum {
    double p = 0.0;
    double t_tot_s = 0.0;
    int n = 0;
    double fidelity = 0.0;
};

// Pair-source calibration at a fixed nesting level: bisects the emission
// probability until the state-level chain fidelity meets target_f and
// evaluates the distribution time from the resulting level probabilities.
dlcz_optimum dlcz_at_level(double l_km, int n, double target_f,
                           const chain::repeater_params& base);

// Same calibration optimized over the nesting level; throws infeasible_error
// when no level reaches target_f.
dlcz_optimum dlcz_baseline(double l_km, double target_f, const chain::repeater_params& base);

struct gain_row {
    double distance_km = 0.0;
    sps_optimum sps;
    dlcz_optimum dlcz;
    double gain = 0.0;  // dlcz time over single-photon time
};

std::vector<gain_row> gain_table(const std::vector<double>& distances_km, double target_f,
                                 const chain::repeater_params& base);

// Smallest single-photon emission probability at which the optimized
// single-photon protocol becomes faster than the pair-source baseline at the
// same target fidelity.  Returns the bracket edge when there is no crossing
// inside it.
double crossover_p1(double l_km, const chain::repeater_params& base, double target_f = 0.9);

}  // namespace qrep::rate
