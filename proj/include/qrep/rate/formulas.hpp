#pragma once

#include <vector>

#include "qrep/chain/params.hpp"

namespace qrep::rate {

// Expected entanglement-distribution time for a chain with per-level success
// probabilities p0 (elementary link), p_swap[0..n-1] (swap levels) and a
// final post-selection passing with probability p_pr:
//
//   T = (3/2)^(n+1) * (L0/c) / (p0 * p_swap[0] * ... * p_swap[n-1] * p_pr)
//
// One factor 3/2 per stage that must wait for two independent sub-units.
double t_tot_generic(double p0, const std::vector<double>& p_swap, double p_pr, double l0_km,
                     double c_m_per_s = 2.0e8);

// Closed-form level probabilities for the single-photon-source protocol.
// s[i] is the single-excitation weight of the heralded state at level i; the
// recursion s[i] = s[i-1] / (2 - s[i-1]*eta) tracks the vacuum growth caused
// by read-out loss during swapping.
struct sps_chain_probs {
    double p0 = 0.0;
    std::vector<double> p_swap;
    double p_pr = 0.0;
    std::vector<double> s;  // s[0..n]
};

sps_chain_probs sps_level_probabilities(const chain::repeater_params& params);

// Fully telescoped closed form of the same distribution time (single-photon
// source kind only):
//
//   T = (3^(n+1)/2) * (L0/c) * prod_{k=1..n}(2^k - (2^k-1) p1 a2 eta)
//       / (eta_d eta_t p1^(n+3) b2 a2^(n+2) eta^(n+2))
//
// with a2 = 1 - b2.  Agrees with t_tot_generic over sps_level_probabilities
// to machine precision; both routes are kept as a cross-check.
double t_tot_sps(const chain::repeater_params& params);

// First-order fidelity penalty from detector dark counts during link
// creation, valid for the eight-link (n = 3) configuration:
//
//   F = 1 - 16 [ 25/(b2 p1) - (25 eta - 1)(1/p1 - 1) ] p_dark / (eta_t eta_d)
double fidelity_dark(const chain::repeater_params& params, double p_dark);

// First-order fidelity penalty from two-photon source emissions, same n = 3
// configuration:
//
//   F = 1 - 2 ( 376/p1 - (1 - b2)(395 eta - 19) ) p2 / p1
double fidelity_twophoton(const chain::repeater_params& params, double p2);

// Largest error parameter still reaching target_f, by inverting the affine
// formulas above.  Throws infeasible_error when target_f >= 1 (the first
// order expansions only reach unit fidelity at zero error).
double dark_threshold(const chain::repeater_params& params, double target_f);
double twophoton_threshold(const chain::repeater_params& params, double target_f);

}  // namespace qrep::rate
