#pragma once

#include <vector>

#include "qrep/chain/params.hpp"

namespace qrep::chain {

// Heralded two-memory state together with its creation probability and a
// breakdown by total excitation number.  f_single is the fidelity of the
// one-excitation sector against (|01> + |10>)/sqrt(2).
struct link_outcome {
    double p_success = 0.0;
    fock::mixed_state state;  // two memory modes
    double w_vac = 0.0;
    double w_single = 0.0;
    double w_double = 0.0;
    double f_single = 0.0;
};

// Standalone description of one elementary link, decoupled from chain
// geometry so tests can drive the transmission directly.
struct link_spec {
    source_model source;
    double beta_sq = 0.11;
    double eta_t = 1.0;
    fock::detector_model detector{};
    int truncation = 2;
};

struct postselect_result {
    double p_pr = 0.0;
    double fidelity = 0.0;
};

struct chain_report {
    std::vector<double> p_levels;  // P_0 (link) then P_1..P_n (swap levels)
    double p_pr = 0.0;
    double fidelity = 0.0;
    double t_tot_s = 0.0;
    link_outcome top;  // state after the last swap level
};

// Central-station heralding of one elementary link: emission at both ends,
// fiber transmission eta_t per photon, balanced interference, and photon
// counting conditioned on exactly one detected count in total.
link_outcome elementary_link(const link_spec& spec);
link_outcome elementary_link(const repeater_params& params);

// Entanglement swapping between two heralded links that share a middle
// station: both co-located memories are retrieved with efficiency eta_m,
// interfered on a balanced splitter, and measured; success again means
// exactly one detected count.
link_outcome swap_links(const link_outcome& left, const link_outcome& right, double eta_m,
                        const fock::detector_model& det);

// Final parallel-chain filter: both four-memory read-outs (efficiency eta per
// memory) must find exactly one excitation at each end location.  Returns the
// pass probability and the fidelity of the surviving state against
// (|1,0,0,1> + |0,1,1,0>)/sqrt(2) in (end1-a, end2-a, end1-b, end2-b) order.
postselect_result postselect(const link_outcome& link1, const link_outcome& link2, double eta);

// Folds one representative link through n swap levels (all links at a level
// are statistically identical) and the final filter, and evaluates the
// expected distribution time from the level success probabilities.
chain_report chain_analysis(const repeater_params& params);

}  // namespace qrep::chain
