#pragma once

#include <string>
#include <vector>

#include "qrep/fock/state.hpp"

namespace qrep::fock {

// Two-mode splitter acting on creation operators as
//   a_i^+ -> alpha a_i^+ + beta a_j^+
//   a_j^+ -> beta  a_i^+ - alpha a_j^+
// with real alpha, beta and alpha^2 + beta^2 = 1 (the second output carries
// the sign flip so the mode map is orthogonal).
struct beam_splitter_spec {
    double alpha = 0.0;
    double beta = 0.0;

    static beam_splitter_spec from_beta_sq(double beta_sq);
    static beam_splitter_spec balanced();  // alpha = beta = 1/sqrt(2)
};

// Threshold-or-counting detector: efficiency folded in as a loss channel,
// then an ideal projective count, then at most one dark count per window
// added with probability p_dark.
struct detector_model {
    double eta_d = 1.0;
    double p_dark = 0.0;
    bool number_resolving = true;
};

struct creation_result {
    pure_state state;   // renormalized
    double weight;      // squared norm before renormalization
};

struct pnr_outcome {
    int count = 0;
    double probability = 0.0;
    mixed_state conditional;  // measured mode removed from the register
};

pure_state prepare(const mode_register& reg, const std::vector<int>& occupation);

creation_result apply_creation(const pure_state& psi, const std::string& mode);

pure_state apply_beamsplitter(const pure_state& psi, const std::string& mode_i,
                              const std::string& mode_j, const beam_splitter_spec& spec);
mixed_state apply_beamsplitter(const mixed_state& rho, const std::string& mode_i,
                               const std::string& mode_j, const beam_splitter_spec& spec);

// Bosonic pure-loss channel with transmissivity eta on one mode.
mixed_state apply_loss(const mixed_state& rho, const std::string& mode, double eta);

// Photon-number measurement of one mode.  Outcomes with nonzero probability,
// ordered by count; probabilities sum to one; each conditional state lives on
// the register without the measured mode.  With number_resolving = false the
// outcomes collapse to {0, >=1} and the >=1 bucket is reported as count 1.
std::vector<pnr_outcome> measure_pnr(const mixed_state& rho, const std::string& mode,
                                     const detector_model& det);

// Reduced state over the named modes (kept in register order).
mixed_state partial_trace(const mixed_state& rho, const std::vector<std::string>& keep);

// <target| rho |target>; registers must match exactly.
double fidelity(const mixed_state& rho, const pure_state& target);

// Phase flip (-1)^n on one mode, used to fold the two heralding patterns of a
// central-station detection onto a common local phase.
mixed_state apply_parity_phase(const mixed_state& rho, const std::string& mode);

// State on the concatenated register; `names` relabels all modes (left block
// first) and must be unique.  Truncations must agree.
mixed_state tensor_product(const mixed_state& a, const mixed_state& b,
                           const std::vector<std::string>& names);

}  // namespace qrep::fock
