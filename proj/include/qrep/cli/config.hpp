#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrep/chain/params.hpp"

namespace qrep::cli {

// Runtime configuration shared by every command.  Physics defaults follow
// the reference operating point; precedence is command line over config file
// over these defaults.
struct run_config {
    chain::repeater_params base;
    std::vector<double> distances = {1000.0, 1500.0, 2000.0, 2500.0};
    double target_fidelity = 0.9;
    std::uint64_t trials = 20000;
    std::uint64_t seed = 1;
    std::string out;  // empty writes to stdout
    std::string format = "csv";

    // When non-empty, simulate uses these stage probabilities directly (link
    // first, post-selection last) instead of deriving them from the physics.
    std::vector<double> p_levels;

    void validate() const;
};

// Applies one key=value setting.  Unknown keys and unparsable values raise
// invalid_parameter.  Recognized keys: p1, p2, beta_sq, eta_m, eta_d,
// p_dark, swap_p_dark, l_att_km, c_m_per_s, n, distances, target_fidelity,
// trials, seed, out, format, p_levels.
void apply_setting(run_config& cfg, const std::string& key, const std::string& value);

// Flat key=value file, one setting per line; blank lines and lines starting
// with '#' are ignored.
void load_config_file(run_config& cfg, const std::string& path);

// "1000,1500,2000" -> {1000.0, 1500.0, 2000.0}
std::vector<double> parse_distances(const std::string& text);

}  // namespace qrep::cli
