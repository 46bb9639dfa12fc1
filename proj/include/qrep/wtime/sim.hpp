#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace qrep::wtime {

// Discrete-event model of entanglement distribution over a nested repeater
// chain, used to check the closed-form waiting-time estimate empirically.
//
// Time accounting (the closed form folds classical communication into its
// prefactor, so the simulator states its own rules and compares like for
// like):
//   - every elementary-link attempt costs one slot,
//   - every swap attempt costs one slot on top of the time spent rebuilding
//     both child segments (a failed swap destroys them),
//   - the final post-selection runs over two chains built in parallel and
//     adds no slot of its own; on failure both chains restart from scratch.
// With every probability equal to 1 a chain with n swap levels therefore
// finishes in exactly n + 1 slots.

// p_levels holds the per-stage success probabilities in protocol order:
// index 0 is the elementary link, indices 1..n are the swap levels, and the
// last entry is the final post-selection.  Minimum size is 2 (one link stage
// plus post-selection; pass 1.0 to make a stage trivial).
struct sim_config {
    std::vector<double> p_levels;
    double slot_s = 1.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;

    void validate() const;
    std::size_t swap_levels() const { return p_levels.size() - 2; }
};

// histogram maps total waiting time in slots to the number of trials that
// finished in exactly that many slots; mean_s and stderr_s are in seconds.
struct sim_result {
    double mean_s = 0.0;
    double stderr_s = 0.0;
    std::map<std::uint64_t, std::uint64_t> histogram;
};

// Deterministic per-stream generator: the same (seed, stream_id) pair always
// reproduces the same sequence, and distinct ids give unrelated streams.
std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream_id);

// Waiting time of a single trial in slots.  Trial k always consumes exactly
// the stream (seed, k), so partitioning trials across workers is equivalent
// to running them serially.
std::uint64_t sample_trial_slots(const sim_config& cfg, std::uint64_t trial);

sim_result simulate(const sim_config& cfg);

}  // namespace qrep::wtime
