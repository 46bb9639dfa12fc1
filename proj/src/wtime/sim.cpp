#include "qrep/wtime/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qrep/errors.hpp"

namespace qrep::wtime {

namespace {

// 53-bit uniform draw in [0, 1).
double canonical(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

bool bernoulli(std::mt19937_64& gen, double p) {
    return canonical(gen) < p;
}

// Number of attempts until the first success, inclusive, by inversion so a
// whole retry run costs a single draw.
std::uint64_t geometric_attempts(std::mt19937_64& gen, double p) {
    double u = 1.0 - canonical(gen);
    if (p >= 1.0) {
        return 1;
    }
    double k = std::floor(std::log(u) / std::log1p(-p));
    return 1 + static_cast<std::uint64_t>(std::max(0.0, k));
}

// Slots needed to build one segment at the given level: level 0 is the
// elementary link, higher levels rebuild both children per swap attempt.
std::uint64_t segment_slots(std::mt19937_64& gen, const std::vector<double>& p_levels,
                            std::size_t level) {
    if (level == 0) {
        return geometric_attempts(gen, p_levels[0]);
    }
    std::uint64_t total = 0;
    for (;;) {
        std::uint64_t left = segment_slots(gen, p_levels, level - 1);
        std::uint64_t right = segment_slots(gen, p_levels, level - 1);
        total += std::max(left, right) + 1;
        if (bernoulli(gen, p_levels[level])) {
            return total;
        }
    }
}

}  // namespace

void sim_config::validate() const {
    if (p_levels.size() < 2) {
        throw invalid_parameter(
            "p_levels needs at least a link stage and a post-selection stage");
    }
    for (double p : p_levels) {
        if (!(p > 0.0)) {
            throw divergence_error("stage success probability must be positive");
        }
        if (p > 1.0) {
            throw invalid_parameter("stage success probability must be at most 1");
        }
    }
    if (!(slot_s > 0.0) || !std::isfinite(slot_s)) {
        throw invalid_parameter("slot duration must be positive and finite");
    }
    if (trials < 1) {
        throw invalid_parameter("at least one trial is required");
    }
}

std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t sample_trial_slots(const sim_config& cfg, std::uint64_t trial) {
    auto gen = rng_stream(cfg.seed, trial);
    std::size_t top = cfg.p_levels.size() - 2;
    double p_pr = cfg.p_levels.back();
    if (p_pr >= 1.0) {
        // Degenerate calibration point: a post-selection that cannot fail is
        // treated as absent, so a single chain decides the waiting time.
        return segment_slots(gen, cfg.p_levels, top);
    }
    std::uint64_t total = 0;
    for (;;) {
        std::uint64_t first = segment_slots(gen, cfg.p_levels, top);
        std::uint64_t second = segment_slots(gen, cfg.p_levels, top);
        total += std::max(first, second);
        if (bernoulli(gen, p_pr)) {
            return total;
        }
    }
}

sim_result simulate(const sim_config& cfg) {
    cfg.validate();
    sim_result res;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        std::uint64_t slots = sample_trial_slots(cfg, trial);
        double x = static_cast<double>(slots);
        sum += x;
        sum_sq += x * x;
        ++res.histogram[slots];
    }
    double n = static_cast<double>(cfg.trials);
    double mean = sum / n;
    res.mean_s = mean * cfg.slot_s;
    if (cfg.trials > 1) {
        double var = (sum_sq - n * mean * mean) / (n - 1.0);
        var = std::max(0.0, var);
        res.stderr_s = cfg.slot_s * std::sqrt(var / n);
    }
    return res;
}

}  // namespace qrep::wtime
