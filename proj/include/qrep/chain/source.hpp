#pragma once

#include <string>

#include "qrep/fock/ops.hpp"

namespace qrep::chain {

// Photon source feeding one end of an elementary link.
//
// single_photon: emits n photons with probability {1-p1-p2, p1, p2} into the
// emission mode, which a local splitter then routes between memory and fiber.
//
// pair: emits a correlated memory/fiber pair, state
//   (|00> + sqrt(p/2) |11> [+ (p/2) |22>]) / norm
// where the |22> term is kept only when two_pair_term is set.
struct source_model {
    enum class kind_t { single_photon, pair };

    kind_t kind = kind_t::single_photon;
    double p1 = 1.0;
    double p2 = 0.0;
    double p = 0.0;
    bool two_pair_term = false;

    static source_model single_photon(double p1, double p2 = 0.0);
    static source_model pair(double p, bool two_pair_term = false);

    // Cutoff needed so that downstream interference never overflows: photon
    // pairs from both ends can pile up to four quanta in one detected mode.
    int required_truncation() const;

    void validate() const;
};

// Emission state on a two-mode register (memory-side mode and fiber-side
// mode).  For the single_photon kind the photons start in local_mode and the
// caller applies the local splitter; for the pair kind the two modes are
// populated jointly.
fock::mixed_state emit(const source_model& source, const fock::mode_register& reg,
                       const std::string& local_mode, const std::string& fiber_mode);

}  // namespace qrep::chain
