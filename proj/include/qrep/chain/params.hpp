#pragma once

#include <cmath>

#include "qrep/chain/source.hpp"

namespace qrep::chain {

// Full parameter set for a nested repeater chain over total distance L_km
// with 2^n elementary links.  Defaults follow the reference operating point
// used throughout: memory and detector efficiency 0.9, source emission
// probability 0.95, attenuation length 22 km, signal velocity 2e8 m/s.
struct repeater_params {
    double L_km = 1000.0;
    int n = 3;
    double L_att_km = 22.0;
    double c_m_per_s = 2.0e8;

    double eta_m = 0.9;                       // memory read-out efficiency
    fock::detector_model detector{0.9, 0.0};  // link-creation detectors
    double swap_p_dark = 0.0;                 // dark counts during swapping

    double beta_sq = 0.11;  // local splitter transmission (single-photon kind)
    source_model source = source_model::single_photon(0.95);

    double L0_km() const { return L_km / static_cast<double>(1 << n); }
    double eta_t() const { return std::exp(-L0_km() / (2.0 * L_att_km)); }
    double eta() const { return eta_m * detector.eta_d; }  // combined read-out
    double slot_s() const { return L0_km() * 1000.0 / c_m_per_s; }

    void validate() const;
};

}  // namespace qrep::chain
