#include "qrep/chain/source.hpp"

#include <cmath>

#include "qrep/errors.hpp"

namespace qrep::chain {

source_model source_model::single_photon(double p1, double p2) {
    source_model s;
    s.kind = kind_t::single_photon;
    s.p1 = p1;
    s.p2 = p2;
    s.validate();
    return s;
}

source_model source_model::pair(double p, bool two_pair_term) {
    source_model s;
    s.kind = kind_t::pair;
    s.p = p;
    s.two_pair_term = two_pair_term;
    s.validate();
    return s;
}

int source_model::required_truncation() const {
    if (kind == kind_t::single_photon) return p2 > 0.0 ? 4 : 2;
    return two_pair_term ? 4 : 2;
}

void source_model::validate() const {
    if (kind == kind_t::single_photon) {
        if (p1 < 0.0 || p2 < 0.0 || p1 + p2 > 1.0)
            throw invalid_parameter("single-photon emission probabilities must satisfy p1, p2 >= 0 and p1 + p2 <= 1");
    } else {
        if (p < 0.0 || p >= 2.0)
            throw invalid_parameter("pair emission probability must satisfy 0 <= p < 2");
    }
}

fock::mixed_state emit(const source_model& source, const fock::mode_register& reg,
                       const std::string& local_mode, const std::string& fiber_mode) {
    source.validate();
    if (reg.truncation() < source.required_truncation())
        throw invalid_parameter("register cutoff too small for this source");

    const std::size_t local = reg.mode_index(local_mode);
    const std::size_t fiber = reg.mode_index(fiber_mode);
    if (local == fiber) throw invalid_parameter("emission modes must differ");

    std::vector<int> occ(reg.n_modes(), 0);
    fock::mixed_state rho(reg);

    if (source.kind == source_model::kind_t::single_photon) {
        const double weights[3] = {1.0 - source.p1 - source.p2, source.p1, source.p2};
        for (int n = 0; n < 3; ++n) {
            if (weights[n] <= 0.0) continue;
            occ[local] = n;
            const std::size_t idx = reg.pack(occ);
            rho.at(idx, idx) += weights[n];
        }
        return rho;
    }

    fock::pure_state psi(reg);
    psi.amp[reg.pack(occ)] = 1.0;
    occ[local] = 1;
    occ[fiber] = 1;
    psi.amp[reg.pack(occ)] = std::sqrt(source.p / 2.0);
    if (source.two_pair_term) {
        occ[local] = 2;
        occ[fiber] = 2;
        psi.amp[reg.pack(occ)] = source.p / 2.0;
    }
    psi.normalize();
    return fock::to_mixed(psi);
}

}  // namespace qrep::chain
