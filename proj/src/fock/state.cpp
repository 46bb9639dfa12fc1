#include "qrep/fock/state.hpp"

#include <cmath>

#include "qrep/errors.hpp"

namespace qrep::fock {

pure_state::pure_state(mode_register r) : reg(std::move(r)), amp(reg.dim(), cplx(0.0, 0.0)) {}

double pure_state::norm2() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

void pure_state::normalize() {
    const double n2 = norm2();
    if (n2 <= 0.0) {
        throw divergence_error("pure_state: cannot normalize zero vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amp) a *= inv;
}

mixed_state::mixed_state(mode_register r)
    : reg(std::move(r)), rho(reg.dim() * reg.dim(), cplx(0.0, 0.0)) {}

double mixed_state::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < reg.dim(); ++i) t += at(i, i).real();
    return t;
}

void mixed_state::normalize() {
    const double t = trace();
    if (t <= 0.0) {
        throw divergence_error("mixed_state: cannot normalize zero-trace matrix");
    }
    const double inv = 1.0 / t;
    for (auto& x : rho) x *= inv;
}

double mixed_state::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < reg.dim(); ++i) {
        for (std::size_t j = i; j < reg.dim(); ++j) {
            const cplx d = at(i, j) - std::conj(at(j, i));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

mixed_state to_mixed(const pure_state& psi) {
    mixed_state rho(psi.reg);
    const std::size_t d = psi.reg.dim();
    for (std::size_t i = 0; i < d; ++i) {
        if (psi.amp[i] == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < d; ++j) {
            rho.at(i, j) = psi.amp[i] * std::conj(psi.amp[j]);
        }
    }
    return rho;
}

}  // namespace qrep::fock
