#pragma once

#include <complex>
#include <vector>

#include "qrep/fock/basis.hpp"

namespace qrep::fock {

using cplx = std::complex<double>;

// Normalized state vector over the register's number basis.
struct pure_state {
    mode_register reg;
    std::vector<cplx> amp;

    pure_state() = default;
    explicit pure_state(mode_register r);

    double norm2() const;
    void normalize();  // throws divergence_error on zero norm
};

// Density matrix over the register's number basis, row-major.
struct mixed_state {
    mode_register reg;
    std::vector<cplx> rho;

    mixed_state() = default;
    explicit mixed_state(mode_register r);

    cplx& at(std::size_t row, std::size_t col) { return rho[row * reg.dim() + col]; }
    const cplx& at(std::size_t row, std::size_t col) const { return rho[row * reg.dim() + col]; }

    double trace() const;
    void normalize();  // throws divergence_error on zero trace

    // Largest deviation from Hermitian symmetry, for invariant checks.
    double hermiticity_defect() const;
};

mixed_state to_mixed(const pure_state& psi);

}  // namespace qrep::fock
