#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qrep::fock {

// Ordered collection of bosonic modes sharing one per-mode photon-number
// cutoff.  Basis states are product number states, indexed lexicographically
// with the first mode most significant:
//
//   index = sum_k occ[k] * (truncation+1)^(n_modes-1-k)
//
// so dim() = (truncation+1)^n_modes.  Registers are small here (at most six
// modes at cutoff 2, or four at cutoff 4), which keeps dense matrices cheap.
class mode_register {
public:
    mode_register() = default;
    mode_register(std::vector<std::string> names, int truncation = 2);

    std::size_t n_modes() const { return names_.size(); }
    int truncation() const { return truncation_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& mode_names() const { return names_; }

    // Index of a named mode; throws invalid_parameter for unknown labels.
    std::size_t mode_index(const std::string& name) const;

    std::size_t pack(const std::vector<int>& occupation) const;
    std::vector<int> unpack(std::size_t index) const;
    int occupation(std::size_t index, std::size_t mode) const;
    // Basis index with the occupation of one mode replaced.
    std::size_t with_occupation(std::size_t index, std::size_t mode, int value) const;

    // Register with one mode removed (used after a destructive measurement).
    mode_register without_mode(std::size_t mode) const;

    bool operator==(const mode_register& other) const = default;

private:
    std::vector<std::string> names_;
    int truncation_ = 2;
    std::size_t dim_ = 1;
    std::vector<std::size_t> stride_;
};

}  // namespace qrep::fock
