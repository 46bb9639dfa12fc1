#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

// A state component would exceed the per-mode photon-number cutoff with
// non-negligible amplitude.  Raised instead of silently clipping.
struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside its physical or structural domain (bad efficiency, unknown
// mode label, mismatched registers, malformed splitter spec, ...).
struct invalid_parameter : std::invalid_argument {
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// A rate or waiting time diverges for the given inputs (some success
// probability is zero, or a formula is evaluated at a degenerate point).
struct divergence_error : std::runtime_error {
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested target cannot be met anywhere in the search domain.
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qrep
