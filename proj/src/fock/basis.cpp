#include "qrep/fock/basis.hpp"

#include <algorithm>
#include <set>

#include "qrep/errors.hpp"

namespace qrep::fock {

mode_register::mode_register(std::vector<std::string> names, int truncation)
    : names_(std::move(names)), truncation_(truncation) {
    if (truncation_ < 0) {
        throw invalid_parameter("mode_register: truncation must be non-negative");
    }
    std::set<std::string> unique(names_.begin(), names_.end());
    if (unique.size() != names_.size()) {
        throw invalid_parameter("mode_register: duplicate mode names");
    }
    const std::size_t base = static_cast<std::size_t>(truncation_) + 1;
    stride_.assign(names_.size(), 1);
    dim_ = 1;
    for (std::size_t k = names_.size(); k-- > 0;) {
        stride_[k] = dim_;
        dim_ *= base;
    }
}

std::size_t mode_register::mode_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw invalid_parameter("mode_register: unknown mode label '" + name + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t mode_register::pack(const std::vector<int>& occupation) const {
    if (occupation.size() != names_.size()) {
        throw invalid_parameter("mode_register: occupation list length mismatch");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < occupation.size(); ++k) {
        if (occupation[k] < 0 || occupation[k] > truncation_) {
            throw truncation_error("mode_register: occupation outside [0, truncation]");
        }
        index += static_cast<std::size_t>(occupation[k]) * stride_[k];
    }
    return index;
}

std::vector<int> mode_register::unpack(std::size_t index) const {
    std::vector<int> occ(names_.size());
    const std::size_t base = static_cast<std::size_t>(truncation_) + 1;
    for (std::size_t k = 0; k < names_.size(); ++k) {
        occ[k] = static_cast<int>((index / stride_[k]) % base);
    }
    return occ;
}

int mode_register::occupation(std::size_t index, std::size_t mode) const {
    const std::size_t base = static_cast<std::size_t>(truncation_) + 1;
    return static_cast<int>((index / stride_[mode]) % base);
}

std::size_t mode_register::with_occupation(std::size_t index, std::size_t mode, int value) const {
    const int old = occupation(index, mode);
    return index + (static_cast<long long>(value) - old) * static_cast<long long>(stride_[mode]);
}

mode_register mode_register::without_mode(std::size_t mode) const {
    std::vector<std::string> rest;
    rest.reserve(names_.size() - 1);
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (k != mode) rest.push_back(names_[k]);
    }
    return mode_register(std::move(rest), truncation_);
}

}  // namespace qrep::fock
