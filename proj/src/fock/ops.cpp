#include "qrep/fock/ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "qrep/errors.hpp"

namespace qrep::fock {

namespace {

constexpr double k_amp_tol = 1e-12;  // truncation-overflow threshold on amplitudes

// Column-sparse linear operator over the register basis: for every input
// basis index j, op[j] lists (output index i, coefficient A_ij).
using sparse_op = std::vector<std::vector<std::pair<std::size_t, cplx>>>;

double factorial(int n) {
    static const std::array<double, 13> table = {1.0,      1.0,       2.0,        6.0,
                                                 24.0,     120.0,     720.0,      5040.0,
                                                 40320.0,  362880.0,  3628800.0,  39916800.0,
                                                 479001600.0};
    return table[static_cast<std::size_t>(n)];
}

double binomial(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

pure_state apply_sparse(const pure_state& psi, const sparse_op& op,
                        const std::vector<double>& overflow_norm) {
    pure_state out(psi.reg);
    for (std::size_t j = 0; j < psi.amp.size(); ++j) {
        const cplx a = psi.amp[j];
        if (a == cplx(0.0, 0.0)) continue;
        if (std::abs(a) * overflow_norm[j] > k_amp_tol) {
            throw truncation_error("beam splitter output exceeds the photon-number cutoff");
        }
        for (const auto& [i, co] : op[j]) out.amp[i] += co * a;
    }
    return out;
}

// A rho A^+ for a column-sparse A.
mixed_state apply_sparse(const mixed_state& rho, const sparse_op& op) {
    const std::size_t d = rho.reg.dim();
    mixed_state left(rho.reg);
    for (std::size_t j = 0; j < d; ++j) {
        for (const auto& [i, co] : op[j]) {
            const cplx* src = &rho.rho[j * d];
            cplx* dst = &left.rho[i * d];
            for (std::size_t c = 0; c < d; ++c) dst[c] += co * src[c];
        }
    }
    mixed_state out(rho.reg);
    for (std::size_t j = 0; j < d; ++j) {
        for (const auto& [i, co] : op[j]) {
            const cplx cc = std::conj(co);
            for (std::size_t r = 0; r < d; ++r) {
                out.rho[r * d + i] += cc * left.rho[r * d + j];
            }
        }
    }
    return out;
}

void accumulate_sparse(mixed_state& acc, const mixed_state& rho, const sparse_op& op) {
    const mixed_state term = apply_sparse(rho, op);
    for (std::size_t k = 0; k < acc.rho.size(); ++k) acc.rho[k] += term.rho[k];
}

// Splitter action on the two named modes.  For an input pair (m, n) the image
// is the expansion of (alpha x + beta y)^m (beta x - alpha y)^n over monomials
// x^p y^q, weighted by sqrt(p! q! / (m! n!)).  Components beyond the cutoff
// are not representable; their weight is tracked per column so callers can
// reject inputs that would actually populate them.
struct bs_tables {
    sparse_op op;
    std::vector<double> overflow_norm;
};

bs_tables build_beamsplitter(const mode_register& reg, std::size_t mi, std::size_t mj,
                             const beam_splitter_spec& spec) {
    const int t = reg.truncation();
    const std::size_t d = reg.dim();
    const int pair_dim = (t + 1) * (t + 1);

    // coefficients per (m, n) input pair over outputs p in [0, m+n]
    std::vector<std::vector<double>> coeff(static_cast<std::size_t>(pair_dim));
    std::vector<double> pair_overflow(static_cast<std::size_t>(pair_dim), 0.0);
    for (int m = 0; m <= t; ++m) {
        for (int n = 0; n <= t; ++n) {
            const int N = m + n;
            std::vector<double> poly(static_cast<std::size_t>(N) + 1, 0.0);
            for (int i = 0; i <= m; ++i) {
                const double am = binomial(m, i) * std::pow(spec.alpha, i) *
                                  std::pow(spec.beta, m - i);
                for (int j = 0; j <= n; ++j) {
                    const double bn = binomial(n, j) * std::pow(spec.beta, j) *
                                      std::pow(-spec.alpha, n - j);
                    poly[static_cast<std::size_t>(i + j)] += am * bn;
                }
            }
            auto& row = coeff[static_cast<std::size_t>(m * (t + 1) + n)];
            row.assign(static_cast<std::size_t>(N) + 1, 0.0);
            double ov2 = 0.0;
            for (int p = 0; p <= N; ++p) {
                const int q = N - p;
                const double c = poly[static_cast<std::size_t>(p)] *
                                 std::sqrt(factorial(p) * factorial(q) /
                                           (factorial(m) * factorial(n)));
                if (p > t || q > t) {
                    ov2 += c * c;
                } else {
                    row[static_cast<std::size_t>(p)] = c;
                }
            }
            pair_overflow[static_cast<std::size_t>(m * (t + 1) + n)] = std::sqrt(ov2);
        }
    }

    bs_tables tables;
    tables.op.resize(d);
    tables.overflow_norm.assign(d, 0.0);
    for (std::size_t idx = 0; idx < d; ++idx) {
        const int m = reg.occupation(idx, mi);
        const int n = reg.occupation(idx, mj);
        const auto& row = coeff[static_cast<std::size_t>(m * (t + 1) + n)];
        tables.overflow_norm[idx] = pair_overflow[static_cast<std::size_t>(m * (t + 1) + n)];
        const int N = m + n;
        for (int p = 0; p <= N && p <= t; ++p) {
            const int q = N - p;
            if (q > t) continue;
            const double c = row[static_cast<std::size_t>(p)];
            if (c == 0.0) continue;
            const std::size_t out =
                reg.with_occupation(reg.with_occupation(idx, mi, p), mj, q);
            tables.op[idx].emplace_back(out, cplx(c, 0.0));
        }
    }
    return tables;
}

void check_mixed_overflow(const mixed_state& rho, const std::vector<double>& overflow_norm) {
    for (std::size_t j = 0; j < rho.reg.dim(); ++j) {
        if (overflow_norm[j] == 0.0) continue;
        const double pop = std::max(rho.at(j, j).real(), 0.0);
        if (std::sqrt(pop) * overflow_norm[j] > k_amp_tol) {
            throw truncation_error("beam splitter output exceeds the photon-number cutoff");
        }
    }
}

void validate_spec(const beam_splitter_spec& spec) {
    const double defect = std::abs(spec.alpha * spec.alpha + spec.beta * spec.beta - 1.0);
    if (!(defect <= 1e-12)) {
        throw invalid_parameter("beam_splitter_spec: alpha^2 + beta^2 must equal 1");
    }
}

std::size_t checked_mode(const mode_register& reg, const std::string& name) {
    return reg.mode_index(name);
}

}  // namespace

beam_splitter_spec beam_splitter_spec::from_beta_sq(double beta_sq) {
    if (!(beta_sq > 0.0) || !(beta_sq < 1.0)) {
        throw invalid_parameter("beam_splitter_spec: beta_sq must lie in (0, 1)");
    }
    return {std::sqrt(1.0 - beta_sq), std::sqrt(beta_sq)};
}

beam_splitter_spec beam_splitter_spec::balanced() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r};
}

pure_state prepare(const mode_register& reg, const std::vector<int>& occupation) {
    pure_state psi(reg);
    psi.amp[reg.pack(occupation)] = cplx(1.0, 0.0);
    return psi;
}

creation_result apply_creation(const pure_state& psi, const std::string& mode) {
    const std::size_t m = checked_mode(psi.reg, mode);
    const int t = psi.reg.truncation();
    pure_state raw(psi.reg);
    for (std::size_t idx = 0; idx < psi.amp.size(); ++idx) {
        const cplx a = psi.amp[idx];
        if (a == cplx(0.0, 0.0)) continue;
        const int n = psi.reg.occupation(idx, m);
        if (n == t) {
            if (std::abs(a) * std::sqrt(static_cast<double>(n + 1)) > k_amp_tol) {
                throw truncation_error("apply_creation: cutoff reached on mode '" + mode + "'");
            }
            continue;
        }
        raw.amp[psi.reg.with_occupation(idx, m, n + 1)] =
            a * std::sqrt(static_cast<double>(n + 1));
    }
    const double weight = raw.norm2();
    if (weight <= 0.0) {
        throw divergence_error("apply_creation: resulting state has zero norm");
    }
    raw.normalize();
    return {std::move(raw), weight};
}

pure_state apply_beamsplitter(const pure_state& psi, const std::string& mode_i,
                              const std::string& mode_j, const beam_splitter_spec& spec) {
    validate_spec(spec);
    const std::size_t mi = checked_mode(psi.reg, mode_i);
    const std::size_t mj = checked_mode(psi.reg, mode_j);
    if (mi == mj) throw invalid_parameter("apply_beamsplitter: modes must differ");
    const bs_tables tables = build_beamsplitter(psi.reg, mi, mj, spec);
    return apply_sparse(psi, tables.op, tables.overflow_norm);
}

mixed_state apply_beamsplitter(const mixed_state& rho, const std::string& mode_i,
                               const std::string& mode_j, const beam_splitter_spec& spec) {
    validate_spec(spec);
    const std::size_t mi = checked_mode(rho.reg, mode_i);
    const std::size_t mj = checked_mode(rho.reg, mode_j);
    if (mi == mj) throw invalid_parameter("apply_beamsplitter: modes must differ");
    const bs_tables tables = build_beamsplitter(rho.reg, mi, mj, spec);
    check_mixed_overflow(rho, tables.overflow_norm);
    return apply_sparse(rho, tables.op);
}

mixed_state apply_loss(const mixed_state& rho, const std::string& mode, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw invalid_parameter("apply_loss: eta must lie in [0, 1]");
    }
    const std::size_t m = checked_mode(rho.reg, mode);
    const int t = rho.reg.truncation();
    const std::size_t d = rho.reg.dim();

    mixed_state out(rho.reg);
    // Kraus operators E_k remove k photons:
    //   E_k |n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k>
    for (int k = 0; k <= t; ++k) {
        sparse_op op(d);
        bool nonzero = false;
        for (std::size_t idx = 0; idx < d; ++idx) {
            const int n = rho.reg.occupation(idx, m);
            if (n < k) continue;
            const double c2 = binomial(n, k) * std::pow(eta, n - k) * std::pow(1.0 - eta, k);
            if (c2 == 0.0) continue;
            op[idx].emplace_back(rho.reg.with_occupation(idx, m, n - k),
                                 cplx(std::sqrt(c2), 0.0));
            nonzero = true;
        }
        if (nonzero) accumulate_sparse(out, rho, op);
    }
    return out;
}

std::vector<pnr_outcome> measure_pnr(const mixed_state& rho, const std::string& mode,
                                     const detector_model& det) {
    if (!(det.eta_d >= 0.0) || det.eta_d > 1.0) {
        throw invalid_parameter("detector_model: eta_d must lie in [0, 1]");
    }
    if (!(det.p_dark >= 0.0) || det.p_dark > 1.0) {
        throw invalid_parameter("detector_model: p_dark must lie in [0, 1]");
    }
    const std::size_t m = checked_mode(rho.reg, mode);
    const int t = rho.reg.truncation();

    const mixed_state sigma = apply_loss(rho, mode, det.eta_d);

    // Ideal projective branches, measured mode removed by index slicing.
    const mode_register reduced = sigma.reg.without_mode(m);
    const std::size_t dr = reduced.dim();
    const std::size_t d = sigma.reg.dim();
    const std::size_t base = static_cast<std::size_t>(t) + 1;
    std::size_t stride = 1;
    {
        // stride of the measured mode in the full register
        std::size_t below = sigma.reg.n_modes() - 1 - m;
        for (std::size_t k = 0; k < below; ++k) stride *= base;
    }
    auto embed = [&](std::size_t r, int c) {
        return (r / stride) * stride * base + static_cast<std::size_t>(c) * stride + (r % stride);
    };
    (void)d;

    std::vector<mixed_state> branch;
    branch.reserve(base);
    for (int c = 0; c <= t; ++c) {
        mixed_state slice(reduced);
        for (std::size_t r = 0; r < dr; ++r) {
            const std::size_t fr = embed(r, c);
            for (std::size_t cc = 0; cc < dr; ++cc) {
                slice.at(r, cc) = sigma.at(fr, embed(cc, c));
            }
        }
        branch.push_back(std::move(slice));
    }

    // Dark counts: at most one extra count per window, probability p_dark.
    std::vector<mixed_state> counted;
    const int max_count = det.p_dark > 0.0 ? t + 1 : t;
    for (int c = 0; c <= max_count; ++c) {
        mixed_state acc(reduced);
        if (c <= t) {
            for (std::size_t k = 0; k < acc.rho.size(); ++k) {
                acc.rho[k] += (1.0 - det.p_dark) * branch[static_cast<std::size_t>(c)].rho[k];
            }
        }
        if (det.p_dark > 0.0 && c >= 1) {
            for (std::size_t k = 0; k < acc.rho.size(); ++k) {
                acc.rho[k] += det.p_dark * branch[static_cast<std::size_t>(c - 1)].rho[k];
            }
        }
        counted.push_back(std::move(acc));
    }

    if (!det.number_resolving && counted.size() > 2) {
        // collapse counts >= 1 into a single bucket reported as count 1
        for (std::size_t c = 2; c < counted.size(); ++c) {
            for (std::size_t k = 0; k < counted[1].rho.size(); ++k) {
                counted[1].rho[k] += counted[c].rho[k];
            }
        }
        counted.resize(2);
    }

    std::vector<pnr_outcome> outcomes;
    for (std::size_t c = 0; c < counted.size(); ++c) {
        const double p = counted[c].trace();
        if (p <= 0.0) continue;
        pnr_outcome o;
        o.count = static_cast<int>(c);
        o.probability = p;
        o.conditional = std::move(counted[c]);
        o.conditional.normalize();
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

mixed_state partial_trace(const mixed_state& rho, const std::vector<std::string>& keep) {
    if (keep.empty()) {
        throw invalid_parameter("partial_trace: keep set must not be empty");
    }
    std::vector<bool> keep_mask(rho.reg.n_modes(), false);
    for (const auto& name : keep) {
        const std::size_t m = rho.reg.mode_index(name);
        if (keep_mask[m]) throw invalid_parameter("partial_trace: duplicate mode in keep set");
        keep_mask[m] = true;
    }

    std::vector<std::string> kept_names;
    for (std::size_t k = 0; k < rho.reg.n_modes(); ++k) {
        if (keep_mask[k]) kept_names.push_back(rho.reg.mode_names()[k]);
    }
    mode_register reduced(kept_names, rho.reg.truncation());

    const std::size_t d = rho.reg.dim();
    std::vector<std::size_t> keep_part(d), trace_part(d);
    for (std::size_t idx = 0; idx < d; ++idx) {
        std::size_t kp = 0, tp = 0;
        for (std::size_t k = 0; k < rho.reg.n_modes(); ++k) {
            const int occ = rho.reg.occupation(idx, k);
            if (keep_mask[k]) {
                kp = kp * (static_cast<std::size_t>(rho.reg.truncation()) + 1) +
                     static_cast<std::size_t>(occ);
            } else {
                tp = tp * (static_cast<std::size_t>(rho.reg.truncation()) + 1) +
                     static_cast<std::size_t>(occ);
            }
        }
        keep_part[idx] = kp;
        trace_part[idx] = tp;
    }

    mixed_state out(reduced);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (trace_part[r] != trace_part[c]) continue;
            out.at(keep_part[r], keep_part[c]) += rho.at(r, c);
        }
    }
    return out;
}

double fidelity(const mixed_state& rho, const pure_state& target) {
    if (!(rho.reg == target.reg)) {
        throw invalid_parameter("fidelity: state and target registers differ");
    }
    cplx value(0.0, 0.0);
    const std::size_t d = rho.reg.dim();
    for (std::size_t i = 0; i < d; ++i) {
        if (target.amp[i] == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < d; ++j) {
            value += std::conj(target.amp[i]) * rho.at(i, j) * target.amp[j];
        }
    }
    return value.real();
}

mixed_state apply_parity_phase(const mixed_state& rho, const std::string& mode) {
    const std::size_t m = checked_mode(rho.reg, mode);
    mixed_state out = rho;
    const std::size_t d = rho.reg.dim();
    for (std::size_t r = 0; r < d; ++r) {
        const int pr = rho.reg.occupation(r, m) % 2;
        for (std::size_t c = 0; c < d; ++c) {
            const int pc = rho.reg.occupation(c, m) % 2;
            if ((pr + pc) % 2 == 1) out.at(r, c) = -out.at(r, c);
        }
    }
    return out;
}

mixed_state tensor_product(const mixed_state& a, const mixed_state& b,
                           const std::vector<std::string>& names) {
    if (a.reg.truncation() != b.reg.truncation()) {
        throw invalid_parameter("tensor_product: truncations differ");
    }
    if (names.size() != a.reg.n_modes() + b.reg.n_modes()) {
        throw invalid_parameter("tensor_product: wrong number of mode names");
    }
    mode_register reg(names, a.reg.truncation());
    mixed_state out(reg);
    const std::size_t da = a.reg.dim(), db = b.reg.dim();
    for (std::size_t ra = 0; ra < da; ++ra) {
        for (std::size_t ca = 0; ca < da; ++ca) {
            const cplx va = a.at(ra, ca);
            if (va == cplx(0.0, 0.0)) continue;
            for (std::size_t rb = 0; rb < db; ++rb) {
                for (std::size_t cb = 0; cb < db; ++cb) {
                    const cplx vb = b.at(rb, cb);
                    if (vb == cplx(0.0, 0.0)) continue;
                    out.at(ra * db + rb, ca * db + cb) = va * vb;
                }
            }
        }
    }
    return out;
}

}  // namespace qrep::fock
