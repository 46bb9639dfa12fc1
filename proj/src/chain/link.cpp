#include "qrep/chain/link.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qrep/errors.hpp"

namespace qrep::chain {

namespace {

struct herald_result {
    double p_success = 0.0;
    fock::mixed_state state;
};

// Measures the two station modes and keeps the branches with exactly one
// detected count in total.  The two click patterns differ by a known local
// phase; a parity flip on phase_mode folds them onto the same state.  Also
// checks that the full outcome distribution is normalized.
herald_result herald_single_count(const fock::mixed_state& joint, const std::string& det1,
                                  const std::string& det2, const fock::detector_model& det,
                                  const std::string& phase_mode) {
    herald_result out;
    bool have_state = false;
    double total = 0.0;

    for (const auto& first : fock::measure_pnr(joint, det1, det)) {
        for (const auto& second : fock::measure_pnr(first.conditional, det2, det)) {
            const double p_branch = first.probability * second.probability;
            total += p_branch;
            if (first.count + second.count != 1) continue;

            fock::mixed_state branch = second.conditional;
            if (first.count == 0) branch = fock::apply_parity_phase(branch, phase_mode);
            if (!have_state) {
                out.state = fock::mixed_state(branch.reg);
                have_state = true;
            }
            for (std::size_t k = 0; k < branch.rho.size(); ++k)
                out.state.rho[k] += p_branch * branch.rho[k];
            out.p_success += p_branch;
        }
    }

    if (std::abs(total - 1.0) > 1e-9)
        throw divergence_error("detection outcome probabilities do not sum to one");
    if (out.p_success <= 0.0)
        throw divergence_error("heralding succeeds with zero probability for these parameters");
    out.state.normalize();
    return out;
}

link_outcome summarize(double p_success, fock::mixed_state state) {
    const auto& reg = state.reg;
    link_outcome out;
    out.p_success = p_success;
    for (std::size_t i = 0; i < reg.dim(); ++i) {
        const double population = state.at(i, i).real();
        switch (reg.occupation(i, 0) + reg.occupation(i, 1)) {
            case 0: out.w_vac += population; break;
            case 1: out.w_single += population; break;
            default: out.w_double += population; break;
        }
    }

    fock::pure_state target(reg);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    target.amp[reg.pack({1, 0})] = inv_sqrt2;
    target.amp[reg.pack({0, 1})] = inv_sqrt2;
    const double overlap = fock::fidelity(state, target);
    out.f_single = out.w_single > 0.0 ? overlap / out.w_single : 0.0;

    out.state = std::move(state);
    return out;
}

}  // namespace

link_outcome elementary_link(const link_spec& spec) {
    spec.source.validate();
    if (spec.eta_t < 0.0 || spec.eta_t > 1.0)
        throw invalid_parameter("fiber transmission must lie in [0, 1]");
    if (spec.truncation < spec.source.required_truncation())
        throw invalid_parameter("link cutoff too small for this source");

    const fock::mode_register end({"a", "f"}, spec.truncation);
    fock::mixed_state end_state = emit(spec.source, end, "a", "f");
    if (spec.source.kind == source_model::kind_t::single_photon) {
        end_state = fock::apply_beamsplitter(end_state, "a", "f",
                                             fock::beam_splitter_spec::from_beta_sq(spec.beta_sq));
    }
    end_state = fock::apply_loss(end_state, "f", spec.eta_t);

    fock::mixed_state joint = fock::tensor_product(end_state, end_state, {"a1", "f1", "a2", "f2"});
    joint = fock::apply_beamsplitter(joint, "f1", "f2", fock::beam_splitter_spec::balanced());

    herald_result h = herald_single_count(joint, "f1", "f2", spec.detector, "a1");
    return summarize(h.p_success, std::move(h.state));
}

link_outcome elementary_link(const repeater_params& params) {
    params.validate();
    return elementary_link(link_spec{params.source, params.beta_sq, params.eta_t(),
                                     params.detector, params.source.required_truncation()});
}

link_outcome swap_links(const link_outcome& left, const link_outcome& right, double eta_m,
                        const fock::detector_model& det) {
    if (left.state.reg.n_modes() != 2 || right.state.reg.n_modes() != 2)
        throw invalid_parameter("swapping expects two-memory link states");
    if (left.state.reg.truncation() != right.state.reg.truncation())
        throw invalid_parameter("swapping expects matching cutoffs");
    if (eta_m < 0.0 || eta_m > 1.0)
        throw invalid_parameter("memory efficiency must lie in [0, 1]");

    fock::mixed_state joint =
        fock::tensor_product(left.state, right.state, {"a", "m1", "m2", "z"});
    joint = fock::apply_loss(joint, "m1", eta_m);
    joint = fock::apply_loss(joint, "m2", eta_m);
    joint = fock::apply_beamsplitter(joint, "m1", "m2", fock::beam_splitter_spec::balanced());

    herald_result h = herald_single_count(joint, "m1", "m2", det, "a");
    return summarize(h.p_success, std::move(h.state));
}

postselect_result postselect(const link_outcome& link1, const link_outcome& link2, double eta) {
    if (link1.state.reg.n_modes() != 2 || link2.state.reg.n_modes() != 2)
        throw invalid_parameter("post-selection expects two-memory link states");
    if (link1.state.reg.truncation() != link2.state.reg.truncation())
        throw invalid_parameter("post-selection expects matching cutoffs");
    if (eta < 0.0 || eta > 1.0) throw invalid_parameter("read-out efficiency must lie in [0, 1]");

    // Modes a1, a2 sit at one end location, z1, z2 at the other.
    fock::mixed_state joint =
        fock::tensor_product(link1.state, link2.state, {"a1", "z1", "a2", "z2"});
    for (const char* mode : {"a1", "z1", "a2", "z2"}) joint = fock::apply_loss(joint, mode, eta);

    const auto& reg = joint.reg;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < reg.dim(); ++i) {
        const bool one_per_end = reg.occupation(i, 0) + reg.occupation(i, 2) == 1 &&
                                 reg.occupation(i, 1) + reg.occupation(i, 3) == 1;
        if (one_per_end) kept.push_back(i);
    }

    postselect_result out;
    for (std::size_t i : kept) out.p_pr += joint.at(i, i).real();
    if (out.p_pr <= 0.0) return {0.0, 0.0};

    fock::mixed_state projected(reg);
    for (std::size_t r : kept)
        for (std::size_t c : kept) projected.at(r, c) = joint.at(r, c);

    fock::pure_state target(reg);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    target.amp[reg.pack({1, 0, 0, 1})] = inv_sqrt2;
    target.amp[reg.pack({0, 1, 1, 0})] = inv_sqrt2;
    out.fidelity = fock::fidelity(projected, target) / out.p_pr;
    return out;
}

}  // namespace qrep::chain
