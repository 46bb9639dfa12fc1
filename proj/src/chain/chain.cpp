#include <utility>

#include "qrep/chain/link.hpp"
#include "qrep/errors.hpp"
#include "qrep/rate/formulas.hpp"

namespace qrep::chain {

void repeater_params::validate() const {
    if (L_km <= 0.0) throw invalid_parameter("total distance must be positive");
    if (n < 0 || n > 5) throw invalid_parameter("nesting level must lie in [0, 5]");
    if (L_att_km <= 0.0) throw invalid_parameter("attenuation length must be positive");
    if (c_m_per_s <= 0.0) throw invalid_parameter("signal velocity must be positive");
    if (eta_m < 0.0 || eta_m > 1.0) throw invalid_parameter("memory efficiency must lie in [0, 1]");
    if (detector.eta_d < 0.0 || detector.eta_d > 1.0)
        throw invalid_parameter("detector efficiency must lie in [0, 1]");
    if (detector.p_dark < 0.0 || detector.p_dark >= 1.0)
        throw invalid_parameter("dark-count probability must lie in [0, 1)");
    if (swap_p_dark < 0.0 || swap_p_dark >= 1.0)
        throw invalid_parameter("swap dark-count probability must lie in [0, 1)");
    if (source.kind == source_model::kind_t::single_photon &&
        (beta_sq <= 0.0 || beta_sq >= 1.0))
        throw invalid_parameter("splitter transmission must lie strictly between 0 and 1");
    source.validate();
}

chain_report chain_analysis(const repeater_params& params) {
    params.validate();

    link_outcome cur = elementary_link(params);
    chain_report report;
    report.p_levels.push_back(cur.p_success);

    // All links at a given level are statistically identical, so one
    // representative per level is enough.
    fock::detector_model swap_det = params.detector;
    swap_det.p_dark = params.swap_p_dark;
    for (int level = 1; level <= params.n; ++level) {
        cur = swap_links(cur, cur, params.eta_m, swap_det);
        report.p_levels.push_back(cur.p_success);
    }

    const postselect_result ps = postselect(cur, cur, params.eta());
    report.p_pr = ps.p_pr;
    report.fidelity = ps.fidelity;

    const std::vector<double> p_swap(report.p_levels.begin() + 1, report.p_levels.end());
    report.t_tot_s = rate::t_tot_generic(report.p_levels.front(), p_swap, report.p_pr,
                                         params.L0_km(), params.c_m_per_s);
    report.top = std::move(cur);
    return report;
}

}  // namespace qrep::chain
