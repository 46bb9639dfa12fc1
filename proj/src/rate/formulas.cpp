#include "qrep/rate/formulas.hpp"

#include <cmath>

#include "qrep/errors.hpp"

namespace qrep::rate {

namespace {

void check_probability(double p, const char* what) {
    if (p > 1.0) throw invalid_parameter(std::string(what) + " exceeds one");
    if (p <= 0.0) throw divergence_error(std::string(what) + " vanishes, expected time diverges");
}

void check_sps_params(const chain::repeater_params& params) {
    params.validate();
    if (params.source.kind != chain::source_model::kind_t::single_photon)
        throw invalid_parameter("closed forms apply to the single-photon source kind only");
    if (params.beta_sq <= 0.0 || params.beta_sq >= 1.0)
        throw divergence_error("splitter transmission must lie strictly between 0 and 1");
    if (params.source.p1 <= 0.0)
        throw divergence_error("single-photon emission probability vanishes");
    if (params.eta() <= 0.0 || params.eta_t() <= 0.0)
        throw divergence_error("efficiencies must be positive");
}

}  // namespace

double t_tot_generic(double p0, const std::vector<double>& p_swap, double p_pr, double l0_km,
                     double c_m_per_s) {
    if (l0_km <= 0.0 || c_m_per_s <= 0.0)
        throw invalid_parameter("link length and signal speed must be positive");
    check_probability(p0, "link success probability");
    double denom = p0;
    for (double p : p_swap) {
        check_probability(p, "swap success probability");
        denom *= p;
    }
    check_probability(p_pr, "post-selection probability");
    denom *= p_pr;
    const double slot = l0_km * 1000.0 / c_m_per_s;
    const double stages = static_cast<double>(p_swap.size()) + 1.0;
    return std::pow(1.5, stages) * slot / denom;
}

sps_chain_probs sps_level_probabilities(const chain::repeater_params& params) {
    check_sps_params(params);
    const double p1 = params.source.p1;
    const double b2 = params.beta_sq;
    const double a2 = 1.0 - b2;
    const double eta = params.eta();

    sps_chain_probs out;
    out.p0 = 2.0 * p1 * b2 * params.eta_t() * params.detector.eta_d;
    out.s.push_back(p1 * a2);
    for (int i = 1; i <= params.n; ++i) {
        const double prev = out.s.back();
        const double cur = prev / (2.0 - prev * eta);
        out.s.push_back(cur);
        out.p_swap.push_back(0.5 * eta * prev * prev / cur);
    }
    out.p_pr = 0.5 * out.s.back() * out.s.back() * eta * eta;
    return out;
}

double t_tot_sps(const chain::repeater_params& params) {
    check_sps_params(params);
    const int n = params.n;
    const double p1 = params.source.p1;
    const double b2 = params.beta_sq;
    const double a2 = 1.0 - b2;
    const double eta = params.eta();
    const double slot = params.L0_km() * 1000.0 / params.c_m_per_s;

    double numerator = 0.5 * std::pow(3.0, n + 1) * slot;
    for (int k = 1; k <= n; ++k) {
        const double two_k = std::pow(2.0, k);
        numerator *= two_k - (two_k - 1.0) * p1 * a2 * eta;
    }
    const double denominator = params.detector.eta_d * params.eta_t() * std::pow(p1, n + 3) * b2 *
                               std::pow(a2, n + 2) * std::pow(eta, n + 2);
    return numerator / denominator;
}

namespace {

// Linear coefficient c in F = 1 - c * x for the two first-order penalties.
double dark_coefficient(const chain::repeater_params& params) {
    params.validate();
    if (params.n != 3)
        throw invalid_parameter("dark-count fidelity formula is stated for the eight-link chain (n = 3)");
    const double p1 = params.source.p1;
    const double b2 = params.beta_sq;
    const double eta = params.eta();
    const double bracket = 25.0 / (b2 * p1) - (25.0 * eta - 1.0) * (1.0 / p1 - 1.0);
    return 16.0 * bracket / (params.eta_t() * params.detector.eta_d);
}

double twophoton_coefficient(const chain::repeater_params& params) {
    params.validate();
    if (params.n != 3)
        throw invalid_parameter("two-photon fidelity formula is stated for the eight-link chain (n = 3)");
    const double p1 = params.source.p1;
    const double b2 = params.beta_sq;
    const double eta = params.eta();
    return 2.0 * (376.0 / p1 - (1.0 - b2) * (395.0 * eta - 19.0)) / p1;
}

double invert_affine(double coefficient, double target_f) {
    if (target_f >= 1.0)
        throw infeasible_error("unit target fidelity requires a vanishing error parameter");
    if (target_f <= 0.0) throw invalid_parameter("target fidelity must be positive");
    if (coefficient <= 0.0)
        throw infeasible_error("fidelity penalty is not decreasing for these parameters");
    return (1.0 - target_f) / coefficient;
}

}  // namespace

double fidelity_dark(const chain::repeater_params& params, double p_dark) {
    if (p_dark < 0.0) throw invalid_parameter("dark-count probability must be non-negative");
    return 1.0 - dark_coefficient(params) * p_dark;
}

double fidelity_twophoton(const chain::repeater_params& params, double p2) {
    if (p2 < 0.0) throw invalid_parameter("two-photon emission probability must be non-negative");
    return 1.0 - twophoton_coefficient(params) * p2;
}

double dark_threshold(const chain::repeater_params& params, double target_f) {
    return invert_affine(dark_coefficient(params), target_f);
}

double twophoton_threshold(const chain::repeater_params& params, double target_f) {
    return invert_affine(twophoton_coefficient(params), target_f);
}

}  // namespace qrep::rate
