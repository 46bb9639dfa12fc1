#include "qrep/cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrep/chain/link.hpp"
#include "qrep/errors.hpp"
#include "qrep/rate/optimize.hpp"
#include "qrep/wtime/sim.hpp"

namespace qrep::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// Round to six significant digits so CSV and JSON carry the same values.
double sig6(double x) {
    return std::strtod(fmt6(x).c_str(), nullptr);
}

std::string csv_cell(const ordered_json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    if (v.is_number_unsigned()) {
        return std::to_string(v.get<unsigned long long>());
    }
    return fmt6(v.get<double>());
}

std::string render(const run_config& cfg, const std::vector<ordered_json>& rows) {
    if (cfg.format == "json") {
        ordered_json doc;
        doc["rows"] = rows;
        return doc.dump(2) + "\n";
    }
    std::string text;
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
        (void)value;
        if (!first) {
            text += ',';
        }
        text += key;
        first = false;
    }
    text += '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [key, value] : row.items()) {
            (void)key;
            if (!first) {
                text += ',';
            }
            text += csv_cell(value);
            first = false;
        }
        text += '\n';
    }
    return text;
}

void emit(const run_config& cfg, const std::vector<ordered_json>& rows) {
    std::string text = render(cfg, rows);
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) {
        throw invalid_parameter("cannot open output file '" + cfg.out + "'");
    }
    out << text;
}

}  // namespace

int cmd_table1(const run_config& cfg) {
    cfg.validate();
    auto table = rate::gain_table(cfg.distances, cfg.target_fidelity, cfg.base);
    std::vector<ordered_json> rows;
    for (const auto& r : table) {
        ordered_json row;
        row["distance_km"] = sig6(r.distance_km);
        row["T_dlcz_s"] = sig6(r.dlcz.t_tot_s);
        row["n_dlcz"] = r.dlcz.n;
        row["T_sps_s"] = sig6(r.sps.t_tot_s);
        row["n_sps"] = r.sps.n;
        row["beta_sq"] = sig6(r.sps.beta_sq);
        row["gain"] = sig6(r.gain);
        rows.push_back(row);
    }
    emit(cfg, rows);
    return 0;
}

int cmd_thresholds(const run_config& cfg) {
    cfg.validate();
    // The first-order fidelity formulas are specific to the eight-link
    // configuration, so the threshold report always evaluates them there.
    chain::repeater_params params = cfg.base;
    params.n = 3;
    double p2 = rate::twophoton_threshold(params, cfg.target_fidelity);
    double p_dark = rate::dark_threshold(params, cfg.target_fidelity);
    double p1_cross = rate::crossover_p1(cfg.distances.front(), cfg.base, cfg.target_fidelity);

    ordered_json row;
    row["target_fidelity"] = sig6(cfg.target_fidelity);
    row["p2_threshold"] = sig6(p2);
    row["p_dark_threshold"] = sig6(p_dark);
    // Commonly quoted reference value for the same dark-count threshold,
    // printed alongside the computed one instead of being forced to match.
    row["p_dark_reference"] = sig6(4.6e-6);
    row["p1_crossover"] = sig6(p1_cross);
    emit(cfg, {row});
    return 0;
}

int cmd_oracle_check(const run_config& cfg) {
    cfg.validate();
    std::vector<ordered_json> rows;
    bool all_pass = true;
    auto add = [&](const std::string& name, double measured, double lower, double upper) {
        bool pass = measured >= lower && measured <= upper;
        all_pass = all_pass && pass;
        ordered_json row;
        row["check"] = name;
        row["measured"] = sig6(measured);
        row["lower"] = sig6(lower);
        row["upper"] = sig6(upper);
        row["pass"] = pass;
        rows.push_back(row);
    };

    // Perfect source and detectors, vanishing transmission: the heralded
    // state reduces to its three-component form exactly.
    chain::link_spec ideal;
    ideal.source = chain::source_model::single_photon(1.0);
    ideal.beta_sq = cfg.base.beta_sq;
    ideal.eta_t = 1e-13;
    ideal.detector = fock::detector_model{1.0, 0.0};
    auto il = chain::elementary_link(ideal);
    double b2 = cfg.base.beta_sq;
    add("ideal_w_vac", il.w_vac, b2 - 1e-12, b2 + 1e-12);
    add("ideal_w_single", il.w_single, 1.0 - b2 - 1e-12, 1.0 - b2 + 1e-12);
    add("ideal_w_double", il.w_double, -1e-12, 1e-12);
    add("ideal_f_single", il.f_single, 1.0 - 1e-12, 1.0 + 1e-12);

    // Configured link against the first-order success probability.
    auto real = chain::elementary_link(cfg.base);
    double first_order = 2.0 * cfg.base.source.p1 * cfg.base.beta_sq * cfg.base.eta_t() *
                         cfg.base.detector.eta_d;
    add("p0_over_first_order", real.p_success / first_order, 0.9, 1.1);

    // Pair sources leak a double-excitation component even with perfect
    // detectors; the state-level model must report it.
    chain::link_spec pair_spec;
    pair_spec.source = chain::source_model::pair(0.003);
    pair_spec.eta_t = cfg.base.eta_t();
    pair_spec.detector = fock::detector_model{1.0, 0.0};
    pair_spec.truncation = pair_spec.source.required_truncation();
    auto pl = chain::elementary_link(pair_spec);
    add("pair_w_double", pl.w_double, 1e-12, 1.0);

    emit(cfg, rows);
    return all_pass ? 0 : 4;
}

int cmd_simulate(const run_config& cfg) {
    cfg.validate();
    chain::repeater_params params = cfg.base;
    params.L_km = cfg.distances.front();

    wtime::sim_config sc;
    if (!cfg.p_levels.empty()) {
        sc.p_levels = cfg.p_levels;
        params.n = static_cast<int>(cfg.p_levels.size()) - 2;
    } else {
        auto report = chain::chain_analysis(params);
        sc.p_levels = report.p_levels;
        sc.p_levels.push_back(report.p_pr);
    }
    sc.slot_s = params.slot_s();
    sc.trials = cfg.trials;
    sc.seed = cfg.seed;
    auto res = wtime::simulate(sc);

    std::vector<double> swaps(sc.p_levels.begin() + 1, sc.p_levels.end() - 1);
    double predicted = rate::t_tot_generic(sc.p_levels.front(), swaps, sc.p_levels.back(),
                                           params.L0_km(), params.c_m_per_s);

    ordered_json row;
    row["seed"] = cfg.seed;
    row["trials"] = cfg.trials;
    row["distance_km"] = sig6(params.L_km);
    row["n"] = static_cast<int>(sc.p_levels.size()) - 2;
    row["slot_s"] = sig6(sc.slot_s);
    row["mean_s"] = sig6(res.mean_s);
    row["stderr_s"] = sig6(res.stderr_s);
    row["predicted_s"] = sig6(predicted);
    row["ratio"] = sig6(res.mean_s / predicted);
    emit(cfg, {row});
    return 0;
}

int cmd_optimize(const run_config& cfg) {
    cfg.validate();
    std::vector<ordered_json> rows;
    for (double d : cfg.distances) {
        auto opt = rate::optimize_sps(d, cfg.base);
        ordered_json row;
        row["distance_km"] = sig6(d);
        row["n"] = opt.n;
        row["beta_sq"] = sig6(opt.beta_sq);
        row["T_sps_s"] = sig6(opt.t_tot_s);
        rows.push_back(row);
    }
    emit(cfg, rows);
    return 0;
}

}  // namespace qrep::cli
