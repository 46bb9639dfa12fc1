#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qrep/cli/commands.hpp"
#include "qrep/errors.hpp"

namespace {

std::string key_of(const std::string& flag) {
    std::string key = flag.substr(2);
    for (auto& c : key) {
        if (c == '-') {
            c = '_';
        }
    }
    return key;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate calculator and waiting-time simulator for nested repeater chains"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> flag_help = {
        {"--p1", "single-photon emission probability"},
        {"--p2", "two-photon emission probability"},
        {"--beta_sq", "local splitter transmission toward the fiber"},
        {"--eta_m", "memory read-out efficiency"},
        {"--eta_d", "detector efficiency"},
        {"--p_dark", "dark-count probability per detection window"},
        {"--swap_p_dark", "dark-count probability during swapping"},
        {"--l_att_km", "fiber attenuation length in km"},
        {"--c_m_per_s", "signal velocity in m/s"},
        {"--n", "nesting level (2^n elementary links)"},
        {"--distances", "comma-separated total distances in km"},
        {"--p_levels",
         "explicit stage probabilities for simulate, link first, post-selection last"},
        {"--target-fidelity", "end-to-end fidelity target"},
        {"--trials", "Monte Carlo trial count"},
        {"--seed", "RNG seed, echoed into simulate output"},
        {"--out", "output path (default stdout)"},
        {"--format", "output format, csv or json"},
    };

    std::map<std::string, std::string> values;
    std::string config_path;
    struct bound {
        std::string key;
        CLI::Option* opt;
    };
    std::vector<bound> bound_opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key=value configuration file")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        for (const auto& [flag, help] : flag_help) {
            std::string key = key_of(flag);
            CLI::Option* opt = sub->add_option(flag, values[key], help)
                                   ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
            bound_opts.push_back({key, opt});
        }
    };

    auto* table1 = app.add_subcommand("table1", "distribution times and gains over distance");
    auto* thresholds =
        app.add_subcommand("thresholds", "error-parameter thresholds and emission crossover");
    auto* oracle =
        app.add_subcommand("oracle-check", "state-level link model against closed forms");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo waiting-time run");
    auto* optimize =
        app.add_subcommand("optimize", "optimal nesting level and splitter transmission");
    for (auto* sub : {table1, thresholds, oracle, simulate, optimize}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        qrep::cli::run_config cfg;
        if (!config_path.empty()) {
            qrep::cli::load_config_file(cfg, config_path);
        }
        for (const auto& b : bound_opts) {
            if (b.opt->count() > 0) {
                qrep::cli::apply_setting(cfg, b.key, values[b.key]);
            }
        }

        if (app.got_subcommand(table1)) {
            return qrep::cli::cmd_table1(cfg);
        }
        if (app.got_subcommand(thresholds)) {
            return qrep::cli::cmd_thresholds(cfg);
        }
        if (app.got_subcommand(oracle)) {
            return qrep::cli::cmd_oracle_check(cfg);
        }
        if (app.got_subcommand(simulate)) {
            return qrep::cli::cmd_simulate(cfg);
        }
        if (app.got_subcommand(optimize)) {
            return qrep::cli::cmd_optimize(cfg);
        }
        return 2;
    } catch (const qrep::infeasible_error& e) {
        std::cerr << "infeasible target: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
