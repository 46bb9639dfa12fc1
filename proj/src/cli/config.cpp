#include "qrep/cli/config.hpp"

#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>

#include "qrep/errors.hpp"

namespace qrep::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    std::size_t last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double x = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return x;
    } catch (const std::exception&) {
        throw invalid_parameter("value for '" + key + "' is not a number: '" + value + "'");
    }
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(value, &pos);
        if (pos != value.size() || x < 0) {
            throw std::invalid_argument(value);
        }
        return static_cast<std::uint64_t>(x);
    } catch (const std::exception&) {
        throw invalid_parameter("value for '" + key + "' is not a non-negative integer: '" +
                                value + "'");
    }
}

}  // namespace

void run_config::validate() const {
    base.validate();
    if (distances.empty()) {
        throw invalid_parameter("distance list is empty");
    }
    for (double d : distances) {
        if (!(d > 0.0)) {
            throw invalid_parameter("distances must be positive");
        }
    }
    if (!(target_fidelity > 0.0) || target_fidelity > 1.0) {
        throw invalid_parameter("target_fidelity must lie in (0, 1]");
    }
    if (trials < 1) {
        throw invalid_parameter("trials must be at least 1");
    }
    if (format != "csv" && format != "json") {
        throw invalid_parameter("format must be 'csv' or 'json'");
    }
    if (!p_levels.empty() && p_levels.size() < 2) {
        throw invalid_parameter("p_levels needs at least a link stage and a post-selection stage");
    }
}

void apply_setting(run_config& cfg, const std::string& key, const std::string& value) {
    if (key == "p1") {
        cfg.base.source = chain::source_model::single_photon(parse_double(key, value),
                                                             cfg.base.source.p2);
    } else if (key == "p2") {
        cfg.base.source = chain::source_model::single_photon(cfg.base.source.p1,
                                                             parse_double(key, value));
    } else if (key == "beta_sq") {
        cfg.base.beta_sq = parse_double(key, value);
    } else if (key == "eta_m") {
        cfg.base.eta_m = parse_double(key, value);
    } else if (key == "eta_d") {
        cfg.base.detector.eta_d = parse_double(key, value);
    } else if (key == "p_dark") {
        cfg.base.detector.p_dark = parse_double(key, value);
    } else if (key == "swap_p_dark") {
        cfg.base.swap_p_dark = parse_double(key, value);
    } else if (key == "l_att_km") {
        cfg.base.L_att_km = parse_double(key, value);
    } else if (key == "c_m_per_s") {
        cfg.base.c_m_per_s = parse_double(key, value);
    } else if (key == "n") {
        cfg.base.n = static_cast<int>(parse_count(key, value));
    } else if (key == "distances") {
        cfg.distances = parse_distances(value);
    } else if (key == "p_levels") {
        cfg.p_levels = parse_distances(value);
    } else if (key == "target_fidelity") {
        cfg.target_fidelity = parse_double(key, value);
    } else if (key == "trials") {
        cfg.trials = parse_count(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_count(key, value);
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "format") {
        cfg.format = value;
    } else {
        throw invalid_parameter("unknown configuration key '" + key + "'");
    }
}

void load_config_file(run_config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw invalid_parameter("cannot open config file '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw invalid_parameter("config line " + std::to_string(lineno) +
                                    " is not key=value: '" + t + "'");
        }
        apply_setting(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

std::vector<double> parse_distances(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    std::string t = trim(text);
    if (t.empty()) {
        return out;
    }
    while (start <= t.size()) {
        std::size_t comma = t.find(',', start);
        std::string item = comma == std::string::npos ? t.substr(start)
                                                      : t.substr(start, comma - start);
        out.push_back(parse_double("distances", trim(item)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace qrep::cli
