#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtstc/config.hpp"

namespace dtstc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline long parse_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long out = 0;
    try {
        out = std::stol(v, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos != v.size() || v.empty())
        throw ConfigError("config: invalid integer for '" + key + "': " + v);
    return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0;
    try {
        out = std::stod(v, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos != v.size() || v.empty())
        throw ConfigError("config: invalid number for '" + key + "': " + v);
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("config: '" + key + "' must be true or false, got " + v);
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    if (out.empty()) out.push_back("");
    return out;
}

inline void apply_key(SystemConfig& cfg, const std::string& section,
                      const std::string& key, const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "system") {
        if (key == "topology") {
            if (value == "MAS")
                cfg.topology = Topology::MAS;
            else if (value == "SAS")
                cfg.topology = Topology::SAS;
            else
                throw ConfigError("config: topology must be MAS or SAS, got " +
                                  value);
        } else if (key == "n_r")
            cfg.n_r = static_cast<int>(parse_long(full, value));
        else if (key == "n")
            cfg.n = static_cast<int>(parse_long(full, value));
        else if (key == "t")
            cfg.t = static_cast<int>(parse_long(full, value));
        else if (key == "n_dest")
            cfg.n_dest = static_cast<int>(parse_long(full, value));
        else if (key == "direct_link")
            cfg.direct_link = parse_bool(full, value);
        else if (key == "first_hop_noisy")
            cfg.first_hop_noisy = parse_bool(full, value);
        else if (key == "relay_strategy") {
            if (value == "DF")
                cfg.relay_strategy = RelayStrategy::DF;
            else if (value == "AF")
                cfg.relay_strategy = RelayStrategy::AF;
            else
                throw ConfigError("config: relay_strategy must be DF or AF");
        } else if (key == "scheme") {
            if (value == "DAlamouti")
                cfg.scheme = Scheme::DAlamouti;
            else if (value == "RAlamouti")
                cfg.scheme = Scheme::RAlamouti;
            else if (value == "FullAlamoutiPerRelay")
                cfg.scheme = Scheme::FullAlamoutiPerRelay;
            else
                throw ConfigError("config: unknown scheme " + value);
        } else if (key == "p_r")
            cfg.p_r = parse_double(full, value);
        else if (key == "sigma_s2")
            cfg.sigma_s2 = parse_double(full, value);
        else
            throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "delays") {
        if (key == "delays") {
            cfg.delays.clear();
            for (const std::string& d : split_list(value))
                cfg.delays.push_back(static_cast<int>(parse_long(full, d)));
        } else
            throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "optimizer") {
        if (key == "enabled")
            cfg.optimizer.enabled = parse_bool(full, value);
        else if (key == "lambda")
            cfg.optimizer.lambda = parse_double(full, value);
        else if (key == "delta")
            cfg.optimizer.delta = parse_double(full, value);
        else if (key == "warmup_blocks")
            cfg.optimizer.warmup_blocks =
                static_cast<int>(parse_long(full, value));
        else
            throw ConfigError("config: unknown key '" + full + "'");
    } else if (section == "sweep") {
        if (key == "snr_db") {
            cfg.snr_grid_db.clear();
            for (const std::string& d : split_list(value))
                cfg.snr_grid_db.push_back(parse_double(full, d));
        } else if (key == "trials_per_point")
            cfg.trials_per_point = parse_long(full, value);
        else if (key == "early_stop_errors")
            cfg.early_stop_errors = parse_long(full, value);
        else if (key == "seed") {
            std::size_t pos = 0;
            unsigned long long s = 0;
            try {
                s = std::stoull(value, &pos);
            } catch (...) {
                pos = 0;
            }
            if (pos != value.size() || value.empty())
                throw ConfigError("config: invalid seed: " + value);
            cfg.seed = static_cast<std::uint64_t>(s);
        }
        else
            throw ConfigError("config: unknown key '" + full + "'");
    } else {
        throw ConfigError("config: unknown section '" + section + "'");
    }
}

}  // namespace detail

// Sections [system] [delays] [optimizer] [sweep]; '#' and ';' start
// comments; lists are comma-separated; booleans are true/false. Overrides
// are "section.key=value" strings applied after the file, before
// validation.
inline SystemConfig parse_config(const std::string& text,
                                 const std::vector<std::string>& overrides = {}) {
    SystemConfig cfg;
    cfg.delays.clear();
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = detail::trim(line);
        if (line.empty()) continue;
        try {
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("config: malformed section header");
                section = detail::trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config: expected key=value");
            if (section.empty())
                throw ConfigError("config: key before any [section]");
            detail::apply_key(cfg, section, detail::trim(line.substr(0, eq)),
                              detail::trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " (line " +
                              std::to_string(lineno) + ")");
        }
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        const auto dot = ov.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigError("config: override must be section.key=value: " +
                              ov);
        detail::apply_key(cfg, detail::trim(ov.substr(0, dot)),
                          detail::trim(ov.substr(dot + 1, eq - dot - 1)),
                          detail::trim(ov.substr(eq + 1)));
    }
    try {
        return validate_config(cfg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace dtstc
