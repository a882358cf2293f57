#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtstc {

enum class Topology { MAS, SAS };
enum class RelayStrategy { DF, AF };
enum class Scheme { DAlamouti, RAlamouti, FullAlamoutiPerRelay };

struct OptimizerConfig {
    bool enabled = false;
    double lambda = 0.998;     // RLS forgetting factor
    double delta = 0.01;       // inverse-correlation initialization regularizer
    int warmup_blocks = 200;   // adaptation blocks excluded from BER counting
};

struct SystemConfig {
    Topology topology = Topology::MAS;
    int n_r = 2;               // relay count
    int n = 2;                 // antennas at source (and destination unless n_dest set)
    int t = 2;                 // code block length in slots
    int n_dest = 0;            // destination antennas; 0 means "same as n"
    std::vector<int> delays;   // per-relay slot delays, min must be 0
    bool direct_link = false;
    bool first_hop_noisy = false;
    RelayStrategy relay_strategy = RelayStrategy::DF;
    Scheme scheme = Scheme::DAlamouti;
    double p_r = 0.0;          // total relay power budget; 0 means "auto"
    double sigma_s2 = 1.0;

    OptimizerConfig optimizer;

    std::vector<double> snr_grid_db;
    long trials_per_point = 100000;
    long early_stop_errors = 200;  // 0 disables early stopping
    std::uint64_t seed = 1;

    // Cached by validate_config.
    int delta_max = 0;

    int dest_antennas() const { return n_dest > 0 ? n_dest : n; }
    int relay_antennas() const { return topology == Topology::MAS ? n : 1; }
    // Stacked relay-window length; direct-link samples are appended after it.
    int relay_window() const { return dest_antennas() * (delta_max + t); }
    int received_length() const {
        return relay_window() + (direct_link ? dest_antennas() : 0);
    }
    int bits_per_block() const { return 2 * n; }
};

// Power measure of the identity (plain D-STBC) code matrices; used as the
// default budget so every scheme is normalized to the same total power.
inline double default_power_budget(const SystemConfig& cfg) {
    if (cfg.topology == Topology::MAS) return 2.0 * cfg.n * cfg.n_r;
    return static_cast<double>(cfg.n_r * cfg.t);
}

inline SystemConfig validate_config(SystemConfig cfg) {
    if (cfg.n_r < 1) throw std::invalid_argument("config: n_r must be >= 1");
    if (cfg.n != 1 && cfg.n != 2)
        throw std::invalid_argument("config: n must be 1 or 2");
    if (cfg.t != 2) throw std::invalid_argument("config: t must be 2 (Alamouti family)");
    if (cfg.n == 1 &&
        !(cfg.topology == Topology::SAS))
        throw std::invalid_argument("config: n=1 is only supported for the SAS baseline");
    if (cfg.n_dest < 0 || cfg.n_dest > 2)
        throw std::invalid_argument("config: n_dest must be 0, 1 or 2");
    if (cfg.scheme == Scheme::FullAlamoutiPerRelay && cfg.topology == Topology::SAS)
        throw std::invalid_argument(
            "config: FullAlamoutiPerRelay requires MAS relays");
    if (cfg.topology == Topology::MAS && cfg.n != 2)
        throw std::invalid_argument("config: MAS requires n=2");
    if (cfg.topology == Topology::SAS && cfg.n_r > cfg.t)
        throw std::invalid_argument("config: SAS supports at most t relays");
    if (cfg.topology == Topology::MAS &&
        cfg.scheme == Scheme::DAlamouti && cfg.n_r > cfg.n)
        throw std::invalid_argument("config: MAS row-split needs n_r <= n");
    if (cfg.delays.empty()) cfg.delays.assign(cfg.n_r, 0);
    if (static_cast<int>(cfg.delays.size()) != cfg.n_r)
        throw std::invalid_argument("config: need one delay per relay");
    int dmin = cfg.delays[0], dmax = cfg.delays[0];
    for (int d : cfg.delays) {
        if (d < 0) throw std::invalid_argument("config: delays must be >= 0");
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (dmin != 0)
        throw std::invalid_argument(
            "config: delays are relative, min delay must be 0");
    cfg.delta_max = dmax;
    if (cfg.sigma_s2 != 1.0)
        throw std::invalid_argument("config: sigma_s2 is fixed to 1");
    if (cfg.p_r < 0.0) throw std::invalid_argument("config: p_r must be > 0");
    if (cfg.p_r == 0.0) cfg.p_r = default_power_budget(cfg);
    if (!(cfg.optimizer.lambda > 0.0 && cfg.optimizer.lambda <= 1.0))
        throw std::invalid_argument("config: optimizer lambda must be in (0,1]");
    if (cfg.optimizer.delta <= 0.0)
        throw std::invalid_argument("config: optimizer delta must be > 0");
    if (cfg.optimizer.warmup_blocks < 0)
        throw std::invalid_argument("config: warmup_blocks must be >= 0");
    if (cfg.trials_per_point < 1)
        throw std::invalid_argument("config: trials_per_point must be >= 1");
    return cfg;
}

inline std::string to_string(Topology t) {
    return t == Topology::MAS ? "MAS" : "SAS";
}
inline std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::DAlamouti: return "DAlamouti";
        case Scheme::RAlamouti: return "RAlamouti";
        default: return "FullAlamoutiPerRelay";
    }
}

inline std::string delay_profile_label(const SystemConfig& cfg) {
    std::string out = "[";
    for (std::size_t i = 0; i < cfg.delays.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(cfg.delays[i]);
    }
    return out + "]";
}

}  // namespace dtstc
