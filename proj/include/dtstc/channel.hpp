#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "dtstc/coding.hpp"
#include "dtstc/config.hpp"
#include "dtstc/qpsk.hpp"
#include "dtstc/rng.hpp"

namespace dtstc {

// One block-fading realization. f[k]: source-to-relay-k (B x n),
// g[k]: relay-k-to-destination (n_dest x B), g_sd: source-to-destination
// (n_dest x n, only used with a direct link).
struct ChannelRealization {
    std::vector<Eigen::MatrixXcd> f;
    std::vector<Eigen::MatrixXcd> g;
    Eigen::MatrixXcd g_sd;
};

inline Eigen::MatrixXcd draw_matrix(Rng& rng, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = rng.normal_complex();
    return m;
}

// Draw order is fixed (f per relay, then g per relay, then g_sd) so that a
// shared seed yields identical fading across schemes being compared.
inline ChannelRealization draw_channel(const SystemConfig& cfg, Rng& rng) {
    ChannelRealization ch;
    const int b = cfg.relay_antennas();
    ch.f.reserve(cfg.n_r);
    ch.g.reserve(cfg.n_r);
    for (int k = 0; k < cfg.n_r; ++k)
        ch.f.push_back(draw_matrix(rng, b, cfg.n));
    for (int k = 0; k < cfg.n_r; ++k)
        ch.g.push_back(draw_matrix(rng, cfg.dest_antennas(), b));
    if (cfg.direct_link)
        ch.g_sd = draw_matrix(rng, cfg.dest_antennas(), cfg.n);
    return ch;
}

// Source codeword: Alamouti for n=2, two-slot repetition for n=1.
inline Eigen::MatrixXcd source_codeword(const SystemConfig& cfg,
                                        const Eigen::VectorXcd& s) {
    if (cfg.n == 2) return alamouti_encode(Eigen::Vector2cd(s[0], s[1]));
    Eigen::MatrixXcd m(1, cfg.t);
    m(0, 0) = s[0];
    m(0, 1) = s[0];
    return m;
}

// Block the relay k transmits over its own t slots given the symbols it
// believes were sent (DF) or the signal it actually received (AF).
inline Eigen::MatrixXcd relay_transmit(const SystemConfig& cfg,
                                       const CodeMatrix& code, int k,
                                       const Eigen::MatrixXcd& relay_codeword) {
    if (cfg.topology == Topology::MAS) return code.mas.at(k) * relay_codeword;
    return code.sas.at(k).cwiseProduct(relay_codeword.row(k));
}

// AF: scale the (possibly noisy) first-hop observation to the per-relay
// power budget. y_k is B x t.
inline Eigen::MatrixXcd af_relay_process(const SystemConfig& cfg,
                                         const Eigen::MatrixXcd& y_k) {
    const double p_k = cfg.p_r / cfg.n_r;
    const double e = y_k.squaredNorm();
    if (e <= 0.0) return y_k;
    return std::sqrt(p_k / e) * y_k;
}

// Symbols relay k forwards under DF. With a noiseless first hop this is the
// true symbol vector; otherwise the relay ML-detects from its own window.
inline Eigen::VectorXcd df_relay_symbols(const SystemConfig& cfg,
                                         const ChannelRealization& ch, int k,
                                         const Eigen::VectorXcd& s,
                                         Rng* noise_rng, double sigma2) {
    if (!cfg.first_hop_noisy) return s;
    Eigen::MatrixXcd y = ch.f[k] * source_codeword(cfg, s);
    for (int c = 0; c < y.cols(); ++c)
        for (int r = 0; r < y.rows(); ++r) y(r, c) += noise_rng->noise(sigma2);
    const Eigen::MatrixXcd cands = build_candidate_set(cfg.n);
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd best_s = cands.col(0);
    for (int c = 0; c < cands.cols(); ++c) {
        const double d =
            (y - ch.f[k] * source_codeword(cfg, cands.col(c))).squaredNorm();
        if (d < best) {
            best = d;
            best_s = cands.col(c);
        }
    }
    return best_s;
}

// Noiseless destination contribution of relay k over the relay window,
// given the block x_k it transmits (B_tx x t, B_tx = B for MAS, 1 for SAS).
inline Eigen::VectorXcd relay_contribution(const SystemConfig& cfg,
                                           const ChannelRealization& ch, int k,
                                           const Eigen::MatrixXcd& x_k) {
    const int nd = cfg.dest_antennas();
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(cfg.relay_window());
    const int delta = cfg.delays[k];
    for (int j = 0; j < cfg.t; ++j)
        r.segment((delta + j) * nd, nd) += ch.g[k] * x_k.col(j);
    return r;
}

// Noiseless full received vector (relay window, plus the direct-link slots
// appended at the end when enabled) for symbol vector s, assuming the DF
// relays re-encode the given symbols.
inline Eigen::VectorXcd noiseless_received(const SystemConfig& cfg,
                                           const ChannelRealization& ch,
                                           const CodeMatrix& code,
                                           const Eigen::VectorXcd& s) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(cfg.received_length());
    const Eigen::MatrixXcd m = source_codeword(cfg, s);
    for (int k = 0; k < cfg.n_r; ++k) {
        Eigen::MatrixXcd x;
        if (cfg.relay_strategy == RelayStrategy::AF) {
            x = af_relay_process(cfg, ch.f[k] * m);
            if (cfg.topology == Topology::SAS) {
                Eigen::MatrixXcd xs = code.sas.at(k).cwiseProduct(x.row(0));
                x = xs;
            }
        } else {
            x = relay_transmit(cfg, code, k, m);
        }
        r.head(cfg.relay_window()) += relay_contribution(cfg, ch, k, x);
    }
    if (cfg.direct_link) r.tail(cfg.dest_antennas()) += ch.g_sd * s;
    return r;
}

// Squared Frobenius norm of the real-linear map s -> noiseless_received,
// probed with the canonical real and imaginary basis vectors.
inline double received_map_energy(const SystemConfig& cfg,
                                  const ChannelRealization& ch,
                                  const CodeMatrix& code) {
    using namespace std::complex_literals;
    double e = 0.0;
    for (int j = 0; j < cfg.n; ++j) {
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(cfg.n);
        b[j] = 1.0;
        e += noiseless_received(cfg, ch, code, b).squaredNorm();
        b[j] = 1.0i;
        e += noiseless_received(cfg, ch, code, b).squaredNorm();
    }
    return 0.5 * e;
}

// Ensemble-average received signal energy per block. Unit-variance fading
// makes this N_dest * P_R for the relay paths plus N_dest * n for the
// direct link.
inline double ensemble_received_energy(const SystemConfig& cfg) {
    double e = cfg.dest_antennas() * cfg.p_r;
    if (cfg.direct_link) e += cfg.dest_antennas() * cfg.n;
    return e;
}

// Noise variance that realizes the requested average received SNR.
inline double sigma_d2_for_snr(const SystemConfig& cfg, double snr_db) {
    const double snr_lin = std::pow(10.0, snr_db / 10.0);
    return cfg.sigma_s2 * ensemble_received_energy(cfg) /
           (cfg.received_length() * snr_lin);
}

// Instantaneous received SNR in dB; -inf when the map is identically zero.
inline double received_snr_db(const SystemConfig& cfg,
                              const ChannelRealization& ch,
                              const CodeMatrix& code, double sigma_d2) {
    const double e = received_map_energy(cfg, ch, code);
    if (e <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(cfg.sigma_s2 * e /
                             (cfg.received_length() * sigma_d2));
}

}  // namespace dtstc
