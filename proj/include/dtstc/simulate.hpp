#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "dtstc/channel.hpp"
#include "dtstc/detect.hpp"
#include "dtstc/dtacmo.hpp"
#include "dtstc/qpsk.hpp"

namespace dtstc {

struct BerPoint {
    double snr_db = 0.0;
    long bits = 0;
    long errors = 0;
    double ber() const { return bits > 0 ? double(errors) / double(bits) : 0.0; }
};

struct RunResult {
    std::string scheme_label;
    std::string delay_label;
    std::vector<BerPoint> points;
};

// Closed-form QPSK BER reference for a 2-branch orthogonal (Alamouti) link
// at the given average received SNR. Each branch carries half the power and
// Gray-mapped QPSK puts half the symbol energy on each bit, so the
// per-branch bit SNR entering the MRC formula is snr/4.
inline double theoretical_alamouti_ber(double snr_db) {
    const double gamma = std::pow(10.0, snr_db / 10.0) / 4.0;
    const double p = 0.5 * (1.0 - std::sqrt(gamma / (1.0 + gamma)));
    return p * p * (3.0 - 2.0 * p);
}

// Code matrices a run starts from: deterministic split for the structured
// schemes, a static draw from the shared code stream for the randomized one.
inline CodeMatrix initial_code_matrix(const SystemConfig& cfg) {
    if (cfg.scheme == Scheme::RAlamouti) {
        Rng rng(derive_stream(cfg.seed, kStreamStaticCode, 0, 0));
        return random_code_matrix(rng, cfg.topology, cfg.n, cfg.t, cfg.p_r,
                                  cfg.n_r);
    }
    return scheme_code_matrix(cfg);
}

namespace detail {

struct TrialStreams {
    Rng bits;
    Rng channel;
    Rng noise;
};

// One transmitted block: returns the actual received vector and the true
// bits; the relays re-encode their own detections when the first hop is
// noisy.
inline Eigen::VectorXcd transmit_block(const SystemConfig& cfg,
                                       const ChannelRealization& ch,
                                       const CodeMatrix& code,
                                       const Eigen::VectorXcd& s,
                                       double sigma_d2, Rng& noise_rng) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(cfg.received_length());
    const Eigen::MatrixXcd m = source_codeword(cfg, s);
    for (int k = 0; k < cfg.n_r; ++k) {
        Eigen::MatrixXcd x;
        if (cfg.relay_strategy == RelayStrategy::AF) {
            Eigen::MatrixXcd y = ch.f[k] * m;
            if (cfg.first_hop_noisy)
                for (int c = 0; c < y.cols(); ++c)
                    for (int rr = 0; rr < y.rows(); ++rr)
                        y(rr, c) += noise_rng.noise(sigma_d2);
            x = af_relay_process(cfg, y);
            if (cfg.topology == Topology::SAS)
                x = Eigen::MatrixXcd(code.sas.at(k).cwiseProduct(x.row(0)));
        } else {
            const Eigen::VectorXcd s_k =
                df_relay_symbols(cfg, ch, k, s, &noise_rng, sigma_d2);
            x = relay_transmit(cfg, code, k, source_codeword(cfg, s_k));
        }
        r.head(cfg.relay_window()) += relay_contribution(cfg, ch, k, x);
    }
    if (cfg.direct_link) r.tail(cfg.dest_antennas()) += ch.g_sd * s;
    for (int i = 0; i < r.size(); ++i) r[i] += noise_rng.noise(sigma_d2);
    return r;
}

}  // namespace detail

// Monte Carlo BER sweep over the configured SNR grid. Random streams are
// derived per purpose and SNR index from the run seed, so two runs with the
// same seed and compatible dimensions see identical bits, fading and noise
// regardless of the code matrices in use. Warmup blocks are simulated but
// not counted, keeping adaptive and static runs stream-aligned; with the
// optimizer enabled they are also the adaptation run-in.
inline RunResult run_sweep(const SystemConfig& cfg) {
    RunResult out;
    out.scheme_label = to_string(cfg.scheme);
    if (cfg.optimizer.enabled) out.scheme_label += "+DTACMO";
    out.delay_label = delay_profile_label(cfg);
    const CodeMatrix initial = initial_code_matrix(cfg);

    for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
        const double snr_db = cfg.snr_grid_db[si];
        const double sigma_d2 = sigma_d2_for_snr(cfg, snr_db);
        detail::TrialStreams st{
            Rng(derive_stream(cfg.seed, kStreamBits, si, 0)),
            Rng(derive_stream(cfg.seed, kStreamChannel, si, 0)),
            Rng(derive_stream(cfg.seed, kStreamNoise, si, 0))};
        DtacmoState adapt = dtacmo_init(cfg, initial);

        BerPoint pt;
        pt.snr_db = snr_db;
        const long warmup = cfg.optimizer.warmup_blocks;
        const long total = warmup + cfg.trials_per_point;
        for (long trial = 0; trial < total; ++trial) {
            const bool counted = trial >= warmup;
            if (counted && cfg.early_stop_errors > 0 &&
                pt.errors >= cfg.early_stop_errors)
                break;
            Eigen::VectorXcd s(cfg.n);
            std::vector<int> bits(cfg.bits_per_block());
            for (int j = 0; j < cfg.n; ++j) {
                bits[2 * j] = st.bits.bit();
                bits[2 * j + 1] = st.bits.bit();
                s[j] = qpsk_map(bits[2 * j], bits[2 * j + 1]);
            }
            const ChannelRealization ch = draw_channel(cfg, st.channel);
            const CodeMatrix& code =
                cfg.optimizer.enabled ? adapt.applied : initial;
            const Eigen::VectorXcd r = detail::transmit_block(
                cfg, ch, code, s, sigma_d2, st.noise);
            const DetectionResult det = ml_detect(r, cfg, ch, code);
            if (counted) {
                pt.bits += cfg.bits_per_block();
                const auto det_bits = candidate_bits(cfg.n, det.candidate_index);
                for (int j = 0; j < cfg.bits_per_block(); ++j)
                    pt.errors += bits[j] != det_bits[j];
            }
            if (cfg.optimizer.enabled)
                dtacmo_update(adapt, ch, r.head(cfg.relay_window()), det.s_hat);
        }
        out.points.push_back(pt);
    }
    return out;
}

// SNR (dB) at which the log-linear interpolation of the sweep crosses the
// target BER; NaN when the sweep never brackets it.
inline double snr_at_ber(const RunResult& run, double target) {
    const double lt = std::log10(target);
    for (std::size_t i = 1; i < run.points.size(); ++i) {
        const BerPoint& a = run.points[i - 1];
        const BerPoint& b = run.points[i];
        if (a.ber() <= 0.0 || b.ber() <= 0.0) continue;
        const double la = std::log10(a.ber());
        const double lb = std::log10(b.ber());
        if ((la - lt) * (lb - lt) <= 0.0 && la != lb)
            return a.snr_db + (lt - la) * (b.snr_db - a.snr_db) / (lb - la);
    }
    return std::nan("");
}

// Diversity order from a least-squares fit of log10(BER) against SNR over
// [lo_db, hi_db]: slope of -d decades per 10 dB.
inline double diversity_order(const RunResult& run, double lo_db,
                              double hi_db) {
    std::vector<double> xs, ys;
    for (const BerPoint& p : run.points) {
        if (p.snr_db < lo_db || p.snr_db > hi_db || p.ber() <= 0.0) continue;
        xs.push_back(p.snr_db / 10.0);
        ys.push_back(std::log10(p.ber()));
    }
    if (xs.size() < 2) return std::nan("");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return -num / den;
}

}  // namespace dtstc
