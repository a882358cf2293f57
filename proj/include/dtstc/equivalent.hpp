#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "dtstc/coding.hpp"
#include "dtstc/config.hpp"
#include "dtstc/delay.hpp"

namespace dtstc {

// Linearized destination-side model of one relay's noiseless contribution.
// With the relay's conjugation mask applied to the stacked received window,
// the contribution becomes linear in the symbol vector and factors as
//
//   masked contribution = Delta_k * channel_part * code_part * symbol_part * s
//
// channel_part carries the fading matrix (and its conjugate copy for the
// conjugated slot), code_part carries the adjustable code parameters in
// block-diagonal/diagonal equivalent form, and symbol_part is the constant
// matrix encoding the Alamouti structure. The mask conjugates received slot j
// iff (j - delta_k) is odd, i.e. the relay's own second codeword column.
struct EquivalentModel {
    Eigen::MatrixXcd channel_part;
    Eigen::MatrixXcd code_part;
    Eigen::MatrixXcd symbol_part;
    std::vector<bool> conj_mask;  // one flag per received relay-window sample
    int delta = 0;
    int delta_max = 0;
    int slots = 2;
    int n_dest = 1;

    // Full relay-window map acting on s, delay shift included.
    Eigen::MatrixXcd combined() const {
        const Eigen::MatrixXd shift =
            delay_operator(delta, delta_max, slots, n_dest);
        return shift * (channel_part * code_part * symbol_part);
    }
};

inline Eigen::VectorXcd apply_conj_mask(const Eigen::VectorXcd& v,
                                        const std::vector<bool>& mask) {
    Eigen::VectorXcd out = v;
    for (Eigen::Index i = 0; i < out.size() && i < static_cast<Eigen::Index>(mask.size()); ++i)
        if (mask[i]) out[i] = std::conj(out[i]);
    return out;
}

namespace detail {

inline std::vector<bool> parity_mask(int delta, int delta_max, int slots,
                                     int n_dest, bool conjugating) {
    std::vector<bool> mask(static_cast<std::size_t>(n_dest * (delta_max + slots)),
                           false);
    if (!conjugating) return mask;
    for (int j = 0; j < delta_max + slots; ++j)
        if (((j - delta) % 2 + 2) % 2 == 1)
            for (int a = 0; a < n_dest; ++a) mask[j * n_dest + a] = true;
    return mask;
}

}  // namespace detail

// g_k: n_dest x B fading matrix of relay k's second hop.
inline EquivalentModel build_equivalent_model(const SystemConfig& cfg,
                                              const Eigen::MatrixXcd& g_k,
                                              const CodeMatrix& code, int k) {
    const int nd = cfg.dest_antennas();
    const int t = cfg.t;
    EquivalentModel m;
    m.delta = cfg.delays.at(k);
    m.delta_max = cfg.delta_max;
    m.slots = t;
    m.n_dest = nd;

    if (cfg.topology == Topology::MAS) {
        // masked = blkdiag(G, conj G) * blkdiag(Phi, conj Phi) * [I; Jm] * s
        const Eigen::MatrixXcd& phi = code.mas.at(k);
        const int n = cfg.n;
        m.channel_part = Eigen::MatrixXcd::Zero(t * nd, t * n);
        m.channel_part.topLeftCorner(nd, n) = g_k;
        m.channel_part.bottomRightCorner(nd, n) = g_k.conjugate();
        m.code_part = Eigen::MatrixXcd::Zero(t * n, t * n);
        m.code_part.topLeftCorner(n, n) = phi;
        m.code_part.bottomRightCorner(n, n) = phi.conjugate();
        m.symbol_part = Eigen::MatrixXcd::Zero(t * n, n);
        m.symbol_part.topLeftCorner(n, n).setIdentity();
        m.symbol_part(n, 1) = -1.0;  // Jm = [[0,-1],[1,0]]
        m.symbol_part(n + 1, 0) = 1.0;
        m.conj_mask = detail::parity_mask(m.delta, m.delta_max, t, nd, true);
        return m;
    }

    // SAS: relay k transmits its per-slot gains times codeword row k.
    const Eigen::RowVectorXcd& gains = code.sas.at(k);
    if (cfg.n == 1) {
        // Repetition baseline, no conjugate slot.
        m.channel_part = Eigen::MatrixXcd::Zero(t * nd, t);
        m.channel_part.topLeftCorner(nd, 1) = g_k;
        m.channel_part.bottomRightCorner(nd, 1) = g_k;
        m.code_part = Eigen::MatrixXcd::Zero(t, t);
        m.code_part(0, 0) = gains[0];
        m.code_part(1, 1) = gains[1];
        m.symbol_part = Eigen::MatrixXcd::Ones(t, 1);
        m.conj_mask = detail::parity_mask(m.delta, m.delta_max, t, nd, false);
        return m;
    }

    // masked = blkdiag(g, conj g) * diag(phi1, conj phi2) * Q_k * s
    m.channel_part = Eigen::MatrixXcd::Zero(t * nd, t);
    m.channel_part.topLeftCorner(nd, 1) = g_k;
    m.channel_part.bottomRightCorner(nd, 1) = g_k.conjugate();
    m.code_part = Eigen::MatrixXcd::Zero(t, t);
    m.code_part(0, 0) = gains[0];
    m.code_part(1, 1) = std::conj(gains[1]);
    m.symbol_part = Eigen::MatrixXcd::Zero(t, cfg.n);
    if (k == 0) {
        m.symbol_part(0, 0) = 1.0;
        m.symbol_part(1, 1) = -1.0;
    } else {
        m.symbol_part(0, 1) = 1.0;
        m.symbol_part(1, 0) = 1.0;
    }
    m.conj_mask = detail::parity_mask(m.delta, m.delta_max, t, nd, true);
    return m;
}

}  // namespace dtstc
