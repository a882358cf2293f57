#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dtstc/channel.hpp"
#include "dtstc/equivalent.hpp"
#include "dtstc/rls.hpp"

namespace dtstc {

// Delay-tolerant adjustable-code-matrix optimization. One RLS filter per
// relay tracks that relay's code parameters from the received blocks; after
// every block the estimates are jointly renormalized to the power budget and
// fed back as the code matrices applied to the next block (feedback is
// ideal). Relays are processed sequentially, each seeing the residual after
// subtracting the other relays' contributions under their freshest
// estimates.
struct DtacmoState {
    SystemConfig cfg;
    std::vector<RlsFilter> filters;
    CodeMatrix applied;
    long blocks = 0;
};

inline int dtacmo_param_count(const SystemConfig& cfg) {
    return cfg.topology == Topology::MAS ? cfg.n * cfg.n : cfg.t;
}

inline DtacmoState dtacmo_init(const SystemConfig& cfg,
                               const CodeMatrix& initial) {
    DtacmoState st;
    st.cfg = cfg;
    st.applied = initial;
    const int p = dtacmo_param_count(cfg);
    st.filters.reserve(cfg.n_r);
    for (int k = 0; k < cfg.n_r; ++k)
        st.filters.emplace_back(1, p, cfg.optimizer.lambda,
                                cfg.optimizer.delta);
    return st;
}

namespace detail {

// Code matrices implied by the current filter estimates. MAS filters track
// vec(Phi_k); SAS filters track the diagonal of the masked equivalent
// model, whose second entry is the conjugate of the slot-2 gain.
inline CodeMatrix dtacmo_extract(const DtacmoState& st) {
    CodeMatrix code;
    code.topology = st.cfg.topology;
    for (int k = 0; k < st.cfg.n_r; ++k) {
        const Eigen::MatrixXcd& w = st.filters[k].weights();
        if (st.cfg.topology == Topology::MAS) {
            Eigen::MatrixXcd phi(st.cfg.n, st.cfg.n);
            for (int c = 0; c < st.cfg.n; ++c)
                for (int r = 0; r < st.cfg.n; ++r)
                    phi(r, c) = w(0, c * st.cfg.n + r);
            code.mas.push_back(phi);
        } else {
            Eigen::RowVectorXcd gains(st.cfg.t);
            gains[0] = w(0, 0);
            gains[1] = (st.cfg.n == 2) ? std::conj(w(0, 1)) : w(0, 1);
            code.sas.push_back(gains);
        }
    }
    return code;
}

// Regressor rows for relay k's support slots, matching the residual rows
// that are fed alongside them.
inline Eigen::MatrixXcd dtacmo_regressor(const SystemConfig& cfg,
                                         const ChannelRealization& ch, int k,
                                         const Eigen::VectorXcd& s_hat) {
    const int nd = cfg.dest_antennas();
    const Eigen::MatrixXcd m = source_codeword(cfg, s_hat);
    if (cfg.topology == Topology::MAS) {
        // vec(G Phi M) = (M^T kron G) vec(Phi)
        const int n = cfg.n;
        Eigen::MatrixXcd x(cfg.t * nd, n * n);
        for (int j = 0; j < cfg.t; ++j)
            for (int c = 0; c < n; ++c)
                x.block(j * nd, c * n, nd, n) = m(c, j) * ch.g[k];
        return x;
    }
    // Masked SAS model: rows of blkdiag(g, conj g) * diag(q1, q2) with
    // q = Q_k * s_hat, acting on (phi_1, conj(phi_2)).
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cfg.t * nd, cfg.t);
    if (cfg.n == 1) {
        x.block(0, 0, nd, 1) = s_hat[0] * ch.g[k];
        x.block(nd, 1, nd, 1) = s_hat[0] * ch.g[k];
        return x;
    }
    Eigen::Vector2cd q;
    if (k == 0)
        q << s_hat[0], -s_hat[1];
    else
        q << s_hat[1], s_hat[0];
    x.block(0, 0, nd, 1) = q[0] * ch.g[k];
    x.block(nd, 1, nd, 1) = q[1] * ch.g[k].conjugate();
    return x;
}

}  // namespace detail

// One adaptation step from the relay-window samples of a received block and
// the detected symbols. Updates the filters and, when the estimates carry
// usable power, replaces the applied code with their normalized extraction.
inline void dtacmo_update(DtacmoState& st, const ChannelRealization& ch,
                          const Eigen::VectorXcd& r_window,
                          const Eigen::VectorXcd& s_hat) {
    const SystemConfig& cfg = st.cfg;
    const int nd = cfg.dest_antennas();
    const Eigen::MatrixXcd m = source_codeword(cfg, s_hat);
    for (int k = 0; k < cfg.n_r; ++k) {
        const CodeMatrix est = detail::dtacmo_extract(st);
        Eigen::VectorXcd resid = r_window;
        for (int j = 0; j < cfg.n_r; ++j) {
            if (j == k) continue;
            resid -= relay_contribution(cfg, ch, j,
                                        relay_transmit(cfg, est, j, m));
        }
        const int off = cfg.delays[k] * nd;
        Eigen::VectorXcd d = resid.segment(off, cfg.t * nd);
        if (cfg.topology == Topology::SAS && cfg.n == 2) {
            // Conjugate the relay's second slot to match the masked model.
            d.segment(nd, nd) = d.segment(nd, nd).conjugate();
        }
        const Eigen::MatrixXcd x = detail::dtacmo_regressor(cfg, ch, k, s_hat);
        for (int i = 0; i < x.rows(); ++i)
            st.filters[k].step(x.row(i).transpose(),
                               d.segment(i, 1));
    }
    st.blocks += 1;
    CodeMatrix cand = detail::dtacmo_extract(st);
    if (cand.total_power() > 1e-12) {
        normalize_power(cand, cfg.p_r);
        st.applied = cand;
    }
}

}  // namespace dtstc
