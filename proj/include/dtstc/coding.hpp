#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dtstc/config.hpp"
#include "dtstc/rng.hpp"

namespace dtstc {

// Columns are time slots: [[s1, -s2*], [s2, s1*]].
inline Eigen::Matrix2cd alamouti_encode(const Eigen::Vector2cd& s) {
    Eigen::Matrix2cd m;
    m << s[0], -std::conj(s[1]), s[1], std::conj(s[0]);
    return m;
}

inline Eigen::RowVectorXcd sas_allocate_row(const Eigen::MatrixXcd& codeword,
                                            int k) {
    if (k < 0 || k >= codeword.rows())
        throw std::out_of_range("sas_allocate_row: relay index out of range");
    return codeword.row(k);
}

// Per-relay adjustable code matrices. MAS relays carry an n x n matrix
// applied to the full codeword; SAS relays carry per-slot gains applied
// elementwise to their allocated codeword row.
struct CodeMatrix {
    Topology topology = Topology::MAS;
    std::vector<Eigen::MatrixXcd> mas;       // n_r matrices, n x n
    std::vector<Eigen::RowVectorXcd> sas;    // n_r gain rows, 1 x t

    int relay_count() const {
        return topology == Topology::MAS ? static_cast<int>(mas.size())
                                         : static_cast<int>(sas.size());
    }

    // Total power in the block-diagonal equivalent form: the MAS equivalent
    // is blkdiag(Phi, conj(Phi)) per relay, so each relay counts twice its
    // Frobenius norm; the SAS equivalent is the diagonal of per-slot gains.
    double total_power() const {
        double p = 0.0;
        if (topology == Topology::MAS)
            for (const auto& m : mas) p += 2.0 * m.squaredNorm();
        else
            for (const auto& g : sas) p += g.squaredNorm();
        return p;
    }
};

inline void normalize_power(CodeMatrix& code, double p_r) {
    const double p = code.total_power();
    if (!(p > 0.0))
        throw std::invalid_argument("normalize_power: all-zero code matrix");
    const double c = std::sqrt(p_r / p);
    for (auto& m : code.mas) m *= c;
    for (auto& g : code.sas) g *= c;
}

// Identity-structured code matrices of the named scheme, normalized to p_r.
// MAS DAlamouti splits codeword rows across relays (relay k keeps row k);
// FullAlamoutiPerRelay repeats the whole codeword at every relay.
inline CodeMatrix scheme_code_matrix(const SystemConfig& cfg) {
    CodeMatrix code;
    code.topology = cfg.topology;
    if (cfg.topology == Topology::MAS) {
        for (int k = 0; k < cfg.n_r; ++k) {
            Eigen::MatrixXcd phi;
            if (cfg.scheme == Scheme::DAlamouti && cfg.n_r > 1) {
                phi = Eigen::MatrixXcd::Zero(cfg.n, cfg.n);
                phi(k, k) = 1.0;
            } else {
                phi = Eigen::MatrixXcd::Identity(cfg.n, cfg.n);
            }
            code.mas.push_back(phi);
        }
    } else {
        for (int k = 0; k < cfg.n_r; ++k)
            code.sas.push_back(Eigen::RowVectorXcd::Ones(cfg.t));
    }
    normalize_power(code, cfg.p_r);
    return code;
}

inline CodeMatrix random_code_matrix(Rng& rng, Topology topology, int n, int t,
                                     double p_r, int n_r) {
    CodeMatrix code;
    code.topology = topology;
    for (int k = 0; k < n_r; ++k) {
        if (topology == Topology::MAS) {
            Eigen::MatrixXcd phi(n, n);
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r) phi(r, c) = rng.normal_complex();
            code.mas.push_back(phi);
        } else {
            Eigen::RowVectorXcd g(t);
            for (int c = 0; c < t; ++c) g[c] = rng.normal_complex();
            code.sas.push_back(g);
        }
    }
    normalize_power(code, p_r);
    return code;
}

}  // namespace dtstc
