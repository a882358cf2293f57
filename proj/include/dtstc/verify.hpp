#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "dtstc/delay.hpp"
#include "dtstc/detect.hpp"
#include "dtstc/equivalent.hpp"
#include "dtstc/rls.hpp"
#include "dtstc/simulate.hpp"

namespace dtstc {

struct VerifyReport {
    std::string suite;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline Eigen::VectorXcd random_cvec(Rng& rng, int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal_complex();
    return v;
}

}  // namespace detail

// Recursive filter vs exponentially-weighted batch solution, and the
// inverse-correlation identity P * Psi = I, on seeded random histories.
// perturb_p != 0 is the negative control that must break the suite.
inline VerifyReport verify_rls_batch(double perturb_p = 0.0) {
    VerifyReport rep{"rls-batch", true, ""};
    double worst_w = 0.0, worst_p = 0.0;
    const double lambda = 0.998, delta = 0.01;
    for (int dim : {4, 2}) {
        for (int seed = 0; seed < 20; ++seed) {
            Rng rng(derive_stream(77, 11, static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(seed)));
            RlsFilter f(dim, dim, lambda, delta);
            f.perturb_p = perturb_p;
            std::vector<Eigen::VectorXcd> xs, ds;
            for (int it = 0; it < 50; ++it) {
                const Eigen::VectorXcd x = detail::random_cvec(rng, dim);
                const Eigen::VectorXcd d = detail::random_cvec(rng, dim);
                xs.push_back(x);
                ds.push_back(d);
                f.step(x, d);
                const Eigen::MatrixXcd batch =
                    batch_ls_oracle(xs, ds, lambda, delta);
                const double rel = (f.weights() - batch).norm() / batch.norm();
                worst_w = std::max(worst_w, rel);
                Eigen::MatrixXcd psi =
                    std::pow(lambda, static_cast<double>(xs.size())) * delta *
                    Eigen::MatrixXcd::Identity(dim, dim);
                for (std::size_t i = 0; i < xs.size(); ++i)
                    psi += std::pow(lambda,
                                    static_cast<double>(xs.size() - 1 - i)) *
                           xs[i] * xs[i].adjoint();
                const double perr =
                    (f.inverse_correlation() * psi -
                     Eigen::MatrixXcd::Identity(dim, dim))
                        .norm();
                worst_p = std::max(worst_p, perr);
                if (!f.p_is_positive_definite()) rep.pass = false;
            }
        }
    }
    if (worst_w > 1e-8 || worst_p > 1e-8) rep.pass = false;
    rep.detail = "max weight dev " + std::to_string(worst_w) +
                 ", max P*Psi-I dev " + std::to_string(worst_p);
    return rep;
}

// Masked direct physical assembly vs the linearized equivalent model, over
// random codes/channels/symbols and the delay profiles {[0,0],[0,1],[0,2]}.
inline VerifyReport verify_equivalent_model() {
    VerifyReport rep{"equivalent-model", true, ""};
    double worst = 0.0;
    for (Topology topo : {Topology::MAS, Topology::SAS}) {
        for (int dmax : {0, 1, 2}) {
            SystemConfig cfg;
            cfg.topology = topo;
            cfg.scheme = Scheme::RAlamouti;
            cfg.n_r = 2;
            cfg.delays = {0, dmax};
            cfg = validate_config(cfg);
            Rng rng(derive_stream(78, 12, static_cast<std::uint64_t>(topo),
                                  static_cast<std::uint64_t>(dmax)));
            for (int it = 0; it < 1000; ++it) {
                const CodeMatrix code = random_code_matrix(
                    rng, topo, cfg.n, cfg.t, cfg.p_r, cfg.n_r);
                const ChannelRealization ch = draw_channel(cfg, rng);
                const Eigen::VectorXcd s = detail::random_cvec(rng, cfg.n);
                const Eigen::MatrixXcd m = source_codeword(cfg, s);
                for (int k = 0; k < cfg.n_r; ++k) {
                    const Eigen::VectorXcd direct = relay_contribution(
                        cfg, ch, k, relay_transmit(cfg, code, k, m));
                    const EquivalentModel eq =
                        build_equivalent_model(cfg, ch.g[k], code, k);
                    const Eigen::VectorXcd lin = eq.combined() * s;
                    const double rel =
                        (apply_conj_mask(direct, eq.conj_mask) - lin).norm() /
                        std::max(1e-300, lin.norm());
                    worst = std::max(worst, rel);
                }
            }
        }
    }
    if (worst > 1e-12) rep.pass = false;
    rep.detail = "max relative deviation " + std::to_string(worst);
    return rep;
}

// Structural identities of the zero-padded shift matrices.
inline VerifyReport verify_delay_algebra() {
    VerifyReport rep{"delay-algebra", true, ""};
    for (int dmax = 0; dmax <= 3 && rep.pass; ++dmax)
        for (int dk = 0; dk <= dmax && rep.pass; ++dk) {
            const Eigen::MatrixXd d = build_delay_matrix(dk, dmax, 2);
            if (((d.transpose() * d) - Eigen::MatrixXd::Identity(2, 2))
                    .norm() > 0)
                rep.pass = false;
            for (int r = 0; r < d.rows(); ++r)
                for (int c = 0; c < d.cols(); ++c) {
                    const double want = (r == c + dk) ? 1.0 : 0.0;
                    if (d(r, c) != want) rep.pass = false;
                }
        }
    rep.detail = rep.pass ? "orthonormal shifted-identity structure"
                          : "structure violated";
    return rep;
}

inline VerifyReport verify_power_normalization() {
    VerifyReport rep{"power-normalization", true, ""};
    double worst = 0.0;
    Rng rng(derive_stream(79, 13));
    for (int it = 0; it < 10000; ++it) {
        const Topology topo = (it % 2) ? Topology::SAS : Topology::MAS;
        const double p_r = 0.25 + rng.uniform() * 8.0;
        const CodeMatrix code =
            random_code_matrix(rng, topo, 2, 2, p_r, 2);
        worst = std::max(worst,
                         std::abs(code.total_power() - p_r) / p_r);
    }
    if (worst > 1e-12) rep.pass = false;
    rep.detail = "max relative power error " + std::to_string(worst);
    return rep;
}

// Simulated 2x1 Alamouti QPSK vs the closed-form reference.
inline VerifyReport verify_alamouti_theory() {
    VerifyReport rep{"alamouti-theory", true, ""};
    SystemConfig cfg;
    cfg.topology = Topology::MAS;
    cfg.scheme = Scheme::FullAlamoutiPerRelay;
    cfg.n_r = 1;
    cfg.n_dest = 1;
    cfg.delays = {0};
    cfg.snr_grid_db = {10.0};
    cfg.trials_per_point = 400000;
    cfg.early_stop_errors = 2000;
    cfg.seed = 4242;
    cfg = validate_config(cfg);
    const RunResult run = run_sweep(cfg);
    const double ber = run.points[0].ber();
    const double ref = theoretical_alamouti_ber(10.0);
    const double rel = std::abs(ber - ref) / ref;
    if (rel > 0.10 || run.points[0].errors < 200) rep.pass = false;
    rep.detail = "ber " + std::to_string(ber) + " vs reference " +
                 std::to_string(ref) + " (rel " + std::to_string(rel) + ")";
    return rep;
}

inline std::vector<VerifyReport> run_verification(double perturb_p = 0.0) {
    return {verify_rls_batch(perturb_p), verify_equivalent_model(),
            verify_delay_algebra(), verify_power_normalization(),
            verify_alamouti_theory()};
}

}  // namespace dtstc
