#include <catch2/catch_amalgamated.hpp>

#include "dtstc/detect.hpp"

using namespace dtstc;

static SystemConfig cfg_mas() {
    SystemConfig cfg;
    cfg.topology = Topology::MAS;
    cfg.n_r = 2;
    cfg.scheme = Scheme::RAlamouti;
    cfg.delays = {0, 1};
    return validate_config(cfg);
}

TEST_CASE("noiseless recovery of the transmitted candidate") {
    SystemConfig cfg = cfg_mas();
    Rng rng(31, 6);
    const CodeMatrix code =
        random_code_matrix(rng, Topology::MAS, 2, 2, cfg.p_r, 2);
    const ChannelRealization ch = draw_channel(cfg, rng);
    const Eigen::MatrixXcd cands = build_candidate_set(2);
    for (int c : {0, 7, 15}) {
        const Eigen::VectorXcd r =
            noiseless_received(cfg, ch, code, cands.col(c));
        const DetectionResult det = ml_detect(r, cfg, ch, code);
        CHECK(det.candidate_index == c);
        CHECK(det.metric == Catch::Approx(0.0).margin(1e-20));
        CHECK(det.s_hat == cands.col(c));
    }
}

TEST_CASE("single-candidate response set returns that candidate") {
    SystemConfig cfg = cfg_mas();
    Rng rng(32, 6);
    const CodeMatrix code =
        random_code_matrix(rng, Topology::MAS, 2, 2, cfg.p_r, 2);
    const ChannelRealization ch = draw_channel(cfg, rng);
    const Eigen::MatrixXcd one =
        build_candidate_responses(cfg, ch, code).leftCols(1);
    Eigen::VectorXcd r = Eigen::VectorXcd::Random(cfg.received_length());
    CHECK(ml_detect(r, one, 2).candidate_index == 0);
}

TEST_CASE("optimality against a full rescan") {
    SystemConfig cfg = cfg_mas();
    Rng rng(33, 6);
    for (int it = 0; it < 50; ++it) {
        const CodeMatrix code =
            random_code_matrix(rng, Topology::MAS, 2, 2, cfg.p_r, 2);
        const ChannelRealization ch = draw_channel(cfg, rng);
        Eigen::VectorXcd r(cfg.received_length());
        for (int i = 0; i < r.size(); ++i) r[i] = rng.noise(2.0);
        const Eigen::MatrixXcd resp = build_candidate_responses(cfg, ch, code);
        const DetectionResult det = ml_detect(r, resp, 2);
        for (int c = 0; c < resp.cols(); ++c) {
            const double alt = (r - resp.col(c)).squaredNorm();
            REQUIRE(det.metric <= alt + 1e-12);
        }
        CHECK(det.metric ==
              Catch::Approx((r - resp.col(det.candidate_index)).squaredNorm()));
    }
}

TEST_CASE("ties resolve to the lowest candidate index") {
    // Zero channel: every candidate predicts the zero vector.
    SystemConfig cfg = cfg_mas();
    ChannelRealization ch;
    ch.f = {Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2)};
    ch.g = {Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2)};
    const CodeMatrix code = scheme_code_matrix(cfg);
    Eigen::VectorXcd r = Eigen::VectorXcd::Ones(cfg.received_length());
    CHECK(ml_detect(r, cfg, ch, code).candidate_index == 0);
}

TEST_CASE("detection does not mutate the code matrices") {
    SystemConfig cfg = cfg_mas();
    Rng rng(34, 6);
    const CodeMatrix code =
        random_code_matrix(rng, Topology::MAS, 2, 2, cfg.p_r, 2);
    const CodeMatrix snapshot = code;
    const ChannelRealization ch = draw_channel(cfg, rng);
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(cfg.received_length());
    ml_detect(r, cfg, ch, code);
    CHECK(code.mas[0] == snapshot.mas[0]);
    CHECK(code.mas[1] == snapshot.mas[1]);
}
