#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dtstc/config.hpp"
#include "dtstc/delay.hpp"
#include "dtstc/qpsk.hpp"
#include "dtstc/rng.hpp"

using namespace dtstc;

static SystemConfig base_mas() {
    SystemConfig cfg;
    cfg.topology = Topology::MAS;
    cfg.n_r = 2;
    cfg.n = 2;
    cfg.t = 2;
    return cfg;
}

TEST_CASE("config validation") {
    SECTION("MAS n_r=2 delays [0,1] accepted with delta_max cached") {
        SystemConfig cfg = base_mas();
        cfg.delays = {0, 1};
        cfg = validate_config(cfg);
        CHECK(cfg.delta_max == 1);
        CHECK(cfg.relay_window() == 2 * 3);
    }
    SECTION("synchronized delays accepted") {
        SystemConfig cfg = base_mas();
        cfg.delays = {0, 0};
        CHECK(validate_config(cfg).delta_max == 0);
    }
    SECTION("no zero-reference delay rejected") {
        SystemConfig cfg = base_mas();
        cfg.delays = {1, 2};
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SECTION("negative delay rejected") {
        SystemConfig cfg = base_mas();
        cfg.delays = {0, -1};
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SECTION("empty relay set rejected") {
        SystemConfig cfg = base_mas();
        cfg.n_r = 0;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SECTION("FullAlamoutiPerRelay with SAS rejected") {
        SystemConfig cfg = base_mas();
        cfg.topology = Topology::SAS;
        cfg.scheme = Scheme::FullAlamoutiPerRelay;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SECTION("default power budget: identity-code power") {
        CHECK(validate_config(base_mas()).p_r == 8.0);
        SystemConfig sas = base_mas();
        sas.topology = Topology::SAS;
        CHECK(validate_config(sas).p_r == 4.0);
    }
}

TEST_CASE("qpsk mapping") {
    constexpr double a = 0.7071067811865475244;
    CHECK(qpsk_map(0, 0) == cxd(a, a));
    CHECK(qpsk_map(1, 1) == cxd(-a, -a));
    CHECK(qpsk_map(0, 1) == cxd(-a, a));
    CHECK(qpsk_map(1, 0) == cxd(a, -a));
    for (int b1 : {0, 1})
        for (int b2 : {0, 1}) {
            CHECK(std::norm(qpsk_map(b1, b2)) == Catch::Approx(1.0).epsilon(1e-15));
            const auto back = qpsk_demap(qpsk_map(b1, b2));
            CHECK(back[0] == b1);
            CHECK(back[1] == b2);
        }
    CHECK(qpsk_demap(cxd(0.9, 0.8)) == std::array<int, 2>{0, 0});
    CHECK(qpsk_demap(cxd(0.0, 0.0)) == std::array<int, 2>{0, 0});
}

TEST_CASE("delay matrices") {
    CHECK(build_delay_matrix(0, 0, 2).isApprox(Eigen::MatrixXd::Identity(2, 2)));
    Eigen::MatrixXd want(3, 2);
    want << 0, 0, 1, 0, 0, 1;
    CHECK(build_delay_matrix(1, 1, 2) == want);
    want << 1, 0, 0, 1, 0, 0;
    CHECK(build_delay_matrix(0, 1, 2) == want);
    CHECK_THROWS_AS(build_delay_matrix(2, 1, 2), std::invalid_argument);

    for (int dmax = 0; dmax <= 3; ++dmax)
        for (int dk = 0; dk <= dmax; ++dk) {
            const Eigen::MatrixXd d = build_delay_matrix(dk, dmax, 2);
            CHECK((d.transpose() * d).isIdentity(0.0));
            CHECK(d.cwiseAbs().colwise().sum().isOnes(0.0));
        }
}

TEST_CASE("delay operator expands per destination antenna") {
    const Eigen::MatrixXd op = delay_operator(1, 1, 2, 2);
    REQUIRE(op.rows() == 6);
    REQUIRE(op.cols() == 4);
    Eigen::VectorXd v(4);
    v << 1, 2, 3, 4;
    Eigen::VectorXd shifted = op * v;
    Eigen::VectorXd want(6);
    want << 0, 0, 1, 2, 3, 4;
    CHECK(shifted == want);
}

TEST_CASE("candidate set enumeration") {
    const Eigen::MatrixXcd c1 = build_candidate_set(1);
    REQUIRE(c1.rows() == 1);
    REQUIRE(c1.cols() == 4);
    const Eigen::MatrixXcd c2 = build_candidate_set(2);
    REQUIRE(c2.rows() == 2);
    REQUIRE(c2.cols() == 16);
    std::set<std::pair<std::pair<double, double>, std::pair<double, double>>> seen;
    for (int c = 0; c < 16; ++c) {
        CHECK(c2.col(c).squaredNorm() == Catch::Approx(2.0).epsilon(1e-15));
        seen.insert({{c2(0, c).real(), c2(0, c).imag()},
                     {c2(1, c).real(), c2(1, c).imag()}});
    }
    CHECK(seen.size() == 16);
    for (int c = 0; c < 16; ++c) {
        const auto bits = candidate_bits(2, c);
        CHECK(bits_to_symbols(bits) == c2.col(c));
    }
}

TEST_CASE("rng streams") {
    SECTION("same derivation, same draws") {
        Rng a(7, kStreamChannel, 3, 4), b(7, kStreamChannel, 3, 4);
        for (int i = 0; i < 100; ++i) CHECK(a.normal_complex() == b.normal_complex());
    }
    SECTION("unit variance and independence") {
        Rng rng(123, kStreamChannel);
        double e2 = 0.0;
        cxd cross = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const cxd x = rng.normal_complex();
            const cxd y = rng.normal_complex();
            e2 += std::norm(x);
            cross += x * std::conj(y);
        }
        CHECK(e2 / n == Catch::Approx(1.0).margin(0.02));
        CHECK(std::abs(cross) / n < 0.02);
    }
}
