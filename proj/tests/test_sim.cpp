#include <catch2/catch_amalgamated.hpp>

#include "dtstc/configfile.hpp"
#include "dtstc/csvio.hpp"
#include "dtstc/simulate.hpp"

using namespace dtstc;

static SystemConfig alamouti_cfg() {
    SystemConfig cfg;
    cfg.topology = Topology::MAS;
    cfg.scheme = Scheme::FullAlamoutiPerRelay;
    cfg.n_r = 1;
    cfg.delays = {0};
    cfg.snr_grid_db = {0.0, 10.0, 20.0};
    cfg.trials_per_point = 30000;
    cfg.early_stop_errors = 0;
    cfg.seed = 77;
    return validate_config(cfg);
}

TEST_CASE("closed-form reference limits") {
    CHECK(theoretical_alamouti_ber(60.0) < 1e-5);
    CHECK(theoretical_alamouti_ber(-60.0) == Catch::Approx(0.5).margin(1e-3));
    CHECK(theoretical_alamouti_ber(10.0) > theoretical_alamouti_ber(14.0));
}

TEST_CASE("sweep: counting, monotonicity, determinism") {
    const SystemConfig cfg = alamouti_cfg();
    const RunResult run = run_sweep(cfg);
    REQUIRE(run.points.size() == 3);
    for (const BerPoint& p : run.points) {
        CHECK(p.bits == cfg.trials_per_point * cfg.bits_per_block());
        CHECK(p.ber() >= 0.0);
        CHECK(p.ber() <= 1.0);
    }
    CHECK(run.points[0].ber() > run.points[1].ber());
    CHECK(run.points[1].ber() > run.points[2].ber());

    const RunResult again = run_sweep(cfg);
    for (std::size_t i = 0; i < run.points.size(); ++i)
        CHECK(run.points[i].errors == again.points[i].errors);
}

TEST_CASE("early stopping caps the counted errors") {
    SystemConfig cfg = alamouti_cfg();
    cfg.snr_grid_db = {0.0};
    cfg.early_stop_errors = 50;
    const RunResult run = run_sweep(cfg);
    CHECK(run.points[0].errors >= 50);
    CHECK(run.points[0].errors < 50 + cfg.bits_per_block());
    CHECK(run.points[0].bits < cfg.trials_per_point * cfg.bits_per_block());
}

TEST_CASE("noiseless-limit trials make no errors") {
    SystemConfig cfg = alamouti_cfg();
    cfg.snr_grid_db = {200.0};  // sigma_d2 ~ 0
    cfg.trials_per_point = 500;
    const RunResult run = run_sweep(validate_config(cfg));
    CHECK(run.points[0].errors == 0);
}

TEST_CASE("interpolation and slope helpers") {
    RunResult run;
    run.points = {{10.0, 1000000, 10000},   // ber 1e-2
                  {20.0, 1000000, 100},     // ber 1e-4
                  {30.0, 1000000, 1}};      // ber 1e-6
    CHECK(snr_at_ber(run, 1e-3) == Catch::Approx(15.0).margin(1e-9));
    CHECK(snr_at_ber(run, 1e-5) == Catch::Approx(25.0).margin(1e-9));
    CHECK(std::isnan(snr_at_ber(run, 1e-9)));
    CHECK(diversity_order(run, 10.0, 30.0) == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("csv output") {
    SystemConfig cfg = alamouti_cfg();
    cfg.trials_per_point = 2000;
    const RunResult a = run_sweep(cfg);
    SystemConfig other = cfg;
    other.scheme = Scheme::RAlamouti;
    const RunResult b = run_sweep(validate_config(other));
    const std::string text = csv_text({a, b});

    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 2 * 3);
    CHECK(lines[0] == "scheme,delay_profile,snr_db,bits,errors,ber");
    CHECK(lines[1].rfind("FullAlamoutiPerRelay,[0],0,", 0) == 0);
    CHECK(lines[4].rfind("RAlamouti,", 0) == 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string scheme, delays, snr, bits, errors, ber;
        std::getline(row, scheme, ',');
        std::getline(row, delays, ',');
        std::getline(row, snr, ',');
        std::getline(row, bits, ',');
        std::getline(row, errors, ',');
        std::getline(row, ber, ',');
        CHECK(std::stod(ber) ==
              Catch::Approx(std::stod(errors) / std::stod(bits))
                  .margin(1e-18));
    }
    CHECK(text == csv_text({run_sweep(cfg), b}));  // byte-identical re-run
}

TEST_CASE("config parsing") {
    const std::string doc = R"(
[system]
topology = MAS
n_r = 2
n = 2
t = 2        ; inline comment
scheme = RAlamouti

[delays]
delays = 0,1

[optimizer]
enabled = true
lambda = 0.99

[sweep]
snr_db = 0,5,10
trials_per_point = 1000
seed = 9
)";
    SECTION("valid document round-trips") {
        const SystemConfig cfg = parse_config(doc);
        CHECK(cfg.topology == Topology::MAS);
        CHECK(cfg.n_r == 2);
        CHECK(cfg.delays == std::vector<int>{0, 1});
        CHECK(cfg.optimizer.enabled);
        CHECK(cfg.optimizer.lambda == 0.99);
        CHECK(cfg.snr_grid_db.size() == 3);
        CHECK(cfg.seed == 9);
        CHECK(cfg.delta_max == 1);
    }
    SECTION("unknown key is named with its line") {
        try {
            parse_config("[system]\nfoo = 1\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("foo") != std::string::npos);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SECTION("invalid values rejected") {
        CHECK_THROWS_AS(parse_config("[delays]\ndelays = 0,-1\n[system]\ntopology = MAS\n"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config("[system]\ndirect_link = yes\n"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config("[sweep]\ntrials_per_point = 0\n"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config("key = 1\n"), ConfigError);
    }
    SECTION("overrides apply after the file") {
        const SystemConfig cfg =
            parse_config(doc, {"sweep.seed=123", "delays.delays=0,2"});
        CHECK(cfg.seed == 123);
        CHECK(cfg.delays == std::vector<int>{0, 2});
        CHECK(cfg.delta_max == 2);
        CHECK_THROWS_AS(parse_config(doc, {"nonsense"}), ConfigError);
    }
}

TEST_CASE("warmup blocks are excluded from counting") {
    SystemConfig cfg = alamouti_cfg();
    cfg.snr_grid_db = {0.0};
    cfg.trials_per_point = 1000;
    cfg.optimizer.warmup_blocks = 200;
    const RunResult run = run_sweep(validate_config(cfg));
    CHECK(run.points[0].bits == 1000 * cfg.bits_per_block());
}
