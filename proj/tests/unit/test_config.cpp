#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "emflow/config.hpp"
#include "emflow/csv.hpp"

using namespace emflow;
using namespace emflow::cli;

TEST_SUITE("config") {

TEST_CASE("sectioned key=value parsing") {
    const std::string text =
        "# comment line\n"
        "[physical]\n"
        "u_z = 25.5   # trailing comment\n"
        "\n"
        "[run]\n"
        "mode = bx\n"
        "out = results\n";
    const auto pairs = parse_config_text(text);
    CHECK(pairs.at("physical.u_z") == "25.5");
    CHECK(pairs.at("run.mode") == "bx");

    const auto cfg = config_from_pairs(pairs);
    CHECK(cfg.params.u_z == 25.5);
    CHECK(cfg.mode == InputMode::flux_density);
    CHECK(cfg.out_dir == "results");

    CHECK_THROWS_AS(parse_config_text("[broken\nx=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("novalue\n"), ConfigError);
    CHECK_THROWS_AS(config_from_pairs(parse_config_text("[run]\nbogus_key = 1\n")), ConfigError);
    CHECK_THROWS_AS(config_from_pairs(parse_config_text("[mesh]\ndz = abc\n")), ConfigError);
}

TEST_CASE("resolution ties Pe, dz and u_z together") {
    RunConfig cfg;
    cfg.pe = 3000.0;
    cfg.resolve();
    CHECK(peclet(cfg.params, cfg.dz) == doctest::Approx(3000.0).epsilon(1e-12));

    RunConfig bad;
    bad.field.a = 8.1;  // off the node lattice
    CHECK_THROWS_AS(bad.resolve(), ConfigError);

    RunConfig nonint;
    nonint.field.L = 20.1;  // not a multiple of dz
    CHECK_THROWS_AS(nonint.n_nodes(), ConfigError);

    RunConfig badsweep;
    badsweep.sweep_min = -1.0;
    CHECK_THROWS_AS(badsweep.resolve(), ConfigError);
}

TEST_CASE("canonical serialization fingerprints the configuration") {
    RunConfig a, b;
    a.resolve();
    b.resolve();
    CHECK(a.canonical() == b.canonical());
    CHECK(csv::fnv1a(a.canonical()) == csv::fnv1a(b.canonical()));
    b.field.B = 2.0;
    CHECK(csv::fnv1a(a.canonical()) != csv::fnv1a(b.canonical()));
}

TEST_CASE("sweep grid") {
    RunConfig cfg;
    cfg.sweep_min = 2.0;
    cfg.sweep_max = 200.0;
    cfg.sweep_count = 5;
    const auto grid = sweep_grid(cfg);
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == doctest::Approx(2.0));
    CHECK(grid.back() == doctest::Approx(200.0));
    // log spacing: constant ratio
    const double ratio = grid[1] / grid[0];
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        CHECK(grid[i + 1] / grid[i] == doctest::Approx(ratio).epsilon(1e-12));

    cfg.pe_list = {3.0, 30.0};
    CHECK(sweep_grid(cfg) == std::vector<double>{3.0, 30.0});
}

TEST_CASE("shortest round-trip float formatting") {
    CHECK(csv::format_double(0.1) == "0.1");
    CHECK(csv::format_double(0.0) == "0");
    CHECK(csv::format_double(-2.5) == "-2.5");
    CHECK(csv::format_double(std::nan("")) == "nan");
    for (double v : {1.0 / 3.0, 9.060353212952963, 1e-300, -0.9993335554815062}) {
        const std::string text = csv::format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

}  // TEST_SUITE
