#include <doctest.h>

#include "topent/error.h"
#include "topent/experiments.h"

using topent::ExperimentConfig;
using topent::Json;
using topent::Rational;

TEST_SUITE("config") {
  TEST_CASE("defaults per experiment") {
    const auto c = topent::default_config("counterexample");
    CHECK(c.L == 12);
    CHECK(c.N_lev == 12);
    CHECK(c.horizons.size() == 10);
    CHECK(c.y_horizons.back() == 12);
    const auto g = topent::default_config("gw-certificate");
    CHECK(g.L == 10);
    CHECK(g.horizons == std::vector<std::size_t>{6});
    CHECK(g.epsilons == std::vector<Rational>{Rational(1, 4)});
  }

  TEST_CASE("json overrides and round trip") {
    const Json j = Json::parse(R"({"experiment": "space-check", "L": 5, "N_lev": 6, "epsilons": ["1/3", 2]})");
    const ExperimentConfig cfg = topent::config_from_json(j);
    CHECK(cfg.experiment == "space-check");
    CHECK(cfg.L == 5);
    CHECK(cfg.N_lev == 6);
    CHECK(cfg.epsilons == std::vector<Rational>{Rational(1, 3), Rational(2)});
    const ExperimentConfig again = topent::config_from_json(topent::config_to_json(cfg));
    CHECK(topent::config_to_json(again) == topent::config_to_json(cfg));
  }

  TEST_CASE("bad configs") {
    CHECK_THROWS_AS(topent::config_from_json(Json::parse(R"({"experiment": "space-check", "bogus": 1})")),
                    topent::ConfigError);
    CHECK_THROWS_AS(topent::config_from_json(Json::parse("[1, 2]")), topent::ConfigError);
    ExperimentConfig cfg = topent::default_config("counterexample");
    cfg.L = 8;
    CHECK_THROWS_AS(topent::check_adequacy(cfg), topent::ConfigError);
    cfg = topent::default_config("counterexample");
    cfg.y_N_lev = 5;
    CHECK_THROWS_AS(topent::check_adequacy(cfg), topent::ConfigError);
    cfg.experiment = "nope";
    CHECK_THROWS_AS(topent::run_experiment(cfg), topent::ConfigError);
  }

  TEST_CASE("space check report is stable") {
    const ExperimentConfig cfg = topent::default_config("space-check");
    const auto a = topent::run_experiment(cfg);
    const auto b = topent::run_experiment(cfg);
    CHECK(a.ok());
    CHECK(topent::dump_json(a.to_json()) == topent::dump_json(b.to_json()));
    CHECK(a.to_json().contains("version"));
  }
}
