#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vigil/config.hpp"

using namespace vigil;

TEST_CASE("an empty config object yields the documented defaults") {
    auto cfg = parse_config("{}");
    CHECK(cfg.baseline_window == 20);
    CHECK(cfg.vol_lookback == 20);
    CHECK(cfg.eps == 1e-12);
    CHECK(cfg.thr_high == 3.0);
    CHECK(cfg.thr_low == 2.0);
    CHECK(cfg.min_window_len == 2);
    CHECK(cfg.gap_tolerance == 3);
    CHECK(cfg.alpha_r == 1.0);
    CHECK(cfg.alpha_sigma == 1.0);
    CHECK(cfg.alpha_attention == 1.0);
    for (double w : cfg.omega) CHECK(w == 1.0);
    CHECK(cfg.scale_mode == "none");
    REQUIRE(cfg.sources.size() == 5);
    CHECK(cfg.sources[0].name == "reddit");
    CHECK(cfg.sources[1].name == "stocktwits");
    CHECK(cfg.sources[2].name == "wikipedia");
    CHECK(cfg.sources[3].name == "news");
    CHECK(cfg.sources[4].name == "trends");
    for (const auto& s : cfg.sources) CHECK(s.weight == cfg.sources[0].weight);
    CHECK(std::isinf(cfg.tau_recur));
    CHECK(cfg.delta_recur == 10);
    CHECK(cfg.exclude_warmup);
    CHECK_FALSE(cfg.clamp_attention_z);
    CHECK_FALSE(cfg.clamp_phi4);
    CHECK(cfg.artifact_z_cap == 20.0);
}

TEST_CASE("threshold ordering violations are named") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"thr_high": 2.0, "thr_low": 3.0})"),
                         doctest::Contains("thr_high"), std::invalid_argument);
}

TEST_CASE("config round-trips through its canonical serialization") {
    auto cfg = parse_config(R"({
        "tickers": ["GME", "AMC"],
        "thr_high": 4.5,
        "thr_low": 1.5,
        "omega": [1, 2, 3, 4, 5, 6],
        "scale_mode": "zscore",
        "tau_recur": "inf",
        "sources": [{"name": "reddit", "weight": 2.0, "resample": "sum_aggregate"}],
        "normalization_mode": "none"
    })");
    auto reloaded = parse_config(config_to_json(cfg));
    CHECK(config_to_json(reloaded) == config_to_json(cfg));
    CHECK(config_hash(reloaded) == config_hash(cfg));
    CHECK(reloaded.tickers == cfg.tickers);
    CHECK(reloaded.omega == cfg.omega);
    CHECK(std::isinf(reloaded.tau_recur));
}

TEST_CASE("unknown keys are rejected with the offending name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"thr_hi": 3.0})"), doctest::Contains("thr_hi"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"sources": [{"name": "a", "wight": 1}]})"),
                         doctest::Contains("wight"), std::invalid_argument);
}

TEST_CASE("field-level validation messages") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"baseline_window": 1})"),
                         doctest::Contains("baseline_window"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"eps": 0})"), doctest::Contains("eps"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"ewma_lambda": 1.0})"),
                         doctest::Contains("ewma_lambda"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"scale_mode": "robust"})"),
                         doctest::Contains("robust"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"baseline_estimator": "mad"})"),
                         doctest::Contains("mad"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"omega": [1, 2]})"), doctest::Contains("omega"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"sources": []})"), doctest::Contains("source"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"thr_high": "high"})"),
                         doctest::Contains("thr_high"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
}

TEST_CASE("config hash is sensitive to every field change") {
    auto base = parse_config("{}");
    auto changed = parse_config(R"({"gap_tolerance": 4})");
    CHECK(config_hash(base) != config_hash(changed));
}
