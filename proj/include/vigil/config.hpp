#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

// Run configuration. Defaults reproduce the reference experimental setup;
// every knob is overridable from config.json or one-for-one CLI flags.
// Unknown keys are rejected so typos cannot silently fall back to defaults.

namespace vigil {

struct SourceConfig {
    std::string name;
    double weight = 1.0;               // relative; ratios matter, not scale
    std::string resample = "sum_aggregate";
};

struct RunConfig {
    std::vector<std::string> tickers;
    std::string date_from;
    std::string date_to;

    int baseline_window = 20;
    int vol_lookback = 20;
    double eps = 1e-12;
    double thr_high = 3.0;
    double thr_low = 2.0;
    int min_window_len = 2;
    int gap_tolerance = 3;
    double alpha_r = 1.0;
    double alpha_sigma = 1.0;
    double alpha_attention = 1.0;
    std::array<double, 6> omega{1, 1, 1, 1, 1, 1};
    std::string scale_mode = "none";
    bool clamp_attention_z = false;
    bool clamp_phi4 = false;
    int delta_recur = 10;
    double tau_recur = std::numeric_limits<double>::infinity();
    std::vector<SourceConfig> sources;  // default: the five standard sources
    std::string normalization_mode = "minmax";
    double ewma_lambda = 0.94;
    bool vol_include_current = false;
    bool exclude_warmup = true;
    double artifact_z_cap = 20.0;
    std::string baseline_estimator = "mean_std";  // hook; only mean_std implemented

    std::string ohlcv_path;
    std::string attention_dir;
    std::string out_dir = "out";
    std::string cache_dir = "cache";
    std::string endpoint_url;
    std::string api_key_env;
    int max_retries = 3;
    int retry_backoff_ms = 250;

    std::map<std::string, double> source_weights() const;
    int warmup_bars() const { return baseline_window + vol_lookback; }
};

RunConfig default_config();

// Parse + validate; missing keys take defaults, unknown keys are errors with
// field-level messages.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

std::string config_to_json(const RunConfig& cfg);  // canonical, round-trips

void validate_config(const RunConfig& cfg);

// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& cfg);

std::uint64_t fnv1a64(const std::string& data);
std::string hash_hex(std::uint64_t h);

}  // namespace vigil
