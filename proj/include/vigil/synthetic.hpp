#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vigil/types.hpp"

// Stylized attention proxies and controlled co-movement episodes. Everything
// here is a pure function of (spec, seed) so fixtures are reproducible.

namespace vigil {

struct ProxySpec {
    std::string source;
    double base_level = 10.0;
    double noise_scale = 0.0;
    double spike_rate = 0.0;       // expected spikes per 100 bars
    double spike_magnitude = 1.0;  // additive spike height at age 0
    double decay_half_life = 5.0;  // bars
    std::uint64_t seed = 0;
};

// value_t = base + noise_t + sum over spikes of magnitude * 2^(-age/half_life),
// clipped at 0. Spike times come from a per-bar Bernoulli draw with
// p = spike_rate / 100.
AttentionSeries generate_proxy(const ProxySpec& spec,
                               const std::vector<std::string>& grid,
                               const std::string& ticker);

// Synthetic OHLCV harness. daily_vol = 0 produces a perfectly quiet tape
// (constant prices), the validation fixtures' default.
struct BarGenSpec {
    std::string ticker;
    std::string start_date = "2024-01-08";
    int n_bars = 248;
    double start_price = 100.0;
    double daily_vol = 0.0;
    double base_volume = 1e6;
    std::uint64_t seed = 0;
};

std::vector<Bar> generate_bars(const BarGenSpec& spec);

// Raw inputs for one ticker, the unit episode injection operates on.
struct TickerInputs {
    std::vector<Bar> bars;
    std::vector<AttentionSeries> attention;  // aligned to the bar grid
};

struct EpisodeSpec {
    std::string ticker;
    int start_idx = 0;
    int length = 1;
    double return_z_target = 0.0;
    double vol_z_target = 0.0;
    double attention_z_target = 0.0;
    std::uint64_t seed = 0;
};

struct InjectionParams {
    int baseline_window = 20;
    int vol_lookback = 20;
    double eps = 1e-12;
    std::map<std::string, double> source_weights;  // must match the pipeline's
};

// Perturbs closes (rescaling O/H/L/C from each episode bar onward, so
// post-episode returns are untouched) and every covered attention source so
// that the return and fused-attention z-scores at the episode bars equal the
// targets against the frozen pre-episode baseline (mean / sample std over the
// B bars before start). Targets are magnitudes; the seed picks each bar's
// return sign, and a zero target leaves its channel untouched (any value
// meets it). The volatility channel is not independently steerable: sigma at
// the first episode bar depends only on pre-episode returns, so vol_z_target
// is recorded in the label and realized implicitly through the return
// perturbation. Injection semantics assume normalization mode "none" (raw
// source units), since global renormalization would touch pre-episode rows.
// Rejects episodes overlapping the warmup region or series bounds.
EpisodeLabel inject_episode(TickerInputs& inputs, const EpisodeSpec& spec,
                            const InjectionParams& params);

}  // namespace vigil
