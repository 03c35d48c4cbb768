#include "vigil/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vigil/dates.hpp"
#include "vigil/panel.hpp"
#include "vigil/rng.hpp"

namespace vigil {

AttentionSeries generate_proxy(const ProxySpec& spec,
                               const std::vector<std::string>& grid,
                               const std::string& ticker) {
    if (grid.empty()) throw std::invalid_argument("generate_proxy: empty grid");
    if (spec.base_level < 0 || spec.noise_scale < 0 || spec.spike_rate < 0 ||
        spec.decay_half_life <= 0)
        throw std::invalid_argument("generate_proxy: invalid spec for " + spec.source);

    const int n = static_cast<int>(grid.size());
    Rng rng(spec.seed);
    std::vector<int> spike_times;
    std::vector<double> noise(n, 0.0);
    const double p = spec.spike_rate / 100.0;
    for (int t = 0; t < n; ++t) {
        if (rng.bernoulli(p)) spike_times.push_back(t);
        noise[t] = spec.noise_scale * rng.gauss();
    }

    AttentionSeries out;
    out.source = spec.source;
    out.ticker = ticker;
    out.dates = grid;
    out.values.resize(n);
    for (int t = 0; t < n; ++t) {
        double v = spec.base_level + noise[t];
        for (int t0 : spike_times) {
            if (t0 > t) break;
            double age = static_cast<double>(t - t0);
            v += spec.spike_magnitude * std::exp2(-age / spec.decay_half_life);
        }
        out.values[t] = std::max(v, 0.0);
    }
    return out;
}

std::vector<Bar> generate_bars(const BarGenSpec& spec) {
    if (spec.n_bars < 1) throw std::invalid_argument("generate_bars: n_bars must be >= 1");
    if (!(spec.start_price > 0)) throw std::invalid_argument("generate_bars: bad start price");

    auto grid = weekday_grid(spec.start_date, spec.n_bars);
    Rng rng(spec.seed);
    std::vector<Bar> bars;
    bars.reserve(spec.n_bars);
    double close = spec.start_price;
    for (int t = 0; t < spec.n_bars; ++t) {
        double prev = close;
        if (spec.daily_vol > 0) close = prev * std::exp(spec.daily_vol * rng.gauss());
        Bar b;
        b.ticker = spec.ticker;
        b.date = grid[t];
        b.open = prev;
        b.close = close;
        double hi_pad = spec.daily_vol > 0 ? 0.5 * spec.daily_vol * rng.uniform01() : 0.0;
        double lo_pad = spec.daily_vol > 0 ? 0.5 * spec.daily_vol * rng.uniform01() : 0.0;
        b.high = std::max(b.open, b.close) * (1.0 + hi_pad);
        b.low = std::min(b.open, b.close) * (1.0 - lo_pad);
        b.volume = std::floor(spec.base_volume * (0.5 + rng.uniform01()));
        bars.push_back(std::move(b));
    }
    return bars;
}

namespace {

struct FrozenBaseline {
    double mu = 0.0;
    double sigma_hat = 0.0;
};

// Rolling mean / sample std over x[start-B, start-1], the pre-episode window.
FrozenBaseline frozen_baseline(const std::vector<double>& x, int start, int B,
                               double eps, const std::string& channel) {
    double sum = 0.0;
    for (int j = start - B; j < start; ++j) {
        if (is_nan(x[j]))
            throw std::invalid_argument("inject_episode: pre-episode " + channel +
                                        " baseline undefined at bar " + std::to_string(j));
        sum += x[j];
    }
    FrozenBaseline fb;
    fb.mu = sum / static_cast<double>(B);
    double acc = 0.0;
    for (int j = start - B; j < start; ++j) acc += (x[j] - fb.mu) * (x[j] - fb.mu);
    fb.sigma_hat = std::sqrt(acc / static_cast<double>(B - 1) + eps);
    return fb;
}

}  // namespace

EpisodeLabel inject_episode(TickerInputs& inputs, const EpisodeSpec& spec,
                            const InjectionParams& params) {
    const int n = static_cast<int>(inputs.bars.size());
    const int start = spec.start_idx;
    const int end = spec.start_idx + spec.length - 1;
    const int warmup_end = params.baseline_window + params.vol_lookback;

    if (spec.length < 1) throw std::invalid_argument("inject_episode: length must be >= 1");
    if (start <= warmup_end)
        throw std::invalid_argument("inject_episode: episode overlaps warmup region (bar " +
                                    std::to_string(start) + " <= " +
                                    std::to_string(warmup_end) + ")");
    if (end >= n) throw std::invalid_argument("inject_episode: episode past series end");
    if (spec.return_z_target < 0 || spec.vol_z_target < 0 || spec.attention_z_target < 0 ||
        !std::isfinite(spec.return_z_target) || !std::isfinite(spec.vol_z_target) ||
        !std::isfinite(spec.attention_z_target))
        throw std::invalid_argument("inject_episode: targets must be finite non-negative magnitudes");

    EpisodeLabel label;
    label.ticker = spec.ticker;
    label.start_idx = start;
    label.end_idx = end;
    label.start_date = inputs.bars[start].date;
    label.end_date = inputs.bars[end].date;
    label.return_z = spec.return_z_target;
    label.vol_z = spec.vol_z_target;
    label.attention_z = spec.attention_z_target;
    label.seed = spec.seed;

    Rng rng(spec.seed);

    // Return channel: r[t] at episode bars becomes mu0 +- T*(sigma0 + eps)
    // against the frozen baseline; the seed picks each bar's sign.
    if (spec.return_z_target > 0) {
        std::vector<double> closes;
        closes.reserve(n);
        for (const Bar& b : inputs.bars) closes.push_back(b.close);
        auto returns = compute_log_returns(closes);
        auto rb = frozen_baseline(returns, start, params.baseline_window, params.eps, "return");

        std::vector<double> log_shift(spec.length);
        double total = 0.0;
        for (int k = 0; k < spec.length; ++k) {
            double sign = rng.bernoulli(0.5) ? -1.0 : 1.0;
            double r_target = rb.mu + sign * spec.return_z_target * (rb.sigma_hat + params.eps);
            log_shift[k] = r_target - returns[start + k];
            total += log_shift[k];
        }
        if (!std::isfinite(std::exp(total)) || std::exp(total) <= 0.0)
            throw std::runtime_error("inject_episode: degenerate price scaling");

        // Cumulative rescale from each episode bar onward: episode returns hit
        // their targets, every later return is untouched.
        double f = 1.0;
        for (int t = start; t < n; ++t) {
            if (t <= end) f *= std::exp(log_shift[t - start]);
            Bar& b = inputs.bars[t];
            b.open *= f;
            b.high *= f;
            b.low *= f;
            b.close *= f;
        }
    }

    // Attention channel: rescale every covered source by a common factor so
    // the fused value hits the target exactly (fusion is linear) while the
    // cross-source structure survives. Falls back to setting the sources to
    // the target outright when the fused base is non-positive.
    if (spec.attention_z_target > 0) {
        if (inputs.attention.empty())
            throw std::invalid_argument("inject_episode: no attention sources for " + spec.ticker);
        auto fused = fuse_attention(inputs.attention, params.source_weights);
        auto ab = frozen_baseline(fused, start, params.baseline_window, params.eps, "attention");
        double a_target = ab.mu + spec.attention_z_target * (ab.sigma_hat + params.eps);
        for (int t = start; t <= end; ++t) {
            if (is_nan(fused[t]))
                throw std::invalid_argument(
                    "inject_episode: no covered attention source at bar " + std::to_string(t));
            bool scalable = fused[t] > 0.0 && a_target > 0.0;
            for (auto& s : inputs.attention) {
                if (is_nan(s.values[t])) continue;
                s.values[t] = scalable ? s.values[t] * (a_target / fused[t]) : a_target;
            }
        }
    }

    return label;
}

}  // namespace vigil
