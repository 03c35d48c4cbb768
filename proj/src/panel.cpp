#include "vigil/panel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vigil {

ResampleMode resample_mode_from_string(const std::string& s) {
    if (s == "forward_fill") return ResampleMode::forward_fill;
    if (s == "sum_aggregate") return ResampleMode::sum_aggregate;
    throw std::invalid_argument("unknown resample mode: " + s);
}

NormalizationMode normalization_mode_from_string(const std::string& s) {
    if (s == "none") return NormalizationMode::none;
    if (s == "minmax") return NormalizationMode::minmax;
    if (s == "zscore") return NormalizationMode::zscore;
    throw std::invalid_argument("unknown normalization mode: " + s);
}

void validate_bars(const std::vector<Bar>& bars) {
    for (size_t i = 0; i < bars.size(); ++i) {
        const Bar& b = bars[i];
        auto fail = [&](const std::string& what) {
            throw std::invalid_argument("bar " + std::to_string(i) + " (" + b.ticker +
                                        " " + b.date + "): " + what);
        };
        if (!(b.open > 0 && b.high > 0 && b.low > 0 && b.close > 0))
            fail("non-positive price");
        if (b.high < std::max(b.open, b.close)) fail("high below max(open, close)");
        if (b.low > std::min(b.open, b.close)) fail("low above min(open, close)");
        if (b.high < b.low) fail("high below low");
        if (b.volume < 0) fail("negative volume");
        if (i > 0) {
            if (bars[i].ticker != bars[i - 1].ticker) fail("mixed tickers in series");
            if (bars[i].date <= bars[i - 1].date) fail("timestamps not strictly increasing");
        }
    }
}

AttentionSeries resample_source(const std::vector<AttentionObservation>& raw,
                                const std::vector<std::string>& grid,
                                ResampleMode mode,
                                const CoverageSpec& coverage,
                                const std::string& source,
                                const std::string& ticker) {
    for (size_t i = 0; i < raw.size(); ++i) {
        if (i > 0 && raw[i].t < raw[i - 1].t)
            throw std::invalid_argument("unsorted attention input for " + source +
                                        " at position " + std::to_string(i));
        if (raw[i].observed && (!std::isfinite(raw[i].value) || raw[i].value < 0))
            throw std::invalid_argument("attention value for " + source + " at position " +
                                        std::to_string(i) + " must be finite and >= 0");
    }
    for (size_t k = 1; k < grid.size(); ++k) {
        if (grid[k] <= grid[k - 1])
            throw std::invalid_argument("grid not strictly increasing at position " +
                                        std::to_string(k));
    }

    AttentionSeries out;
    out.source = source;
    out.ticker = ticker;
    out.dates = grid;
    out.values.assign(grid.size(), nan_value());

    if (mode == ResampleMode::forward_fill) {
        size_t j = 0;
        double last = nan_value();
        bool have = false;
        for (size_t k = 0; k < grid.size(); ++k) {
            while (j < raw.size() && raw[j].t <= grid[k]) {
                if (raw[j].observed) {
                    last = raw[j].value;
                    have = true;
                }
                ++j;
            }
            if (coverage.covers(grid[k]) && have) out.values[k] = last;
        }
    } else {
        size_t j = 0;
        for (size_t k = 0; k < grid.size(); ++k) {
            double sum = 0.0;
            // interval (grid[k-1], grid[k]]; the first interval is open-ended
            while (j < raw.size() && raw[j].t <= grid[k]) {
                if (raw[j].observed) sum += raw[j].value;
                ++j;
            }
            if (coverage.covers(grid[k])) out.values[k] = sum;
        }
    }
    return out;
}

std::vector<double> normalize_source(const std::vector<double>& values,
                                     NormalizationMode mode) {
    if (mode == NormalizationMode::none) return values;

    std::vector<double> out(values.size(), nan_value());
    if (mode == NormalizationMode::minmax) {
        double lo = 0.0, hi = 0.0;
        bool have = false;
        for (double v : values) {
            if (is_nan(v)) continue;
            if (!have) {
                lo = hi = v;
                have = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        for (size_t i = 0; i < values.size(); ++i) {
            if (is_nan(values[i])) continue;
            out[i] = (hi > lo) ? (values[i] - lo) / (hi - lo) : 0.0;
        }
        return out;
    }

    // zscore over the covered span (population std)
    double sum = 0.0;
    size_t n = 0;
    for (double v : values) {
        if (!is_nan(v)) {
            sum += v;
            ++n;
        }
    }
    if (n == 0) return out;
    double mu = sum / static_cast<double>(n);
    double acc = 0.0;
    for (double v : values) {
        if (!is_nan(v)) acc += (v - mu) * (v - mu);
    }
    double sd = std::sqrt(acc / static_cast<double>(n));
    for (size_t i = 0; i < values.size(); ++i) {
        if (is_nan(values[i])) continue;
        out[i] = (sd > 0.0) ? (values[i] - mu) / sd : 0.0;
    }
    return out;
}

std::vector<double> fuse_attention(const std::vector<AttentionSeries>& series,
                                   const std::map<std::string, double>& weights) {
    if (series.empty()) throw std::invalid_argument("fuse_attention: no sources");
    const size_t n = series[0].values.size();
    double total_weight = 0.0;
    for (const auto& s : series) {
        if (s.values.size() != n || s.dates != series[0].dates)
            throw std::invalid_argument("fuse_attention: grid mismatch for source " + s.source);
        auto it = weights.find(s.source);
        double w = (it != weights.end()) ? it->second : 0.0;
        if (w < 0) throw std::invalid_argument("fuse_attention: negative weight for " + s.source);
        total_weight += w;
    }
    if (total_weight <= 0.0)
        throw std::invalid_argument("fuse_attention: weight sum must be positive");

    std::vector<double> fused(n, nan_value());
    for (size_t t = 0; t < n; ++t) {
        double acc = 0.0, wcov = 0.0;
        for (const auto& s : series) {
            double v = s.values[t];
            if (is_nan(v)) continue;
            auto it = weights.find(s.source);
            double w = (it != weights.end()) ? it->second : 0.0;
            acc += w * v;
            wcov += w;
        }
        if (wcov > 0.0) fused[t] = acc / wcov;
    }
    return fused;
}

std::vector<double> compute_log_returns(std::span<const double> closes) {
    if (closes.empty()) throw std::invalid_argument("compute_log_returns: empty input");
    for (size_t i = 0; i < closes.size(); ++i) {
        if (!(closes[i] > 0.0))
            throw std::invalid_argument("compute_log_returns: non-positive close at index " +
                                        std::to_string(i));
    }
    std::vector<double> r(closes.size(), nan_value());
    for (size_t t = 1; t < closes.size(); ++t) {
        r[t] = std::log(closes[t] / closes[t - 1]);
    }
    return r;
}

std::vector<double> compute_rolling_volatility(std::span<const double> returns,
                                               int lookback, double eps,
                                               bool include_current) {
    if (lookback < 1) throw std::invalid_argument("vol lookback must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

    const int n = static_cast<int>(returns.size());
    const int L = lookback;
    std::vector<double> sigma(n, nan_value());
    for (int t = 0; t < n; ++t) {
        // window [t-L, t-1], or [t-L+1, t] when include_current
        int last = include_current ? t : t - 1;
        int first = last - L + 1;
        if (first < 0) continue;
        double acc = 0.0;
        bool ok = true;
        for (int j = first; j <= last; ++j) {
            if (is_nan(returns[j])) {
                ok = false;
                break;
            }
            acc += returns[j] * returns[j];
        }
        if (ok) sigma[t] = std::sqrt(acc / static_cast<double>(L) + eps);
    }
    return sigma;
}

std::vector<double> compute_range_proxy(const std::vector<Bar>& bars) {
    std::vector<double> out(bars.size(), nan_value());
    for (size_t t = 1; t < bars.size(); ++t) {
        out[t] = (bars[t].high - bars[t].low) / bars[t - 1].close;
    }
    return out;
}

std::vector<double> compute_ewma_volatility(std::span<const double> returns,
                                            double lambda, double eps) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("ewma lambda must be in (0, 1)");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

    std::vector<double> sigma(returns.size(), nan_value());
    double v = 0.0;
    bool seeded = false;
    for (size_t t = 0; t < returns.size(); ++t) {
        double r = returns[t];
        if (is_nan(r)) continue;  // v carried across missing returns
        if (!seeded) {
            v = r * r;
            seeded = true;
        } else {
            v = lambda * v + (1.0 - lambda) * r * r;
        }
        sigma[t] = std::sqrt(v + eps);
    }
    return sigma;
}

TickerPanel build_ticker_panel(const std::vector<Bar>& bars,
                               const std::vector<AttentionSeries>& attention,
                               const PanelOptions& opts) {
    if (bars.empty()) throw std::invalid_argument("build_ticker_panel: no bars");
    validate_bars(bars);

    TickerPanel p;
    p.ticker = bars[0].ticker;
    p.dates.reserve(bars.size());
    p.close.reserve(bars.size());
    for (const Bar& b : bars) {
        p.dates.push_back(b.date);
        p.close.push_back(b.close);
    }

    for (const auto& s : attention) {
        if (s.dates.size() != p.dates.size()) {
            throw std::invalid_argument("attention grid mismatch for " + p.ticker + "/" +
                                        s.source + ": " + std::to_string(s.dates.size()) +
                                        " slots vs " + std::to_string(p.dates.size()) + " bars");
        }
        for (size_t k = 0; k < p.dates.size(); ++k) {
            if (s.dates[k] != p.dates[k])
                throw std::invalid_argument("attention grid mismatch for " + p.ticker + "/" +
                                            s.source + " at " + s.dates[k]);
        }
    }

    p.r = compute_log_returns(p.close);
    p.sigma = compute_rolling_volatility(p.r, opts.vol_lookback, opts.eps,
                                         opts.vol_include_current);
    p.range_proxy = compute_range_proxy(bars);
    p.sigma_ewma = compute_ewma_volatility(p.r, opts.ewma_lambda, opts.eps);

    std::vector<AttentionSeries> normalized = attention;
    for (auto& s : normalized) {
        s.values = normalize_source(s.values, opts.normalization);
        p.source_names.push_back(s.source);
        p.source_values.push_back(s.values);
    }
    if (!normalized.empty()) {
        p.attention = fuse_attention(normalized, opts.source_weights);
    } else {
        p.attention.assign(p.dates.size(), nan_value());
    }

    const int warmup_end = opts.baseline_window + opts.vol_lookback;
    p.warmup.resize(p.dates.size());
    for (size_t t = 0; t < p.dates.size(); ++t) {
        p.warmup[t] = static_cast<int>(t) < warmup_end ? 1 : 0;
    }
    return p;
}

std::vector<TickerPanel> build_panel(
    const std::map<std::string, std::vector<Bar>>& bars_by_ticker,
    const std::map<std::string, std::vector<AttentionSeries>>& attention_by_ticker,
    const PanelOptions& opts) {
    std::vector<TickerPanel> out;
    out.reserve(bars_by_ticker.size());
    for (const auto& [ticker, bars] : bars_by_ticker) {
        static const std::vector<AttentionSeries> kEmpty;
        auto it = attention_by_ticker.find(ticker);
        const auto& att = (it != attention_by_ticker.end()) ? it->second : kEmpty;
        out.push_back(build_ticker_panel(bars, att, opts));
    }
    return out;
}

}  // namespace vigil
