#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "vigil/types.hpp"

// Panel construction: align OHLCV with resampled attention sources, fuse
// attention, and derive the return / volatility channels.

namespace vigil {

enum class ResampleMode { forward_fill, sum_aggregate };
enum class NormalizationMode { none, minmax, zscore };

ResampleMode resample_mode_from_string(const std::string& s);
NormalizationMode normalization_mode_from_string(const std::string& s);

// Throws std::invalid_argument naming ticker and offending index on any
// OHLC relation, volume or timestamp-order violation.
void validate_bars(const std::vector<Bar>& bars);

// Resample raw observations onto the bar grid. forward_fill carries the last
// observed value (NaN before the first observation); sum_aggregate sums
// observations with timestamps in (grid[k-1], grid[k]] (open start for k=0)
// and yields 0 for covered empty intervals. Slots outside the declared
// coverage are NaN in both modes.
AttentionSeries resample_source(const std::vector<AttentionObservation>& raw,
                                const std::vector<std::string>& grid,
                                ResampleMode mode,
                                const CoverageSpec& coverage,
                                const std::string& source,
                                const std::string& ticker);

// Per-source normalization applied before fusion (minmax over the covered
// span by default; the formula is a configuration choice, not a given).
std::vector<double> normalize_source(const std::vector<double>& values,
                                     NormalizationMode mode);

// Weighted fusion with per-slot renormalization over covered sources, so a
// lone covered source passes through unchanged. Weights are relative; only
// their ratios matter. A slot is NaN iff every source is NaN there.
std::vector<double> fuse_attention(const std::vector<AttentionSeries>& series,
                                   const std::map<std::string, double>& weights);

// r_t = ln(C_t / C_{t-1}); r_0 = NaN. Rejects non-positive closes.
std::vector<double> compute_log_returns(std::span<const double> closes);

// sigma_t = sqrt(mean of the L squared returns strictly before t + eps);
// NaN until those L returns exist and are all non-NaN. include_current
// shifts the window to end at t instead of t-1.
std::vector<double> compute_rolling_volatility(std::span<const double> returns,
                                               int lookback, double eps,
                                               bool include_current = false);

// (H_t - L_t) / C_{t-1}; NaN at the first bar.
std::vector<double> compute_range_proxy(const std::vector<Bar>& bars);

// v_t = lambda*v_{t-1} + (1-lambda)*r_t^2, seeded with the first non-NaN
// squared return; sigma_t = sqrt(v_t + eps).
std::vector<double> compute_ewma_volatility(std::span<const double> returns,
                                            double lambda, double eps);

struct PanelOptions {
    int vol_lookback = 20;
    double eps = 1e-12;
    double ewma_lambda = 0.94;
    bool vol_include_current = false;
    int baseline_window = 20;  // only used to mark warmup rows
    NormalizationMode normalization = NormalizationMode::minmax;
    std::map<std::string, double> source_weights;
};

// Build one ticker's panel from validated bars and grid-aligned attention.
// Attention series whose dates do not match the bar grid raise an alignment
// error naming ticker and timestamp.
TickerPanel build_ticker_panel(const std::vector<Bar>& bars,
                               const std::vector<AttentionSeries>& attention,
                               const PanelOptions& opts);

// Tickers are processed independently; output is sorted by ticker.
std::vector<TickerPanel> build_panel(
    const std::map<std::string, std::vector<Bar>>& bars_by_ticker,
    const std::map<std::string, std::vector<AttentionSeries>>& attention_by_ticker,
    const PanelOptions& opts);

}  // namespace vigil
