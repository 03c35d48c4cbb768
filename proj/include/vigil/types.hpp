#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Core domain types shared across the vigil pipeline. All timestamps are
// ISO-8601 date strings (trading-day resolution); lexical order equals
// chronological order, which every alignment check below relies on.

namespace vigil {

inline double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_nan(double x) { return std::isnan(x); }

// One OHLCV observation for a ticker at a grid timestamp.
struct Bar {
    std::string ticker;
    std::string date;   // ISO-8601
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

// Raw attention reading before resampling. `observed == false` marks an
// explicit missing reading (value is NaN and carries no mass).
struct AttentionObservation {
    std::string t;      // raw timestamp, may be off-grid
    double value = 0.0;
    bool observed = true;
};

// Declared coverage spans for one source. No spans object at all means
// full coverage; an empty span list means no coverage anywhere.
struct CoverageSpan {
    std::string start;  // inclusive
    std::string end;    // inclusive
};

struct CoverageSpec {
    std::optional<std::vector<CoverageSpan>> spans;

    bool covers(const std::string& ts) const {
        if (!spans.has_value()) return true;
        for (const auto& s : *spans) {
            if (ts >= s.start && ts <= s.end) return true;
        }
        return false;
    }

    static CoverageSpec full() { return CoverageSpec{}; }
    static CoverageSpec none() { return CoverageSpec{std::vector<CoverageSpan>{}}; }
};

// Per-source attention values aligned to a ticker's bar grid.
// values[k] is NaN iff the source has no coverage at dates[k].
struct AttentionSeries {
    std::string source;
    std::string ticker;
    std::vector<std::string> dates;
    std::vector<double> values;
};

// Column-oriented panel for one ticker. All vectors share the bar grid.
struct TickerPanel {
    std::string ticker;
    std::vector<std::string> dates;
    std::vector<double> close;        // kept for evidence/report context
    std::vector<double> r;            // log return, NaN at first bar
    std::vector<double> sigma;        // rolling volatility proxy
    std::vector<double> range_proxy;  // (H-L)/C_{t-1}
    std::vector<double> sigma_ewma;
    std::vector<double> attention;    // fused A
    std::vector<std::string> source_names;
    std::vector<std::vector<double>> source_values;  // [source][t], post-normalization
    std::vector<char> warmup;         // t < B + L

    size_t size() const { return dates.size(); }
};

// Rolling baseline stats for one channel. `defined[t]` is false until B
// non-NaN values precede t (any NaN in the trailing window undefines it).
struct BaselineSeries {
    std::vector<double> mu;
    std::vector<double> sigma_hat;
    std::vector<char> defined;
};

// Standardized deviations for one ticker, plus composite strength.
struct ChannelZ {
    std::vector<double> z_r;
    std::vector<double> z_sigma;
    std::vector<double> z_attention;
    std::vector<std::vector<double>> z_source;  // [source][t]
    std::vector<double> strength;
};

// Contiguous detected interval (inclusive bar span).
struct Window {
    int window_id = 0;  // assigned globally: ticker lexical, then start index
    std::string ticker;
    int start_idx = 0;
    int end_idx = 0;
    std::string start_ts;
    std::string end_ts;
    bool contains_warmup = false;

    int n_bars() const { return end_idx - start_idx + 1; }
};

constexpr int kPhiCount = 6;
using PhiVector = std::array<double, kPhiCount>;

// Window plus factor vector, contributions and Integrity Score M.
struct ScoredWindow {
    Window window;
    PhiVector phi{};            // raw factor values
    PhiVector phi_scaled{};     // after the configured scale mode
    PhiVector contributions{};  // omega_k * phi_scaled_k
    double M = 0.0;
    double rank_pct = 0.0;
    std::vector<std::string> flags;  // e.g. phi3_insufficient_data, z_artifact
};

// Ground-truth record emitted by episode injection.
struct EpisodeLabel {
    std::string ticker;
    int start_idx = 0;
    int end_idx = 0;
    std::string start_date;
    std::string end_date;
    double return_z = 0.0;
    double vol_z = 0.0;
    double attention_z = 0.0;
    std::uint64_t seed = 0;
};

}  // namespace vigil
