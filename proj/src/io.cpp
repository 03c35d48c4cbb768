#include "vigil/io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "vigil/csv.hpp"

namespace vigil {

namespace {

void require_columns(const csv::Table& t, const std::vector<std::string>& cols,
                     const std::string& path) {
    for (const auto& c : cols) {
        if (t.column(c) < 0)
            throw std::runtime_error(path + ": missing required column '" + c + "'");
    }
}

// formats with positional schemas: the header must start with these columns
void require_header_prefix(const csv::Table& t, const std::vector<std::string>& cols,
                           const std::string& path) {
    if (t.header.size() < cols.size())
        throw std::runtime_error(path + ": expected at least " + std::to_string(cols.size()) +
                                 " columns");
    for (size_t i = 0; i < cols.size(); ++i) {
        if (t.header[i] != cols[i])
            throw std::runtime_error(path + ": expected column " + std::to_string(i + 1) +
                                     " to be '" + cols[i] + "', got '" + t.header[i] + "'");
    }
}

}  // namespace

std::map<std::string, std::vector<Bar>> read_ohlcv_csv(const std::string& path) {
    auto t = csv::read_file(path);
    require_columns(t, {"ticker", "date", "open", "high", "low", "close", "volume"}, path);
    int ct = t.column("ticker"), cd = t.column("date"), co = t.column("open"),
        ch = t.column("high"), cl = t.column("low"), cc = t.column("close"),
        cv = t.column("volume");
    std::map<std::string, std::vector<Bar>> out;
    for (const auto& row : t.rows) {
        Bar b;
        b.ticker = row[ct];
        b.date = row[cd];
        b.open = csv::parse_double(row[co]);
        b.high = csv::parse_double(row[ch]);
        b.low = csv::parse_double(row[cl]);
        b.close = csv::parse_double(row[cc]);
        b.volume = csv::parse_double(row[cv]);
        out[b.ticker].push_back(std::move(b));
    }
    for (auto& [ticker, bars] : out) {
        std::stable_sort(bars.begin(), bars.end(),
                         [](const Bar& a, const Bar& b) { return a.date < b.date; });
    }
    return out;
}

void write_ohlcv_csv(const std::string& path, const std::vector<Bar>& bars) {
    std::ostringstream os;
    os << "ticker,date,open,high,low,close,volume\n";
    for (const Bar& b : bars) {
        os << b.ticker << ',' << b.date << ',' << csv::format_full(b.open) << ','
           << csv::format_full(b.high) << ',' << csv::format_full(b.low) << ','
           << csv::format_full(b.close) << ',' << csv::format_full(b.volume) << '\n';
    }
    csv::atomic_write(path, os.str());
}

void write_ohlcv_csv(const std::string& path,
                     const std::map<std::string, std::vector<Bar>>& bars_by_ticker) {
    std::ostringstream os;
    os << "ticker,date,open,high,low,close,volume\n";
    for (const auto& [ticker, bars] : bars_by_ticker) {
        for (const Bar& b : bars) {
            os << b.ticker << ',' << b.date << ',' << csv::format_full(b.open) << ','
               << csv::format_full(b.high) << ',' << csv::format_full(b.low) << ','
               << csv::format_full(b.close) << ',' << csv::format_full(b.volume) << '\n';
        }
    }
    csv::atomic_write(path, os.str());
}

std::map<std::string, std::vector<AttentionObservation>> read_attention_csv(
    const std::string& path) {
    auto t = csv::read_file(path);
    require_columns(t, {"ticker", "timestamp", "value"}, path);
    int ct = t.column("ticker"), cts = t.column("timestamp"), cv = t.column("value");
    std::map<std::string, std::vector<AttentionObservation>> out;
    for (const auto& row : t.rows) {
        AttentionObservation o;
        o.t = row[cts];
        o.value = csv::parse_double(row[cv]);
        o.observed = !is_nan(o.value);
        out[row[ct]].push_back(std::move(o));
    }
    for (auto& [ticker, obs] : out) {
        std::stable_sort(obs.begin(), obs.end(),
                         [](const AttentionObservation& a, const AttentionObservation& b) {
                             return a.t < b.t;
                         });
    }
    return out;
}

void write_attention_csv(const std::string& path,
                         const std::map<std::string, std::vector<AttentionObservation>>& obs) {
    std::ostringstream os;
    os << "ticker,timestamp,value\n";
    for (const auto& [ticker, rows] : obs) {
        for (const auto& o : rows) {
            os << ticker << ',' << o.t << ','
               << (o.observed ? csv::format_full(o.value) : "NaN") << '\n';
        }
    }
    csv::atomic_write(path, os.str());
}

std::map<std::string, CoverageSpec> read_coverage_csv(const std::string& path) {
    auto t = csv::read_file(path);
    require_columns(t, {"ticker", "start", "end"}, path);
    int ct = t.column("ticker"), cs = t.column("start"), ce = t.column("end");
    std::map<std::string, CoverageSpec> out;
    for (const auto& row : t.rows) {
        auto& spec = out[row[ct]];
        if (!spec.spans.has_value()) spec.spans.emplace();
        spec.spans->push_back({row[cs], row[ce]});
    }
    return out;
}

void write_panel_csv(const std::string& path, const std::vector<TickerPanel>& panels) {
    std::ostringstream os;
    os << "ticker,date,r,sigma,range_proxy,sigma_ewma,A";
    std::vector<std::string> sources;
    if (!panels.empty()) sources = panels.front().source_names;
    for (const auto& s : sources) os << ',' << s;
    os << '\n';
    for (const auto& p : panels) {
        if (p.source_names != sources)
            throw std::runtime_error("write_panel_csv: inconsistent source columns for " +
                                     p.ticker);
        for (size_t t = 0; t < p.size(); ++t) {
            os << p.ticker << ',' << p.dates[t] << ',' << csv::format_full(p.r[t]) << ','
               << csv::format_full(p.sigma[t]) << ',' << csv::format_full(p.range_proxy[t])
               << ',' << csv::format_full(p.sigma_ewma[t]) << ','
               << csv::format_full(p.attention[t]);
            for (const auto& col : p.source_values) os << ',' << csv::format_full(col[t]);
            os << '\n';
        }
    }
    csv::atomic_write(path, os.str());
}

std::vector<TickerPanel> read_panel_csv(const std::string& path) {
    auto t = csv::read_file(path);
    require_header_prefix(t, {"ticker", "date", "r", "sigma", "range_proxy", "sigma_ewma", "A"},
                          path);
    const int fixed = 7;
    std::vector<std::string> sources(t.header.begin() + fixed, t.header.end());

    std::map<std::string, TickerPanel> by_ticker;
    std::vector<std::string> order;
    for (const auto& row : t.rows) {
        const std::string& ticker = row[0];
        auto it = by_ticker.find(ticker);
        if (it == by_ticker.end()) {
            TickerPanel p;
            p.ticker = ticker;
            p.source_names = sources;
            p.source_values.resize(sources.size());
            it = by_ticker.emplace(ticker, std::move(p)).first;
            order.push_back(ticker);
        }
        TickerPanel& p = it->second;
        p.dates.push_back(row[1]);
        p.close.push_back(nan_value());  // not part of the interchange schema
        p.warmup.push_back(0);           // config-derived; see apply_warmup_flags
        p.r.push_back(csv::parse_double(row[2]));
        p.sigma.push_back(csv::parse_double(row[3]));
        p.range_proxy.push_back(csv::parse_double(row[4]));
        p.sigma_ewma.push_back(csv::parse_double(row[5]));
        p.attention.push_back(csv::parse_double(row[6]));
        for (size_t s = 0; s < sources.size(); ++s) {
            p.source_values[s].push_back(csv::parse_double(row[fixed + s]));
        }
    }
    std::vector<TickerPanel> out;
    out.reserve(order.size());
    std::sort(order.begin(), order.end());
    for (const auto& ticker : order) out.push_back(std::move(by_ticker[ticker]));
    return out;
}

void write_strength_csv(const std::string& path, const std::vector<TickerPanel>& panels,
                        const std::map<std::string, ChannelZ>& z_by_ticker) {
    std::ostringstream os;
    os << "ticker,date,z_r,z_sigma,z_A,s,warmup\n";
    for (const auto& p : panels) {
        const ChannelZ& z = z_by_ticker.at(p.ticker);
        for (size_t t = 0; t < p.size(); ++t) {
            os << p.ticker << ',' << p.dates[t] << ',' << csv::format_full(z.z_r[t]) << ','
               << csv::format_full(z.z_sigma[t]) << ',' << csv::format_full(z.z_attention[t])
               << ',' << csv::format_full(z.strength[t]) << ',' << (p.warmup[t] ? 1 : 0)
               << '\n';
        }
    }
    csv::atomic_write(path, os.str());
}

void write_windows_csv(const std::string& path, const std::vector<Window>& windows) {
    std::ostringstream os;
    os << "window_id,ticker,start_date,end_date,n_bars,contains_warmup\n";
    for (const Window& w : windows) {
        os << w.window_id << ',' << w.ticker << ',' << w.start_ts << ',' << w.end_ts << ','
           << w.n_bars() << ',' << (w.contains_warmup ? 1 : 0) << '\n';
    }
    csv::atomic_write(path, os.str());
}

std::vector<Window> read_windows_csv(const std::string& path,
                                     const std::vector<TickerPanel>& panels) {
    auto t = csv::read_file(path);
    require_header_prefix(t, {"window_id", "ticker", "start_date", "end_date", "n_bars",
                              "contains_warmup"},
                          path);
    std::map<std::string, std::map<std::string, int>> date_index;
    for (const auto& p : panels) {
        auto& m = date_index[p.ticker];
        for (size_t i = 0; i < p.dates.size(); ++i) m[p.dates[i]] = static_cast<int>(i);
    }
    std::vector<Window> out;
    for (const auto& row : t.rows) {
        Window w;
        w.window_id = static_cast<int>(csv::parse_long(row[0]));
        w.ticker = row[1];
        w.start_ts = row[2];
        w.end_ts = row[3];
        w.contains_warmup = csv::parse_long(row[5]) != 0;
        auto ti = date_index.find(w.ticker);
        if (ti == date_index.end())
            throw std::runtime_error(path + ": window ticker not in panel: " + w.ticker);
        auto si = ti->second.find(w.start_ts);
        auto ei = ti->second.find(w.end_ts);
        if (si == ti->second.end() || ei == ti->second.end())
            throw std::runtime_error(path + ": window dates not on panel grid for " + w.ticker);
        w.start_idx = si->second;
        w.end_idx = ei->second;
        out.push_back(std::move(w));
    }
    return out;
}

void write_labels_csv(const std::string& path, const std::vector<EpisodeLabel>& labels) {
    std::ostringstream os;
    os << "ticker,start_date,end_date,return_z,vol_z,attention_z,seed\n";
    for (const auto& l : labels) {
        os << l.ticker << ',' << l.start_date << ',' << l.end_date << ','
           << csv::format_full(l.return_z) << ',' << csv::format_full(l.vol_z) << ','
           << csv::format_full(l.attention_z) << ',' << l.seed << '\n';
    }
    csv::atomic_write(path, os.str());
}

std::vector<EpisodeLabel> read_labels_csv(const std::string& path) {
    auto t = csv::read_file(path);
    require_header_prefix(t, {"ticker", "start_date", "end_date", "return_z", "vol_z",
                              "attention_z", "seed"},
                          path);
    std::vector<EpisodeLabel> out;
    for (const auto& row : t.rows) {
        EpisodeLabel l;
        l.ticker = row[0];
        l.start_date = row[1];
        l.end_date = row[2];
        l.return_z = csv::parse_double(row[3]);
        l.vol_z = csv::parse_double(row[4]);
        l.attention_z = csv::parse_double(row[5]);
        l.seed = static_cast<std::uint64_t>(csv::parse_long(row[6]));
        out.push_back(std::move(l));
    }
    return out;
}

void write_ranked_csv(const std::string& path, const std::vector<ScoredWindow>& scored) {
    std::vector<const ScoredWindow*> order;
    order.reserve(scored.size());
    for (const auto& sw : scored) order.push_back(&sw);
    std::sort(order.begin(), order.end(), [](const ScoredWindow* a, const ScoredWindow* b) {
        if (a->M != b->M) return a->M > b->M;
        return a->window.window_id < b->window.window_id;
    });

    std::ostringstream os;
    os << "window_id,ticker,start_date,end_date,M,rank_pct";
    for (int k = 1; k <= kPhiCount; ++k) os << ",phi" << k;
    for (int k = 1; k <= kPhiCount; ++k) os << ",contrib" << k;
    os << ",flags\n";
    for (const ScoredWindow* sw : order) {
        os << sw->window.window_id << ',' << sw->window.ticker << ',' << sw->window.start_ts
           << ',' << sw->window.end_ts << ',' << csv::format_9(sw->M) << ','
           << csv::format_9(sw->rank_pct);
        for (double v : sw->phi) os << ',' << csv::format_9(v);
        for (double v : sw->contributions) os << ',' << csv::format_9(v);
        os << ',';
        for (size_t i = 0; i < sw->flags.size(); ++i) {
            if (i) os << '|';
            os << sw->flags[i];
        }
        os << '\n';
    }
    csv::atomic_write(path, os.str());
}

}  // namespace vigil
