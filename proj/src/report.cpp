#include "vigil/report.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "vigil/csv.hpp"

namespace vigil {

void write_attribution_markdown(const std::string& path,
                                const std::vector<FactorStats>& stats) {
    std::ostringstream os;
    os << "# Factor attribution\n\n";
    os << "Contribution statistics per scoring factor across the scored window set.\n\n";
    os << "| signal | mean | median | abs_mean_share | nonzero_pct |\n";
    os << "|--------|------|--------|----------------|-------------|\n";
    for (const auto& fs : stats) {
        os << "| " << fs.signal << " | " << csv::format_9(fs.contrib_mean) << " | "
           << csv::format_9(fs.contrib_median) << " | " << csv::format_9(fs.abs_mean_share)
           << "% | " << csv::format_9(fs.phi_nonzero_pct) << "% |\n";
    }
    csv::atomic_write(path, os.str());
}

void write_attribution_csv(const std::string& path, const std::vector<FactorStats>& stats) {
    std::ostringstream os;
    os << "signal,mean,median,abs_mean_share,nonzero_pct\n";
    for (const auto& fs : stats) {
        os << fs.signal << ',' << csv::format_9(fs.contrib_mean) << ','
           << csv::format_9(fs.contrib_median) << ',' << csv::format_9(fs.abs_mean_share)
           << ',' << csv::format_9(fs.phi_nonzero_pct) << '\n';
    }
    csv::atomic_write(path, os.str());
}

void write_contribution_stats_csv(const std::string& path,
                                  const std::vector<FactorStats>& stats) {
    std::ostringstream os;
    os << "signal,phi_mean,phi_median,phi_max,phi_std,phi_nonzero_pct,"
          "contrib_mean,contrib_median,contrib_max,contrib_std,abs_mean_share\n";
    for (const auto& fs : stats) {
        os << fs.signal << ',' << csv::format_9(fs.phi_mean) << ','
           << csv::format_9(fs.phi_median) << ',' << csv::format_9(fs.phi_max) << ','
           << csv::format_9(fs.phi_std) << ',' << csv::format_9(fs.phi_nonzero_pct) << ','
           << csv::format_9(fs.contrib_mean) << ',' << csv::format_9(fs.contrib_median) << ','
           << csv::format_9(fs.contrib_max) << ',' << csv::format_9(fs.contrib_std) << ','
           << csv::format_9(fs.abs_mean_share) << '\n';
    }
    csv::atomic_write(path, os.str());
}

void write_ticker_summary_csv(const std::string& path,
                              const std::vector<TickerSummaryRow>& rows) {
    std::ostringstream os;
    os << "ticker,windows,mean_M,median_M,max_M,std_M,mean_bars,total_bars,coverage_pct\n";
    for (const auto& r : rows) {
        os << r.ticker << ',' << r.windows << ',' << csv::format_9(r.mean_m) << ','
           << csv::format_9(r.median_m) << ',' << csv::format_9(r.max_m) << ','
           << csv::format_9(r.std_m) << ',' << csv::format_9(r.mean_bars) << ','
           << r.total_bars << ',' << csv::format_9(r.coverage_pct) << '\n';
    }
    csv::atomic_write(path, os.str());
}

void write_evidence_packets(const std::string& dir,
                            const std::vector<ScoredWindow>& scored,
                            const std::map<std::string, ChannelZ>& z_by_ticker,
                            const std::vector<TickerPanel>& panels) {
    using nlohmann::ordered_json;
    std::filesystem::create_directories(dir);
    std::map<std::string, const TickerPanel*> panel_by_ticker;
    for (const auto& p : panels) panel_by_ticker[p.ticker] = &p;

    auto num = [](double v) -> ordered_json {
        if (is_nan(v)) return nullptr;
        return v;
    };

    for (const auto& sw : scored) {
        const Window& w = sw.window;
        const ChannelZ& z = z_by_ticker.at(w.ticker);
        const TickerPanel& p = *panel_by_ticker.at(w.ticker);

        ordered_json j;
        j["window_id"] = w.window_id;
        j["ticker"] = w.ticker;
        j["start_date"] = w.start_ts;
        j["end_date"] = w.end_ts;
        j["n_bars"] = w.n_bars();
        j["contains_warmup"] = w.contains_warmup;
        j["M"] = num(sw.M);
        j["rank_pct"] = num(sw.rank_pct);
        ordered_json phi = ordered_json::object();
        ordered_json contrib = ordered_json::object();
        ordered_json scaled = ordered_json::object();
        for (int k = 0; k < kPhiCount; ++k) {
            std::string name = "phi_" + std::to_string(k + 1);
            phi[name] = num(sw.phi[k]);
            scaled[name] = num(sw.phi_scaled[k]);
            contrib[name] = num(sw.contributions[k]);
        }
        j["phi"] = phi;
        j["phi_scaled"] = scaled;
        j["contributions"] = contrib;
        j["flags"] = sw.flags;

        ordered_json bars = ordered_json::array();
        for (int t = w.start_idx; t <= w.end_idx; ++t) {
            ordered_json row;
            row["date"] = p.dates[t];
            row["z_r"] = num(z.z_r[t]);
            row["z_sigma"] = num(z.z_sigma[t]);
            row["z_attention"] = num(z.z_attention[t]);
            row["strength"] = num(z.strength[t]);
            ordered_json zs = ordered_json::object();
            for (size_t s = 0; s < p.source_names.size(); ++s) {
                zs[p.source_names[s]] = num(z.z_source[s][t]);
            }
            row["z_source"] = zs;
            bars.push_back(std::move(row));
        }
        j["bars"] = bars;

        char name[32];
        std::snprintf(name, sizeof(name), "window_%05d.json", w.window_id);
        csv::atomic_write(dir + "/" + name, j.dump(2) + "\n");
    }
}

}  // namespace vigil
