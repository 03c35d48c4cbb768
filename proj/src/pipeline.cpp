#include "vigil/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vigil/baseline.hpp"
#include "vigil/csv.hpp"
#include "vigil/io.hpp"
#include "vigil/panel.hpp"
#include "vigil/report.hpp"
#include "vigil/scoring.hpp"
#include "vigil/segmentation.hpp"
#include "vigil/version.hpp"

namespace vigil {

namespace fs = std::filesystem;

namespace {

PanelOptions panel_options(const RunConfig& cfg) {
    PanelOptions opts;
    opts.vol_lookback = cfg.vol_lookback;
    opts.eps = cfg.eps;
    opts.ewma_lambda = cfg.ewma_lambda;
    opts.vol_include_current = cfg.vol_include_current;
    opts.baseline_window = cfg.baseline_window;
    opts.normalization = normalization_mode_from_string(cfg.normalization_mode);
    opts.source_weights = cfg.source_weights();
    return opts;
}

ZScoreOptions zscore_options(const RunConfig& cfg) {
    ZScoreOptions opts;
    opts.baseline_window = cfg.baseline_window;
    opts.eps = cfg.eps;
    opts.strength.alpha_r = cfg.alpha_r;
    opts.strength.alpha_sigma = cfg.alpha_sigma;
    opts.strength.alpha_attention = cfg.alpha_attention;
    opts.strength.clamp_attention_z = cfg.clamp_attention_z;
    return opts;
}

ScoringOptions scoring_options(const RunConfig& cfg) {
    ScoringOptions opts;
    opts.omega = cfg.omega;
    opts.scale = scale_mode_from_string(cfg.scale_mode);
    opts.clamp_phi4 = cfg.clamp_phi4;
    opts.delta_recur = cfg.delta_recur;
    opts.tau_recur = cfg.tau_recur;
    opts.artifact_z_cap = cfg.artifact_z_cap;
    return opts;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read input for digest: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return hash_hex(fnv1a64(ss.str()));
}

}  // namespace

StageInputs load_inputs(const RunConfig& cfg) {
    StageInputs inputs;
    if (cfg.tickers.empty()) return inputs;
    if (cfg.ohlcv_path.empty()) throw std::runtime_error("load_inputs: ohlcv_path not set");

    std::map<std::string, std::vector<Bar>> all_bars;
    if (fs::is_directory(cfg.ohlcv_path)) {
        for (const auto& ticker : cfg.tickers) {
            std::string path = cfg.ohlcv_path + "/" + ticker + ".csv";
            if (!fs::exists(path)) {
                inputs.warnings.push_back("no OHLCV file for ticker " + ticker);
                continue;
            }
            auto part = read_ohlcv_csv(path);
            inputs.input_files.push_back(path);
            for (auto& [t, bars] : part) all_bars[t] = std::move(bars);
        }
    } else {
        all_bars = read_ohlcv_csv(cfg.ohlcv_path);
        inputs.input_files.push_back(cfg.ohlcv_path);
    }

    for (const auto& ticker : cfg.tickers) {
        auto it = all_bars.find(ticker);
        if (it == all_bars.end()) {
            if (!fs::is_directory(cfg.ohlcv_path))
                inputs.warnings.push_back("no OHLCV rows for ticker " + ticker);
            continue;
        }
        std::vector<Bar> bars = it->second;
        if (!cfg.date_from.empty() || !cfg.date_to.empty()) {
            std::vector<Bar> kept;
            for (auto& b : bars) {
                if (!cfg.date_from.empty() && b.date < cfg.date_from) continue;
                if (!cfg.date_to.empty() && b.date > cfg.date_to) continue;
                kept.push_back(std::move(b));
            }
            bars = std::move(kept);
        }
        if (bars.empty()) {
            inputs.warnings.push_back("no bars in range for ticker " + ticker);
            continue;
        }
        inputs.bars[ticker] = std::move(bars);
    }

    // attention: one CSV per source plus optional coverage file
    for (const auto& source : cfg.sources) {
        std::string path = cfg.attention_dir + "/" + source.name + ".csv";
        std::map<std::string, std::vector<AttentionObservation>> obs;
        std::map<std::string, CoverageSpec> coverage;
        bool file_present = !cfg.attention_dir.empty() && fs::exists(path);
        if (file_present) {
            obs = read_attention_csv(path);
            inputs.input_files.push_back(path);
            std::string cov_path = cfg.attention_dir + "/" + source.name + "_coverage.csv";
            if (fs::exists(cov_path)) {
                coverage = read_coverage_csv(cov_path);
                inputs.input_files.push_back(cov_path);
            }
        } else {
            inputs.warnings.push_back("attention source file missing: " + path);
        }

        ResampleMode mode = resample_mode_from_string(source.resample);
        for (const auto& [ticker, bars] : inputs.bars) {
            std::vector<std::string> grid;
            grid.reserve(bars.size());
            for (const auto& b : bars) grid.push_back(b.date);

            CoverageSpec spec = CoverageSpec::full();
            std::vector<AttentionObservation> raw;
            if (!file_present) {
                spec = CoverageSpec::none();
            } else {
                auto oit = obs.find(ticker);
                if (oit != obs.end()) raw = oit->second;
                if (!coverage.empty()) {
                    auto cit = coverage.find(ticker);
                    // a coverage file lists covered tickers; absent => none
                    spec = cit != coverage.end() ? cit->second : CoverageSpec::none();
                }
            }
            inputs.attention[ticker].push_back(
                resample_source(raw, grid, mode, spec, source.name, ticker));
        }
    }
    return inputs;
}

std::vector<TickerPanel> run_panel_stage(const StageInputs& inputs, const RunConfig& cfg) {
    return build_panel(inputs.bars, inputs.attention, panel_options(cfg));
}

void apply_warmup_flags(std::vector<TickerPanel>& panels, const RunConfig& cfg) {
    const int warmup_end = cfg.warmup_bars();
    for (auto& p : panels) {
        p.warmup.assign(p.size(), 0);
        for (size_t t = 0; t < p.size(); ++t) {
            if (static_cast<int>(t) < warmup_end) p.warmup[t] = 1;
        }
    }
}

DetectionResult run_detect_stage(const std::vector<TickerPanel>& panels,
                                 const RunConfig& cfg) {
    DetectionResult out;
    HysteresisParams params;
    params.thr_high = cfg.thr_high;
    params.thr_low = cfg.thr_low;
    params.gap_tolerance = cfg.gap_tolerance;
    params.min_window_len = cfg.min_window_len;

    for (const auto& panel : panels) {
        ChannelZ z = compute_channel_zscores(panel, zscore_options(cfg));
        auto windows = hysteresis_segment(z.strength, params);
        for (auto& w : windows) {
            w.ticker = panel.ticker;
            w.start_ts = panel.dates[w.start_idx];
            w.end_ts = panel.dates[w.end_idx];
            for (int t = w.start_idx; t <= w.end_idx; ++t) {
                if (panel.warmup[t]) {
                    w.contains_warmup = true;
                    break;
                }
            }
        }
        windows = merge_windows(std::move(windows), cfg.gap_tolerance);
        out.windows.insert(out.windows.end(), windows.begin(), windows.end());
        out.z_by_ticker.emplace(panel.ticker, std::move(z));
    }
    assign_window_ids(out.windows);

    for (const auto& w : out.windows) {
        if (!cfg.exclude_warmup || !w.contains_warmup) out.windows_filtered.push_back(w);
    }
    return out;
}

std::vector<ScoredWindow> run_score_stage(const DetectionResult& detection,
                                          const RunConfig& cfg) {
    return score_windows(detection.windows_filtered, detection.z_by_ticker,
                         scoring_options(cfg));
}

RunResult run_all(const RunConfig& cfg) {
    RunResult result;

    StageInputs inputs = load_inputs(cfg);
    result.warnings = inputs.warnings;

    auto panels = run_panel_stage(inputs, cfg);
    for (const auto& p : panels) result.panel_rows += p.size();

    auto detection = run_detect_stage(panels, cfg);
    result.windows_detected = detection.windows.size();

    auto scored = run_score_stage(detection, cfg);
    result.windows_scored = scored.size();

    auto stats = contribution_stats(scored);
    auto summary = ticker_summary(scored, panels);

    // manifest: no wall-clock fields, so identical inputs hash identically
    nlohmann::ordered_json manifest;
    manifest["engine_version"] = kEngineVersion;
    manifest["config_hash"] = hash_hex(config_hash(cfg));
    manifest["config"] = nlohmann::ordered_json::parse(config_to_json(cfg));
    nlohmann::ordered_json input_digests = nlohmann::ordered_json::array();
    std::vector<std::string> files = inputs.input_files;
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        input_digests.push_back({{"path", f}, {"digest", file_digest(f)}});
    }
    manifest["inputs"] = input_digests;
    std::string data_start, data_end;
    for (const auto& p : panels) {
        if (p.dates.empty()) continue;
        if (data_start.empty() || p.dates.front() < data_start) data_start = p.dates.front();
        if (data_end.empty() || p.dates.back() > data_end) data_end = p.dates.back();
    }
    manifest["data_range"] = {{"start", data_start}, {"end", data_end}};
    manifest["counts"] = {{"tickers", panels.size()},
                          {"panel_rows", result.panel_rows},
                          {"windows_detected", result.windows_detected},
                          {"windows_scored", result.windows_scored}};
    manifest["warnings"] = result.warnings;

    result.manifest_hash = hash_hex(fnv1a64(manifest.dump()));
    manifest["manifest_hash"] = result.manifest_hash;
    result.run_dir = cfg.out_dir + "/" + result.manifest_hash;

    write_panel_csv(result.run_dir + "/panel.csv", panels);
    write_strength_csv(result.run_dir + "/strength.csv", panels, detection.z_by_ticker);
    write_windows_csv(result.run_dir + "/windows_unfiltered.csv", detection.windows);
    write_windows_csv(result.run_dir + "/windows.csv", detection.windows_filtered);
    write_ranked_csv(result.run_dir + "/ranked.csv", scored);
    write_attribution_markdown(result.run_dir + "/attribution.md", stats);
    write_attribution_csv(result.run_dir + "/attribution.csv", stats);
    write_contribution_stats_csv(result.run_dir + "/contribution_stats.csv", stats);
    write_ticker_summary_csv(result.run_dir + "/ticker_summary.csv", summary);
    write_evidence_packets(result.run_dir + "/evidence", scored, detection.z_by_ticker,
                           panels);
    csv::atomic_write(result.run_dir + "/manifest.json", manifest.dump(2) + "\n");

    result.status = result.warnings.empty() ? RunStatus::success : RunStatus::partial_data;
    return result;
}

}  // namespace vigil
