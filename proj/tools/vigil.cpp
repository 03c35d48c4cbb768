// vigil — market-integrity triage CLI.
// Subcommands mirror the pipeline stages (fetch, synth, panel, detect,
// score, report, run-all); every stage consumes and produces the documented
// CSV/JSON interchange files so stages can be re-run independently.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "vigil/baseline.hpp"
#include "vigil/config.hpp"
#include "vigil/csv.hpp"
#include "vigil/fetch.hpp"
#include "vigil/io.hpp"
#include "vigil/panel.hpp"
#include "vigil/pipeline.hpp"
#include "vigil/report.hpp"
#include "vigil/scoring.hpp"
#include "vigil/synthetic.hpp"
#include "vigil/version.hpp"

namespace fs = std::filesystem;
using namespace vigil;

namespace {

struct Overrides {
    std::optional<std::vector<std::string>> tickers;
    std::optional<std::string> date_from, date_to, scale_mode, normalization_mode;
    std::optional<std::string> ohlcv_path, attention_dir, out_dir, cache_dir;
    std::optional<std::string> endpoint_url, api_key_env;
    std::optional<int> baseline_window, vol_lookback, min_window_len, gap_tolerance,
        delta_recur, max_retries, retry_backoff_ms;
    std::optional<double> eps, thr_high, thr_low, alpha_r, alpha_sigma, alpha_attention,
        tau_recur, ewma_lambda, artifact_z_cap;
    std::optional<std::vector<double>> omega;
    std::optional<bool> clamp_attention_z, clamp_phi4, vol_include_current, exclude_warmup;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--tickers", ov.tickers, "Ticker list (overrides config)")->delimiter(',');
    cmd->add_option("--from", ov.date_from, "Start date (ISO)");
    cmd->add_option("--to", ov.date_to, "End date (ISO)");
    cmd->add_option("--baseline-window", ov.baseline_window, "Rolling baseline length B");
    cmd->add_option("--vol-lookback", ov.vol_lookback, "Volatility lookback L");
    cmd->add_option("--eps", ov.eps, "Variance floor epsilon");
    cmd->add_option("--thr-high", ov.thr_high, "Window initiation threshold");
    cmd->add_option("--thr-low", ov.thr_low, "Window continuation threshold");
    cmd->add_option("--min-window-len", ov.min_window_len, "Minimum window length (bars)");
    cmd->add_option("--gap-tolerance", ov.gap_tolerance, "Sub-threshold bars bridged");
    cmd->add_option("--alpha-r", ov.alpha_r, "Return channel weight");
    cmd->add_option("--alpha-sigma", ov.alpha_sigma, "Volatility channel weight");
    cmd->add_option("--alpha-attention", ov.alpha_attention, "Attention channel weight");
    cmd->add_option("--omega", ov.omega, "Six factor weights")->delimiter(',');
    cmd->add_option("--scale", ov.scale_mode, "Factor scale mode: none|zscore");
    cmd->add_option("--normalization", ov.normalization_mode,
                    "Source normalization: minmax|none|zscore");
    cmd->add_option("--delta-recur", ov.delta_recur, "Recurrence distance (bars)");
    cmd->add_option("--tau-recur", ov.tau_recur, "Recurrence score threshold");
    cmd->add_option("--ewma-lambda", ov.ewma_lambda, "EWMA decay");
    cmd->add_option("--artifact-z-cap", ov.artifact_z_cap, "Extreme-z triage flag cap");
    cmd->add_flag("--clamp-attention-z,!--no-clamp-attention-z", ov.clamp_attention_z,
                  "Clamp negative attention z in strength");
    cmd->add_flag("--clamp-phi4,!--no-clamp-phi4", ov.clamp_phi4, "Clamp negative phi4");
    cmd->add_flag("--vol-include-current,!--no-vol-include-current", ov.vol_include_current,
                  "Volatility window ends at t instead of t-1");
    cmd->add_flag("--exclude-warmup,!--no-exclude-warmup", ov.exclude_warmup,
                  "Drop warmup-contaminated windows from scoring");
    cmd->add_option("--ohlcv", ov.ohlcv_path, "OHLCV CSV file or per-ticker directory");
    cmd->add_option("--attention-dir", ov.attention_dir, "Directory of <source>.csv files");
    cmd->add_option("--out", ov.out_dir, "Output directory");
    cmd->add_option("--cache-dir", ov.cache_dir, "Fetch cache directory");
    cmd->add_option("--endpoint", ov.endpoint_url, "Market-data URL template");
    cmd->add_option("--api-key-env", ov.api_key_env, "Env var holding the API credential");
    cmd->add_option("--max-retries", ov.max_retries, "HTTP retry budget");
    cmd->add_option("--retry-backoff-ms", ov.retry_backoff_ms, "Initial retry backoff");
}

RunConfig make_config(const std::string& config_path, const Overrides& ov) {
    RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
    if (ov.tickers) cfg.tickers = *ov.tickers;
    if (ov.date_from) cfg.date_from = *ov.date_from;
    if (ov.date_to) cfg.date_to = *ov.date_to;
    if (ov.baseline_window) cfg.baseline_window = *ov.baseline_window;
    if (ov.vol_lookback) cfg.vol_lookback = *ov.vol_lookback;
    if (ov.eps) cfg.eps = *ov.eps;
    if (ov.thr_high) cfg.thr_high = *ov.thr_high;
    if (ov.thr_low) cfg.thr_low = *ov.thr_low;
    if (ov.min_window_len) cfg.min_window_len = *ov.min_window_len;
    if (ov.gap_tolerance) cfg.gap_tolerance = *ov.gap_tolerance;
    if (ov.alpha_r) cfg.alpha_r = *ov.alpha_r;
    if (ov.alpha_sigma) cfg.alpha_sigma = *ov.alpha_sigma;
    if (ov.alpha_attention) cfg.alpha_attention = *ov.alpha_attention;
    if (ov.omega) {
        if (ov.omega->size() != 6) throw CLI::ValidationError("--omega needs 6 values");
        for (size_t k = 0; k < 6; ++k) cfg.omega[k] = (*ov.omega)[k];
    }
    if (ov.scale_mode) cfg.scale_mode = *ov.scale_mode;
    if (ov.normalization_mode) cfg.normalization_mode = *ov.normalization_mode;
    if (ov.delta_recur) cfg.delta_recur = *ov.delta_recur;
    if (ov.tau_recur) cfg.tau_recur = *ov.tau_recur;
    if (ov.ewma_lambda) cfg.ewma_lambda = *ov.ewma_lambda;
    if (ov.artifact_z_cap) cfg.artifact_z_cap = *ov.artifact_z_cap;
    if (ov.clamp_attention_z) cfg.clamp_attention_z = *ov.clamp_attention_z;
    if (ov.clamp_phi4) cfg.clamp_phi4 = *ov.clamp_phi4;
    if (ov.vol_include_current) cfg.vol_include_current = *ov.vol_include_current;
    if (ov.exclude_warmup) cfg.exclude_warmup = *ov.exclude_warmup;
    if (ov.ohlcv_path) cfg.ohlcv_path = *ov.ohlcv_path;
    if (ov.attention_dir) cfg.attention_dir = *ov.attention_dir;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.cache_dir) cfg.cache_dir = *ov.cache_dir;
    if (ov.endpoint_url) cfg.endpoint_url = *ov.endpoint_url;
    if (ov.api_key_env) cfg.api_key_env = *ov.api_key_env;
    if (ov.max_retries) cfg.max_retries = *ov.max_retries;
    if (ov.retry_backoff_ms) cfg.retry_backoff_ms = *ov.retry_backoff_ms;
    validate_config(cfg);
    return cfg;
}

std::map<std::string, ChannelZ> channel_z(const std::vector<TickerPanel>& panels,
                                          const RunConfig& cfg) {
    ZScoreOptions opts;
    opts.baseline_window = cfg.baseline_window;
    opts.eps = cfg.eps;
    opts.strength.alpha_r = cfg.alpha_r;
    opts.strength.alpha_sigma = cfg.alpha_sigma;
    opts.strength.alpha_attention = cfg.alpha_attention;
    opts.strength.clamp_attention_z = cfg.clamp_attention_z;
    std::map<std::string, ChannelZ> out;
    for (const auto& p : panels) out.emplace(p.ticker, compute_channel_zscores(p, opts));
    return out;
}

DetectionResult detect_from_panels(const std::vector<TickerPanel>& panels,
                                   const RunConfig& cfg) {
    return run_detect_stage(panels, cfg);
}

// synth: quiet or stylized universes, optional episode injection
struct SynthArgs {
    std::vector<std::string> tickers = {"SYN01"};
    int bars = 248;
    std::string start_date = "2024-01-08";
    double daily_vol = 0.0;
    double start_price = 100.0;
    std::uint64_t seed = 1;
    bool stylized = false;
    std::string episodes_path;
    std::string out_dir = "synth";
};

int run_synth(const SynthArgs& args, const RunConfig& cfg) {
    std::map<std::string, std::vector<Bar>> all_bars;
    std::map<std::string, std::map<std::string, std::vector<AttentionObservation>>> per_source;

    std::vector<EpisodeSpec> episodes;
    if (!args.episodes_path.empty()) {
        std::ifstream in(args.episodes_path);
        if (!in) throw std::runtime_error("cannot open episodes file: " + args.episodes_path);
        nlohmann::json j = nlohmann::json::parse(in);
        for (const auto& e : j) {
            EpisodeSpec spec;
            spec.ticker = e.at("ticker").get<std::string>();
            spec.start_idx = e.at("start_idx").get<int>();
            spec.length = e.at("length").get<int>();
            spec.return_z_target = e.value("return_z", 0.0);
            spec.vol_z_target = e.value("vol_z", 0.0);
            spec.attention_z_target = e.value("attention_z", 0.0);
            spec.seed = e.value("seed", 0ULL);
            episodes.push_back(std::move(spec));
        }
    }

    InjectionParams inj;
    inj.baseline_window = cfg.baseline_window;
    inj.vol_lookback = cfg.vol_lookback;
    inj.eps = cfg.eps;
    inj.source_weights = cfg.source_weights();

    std::vector<EpisodeLabel> labels;
    for (size_t i = 0; i < args.tickers.size(); ++i) {
        const std::string& ticker = args.tickers[i];
        TickerInputs inputs;
        BarGenSpec bar_spec;
        bar_spec.ticker = ticker;
        bar_spec.start_date = args.start_date;
        bar_spec.n_bars = args.bars;
        bar_spec.start_price = args.start_price;
        bar_spec.daily_vol = args.daily_vol;
        bar_spec.seed = args.seed + i * 1000003ULL;
        inputs.bars = generate_bars(bar_spec);
        std::vector<std::string> grid;
        for (const auto& b : inputs.bars) grid.push_back(b.date);

        for (size_t s = 0; s < cfg.sources.size(); ++s) {
            if (args.stylized) {
                ProxySpec proxy;
                proxy.source = cfg.sources[s].name;
                proxy.base_level = 10.0 + 5.0 * static_cast<double>(s);
                proxy.noise_scale = 1.0;
                proxy.spike_rate = 2.0;
                proxy.spike_magnitude = 25.0;
                proxy.decay_half_life = 5.0;
                proxy.seed = bar_spec.seed ^ (0x9e3779b9ULL * (s + 1));
                inputs.attention.push_back(generate_proxy(proxy, grid, ticker));
            } else {
                AttentionSeries series;
                series.source = cfg.sources[s].name;
                series.ticker = ticker;
                series.dates = grid;
                series.values.assign(grid.size(), 10.0 + 5.0 * static_cast<double>(s));
                inputs.attention.push_back(std::move(series));
            }
        }

        for (const auto& ep : episodes) {
            if (ep.ticker != ticker) continue;
            labels.push_back(inject_episode(inputs, ep, inj));
        }

        for (size_t s = 0; s < inputs.attention.size(); ++s) {
            auto& obs = per_source[inputs.attention[s].source][ticker];
            for (size_t t = 0; t < grid.size(); ++t) {
                obs.push_back({grid[t], inputs.attention[s].values[t], true});
            }
        }
        all_bars[ticker] = std::move(inputs.bars);
    }

    write_ohlcv_csv(args.out_dir + "/ohlcv.csv", all_bars);
    for (const auto& [source, obs] : per_source) {
        write_attention_csv(args.out_dir + "/attention/" + source + ".csv", obs);
    }
    if (!labels.empty()) write_labels_csv(args.out_dir + "/labels.csv", labels);
    std::cout << "synth: " << args.tickers.size() << " tickers x " << args.bars
              << " bars -> " << args.out_dir << " (" << labels.size() << " episodes)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"market-integrity triage engine"};
    app.set_version_flag("--version", kEngineVersion);
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    SynthArgs synth_args;
    std::string panel_path = "panel.csv";
    std::string windows_path = "windows.csv";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config.json path");
        add_override_flags(cmd, ov);
    };

    CLI::App* c_fetch = app.add_subcommand("fetch", "Fetch OHLCV bars into the local cache");
    add_common(c_fetch);

    CLI::App* c_synth =
        app.add_subcommand("synth", "Generate a synthetic universe (bars + attention)");
    add_common(c_synth);
    c_synth->add_option("--synth-tickers", synth_args.tickers, "Synthetic ticker names")
        ->delimiter(',');
    c_synth->add_option("--bars", synth_args.bars, "Bars per ticker");
    c_synth->add_option("--start-date", synth_args.start_date, "Grid start date");
    c_synth->add_option("--daily-vol", synth_args.daily_vol, "Log-return vol (0 = quiet)");
    c_synth->add_option("--start-price", synth_args.start_price, "Initial price");
    c_synth->add_option("--seed", synth_args.seed, "Universe seed");
    c_synth->add_flag("--stylized", synth_args.stylized,
                      "Stylized attention proxies (spikes/decay/noise)");
    c_synth->add_option("--episodes", synth_args.episodes_path,
                        "JSON file of episodes to inject");
    c_synth->add_option("--synth-out", synth_args.out_dir, "Output directory");

    CLI::App* c_panel = app.add_subcommand("panel", "Build and export the panel CSV");
    add_common(c_panel);
    c_panel->add_option("--panel-out", panel_path, "Panel CSV output path");

    CLI::App* c_detect = app.add_subcommand("detect", "Detect windows from a panel CSV");
    add_common(c_detect);
    c_detect->add_option("--panel", panel_path, "Panel CSV input path");

    CLI::App* c_score = app.add_subcommand("score", "Score persisted windows");
    add_common(c_score);
    c_score->add_option("--panel", panel_path, "Panel CSV input path");
    c_score->add_option("--windows", windows_path, "Windows CSV input path");

    CLI::App* c_report = app.add_subcommand("report", "Emit report artifacts");
    add_common(c_report);
    c_report->add_option("--panel", panel_path, "Panel CSV input path");
    c_report->add_option("--windows", windows_path, "Windows CSV input path");

    CLI::App* c_run = app.add_subcommand("run-all", "Run every stage and emit all artifacts");
    add_common(c_run);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = make_config(config_path, ov);

        if (c_fetch->parsed()) {
            EndpointConfig endpoint{cfg.endpoint_url, cfg.api_key_env, cfg.max_retries,
                                    cfg.retry_backoff_ms};
            auto transport = make_httplib_transport();
            std::map<std::string, std::vector<Bar>> fetched;
            for (const auto& ticker : cfg.tickers) {
                fetched[ticker] = fetch_ohlcv(ticker, cfg.date_from, cfg.date_to, endpoint,
                                              *transport, cfg.cache_dir);
                std::cout << "fetched " << ticker << ": " << fetched[ticker].size()
                          << " bars\n";
            }
            if (!cfg.ohlcv_path.empty()) {
                write_ohlcv_csv(cfg.ohlcv_path, fetched);
                std::cout << "wrote " << cfg.ohlcv_path << "\n";
            }
            return 0;
        }

        if (c_synth->parsed()) return run_synth(synth_args, cfg);

        if (c_panel->parsed()) {
            auto panels = run_panel_stage(load_inputs(cfg), cfg);
            write_panel_csv(panel_path, panels);
            size_t rows = 0;
            for (const auto& p : panels) rows += p.size();
            std::cout << "panel: " << panels.size() << " tickers, " << rows << " rows -> "
                      << panel_path << "\n";
            return 0;
        }

        if (c_detect->parsed()) {
            auto panels = read_panel_csv(panel_path);
            apply_warmup_flags(panels, cfg);
            auto detection = detect_from_panels(panels, cfg);
            write_strength_csv(cfg.out_dir + "/strength.csv", panels, detection.z_by_ticker);
            write_windows_csv(cfg.out_dir + "/windows_unfiltered.csv", detection.windows);
            write_windows_csv(cfg.out_dir + "/windows.csv", detection.windows_filtered);
            std::cout << "detect: " << detection.windows.size() << " windows ("
                      << detection.windows_filtered.size() << " after warmup filter) -> "
                      << cfg.out_dir << "\n";
            return 0;
        }

        if (c_score->parsed() || c_report->parsed()) {
            auto panels = read_panel_csv(panel_path);
            DetectionResult detection;
            detection.z_by_ticker = channel_z(panels, cfg);
            detection.windows_filtered = read_windows_csv(windows_path, panels);
            auto scored = run_score_stage(detection, cfg);
            if (c_score->parsed()) {
                write_ranked_csv(cfg.out_dir + "/ranked.csv", scored);
                std::cout << "score: " << scored.size() << " windows -> " << cfg.out_dir
                          << "/ranked.csv\n";
            } else {
                auto stats = contribution_stats(scored);
                write_attribution_markdown(cfg.out_dir + "/attribution.md", stats);
                write_attribution_csv(cfg.out_dir + "/attribution.csv", stats);
                write_contribution_stats_csv(cfg.out_dir + "/contribution_stats.csv", stats);
                write_ticker_summary_csv(cfg.out_dir + "/ticker_summary.csv",
                                         ticker_summary(scored, panels));
                write_evidence_packets(cfg.out_dir + "/evidence", scored,
                                       detection.z_by_ticker, panels);
                std::cout << "report: artifacts for " << scored.size() << " windows -> "
                          << cfg.out_dir << "\n";
            }
            return 0;
        }

        if (c_run->parsed()) {
            auto result = run_all(cfg);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            std::cout << "run-all: " << result.panel_rows << " panel rows, "
                      << result.windows_detected << " windows detected, "
                      << result.windows_scored << " scored\n"
                      << "artifacts: " << result.run_dir << "\n";
            return static_cast<int>(result.status);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
