#pragma once

#include <map>
#include <string>
#include <vector>

#include "vigil/config.hpp"
#include "vigil/types.hpp"

// Stage orchestration. Each stage is a pure function of config + inputs so
// stages can be re-run from persisted artifacts with identical results.

namespace vigil {

enum class RunStatus { success = 0, failure = 1, partial_data = 2 };

struct StageInputs {
    std::map<std::string, std::vector<Bar>> bars;
    std::map<std::string, std::vector<AttentionSeries>> attention;
    std::vector<std::string> warnings;  // non-fatal gaps => partial_data
    std::vector<std::string> input_files;
};

// Reads OHLCV (file or per-ticker directory) and per-source attention CSVs
// (+ optional <source>_coverage.csv), resampling each source onto its
// ticker's bar grid. Missing attention files degrade to no coverage and are
// recorded as warnings.
StageInputs load_inputs(const RunConfig& cfg);

struct DetectionResult {
    std::map<std::string, ChannelZ> z_by_ticker;
    std::vector<Window> windows;           // merged, min-length filtered, ids assigned
    std::vector<Window> windows_filtered;  // exclude_warmup applied
};

std::vector<TickerPanel> run_panel_stage(const StageInputs& inputs, const RunConfig& cfg);

// Warmup is a function of config (t < B + L), not of the data; panels loaded
// from CSV need their flags restored before detection.
void apply_warmup_flags(std::vector<TickerPanel>& panels, const RunConfig& cfg);

DetectionResult run_detect_stage(const std::vector<TickerPanel>& panels, const RunConfig& cfg);
std::vector<ScoredWindow> run_score_stage(const DetectionResult& detection,
                                          const RunConfig& cfg);

struct RunResult {
    RunStatus status = RunStatus::success;
    std::string run_dir;       // out_dir/<manifest_hash>
    std::string manifest_hash;
    std::vector<std::string> warnings;
    size_t panel_rows = 0;
    size_t windows_detected = 0;
    size_t windows_scored = 0;
};

// Executes all stages and writes the artifact set under a run-scoped
// directory named by the manifest hash. Identical config + inputs produce a
// byte-identical directory; the manifest carries no wall-clock fields.
RunResult run_all(const RunConfig& cfg);

}  // namespace vigil
