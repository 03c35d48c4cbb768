#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "vigil/types.hpp"

// Per-window factor computation, Integrity Score aggregation and ranking.
// phi1..phi4 and phi6 are pure per-window functions; phi5 and the rank
// percentiles need the full window population (two-pass scheme).

namespace vigil {

enum class ScaleMode { none, zscore };
ScaleMode scale_mode_from_string(const std::string& s);

// NaN bars are skipped inside each factor; a factor whose channel is all-NaN
// over the window yields 0 and appends an insufficient-data flag.
double phi1_return_shock(std::span<const double> z_r, int start, int end,
                         std::vector<std::string>* flags);
double phi2_vol_anomaly(std::span<const double> z_sigma, int start, int end,
                        std::vector<std::string>* flags);
double phi3_attention_spike(std::span<const double> z_attention, int start, int end,
                            std::vector<std::string>* flags);

// Mean of Corr(z_r, z_A) and Corr(z_sigma, z_A) over pairwise-complete bars.
// A zero-variance term contributes 0; a term with < 2 usable pairs also
// contributes 0 and flags insufficient data.
double phi4_alignment(std::span<const double> z_r, std::span<const double> z_sigma,
                      std::span<const double> z_attention, int start, int end,
                      bool clamp_negative, std::vector<std::string>* flags);

// Count of other same-ticker windows whose interior-bar distance is below
// delta_recur and whose provisional score exceeds tau_recur.
std::vector<double> phi5_recurrence(const std::vector<Window>& windows,
                                    const std::vector<double>& provisional_m,
                                    int delta_recur, double tau_recur);

// Negated population std of the pooled per-source z multiset over the window;
// 0 with a flag unless >= 2 sources contribute at least one value.
double phi6_disagreement(const std::vector<std::vector<double>>& z_source,
                         int start, int end, std::vector<std::string>* flags);

// mode none: identity. mode zscore: per-factor standardization across the
// window population (population std; zero-variance factor -> all zeros).
std::vector<PhiVector> scale_phi(const std::vector<PhiVector>& phi, ScaleMode mode);

// contributions_k = omega_k * phi_scaled_k; M is their exact sum.
void integrity_score(const PhiVector& phi_scaled, const std::array<double, 6>& omega,
                     double& m_out, PhiVector& contributions_out);

// rank_pct(w) = #{w' : M(w') <= M(w)} / N; ties share a value, max is 1.0.
std::vector<double> rank_percentiles(const std::vector<double>& m_values);

struct ScoringOptions {
    std::array<double, 6> omega{1, 1, 1, 1, 1, 1};
    ScaleMode scale = ScaleMode::none;
    bool clamp_phi4 = false;
    int delta_recur = 10;
    double tau_recur = std::numeric_limits<double>::infinity();
    double artifact_z_cap = 20.0;  // triage flag only, never a filter
};

// Full two-pass scoring of a window population. `z_by_ticker` must hold the
// ChannelZ for every ticker appearing in `windows`.
std::vector<ScoredWindow> score_windows(const std::vector<Window>& windows,
                                        const std::map<std::string, ChannelZ>& z_by_ticker,
                                        const ScoringOptions& opts);

// Aggregate per-factor statistics over raw phi values and contributions.
struct FactorStats {
    std::string signal;  // phi_1 .. phi_6
    double phi_mean = 0, phi_median = 0, phi_max = 0, phi_std = 0, phi_nonzero_pct = 0;
    double contrib_mean = 0, contrib_median = 0, contrib_max = 0, contrib_std = 0;
    double abs_mean_share = 0;  // percent of total mean |contribution|
};
std::vector<FactorStats> contribution_stats(const std::vector<ScoredWindow>& scored);

struct TickerSummaryRow {
    std::string ticker;
    int windows = 0;
    double mean_m = 0, median_m = 0, max_m = 0, std_m = 0;
    double mean_bars = 0;
    int total_bars = 0;
    double coverage_pct = 0;  // rows with non-NaN fused attention
};
std::vector<TickerSummaryRow> ticker_summary(const std::vector<ScoredWindow>& scored,
                                             const std::vector<TickerPanel>& panel);

}  // namespace vigil
