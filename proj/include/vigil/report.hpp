#pragma once

#include <map>
#include <string>
#include <vector>

#include "vigil/scoring.hpp"
#include "vigil/types.hpp"

// Report artifacts: factor attribution (Markdown + CSV), per-ticker summary,
// and per-window evidence packets for analyst review. All floats at 9
// significant digits, written atomically.

namespace vigil {

// columns: signal,mean,median,abs_mean_share,nonzero_pct (contribution-based)
void write_attribution_markdown(const std::string& path,
                                const std::vector<FactorStats>& stats);
void write_attribution_csv(const std::string& path, const std::vector<FactorStats>& stats);

// full per-factor statistics over raw phi values and contributions
void write_contribution_stats_csv(const std::string& path,
                                  const std::vector<FactorStats>& stats);

void write_ticker_summary_csv(const std::string& path,
                              const std::vector<TickerSummaryRow>& rows);

// one JSON per window: metadata, per-bar z triples, per-source z, phi
// breakdown. NaN serializes as null.
void write_evidence_packets(const std::string& dir,
                            const std::vector<ScoredWindow>& scored,
                            const std::map<std::string, ChannelZ>& z_by_ticker,
                            const std::vector<TickerPanel>& panels);

}  // namespace vigil
