#pragma once

#include <map>
#include <string>
#include <vector>

#include "vigil/types.hpp"

// File formats. Interchange files (OHLCV, attention, panel, windows, labels)
// round-trip doubles exactly; "NaN" is the missing-value literal everywhere.

namespace vigil {

// header: ticker,date,open,high,low,close,volume
std::map<std::string, std::vector<Bar>> read_ohlcv_csv(const std::string& path);
void write_ohlcv_csv(const std::string& path, const std::vector<Bar>& bars);
void write_ohlcv_csv(const std::string& path,
                     const std::map<std::string, std::vector<Bar>>& bars_by_ticker);

// header: ticker,timestamp,value  (literal NaN marks an explicit missing read)
std::map<std::string, std::vector<AttentionObservation>> read_attention_csv(
    const std::string& path);
void write_attention_csv(const std::string& path,
                         const std::map<std::string, std::vector<AttentionObservation>>& obs);

// header: ticker,start,end ; a ticker absent from the file has no coverage,
// an absent file means full coverage for everyone.
std::map<std::string, CoverageSpec> read_coverage_csv(const std::string& path);

// header: ticker,date,r,sigma,range_proxy,sigma_ewma,A,<source columns>
void write_panel_csv(const std::string& path, const std::vector<TickerPanel>& panels);
std::vector<TickerPanel> read_panel_csv(const std::string& path);

// header: ticker,date,z_r,z_sigma,z_A,s,warmup
void write_strength_csv(const std::string& path, const std::vector<TickerPanel>& panels,
                        const std::map<std::string, ChannelZ>& z_by_ticker);

// header: window_id,ticker,start_date,end_date,n_bars,contains_warmup
void write_windows_csv(const std::string& path, const std::vector<Window>& windows);
// start/end indices are recovered against the panel's grid
std::vector<Window> read_windows_csv(const std::string& path,
                                     const std::vector<TickerPanel>& panels);

// header: ticker,start_date,end_date,return_z,vol_z,attention_z,seed
void write_labels_csv(const std::string& path, const std::vector<EpisodeLabel>& labels);
std::vector<EpisodeLabel> read_labels_csv(const std::string& path);

// report artifact (9 significant digits), sorted by M desc, ties by id
void write_ranked_csv(const std::string& path, const std::vector<ScoredWindow>& scored);

}  // namespace vigil
