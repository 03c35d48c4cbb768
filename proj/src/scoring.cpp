#include "vigil/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vigil/stats.hpp"

namespace vigil {

ScaleMode scale_mode_from_string(const std::string& s) {
    if (s == "none") return ScaleMode::none;
    if (s == "zscore") return ScaleMode::zscore;
    throw std::invalid_argument("unknown scale mode: " + s);
}

namespace {

void add_flag(std::vector<std::string>* flags, const std::string& f) {
    if (!flags) return;
    if (std::find(flags->begin(), flags->end(), f) == flags->end()) flags->push_back(f);
}

}  // namespace

double phi1_return_shock(std::span<const double> z_r, int start, int end,
                         std::vector<std::string>* flags) {
    double acc = 0.0;
    int used = 0;
    for (int t = start; t <= end; ++t) {
        if (is_nan(z_r[t])) continue;
        acc += z_r[t] * z_r[t];
        ++used;
    }
    if (used == 0) {
        add_flag(flags, "phi1_insufficient_data");
        return 0.0;
    }
    return acc;
}

double phi2_vol_anomaly(std::span<const double> z_sigma, int start, int end,
                        std::vector<std::string>* flags) {
    double acc = 0.0;
    int used = 0;
    for (int t = start; t <= end; ++t) {
        if (is_nan(z_sigma[t])) continue;
        acc += std::max(z_sigma[t], 0.0);
        ++used;
    }
    if (used == 0) {
        add_flag(flags, "phi2_insufficient_data");
        return 0.0;
    }
    return acc;
}

double phi3_attention_spike(std::span<const double> z_attention, int start, int end,
                            std::vector<std::string>* flags) {
    double acc = 0.0;
    int used = 0;
    for (int t = start; t <= end; ++t) {
        if (is_nan(z_attention[t])) continue;
        acc += std::max(z_attention[t], 0.0);
        ++used;
    }
    if (used == 0) {
        add_flag(flags, "phi3_insufficient_data");
        return 0.0;
    }
    return acc;
}

double phi4_alignment(std::span<const double> z_r, std::span<const double> z_sigma,
                      std::span<const double> z_attention, int start, int end,
                      bool clamp_negative, std::vector<std::string>* flags) {
    PearsonAccumulator ra, sa;
    for (int t = start; t <= end; ++t) {
        if (!is_nan(z_r[t]) && !is_nan(z_attention[t])) ra.add(z_r[t], z_attention[t]);
        if (!is_nan(z_sigma[t]) && !is_nan(z_attention[t])) sa.add(z_sigma[t], z_attention[t]);
    }
    if (ra.count() < 2 || sa.count() < 2) add_flag(flags, "phi4_insufficient_data");
    double phi4 = 0.5 * (ra.correlation() + sa.correlation());
    if (clamp_negative) phi4 = std::max(phi4, 0.0);
    return phi4;
}

std::vector<double> phi5_recurrence(const std::vector<Window>& windows,
                                    const std::vector<double>& provisional_m,
                                    int delta_recur, double tau_recur) {
    if (windows.size() != provisional_m.size())
        throw std::invalid_argument("phi5: score vector length mismatch");
    std::vector<double> out(windows.size(), 0.0);
    for (size_t i = 0; i < windows.size(); ++i) {
        int count = 0;
        for (size_t j = 0; j < windows.size(); ++j) {
            if (i == j || windows[i].ticker != windows[j].ticker) continue;
            // interior bars between the nearer edges (same convention as merging)
            int dist = windows[j].start_idx > windows[i].end_idx
                           ? windows[j].start_idx - windows[i].end_idx - 1
                           : windows[i].start_idx - windows[j].end_idx - 1;
            if (dist < delta_recur && provisional_m[j] > tau_recur) ++count;
        }
        out[i] = static_cast<double>(count);
    }
    return out;
}

double phi6_disagreement(const std::vector<std::vector<double>>& z_source,
                         int start, int end, std::vector<std::string>* flags) {
    std::vector<double> pooled;
    int sources_with_data = 0;
    for (const auto& zs : z_source) {
        bool any = false;
        for (int t = start; t <= end; ++t) {
            if (is_nan(zs[t])) continue;
            pooled.push_back(zs[t]);
            any = true;
        }
        if (any) ++sources_with_data;
    }
    if (sources_with_data < 2) {
        add_flag(flags, "phi6_insufficient_data");
        return 0.0;
    }
    return -population_std(pooled);
}

std::vector<PhiVector> scale_phi(const std::vector<PhiVector>& phi, ScaleMode mode) {
    if (mode == ScaleMode::none) return phi;
    std::vector<PhiVector> out(phi.size());
    for (int k = 0; k < kPhiCount; ++k) {
        std::vector<double> col(phi.size());
        for (size_t i = 0; i < phi.size(); ++i) col[i] = phi[i][k];
        double mu = mean_of(col);
        double sd = population_std(col);
        for (size_t i = 0; i < phi.size(); ++i) {
            out[i][k] = sd > 0.0 ? (phi[i][k] - mu) / sd : 0.0;
        }
    }
    return out;
}

void integrity_score(const PhiVector& phi_scaled, const std::array<double, 6>& omega,
                     double& m_out, PhiVector& contributions_out) {
    double m = 0.0;
    for (int k = 0; k < kPhiCount; ++k) {
        if (!std::isfinite(phi_scaled[k]))
            throw std::runtime_error("integrity_score: non-finite phi_" + std::to_string(k + 1));
        if (!std::isfinite(omega[k]))
            throw std::invalid_argument("integrity_score: non-finite weight omega_" +
                                        std::to_string(k + 1));
        contributions_out[k] = omega[k] * phi_scaled[k];
        m += contributions_out[k];
    }
    m_out = m;
}

std::vector<double> rank_percentiles(const std::vector<double>& m_values) {
    const size_t n = m_values.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    std::vector<double> sorted = m_values;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < n; ++i) {
        auto le = std::upper_bound(sorted.begin(), sorted.end(), m_values[i]) - sorted.begin();
        out[i] = static_cast<double>(le) / static_cast<double>(n);
    }
    return out;
}

std::vector<ScoredWindow> score_windows(const std::vector<Window>& windows,
                                        const std::map<std::string, ChannelZ>& z_by_ticker,
                                        const ScoringOptions& opts) {
    std::vector<ScoredWindow> scored(windows.size());

    // pass 1: per-window factors with phi5 = 0
    for (size_t i = 0; i < windows.size(); ++i) {
        const Window& w = windows[i];
        auto it = z_by_ticker.find(w.ticker);
        if (it == z_by_ticker.end())
            throw std::runtime_error("score_windows: no z-scores for ticker " + w.ticker);
        const ChannelZ& z = it->second;
        ScoredWindow& sw = scored[i];
        sw.window = w;
        sw.phi[0] = phi1_return_shock(z.z_r, w.start_idx, w.end_idx, &sw.flags);
        sw.phi[1] = phi2_vol_anomaly(z.z_sigma, w.start_idx, w.end_idx, &sw.flags);
        sw.phi[2] = phi3_attention_spike(z.z_attention, w.start_idx, w.end_idx, &sw.flags);
        sw.phi[3] = phi4_alignment(z.z_r, z.z_sigma, z.z_attention, w.start_idx, w.end_idx,
                                   opts.clamp_phi4, &sw.flags);
        sw.phi[4] = 0.0;
        sw.phi[5] = phi6_disagreement(z.z_source, w.start_idx, w.end_idx, &sw.flags);

        double zmax = 0.0;
        for (int t = w.start_idx; t <= w.end_idx; ++t) {
            for (double v : {z.z_r[t], z.z_sigma[t], z.z_attention[t]}) {
                if (!is_nan(v)) zmax = std::max(zmax, std::fabs(v));
            }
        }
        if (zmax > opts.artifact_z_cap) add_flag(&sw.flags, "z_artifact");
    }

    // provisional M with omega_5 forced to zero
    std::vector<PhiVector> raw_phi(scored.size());
    for (size_t i = 0; i < scored.size(); ++i) raw_phi[i] = scored[i].phi;
    auto scaled1 = scale_phi(raw_phi, opts.scale);
    std::array<double, 6> omega_no5 = opts.omega;
    omega_no5[4] = 0.0;
    std::vector<double> provisional(scored.size());
    for (size_t i = 0; i < scored.size(); ++i) {
        PhiVector contrib;
        integrity_score(scaled1[i], omega_no5, provisional[i], contrib);
    }

    // pass 2: phi5 from provisional scores, then final M
    auto phi5 = phi5_recurrence(windows, provisional, opts.delta_recur, opts.tau_recur);
    for (size_t i = 0; i < scored.size(); ++i) {
        scored[i].phi[4] = phi5[i];
        raw_phi[i] = scored[i].phi;
    }
    auto scaled2 = scale_phi(raw_phi, opts.scale);
    std::vector<double> m_values(scored.size());
    for (size_t i = 0; i < scored.size(); ++i) {
        scored[i].phi_scaled = scaled2[i];
        integrity_score(scaled2[i], opts.omega, scored[i].M, scored[i].contributions);
        m_values[i] = scored[i].M;
        std::sort(scored[i].flags.begin(), scored[i].flags.end());
    }

    auto ranks = rank_percentiles(m_values);
    for (size_t i = 0; i < scored.size(); ++i) scored[i].rank_pct = ranks[i];
    return scored;
}

std::vector<FactorStats> contribution_stats(const std::vector<ScoredWindow>& scored) {
    std::vector<FactorStats> out(kPhiCount);
    std::array<double, kPhiCount> abs_mean{};
    double abs_total = 0.0;
    for (int k = 0; k < kPhiCount; ++k) {
        std::vector<double> phis, contribs, abs_contribs;
        phis.reserve(scored.size());
        for (const auto& sw : scored) {
            phis.push_back(sw.phi[k]);
            contribs.push_back(sw.contributions[k]);
            abs_contribs.push_back(std::fabs(sw.contributions[k]));
        }
        FactorStats& fs = out[k];
        fs.signal = "phi_" + std::to_string(k + 1);
        if (!scored.empty()) {
            fs.phi_mean = mean_of(phis);
            fs.phi_median = median_of(phis);
            fs.phi_max = *std::max_element(phis.begin(), phis.end());
            fs.phi_std = population_std(phis);
            int nz = 0;
            for (double v : phis) {
                if (v != 0.0) ++nz;
            }
            fs.phi_nonzero_pct = 100.0 * nz / static_cast<double>(scored.size());
            fs.contrib_mean = mean_of(contribs);
            fs.contrib_median = median_of(contribs);
            fs.contrib_max = *std::max_element(contribs.begin(), contribs.end());
            fs.contrib_std = population_std(contribs);
            abs_mean[k] = mean_of(abs_contribs);
            abs_total += abs_mean[k];
        }
    }
    for (int k = 0; k < kPhiCount; ++k) {
        out[k].abs_mean_share = abs_total > 0.0 ? 100.0 * abs_mean[k] / abs_total : 0.0;
    }
    return out;
}

std::vector<TickerSummaryRow> ticker_summary(const std::vector<ScoredWindow>& scored,
                                             const std::vector<TickerPanel>& panel) {
    std::vector<TickerSummaryRow> out;
    for (const auto& tp : panel) {
        TickerSummaryRow row;
        row.ticker = tp.ticker;
        std::vector<double> ms;
        for (const auto& sw : scored) {
            if (sw.window.ticker != tp.ticker) continue;
            ++row.windows;
            ms.push_back(sw.M);
            row.total_bars += sw.window.n_bars();
        }
        if (!ms.empty()) {
            row.mean_m = mean_of(ms);
            row.median_m = median_of(ms);
            row.max_m = *std::max_element(ms.begin(), ms.end());
            row.std_m = population_std(ms);
            row.mean_bars = static_cast<double>(row.total_bars) / row.windows;
        }
        size_t covered = 0;
        for (double a : tp.attention) {
            if (!is_nan(a)) ++covered;
        }
        row.coverage_pct = tp.size() ? 100.0 * covered / static_cast<double>(tp.size()) : 0.0;
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace vigil
