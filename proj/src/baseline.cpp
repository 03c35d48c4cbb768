#include "vigil/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace vigil {

BaselineSeries rolling_baseline(std::span<const double> x, int baseline_window,
                                double eps) {
    if (baseline_window < 2)
        throw std::invalid_argument("baseline window must be >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

    const int n = static_cast<int>(x.size());
    const int B = baseline_window;
    BaselineSeries out;
    out.mu.assign(n, nan_value());
    out.sigma_hat.assign(n, nan_value());
    out.defined.assign(n, 0);

    // last index holding a NaN; the window [t-B, t-1] must start past it
    int last_nan = -1;
    for (int t = 0; t < n; ++t) {
        if (t > 0 && is_nan(x[t - 1])) last_nan = t - 1;
        int first = t - B;
        if (first < 0 || first <= last_nan) continue;

        double sum = 0.0;
        for (int j = first; j < t; ++j) sum += x[j];
        double mu = sum / static_cast<double>(B);
        double acc = 0.0;
        for (int j = first; j < t; ++j) acc += (x[j] - mu) * (x[j] - mu);
        out.mu[t] = mu;
        out.sigma_hat[t] = std::sqrt(acc / static_cast<double>(B - 1) + eps);
        out.defined[t] = 1;
    }
    return out;
}

std::vector<double> zscore(std::span<const double> x, const BaselineSeries& stats,
                           double eps) {
    if (x.size() != stats.mu.size())
        throw std::invalid_argument("zscore: length mismatch");
    std::vector<double> z(x.size(), nan_value());
    for (size_t t = 0; t < x.size(); ++t) {
        if (!stats.defined[t] || is_nan(x[t])) continue;
        z[t] = (x[t] - stats.mu[t]) / (stats.sigma_hat[t] + eps);
    }
    return z;
}

std::vector<double> composite_strength(std::span<const double> z_r,
                                       std::span<const double> z_sigma,
                                       std::span<const double> z_attention,
                                       const StrengthParams& params) {
    if (z_r.size() != z_sigma.size() || z_r.size() != z_attention.size())
        throw std::invalid_argument("composite_strength: length mismatch");
    if (params.alpha_r < 0 || params.alpha_sigma < 0 || params.alpha_attention < 0)
        throw std::invalid_argument("composite_strength: negative weight");
    if (params.alpha_r + params.alpha_sigma + params.alpha_attention <= 0.0)
        throw std::invalid_argument("composite_strength: all weights zero");

    std::vector<double> s(z_r.size(), nan_value());
    for (size_t t = 0; t < z_r.size(); ++t) {
        double acc = 0.0;
        bool ok = true;
        if (params.alpha_r > 0) {
            if (is_nan(z_r[t])) ok = false;
            else acc += params.alpha_r * std::fabs(z_r[t]);
        }
        if (ok && params.alpha_sigma > 0) {
            if (is_nan(z_sigma[t])) ok = false;
            else acc += params.alpha_sigma * z_sigma[t];
        }
        if (ok && params.alpha_attention > 0) {
            if (is_nan(z_attention[t])) ok = false;
            else {
                double za = z_attention[t];
                if (params.clamp_attention_z && za < 0.0) za = 0.0;
                acc += params.alpha_attention * za;
            }
        }
        if (ok) s[t] = acc;
    }
    return s;
}

ChannelZ compute_channel_zscores(const TickerPanel& panel, const ZScoreOptions& opts) {
    ChannelZ out;
    const int B = opts.baseline_window;
    const double eps = opts.eps;

    out.z_r = zscore(panel.r, rolling_baseline(panel.r, B, eps), eps);
    out.z_sigma = zscore(panel.sigma, rolling_baseline(panel.sigma, B, eps), eps);
    out.z_attention = zscore(panel.attention, rolling_baseline(panel.attention, B, eps), eps);
    for (const auto& col : panel.source_values) {
        out.z_source.push_back(zscore(col, rolling_baseline(col, B, eps), eps));
    }
    out.strength = composite_strength(out.z_r, out.z_sigma, out.z_attention, opts.strength);
    return out;
}

}  // namespace vigil
