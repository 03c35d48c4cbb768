#pragma once

#include <span>
#include <vector>

#include "vigil/types.hpp"

// Rolling baselines and standardized deviations. The window is trailing and
// exclusive: the observation at t never contaminates its own baseline.

namespace vigil {

// mu over the B values strictly before t; sample std (B-1 denominator) with
// eps added inside the square root. Undefined at t while fewer than B values
// precede it or any of them is NaN.
BaselineSeries rolling_baseline(std::span<const double> x, int baseline_window,
                                double eps);

// z_t = (x_t - mu_t) / (sigma_hat_t + eps); NaN where x or baseline is
// NaN/undefined. eps guards both the std's square root and this denominator.
std::vector<double> zscore(std::span<const double> x, const BaselineSeries& stats,
                           double eps);

struct StrengthParams {
    double alpha_r = 1.0;
    double alpha_sigma = 1.0;
    double alpha_attention = 1.0;
    bool clamp_attention_z = false;
};

// s_t = alpha_r*|z_r| + alpha_sigma*z_sigma + alpha_A*z_A. NaN whenever a
// positively weighted term is NaN; zero-weight channels cannot poison s.
std::vector<double> composite_strength(std::span<const double> z_r,
                                       std::span<const double> z_sigma,
                                       std::span<const double> z_attention,
                                       const StrengthParams& params);

struct ZScoreOptions {
    int baseline_window = 20;
    double eps = 1e-12;
    StrengthParams strength;
};

// All z channels for one ticker (including per-source z for phi6).
ChannelZ compute_channel_zscores(const TickerPanel& panel, const ZScoreOptions& opts);

}  // namespace vigil
