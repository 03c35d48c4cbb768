#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

// Small shared statistics helpers. Population conventions are used wherever
// the pipeline pools values (phi6, scale_phi, summary std columns).

namespace vigil {

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double population_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double mu = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    if (v.size() % 2 == 1) return v[m];
    return 0.5 * (v[m - 1] + v[m]);
}

// Streaming Pearson accumulator over co-moments. Zero-variance inputs
// report has_correlation() == false rather than an arbitrary +-1.
class PearsonAccumulator {
public:
    void add(double x, double y) {
        ++n_;
        double dx = x - mean_x_;
        double dy = y - mean_y_;
        mean_x_ += dx / static_cast<double>(n_);
        mean_y_ += dy / static_cast<double>(n_);
        // dx uses the pre-update mean, (y - mean_y_) the post-update one.
        c_xy_ += dx * (y - mean_y_);
        c_xx_ += dx * (x - mean_x_);
        c_yy_ += dy * (y - mean_y_);
    }

    std::size_t count() const { return n_; }
    bool has_correlation() const { return n_ >= 2 && c_xx_ > 0.0 && c_yy_ > 0.0; }

    double correlation() const {
        if (!has_correlation()) return 0.0;
        return c_xy_ / std::sqrt(c_xx_ * c_yy_);
    }

private:
    std::size_t n_ = 0;
    double mean_x_ = 0.0, mean_y_ = 0.0;
    double c_xy_ = 0.0, c_xx_ = 0.0, c_yy_ = 0.0;
};

}  // namespace vigil
