#include "vigil/segmentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace vigil {

std::vector<Window> hysteresis_segment(std::span<const double> strength,
                                       const HysteresisParams& params) {
    if (params.thr_high < params.thr_low)
        throw std::invalid_argument("thr_high must be >= thr_low");
    if (params.gap_tolerance < 0)
        throw std::invalid_argument("gap tolerance must be >= 0");
    if (params.min_window_len < 1)
        throw std::invalid_argument("min window length must be >= 1");

    std::vector<Window> out;
    const int n = static_cast<int>(strength.size());
    bool in_window = false;
    int start = -1;
    int last_evidence = -1;
    int below_run = 0;

    auto close_window = [&]() {
        Window w;
        w.start_idx = start;
        w.end_idx = last_evidence;
        if (w.n_bars() >= params.min_window_len) out.push_back(w);
        in_window = false;
        below_run = 0;
    };

    for (int t = 0; t < n; ++t) {
        double s = strength[t];
        bool above_low = !is_nan(s) && s > params.thr_low;
        if (!in_window) {
            if (!is_nan(s) && s > params.thr_high) {
                in_window = true;
                start = t;
                last_evidence = t;
                below_run = 0;
            }
        } else if (above_low) {
            last_evidence = t;
            below_run = 0;
        } else if (++below_run == params.gap_tolerance + 1) {
            close_window();
        }
    }
    if (in_window) close_window();
    return out;
}

std::vector<Window> merge_windows(std::vector<Window> windows, int gap) {
    if (gap < 0) throw std::invalid_argument("merge gap must be >= 0");
    std::vector<Window> out;
    for (auto& w : windows) {
        if (w.start_idx > w.end_idx)
            throw std::invalid_argument("merge_windows: inverted window");
        if (!out.empty() && out.back().ticker == w.ticker) {
            Window& prev = out.back();
            if (w.start_idx <= prev.end_idx)
                throw std::invalid_argument("merge_windows: overlapping windows at index " +
                                            std::to_string(w.start_idx));
            int interior = w.start_idx - prev.end_idx - 1;
            if (interior <= gap) {
                prev.end_idx = w.end_idx;
                prev.end_ts = w.end_ts;
                prev.contains_warmup = prev.contains_warmup || w.contains_warmup;
                continue;
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

void assign_window_ids(std::vector<Window>& windows) {
    std::sort(windows.begin(), windows.end(), [](const Window& a, const Window& b) {
        if (a.ticker != b.ticker) return a.ticker < b.ticker;
        return a.start_idx < b.start_idx;
    });
    int id = 1;
    for (auto& w : windows) w.window_id = id++;
}

}  // namespace vigil
