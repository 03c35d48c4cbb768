#pragma once

#include <span>
#include <vector>

#include "vigil/types.hpp"

// Two-threshold hysteresis segmentation of the strength series, with gap
// tolerance, post-merge and minimum-length filtering.

namespace vigil {

struct HysteresisParams {
    double thr_high = 3.0;
    double thr_low = 2.0;
    int gap_tolerance = 3;  // sub-threshold bars bridged inside a window
    int min_window_len = 2;
};

// State machine: neutral -> window on s > thr_high; a bar extends the window
// when s > thr_low; the window closes once s <= thr_low for gap+1 consecutive
// bars (or at series end). end_idx is the last bar with s > thr_low, so
// trailing tolerance bars are trimmed while bridged interior ones remain.
// NaN bars count as sub-threshold. Windows shorter than min_window_len are
// discarded. Returned windows carry indices only; the caller fills ticker,
// timestamps and ids.
std::vector<Window> hysteresis_segment(std::span<const double> strength,
                                       const HysteresisParams& params);

// Merge consecutive same-ticker windows separated by <= gap interior bars.
// Input must be disjoint and sorted by start within each ticker; idempotent.
std::vector<Window> merge_windows(std::vector<Window> windows, int gap);

// Deterministic ids: ticker lexical order, then start index; 1-based.
void assign_window_ids(std::vector<Window>& windows);

}  // namespace vigil
