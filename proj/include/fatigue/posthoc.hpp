#pragma once

#include "fatigue/realtime.hpp"
#include "fatigue/types.hpp"

#include <optional>
#include <vector>

namespace fatigue {

struct PanTompkinsConfig {
    std::size_t derivative_half_width = 2;  // samples each side of the stencil
    double integration_window = 2.0;        // seconds, one curl cycle
    std::size_t top_k = 10;
    double min_separation = 2.0;  // seconds; closer peaks merge into one cycle
    double max_separation = 8.0;  // seconds; wider gaps split the run

    void validate() const {
        if (!(min_separation > 0) || !(min_separation < max_separation))
            throw std::invalid_argument("require 0 < min_separation < max_separation");
        if (top_k < 1) throw std::invalid_argument("top_k < 1");
        if (derivative_half_width < 1)
            throw std::invalid_argument("derivative_half_width < 1");
    }
};

struct PeakCluster {
    double representative_time;        // earliest member
    std::vector<double> member_times;  // ascending
    double height;                     // max member height
};

struct PostHocResult {
    double t1 = 0;               // Real-Time pass
    std::optional<double> t2;    // variability (Pan-Tompkins) pass
    double t_p = 0;              // max of the available timestamps
    bool fatigued = false;
};

/// Derivative -> squaring -> moving-window integration. Output is nonnegative
/// with the input's timestamps; stencils shrink at the edges.
TimeSeries pan_tompkins_transform(const TimeSeries& series,
                                  const PanTompkinsConfig& cfg);

/// Tallest top_k local maxima, returned in time order. Ties at the cutoff go
/// to the earlier peak.
std::vector<Extremum> select_top_peaks(const TimeSeries& transformed,
                                       std::size_t top_k);

/// Merge peaks closer than min_separation into clusters, then keep the run of
/// clusters with the most members among runs whose successive gaps stay
/// within max_separation. Remaining clusters are discarded as noise.
std::vector<PeakCluster> time_filter_peaks(const std::vector<Extremum>& peaks,
                                           const PanTompkinsConfig& cfg);

/// Full retrospective pass over a raw strain recording: t1 from the streaming
/// detector, t2 from the variability transform, fused as max(t1, t2).
/// `median_window` is the preprocessing median filter width in samples.
PostHocResult posthoc_detect(const TimeSeries& raw, double static_t0,
                             double static_t1, const RealTimeConfig& rt_cfg,
                             const PanTompkinsConfig& pt_cfg,
                             std::size_t median_window = 3);

/// Same pass on an already normalized R_norm series.
PostHocResult posthoc_detect_norm(const TimeSeries& r_norm,
                                  const RealTimeConfig& rt_cfg,
                                  const PanTompkinsConfig& pt_cfg);

}  // namespace fatigue
