#pragma once

#include "fatigue/types.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace fatigue {

struct RealTimeConfig {
    std::size_t batch_size = 50;       // ~2 s of strain data at 25 Hz
    double tau = 3.5;                  // amplitude-ratio fatigue threshold
    std::size_t consecutive_required = 2;
    double prominence = 0.05;          // extremum prominence, R_norm units

    void validate() const {
        if (batch_size < 8) throw std::invalid_argument("batch_size < 8");
        if (!(tau > 1)) throw std::invalid_argument("tau must exceed 1");
        if (consecutive_required < 1)
            throw std::invalid_argument("consecutive_required < 1");
    }
};

/// Evolving per-session detector state. Once `fatigued` is set the state is
/// frozen and further batches are replayed without effect.
struct DetectorState {
    double reference_amp = std::numeric_limits<double>::infinity();  // running min
    std::size_t consecutive = 0;
    double candidate_time = 0;  // start of the first above-threshold batch
    bool fatigued = false;
    std::size_t batches_seen = 0;
};

struct BatchReport {
    double start_time = 0;
    double amplitude = 0;
    double ratio = 0;
    bool above_threshold = false;
    bool skipped = false;  // NoCycle: no usable peak/trough pair
};

/// One step of the streaming detector over a full batch of R_norm samples.
/// Mutates state; returns the per-batch report.
BatchReport process_batch(DetectorState& state, const TimeSeries& batch,
                          const RealTimeConfig& cfg);

struct RealTimeResult {
    double t_r = 0;  // fatigue time, or last sample timestamp when undetected
    bool fatigued = false;
    std::vector<BatchReport> reports;
};

/// Folds process_batch over consecutive fixed-size batches; the final partial
/// batch is dropped. `on_batch`, when set, observes each report as soon as the
/// batch is processed.
RealTimeResult detect_stream(const TimeSeries& samples, const RealTimeConfig& cfg,
                             const std::function<void(const BatchReport&)>& on_batch = {});

/// Convenience wrapper over a raw strain recording: median filter, static
/// normalization, then the streaming pass over the exercise portion
/// (t >= static_t1).
RealTimeResult realtime_detect(const TimeSeries& raw, double static_t0,
                               double static_t1, const RealTimeConfig& cfg,
                               std::size_t median_window = 3);

}  // namespace fatigue
