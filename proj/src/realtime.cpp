#include "fatigue/realtime.hpp"

#include "fatigue/signal.hpp"

#include <cmath>
#include <limits>

namespace fatigue {

BatchReport process_batch(DetectorState& state, const TimeSeries& batch,
                          const RealTimeConfig& cfg) {
    cfg.validate();
    BatchReport report;
    report.start_time = batch.t.front();
    if (state.fatigued) {
        // Frozen: replay without touching state.
        report.skipped = true;
        return report;
    }

    std::vector<double> detrended = detrend_linear(batch.v);
    std::vector<Extremum> extrema = find_extrema(detrended, cfg.prominence);
    std::optional<double> amp = cycle_amplitude(extrema);
    if (!amp) {
        report.skipped = true;
        ++state.batches_seen;
        return report;
    }

    state.reference_amp = std::min(state.reference_amp, *amp);
    report.amplitude = *amp;
    report.ratio = *amp / state.reference_amp;
    report.above_threshold = report.ratio >= cfg.tau;
    if (report.above_threshold) {
        if (state.consecutive == 0) state.candidate_time = report.start_time;
        ++state.consecutive;
        if (state.consecutive >= cfg.consecutive_required) state.fatigued = true;
    } else {
        state.consecutive = 0;
        state.candidate_time = 0;
    }
    ++state.batches_seen;
    return report;
}

RealTimeResult detect_stream(const TimeSeries& samples, const RealTimeConfig& cfg,
                             const std::function<void(const BatchReport&)>& on_batch) {
    cfg.validate();
    if (samples.size() < cfg.batch_size)
        throw std::domain_error("detect_stream: fewer samples than one batch");

    RealTimeResult result;
    DetectorState state;
    std::size_t n_batches = samples.size() / cfg.batch_size;
    for (std::size_t b = 0; b < n_batches && !state.fatigued; ++b) {
        TimeSeries batch =
            samples.slice(b * cfg.batch_size, (b + 1) * cfg.batch_size);
        BatchReport report = process_batch(state, batch, cfg);
        result.reports.push_back(report);
        if (on_batch) on_batch(report);
    }
    result.fatigued = state.fatigued;
    result.t_r = state.fatigued ? state.candidate_time : samples.t.back();
    return result;
}

RealTimeResult realtime_detect(const TimeSeries& raw, double static_t0,
                               double static_t1, const RealTimeConfig& cfg,
                               std::size_t median_window) {
    TimeSeries filtered = median_filter(raw, median_window);
    TimeSeries norm = normalize_static(filtered, static_t0, static_t1);
    TimeSeries exercise =
        norm.slice_time(static_t1, std::numeric_limits<double>::infinity());
    return detect_stream(exercise, cfg);
}

}  // namespace fatigue
