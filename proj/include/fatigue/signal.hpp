#pragma once

#include "fatigue/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fatigue {

/// Voltage divider inversion: recover sensor resistance from the measured
/// output voltage. Throws std::domain_error for v_out <= 0 or v_out > v_in
/// (saturated / disconnected sensor).
double resistance_from_voltage(double v_out, const DividerConfig& cfg);

/// Total divider power draw v_in^2 / (r_ref + r_strain), watts.
double power_dissipation(const DividerConfig& cfg, double r_strain);

/// Centered median filter with an odd window; edges use truncated windows so
/// no samples are invented. Timestamps are preserved.
TimeSeries median_filter(const TimeSeries& series, std::size_t window);

/// Normalize against the mean over the static rest interval:
/// (v - mean_static) / mean_static. Output is dimensionless.
TimeSeries normalize_static(const TimeSeries& series, double t0, double t1);

/// Subtract the least-squares line fit; residual has zero mean and zero
/// covariance with sample index.
std::vector<double> detrend_linear(std::span<const double> values);

/// Strict local extrema with prominence >= min_prominence. Output alternates
/// peak/trough; when two same-kind extrema are adjacent after filtering, the
/// more extreme one is kept (earlier wins ties).
std::vector<Extremum> find_extrema(std::span<const double> values,
                                   double min_prominence);

/// Same, with times filled in from the series.
std::vector<Extremum> find_extrema(const TimeSeries& series,
                                   double min_prominence);

/// Mean |peak - trough| over adjacent alternating pairs. Empty optional when
/// there is no peak/trough pair (NoCycle).
std::optional<double> cycle_amplitude(std::span<const Extremum> extrema);

/// Windowed RMS, one output per window start. A series shorter than one
/// window yields a single truncated window covering all samples.
TimeSeries rms_windowed(const TimeSeries& series, double window, double hop);

/// Best Pearson correlation over lags |lag| <= max_lag after resampling both
/// series to the coarser rate. Positive lag = first series leads.
LagCorrelation cross_correlation(const TimeSeries& a, const TimeSeries& b,
                                 double max_lag);

/// 10*log10 of the mean-removed power ratio between the two segments.
double snr_db(const TimeSeries& signal_segment, const TimeSeries& noise_segment);

/// Linear interpolation of the series onto the given time grid. Grid points
/// must lie within the series support.
std::vector<double> resample_linear(const TimeSeries& series,
                                    std::span<const double> grid);

}  // namespace fatigue
