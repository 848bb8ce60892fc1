#pragma once

#include "fatigue/quat.hpp"
#include "fatigue/types.hpp"

#include <optional>

namespace fatigue {

struct EmgConfig {
    double band_low = 10.0;          // Hz
    double band_high = 150.0;        // Hz
    double rms_window = 0.5;         // seconds, ~quarter curl cycle
    double detect_window = 2.0;      // seconds, ~one curl cycle
    double increase_threshold = 1.27;  // fraction: fire at baseline * (1 + x)
    std::size_t median_window = 3;
};

struct KinConfig {
    double increase_threshold = 1.50;  // fraction over baseline cycle amplitude
    std::size_t consecutive_cycles = 3;
    double baseline_t0 = 0;  // standard-curl segment
    double baseline_t1 = 0;
    double prominence = 1.0;  // degrees, extremum filter
};

/// Zero-phase band-limited filter: forward-backward Butterworth biquad
/// cascade (high-pass at `low`, low-pass at `high`). Passband gain within
/// +/-1 dB, stopband attenuation >= 20 dB one octave out.
TimeSeries bandpass_filter(const TimeSeries& series, double low, double high);

/// Upper-trapezius sEMG benchmark: median filter -> bandpass -> windowed RMS;
/// fires at the start of the first detect_window whose mean RMS reaches
/// baseline * (1 + increase_threshold). Empty optional = NotDetected.
std::optional<double> semg_fatigue_detect(const TimeSeries& emg,
                                          const EmgConfig& cfg,
                                          double baseline_t0, double baseline_t1);

/// Shoulder-elevation benchmark: fires at the first peak of
/// consecutive_cycles trough-peak-trough sequences whose amplitude reaches
/// baseline * (1 + increase_threshold). Empty optional = NotDetected.
std::optional<double> kinematics_fatigue_detect(const TimeSeries& elevation,
                                                const KinConfig& cfg);

}  // namespace fatigue
