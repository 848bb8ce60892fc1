#include "fatigue/benchmark.hpp"

#include "fatigue/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fatigue {

namespace {

struct Biquad {
    double b0, b1, b2, a1, a2;  // normalized, a0 == 1

    void apply(std::vector<double>& x) const {
        double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
        for (double& s : x) {
            double y = b0 * s + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
            x2 = x1;
            x1 = s;
            y2 = y1;
            y1 = y;
            s = y;
        }
    }
};

// RBJ cookbook biquads, Butterworth Q.
Biquad lowpass_biquad(double fc, double fs) {
    double w0 = 2.0 * M_PI * fc / fs;
    double alpha = std::sin(w0) / std::sqrt(2.0);
    double c = std::cos(w0), a0 = 1 + alpha;
    return {(1 - c) / 2 / a0, (1 - c) / a0, (1 - c) / 2 / a0, -2 * c / a0,
            (1 - alpha) / a0};
}

Biquad highpass_biquad(double fc, double fs) {
    double w0 = 2.0 * M_PI * fc / fs;
    double alpha = std::sin(w0) / std::sqrt(2.0);
    double c = std::cos(w0), a0 = 1 + alpha;
    return {(1 + c) / 2 / a0, -(1 + c) / a0, (1 + c) / 2 / a0, -2 * c / a0,
            (1 - alpha) / a0};
}

}  // namespace

TimeSeries bandpass_filter(const TimeSeries& series, double low, double high) {
    if (series.size() < 4)
        throw std::invalid_argument("bandpass_filter: series too short");
    double fs = series.sample_rate();
    if (!(low > 0) || !(low < high) || !(high < fs / 2))
        throw std::invalid_argument("bandpass_filter: require 0 < low < high < rate/2");

    const std::size_t n = series.size();
    // Odd-reflection padding keeps the forward-backward transients off the
    // actual samples.
    std::size_t npad = std::min(n - 1, static_cast<std::size_t>(3.0 * fs / low));
    std::vector<double> x;
    x.reserve(n + 2 * npad);
    for (std::size_t i = npad; i-- > 0;)
        x.push_back(2 * series.v.front() - series.v[i + 1]);
    x.insert(x.end(), series.v.begin(), series.v.end());
    for (std::size_t i = 0; i < npad; ++i)
        x.push_back(2 * series.v.back() - series.v[n - 2 - i]);

    Biquad hp = highpass_biquad(low, fs);
    Biquad lp = lowpass_biquad(high, fs);
    hp.apply(x);
    lp.apply(x);
    std::reverse(x.begin(), x.end());
    hp.apply(x);
    lp.apply(x);
    std::reverse(x.begin(), x.end());

    TimeSeries out = series;
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(npad),
              x.begin() + static_cast<std::ptrdiff_t>(npad + n), out.v.begin());
    return out;
}

std::optional<double> semg_fatigue_detect(const TimeSeries& emg,
                                          const EmgConfig& cfg,
                                          double baseline_t0, double baseline_t1) {
    TimeSeries filtered = median_filter(emg, cfg.median_window);
    filtered = bandpass_filter(filtered, cfg.band_low, cfg.band_high);
    TimeSeries rms = rms_windowed(filtered, cfg.rms_window, cfg.rms_window / 2);

    double base_sum = 0;
    std::size_t base_n = 0;
    for (std::size_t i = 0; i < rms.size(); ++i) {
        if (rms.t[i] >= baseline_t0 && rms.t[i] <= baseline_t1) {
            base_sum += rms.v[i];
            ++base_n;
        }
    }
    if (base_n == 0)
        throw std::domain_error("semg_fatigue_detect: baseline interval has no RMS samples");
    double baseline = base_sum / static_cast<double>(base_n);
    if (baseline == 0) throw std::domain_error("semg_fatigue_detect: zero baseline");

    const double threshold = baseline * (1.0 + cfg.increase_threshold);
    for (std::size_t i = 0; i < rms.size(); ++i) {
        double start = rms.t[i];
        if (start + cfg.detect_window > rms.t.back() + 1e-9) break;
        double acc = 0;
        std::size_t k = 0;
        for (std::size_t j = i; j < rms.size() && rms.t[j] < start + cfg.detect_window - 1e-9; ++j) {
            acc += rms.v[j];
            ++k;
        }
        if (k > 0 && acc / static_cast<double>(k) >= threshold) return start;
    }
    return std::nullopt;
}

std::optional<double> kinematics_fatigue_detect(const TimeSeries& elevation,
                                                const KinConfig& cfg) {
    if (cfg.consecutive_cycles < 1)
        throw std::invalid_argument("kinematics_fatigue_detect: consecutive_cycles < 1");
    std::vector<Extremum> extrema = find_extrema(elevation, cfg.prominence);

    // Baseline cycle amplitude over the standard-curl segment.
    double base_sum = 0;
    std::size_t base_n = 0;
    for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
        if (extrema[i].time >= cfg.baseline_t0 && extrema[i + 1].time <= cfg.baseline_t1 &&
            extrema[i].kind != extrema[i + 1].kind) {
            base_sum += std::abs(extrema[i + 1].value - extrema[i].value);
            ++base_n;
        }
    }
    if (base_n == 0)
        throw std::domain_error("kinematics_fatigue_detect: no extrema in baseline interval");
    double baseline = base_sum / static_cast<double>(base_n);
    const double threshold = baseline * (1.0 + cfg.increase_threshold);

    // Scan trough-peak-trough sequences for a qualifying consecutive run.
    std::size_t run = 0;
    double run_first_peak = 0;
    for (std::size_t i = 0; i + 2 < extrema.size(); ++i) {
        if (extrema[i].kind != ExtremumKind::trough ||
            extrema[i + 1].kind != ExtremumKind::peak)
            continue;
        double amp = 0.5 * ((extrema[i + 1].value - extrema[i].value) +
                            (extrema[i + 1].value - extrema[i + 2].value));
        if (amp >= threshold) {
            if (run == 0) run_first_peak = extrema[i + 1].time;
            ++run;
            if (run >= cfg.consecutive_cycles) return run_first_peak;
        } else {
            run = 0;
        }
    }
    return std::nullopt;
}

}  // namespace fatigue
