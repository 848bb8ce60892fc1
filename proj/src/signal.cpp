#include "fatigue/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fatigue {

double resistance_from_voltage(double v_out, const DividerConfig& cfg) {
    if (!(cfg.v_in > 0) || !(cfg.r_ref > 0))
        throw std::invalid_argument("divider: v_in and r_ref must be positive");
    if (!(v_out > 0) || v_out > cfg.v_in)
        throw std::domain_error("divider: v_out outside (0, v_in]; sensor saturated or disconnected");
    return cfg.r_ref * (cfg.v_in / v_out - 1.0);
}

double power_dissipation(const DividerConfig& cfg, double r_strain) {
    if (r_strain < 0) throw std::domain_error("power: negative resistance");
    double total = cfg.r_ref + r_strain;
    if (total == 0) throw std::domain_error("power: zero total resistance");
    return cfg.v_in * cfg.v_in / total;
}

namespace {

double median_of(std::vector<double>& buf) {
    std::sort(buf.begin(), buf.end());
    std::size_t n = buf.size();
    if (n % 2 == 1) return buf[n / 2];
    return 0.5 * (buf[n / 2 - 1] + buf[n / 2]);
}

}  // namespace

TimeSeries median_filter(const TimeSeries& series, std::size_t window) {
    if (window == 0 || window % 2 == 0)
        throw std::invalid_argument("median_filter: window must be odd and >= 1");
    if (window > series.size())
        throw std::invalid_argument("median_filter: window exceeds series length");
    TimeSeries out = series;
    std::size_t half = window / 2;
    std::vector<double> buf;
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::size_t lo = i >= half ? i - half : 0;
        std::size_t hi = std::min(series.size() - 1, i + half);
        buf.assign(series.v.begin() + static_cast<std::ptrdiff_t>(lo),
                   series.v.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        out.v[i] = median_of(buf);
    }
    return out;
}

TimeSeries normalize_static(const TimeSeries& series, double t0, double t1) {
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.t[i] >= t0 && series.t[i] <= t1) {
            sum += series.v[i];
            ++n;
        }
    }
    if (n == 0) throw std::domain_error("normalize_static: empty static interval");
    double mean = sum / static_cast<double>(n);
    if (mean == 0) throw std::domain_error("normalize_static: zero static mean");
    TimeSeries out = series;
    out.unit = Unit::dimensionless;
    for (double& x : out.v) x = (x - mean) / mean;
    return out;
}

std::vector<double> detrend_linear(std::span<const double> values) {
    std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("detrend_linear: need >= 2 samples");
    // Least-squares line on sample index.
    double xm = (static_cast<double>(n) - 1.0) / 2.0;
    double ym = std::accumulate(values.begin(), values.end(), 0.0) /
                static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = static_cast<double>(i) - xm;
        sxx += dx * dx;
        sxy += dx * (values[i] - ym);
    }
    double slope = sxy / sxx;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = values[i] - (ym + slope * (static_cast<double>(i) - xm));
    return out;
}

namespace {

// scipy-style prominence for a strict local maximum of `v` at index i:
// drop from the peak to the higher of the two bases, where each base is the
// minimum before a strictly higher sample (or the edge) on that side.
double peak_prominence(std::span<const double> v, std::size_t i) {
    double left = v[i], right = v[i];
    for (std::size_t j = i; j-- > 0;) {
        if (v[j] > v[i]) break;
        left = std::min(left, v[j]);
    }
    for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[j] > v[i]) break;
        right = std::min(right, v[j]);
    }
    return v[i] - std::max(left, right);
}

}  // namespace

std::vector<Extremum> find_extrema(std::span<const double> values,
                                   double min_prominence) {
    std::vector<Extremum> raw;
    if (values.size() < 3) return raw;
    std::vector<double> neg(values.begin(), values.end());
    for (double& x : neg) x = -x;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
            if (peak_prominence(values, i) >= min_prominence)
                raw.push_back({i, 0.0, values[i], ExtremumKind::peak});
        } else if (values[i] < values[i - 1] && values[i] < values[i + 1]) {
            if (peak_prominence(neg, i) >= min_prominence)
                raw.push_back({i, 0.0, values[i], ExtremumKind::trough});
        }
    }
    // Enforce alternation: of two adjacent same-kind extrema keep the more
    // extreme one (earlier wins ties).
    std::vector<Extremum> out;
    for (const Extremum& e : raw) {
        if (!out.empty() && out.back().kind == e.kind) {
            bool replace = e.kind == ExtremumKind::peak ? e.value > out.back().value
                                                        : e.value < out.back().value;
            if (replace) out.back() = e;
        } else {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<Extremum> find_extrema(const TimeSeries& series,
                                   double min_prominence) {
    std::vector<Extremum> out = find_extrema(std::span<const double>(series.v),
                                             min_prominence);
    for (Extremum& e : out) e.time = series.t[e.index];
    return out;
}

std::optional<double> cycle_amplitude(std::span<const Extremum> extrema) {
    bool has_peak = false, has_trough = false;
    for (const Extremum& e : extrema) {
        if (e.kind == ExtremumKind::peak) has_peak = true;
        else has_trough = true;
    }
    if (!has_peak || !has_trough) return std::nullopt;
    double sum = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
        if (extrema[i].kind != extrema[i + 1].kind) {
            sum += std::abs(extrema[i + 1].value - extrema[i].value);
            ++pairs;
        }
    }
    if (pairs == 0) return std::nullopt;
    return sum / static_cast<double>(pairs);
}

TimeSeries rms_windowed(const TimeSeries& series, double window, double hop) {
    if (!(window > 0) || !(hop > 0))
        throw std::invalid_argument("rms_windowed: window and hop must be positive");
    if (series.empty()) throw std::invalid_argument("rms_windowed: empty series");
    if (series.size() >= 2 && window < 1.0 / series.sample_rate())
        throw std::invalid_argument("rms_windowed: window shorter than sample spacing");
    TimeSeries out;
    out.unit = series.unit;
    out.nominal_rate = 1.0 / hop;
    const double t0 = series.t.front(), tend = series.t.back();
    const double eps = 1e-9;
    if (t0 + window > tend + eps) {
        // Series shorter than one window: single truncated window.
        double acc = 0;
        for (double x : series.v) acc += x * x;
        out.t.push_back(t0);
        out.v.push_back(std::sqrt(acc / static_cast<double>(series.size())));
        return out;
    }
    std::size_t lo = 0;
    for (double start = t0; start + window <= tend + eps; start += hop) {
        while (lo < series.size() && series.t[lo] < start - eps) ++lo;
        double acc = 0;
        std::size_t n = 0;
        for (std::size_t i = lo; i < series.size() && series.t[i] < start + window - eps; ++i) {
            acc += series.v[i] * series.v[i];
            ++n;
        }
        if (n == 0) continue;
        out.t.push_back(start);
        out.v.push_back(std::sqrt(acc / static_cast<double>(n)));
    }
    return out;
}

std::vector<double> resample_linear(const TimeSeries& series,
                                    std::span<const double> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double g : grid) {
        auto it = std::lower_bound(series.t.begin(), series.t.end(), g);
        if (it == series.t.end()) {
            out.push_back(series.v.back());
            continue;
        }
        std::size_t hi = static_cast<std::size_t>(it - series.t.begin());
        if (hi == 0 || series.t[hi] == g) {
            out.push_back(series.v[hi]);
            continue;
        }
        std::size_t lo = hi - 1;
        double w = (g - series.t[lo]) / (series.t[hi] - series.t[lo]);
        out.push_back(series.v[lo] + w * (series.v[hi] - series.v[lo]));
    }
    return out;
}

namespace {

// Pearson coefficient of two equal-length views; NaN when either is constant.
double pearson(std::span<const double> a, std::span<const double> b) {
    std::size_t n = a.size();
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    double saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0 || sbb == 0) return std::numeric_limits<double>::quiet_NaN();
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

LagCorrelation cross_correlation(const TimeSeries& a, const TimeSeries& b,
                                 double max_lag) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("cross_correlation: series too short");
    double rate = std::min(a.sample_rate(), b.sample_rate());
    double dt = 1.0 / rate;
    double lo = std::max(a.t.front(), b.t.front());
    double hi = std::min(a.t.back(), b.t.back());
    if (hi - lo < 2 * dt)
        throw std::invalid_argument("cross_correlation: no overlapping support");
    std::vector<double> grid;
    for (double g = lo; g <= hi + 1e-9; g += dt) grid.push_back(g);
    std::vector<double> va = resample_linear(a, grid);
    std::vector<double> vb = resample_linear(b, grid);
    auto lag_max = static_cast<long>(max_lag / dt);
    const long n = static_cast<long>(grid.size());

    bool any = false;
    LagCorrelation best{-2.0, 0.0};
    for (long k = -lag_max; k <= lag_max; ++k) {
        // Overlap a[i] against b[i + k].
        long i0 = std::max(0L, -k);
        long i1 = std::min(n, n - k);
        if (i1 - i0 < 3) continue;
        std::span<const double> sa(va.data() + i0, static_cast<std::size_t>(i1 - i0));
        std::span<const double> sb(vb.data() + i0 + k, static_cast<std::size_t>(i1 - i0));
        double r = pearson(sa, sb);
        if (std::isnan(r)) continue;
        any = true;
        if (r > best.coefficient) {
            best.coefficient = r;
            best.lag = static_cast<double>(k) * dt;
        }
    }
    if (!any)
        throw std::domain_error("cross_correlation: zero-variance segment");
    return best;
}

double snr_db(const TimeSeries& signal_segment, const TimeSeries& noise_segment) {
    auto power = [](const TimeSeries& s) {
        if (s.empty()) throw std::invalid_argument("snr_db: empty segment");
        double m = std::accumulate(s.v.begin(), s.v.end(), 0.0) /
                   static_cast<double>(s.size());
        double acc = 0;
        for (double x : s.v) acc += (x - m) * (x - m);
        return acc / static_cast<double>(s.size());
    };
    double pn = power(noise_segment);
    if (pn == 0) throw std::domain_error("snr_db: zero noise power");
    return 10.0 * std::log10(power(signal_segment) / pn);
}

}  // namespace fatigue
