#include "fatigue/posthoc.hpp"

#include "fatigue/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fatigue {

TimeSeries pan_tompkins_transform(const TimeSeries& series,
                                  const PanTompkinsConfig& cfg) {
    cfg.validate();
    const std::size_t n = series.size();
    const std::size_t h = cfg.derivative_half_width;
    if (n < 2 * h + 1)
        throw std::domain_error("pan_tompkins_transform: series shorter than derivative stencil");
    if (series.duration() < cfg.integration_window)
        throw std::domain_error("pan_tompkins_transform: series shorter than integration window");
    const double dt = 1.0 / series.sample_rate();

    // Smoothed central difference; stencil shrinks toward the edges, the end
    // samples fall back to a one-sided difference.
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t he = std::min({h, i, n - 1 - i});
        double d;
        if (he == 0) {
            d = i == 0 ? (series.v[1] - series.v[0]) / dt
                       : (series.v[n - 1] - series.v[n - 2]) / dt;
        } else {
            double num = 0, den = 0;
            for (std::size_t j = 1; j <= he; ++j) {
                num += static_cast<double>(j) *
                       (series.v[i + j] - series.v[i - j]);
                den += 2.0 * static_cast<double>(j * j);
            }
            d = num / (den * dt);
        }
        sq[i] = d * d;
    }

    // Centered moving mean over the integration window, truncated at edges.
    TimeSeries out = series;
    out.unit = Unit::dimensionless;
    const double half = cfg.integration_window / 2.0;
    std::size_t lo = 0, hi = 0;
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (hi < n && series.t[hi] <= series.t[i] + half + 1e-9) {
            acc += sq[hi];
            ++hi;
        }
        while (series.t[lo] < series.t[i] - half - 1e-9) {
            acc -= sq[lo];
            ++lo;
        }
        out.v[i] = acc / static_cast<double>(hi - lo);
    }
    return out;
}

std::vector<Extremum> select_top_peaks(const TimeSeries& transformed,
                                       std::size_t top_k) {
    std::vector<Extremum> peaks;
    for (const Extremum& e : find_extrema(transformed, 0.0))
        if (e.kind == ExtremumKind::peak) peaks.push_back(e);
    // Heights are ranked at 1e-9 relative resolution so analytically equal
    // peaks (e.g. one per cycle on a steady plateau, separated only by
    // floating-point dust) resolve by the earlier-time tie-break instead of
    // by rounding noise.
    double scale = 0;
    for (const Extremum& e : peaks) scale = std::max(scale, std::abs(e.value));
    const double quantum = scale > 0 ? scale * 1e-9 : 1.0;
    auto rank = [&](const Extremum& e) { return std::llround(e.value / quantum); };
    std::stable_sort(peaks.begin(), peaks.end(), [&](const Extremum& a, const Extremum& b) {
        if (rank(a) != rank(b)) return rank(a) > rank(b);
        return a.time < b.time;  // tie-break: earlier peak wins
    });
    if (peaks.size() > top_k) peaks.resize(top_k);
    std::sort(peaks.begin(), peaks.end(),
              [](const Extremum& a, const Extremum& b) { return a.time < b.time; });
    return peaks;
}

std::vector<PeakCluster> time_filter_peaks(const std::vector<Extremum>& peaks,
                                           const PanTompkinsConfig& cfg) {
    cfg.validate();
    std::vector<PeakCluster> clusters;
    for (const Extremum& p : peaks) {
        if (!clusters.empty() &&
            p.time - clusters.back().member_times.back() < cfg.min_separation) {
            clusters.back().member_times.push_back(p.time);
            clusters.back().height = std::max(clusters.back().height, p.value);
        } else {
            clusters.push_back({p.time, {p.time}, p.value});
        }
    }
    if (clusters.empty()) return clusters;

    // Maximal runs of clusters whose successive gaps stay within
    // max_separation; the run with the most clusters wins, earliest on ties.
    std::size_t best_begin = 0, best_len = 0;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= clusters.size(); ++i) {
        bool split = i == clusters.size() ||
                     clusters[i].representative_time -
                             clusters[i - 1].member_times.back() >
                         cfg.max_separation;
        if (split) {
            if (i - begin > best_len) {
                best_len = i - begin;
                best_begin = begin;
            }
            begin = i;
        }
    }
    return {clusters.begin() + static_cast<std::ptrdiff_t>(best_begin),
            clusters.begin() + static_cast<std::ptrdiff_t>(best_begin + best_len)};
}

PostHocResult posthoc_detect_norm(const TimeSeries& r_norm,
                                  const RealTimeConfig& rt_cfg,
                                  const PanTompkinsConfig& pt_cfg) {
    RealTimeResult rt = detect_stream(r_norm, rt_cfg);

    TimeSeries transformed = pan_tompkins_transform(r_norm, pt_cfg);
    std::vector<Extremum> peaks = select_top_peaks(transformed, pt_cfg.top_k);
    std::vector<PeakCluster> clusters = time_filter_peaks(peaks, pt_cfg);

    PostHocResult result;
    result.t1 = rt.t_r;
    if (!clusters.empty()) result.t2 = clusters.front().representative_time;
    result.fatigued = rt.fatigued || !clusters.empty();
    result.t_p = std::max(result.t1, result.t2.value_or(result.t1));
    return result;
}

PostHocResult posthoc_detect(const TimeSeries& raw, double static_t0,
                             double static_t1, const RealTimeConfig& rt_cfg,
                             const PanTompkinsConfig& pt_cfg,
                             std::size_t median_window) {
    TimeSeries filtered = median_filter(raw, median_window);
    TimeSeries norm = normalize_static(filtered, static_t0, static_t1);
    // Detection runs over the exercise portion; the static rest segment only
    // provides the normalization baseline.
    TimeSeries exercise =
        norm.slice_time(static_t1, std::numeric_limits<double>::infinity());
    return posthoc_detect_norm(exercise, rt_cfg, pt_cfg);
}

}  // namespace fatigue
