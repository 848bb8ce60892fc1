#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fatigue/posthoc.hpp"
#include "fatigue/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace fatigue;

namespace {

TimeSeries ramp_series(double rate, double duration, double slope) {
    std::size_t n = static_cast<std::size_t>(rate * duration);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = slope * static_cast<double>(i) / rate;
    return make_uniform(0.0, rate, std::move(v));
}

TimeSeries sine_series(double rate, double duration, double freq, double amp) {
    std::size_t n = static_cast<std::size_t>(rate * duration);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amp * std::sin(2 * M_PI * freq * static_cast<double>(i) / rate);
    return make_uniform(0.0, rate, std::move(v));
}

// Series with an isolated single-sample spike of the given height at each
// (time, height) pair. Dips between spikes give every spike a strict trough
// neighbor so the alternation rule keeps them all.
TimeSeries spike_series(std::vector<std::pair<double, double>> spikes,
                        double rate, double duration) {
    std::size_t n = static_cast<std::size_t>(rate * duration);
    std::vector<double> v(n, 0.0);
    std::sort(spikes.begin(), spikes.end());
    std::vector<std::size_t> idx;
    for (auto [t, h] : spikes) {
        idx.push_back(static_cast<std::size_t>(std::lround(t * rate)));
        v[idx.back()] = h;
    }
    for (std::size_t i = 1; i < idx.size(); ++i) v[(idx[i - 1] + idx[i]) / 2] = -1.0;
    return make_uniform(0.0, rate, std::move(v));
}

std::vector<Extremum> peaks_at(const std::vector<double>& times) {
    std::vector<Extremum> out;
    for (std::size_t i = 0; i < times.size(); ++i)
        out.push_back({i, times[i], 1.0, ExtremumKind::peak});
    return out;
}

// Brute-force reference for time_filter_peaks: chain-merge, then enumerate
// maximal runs and pick the longest (earliest on ties).
std::vector<std::vector<double>> naive_filter(std::vector<double> times,
                                              const PanTompkinsConfig& cfg) {
    std::vector<std::vector<double>> clusters;
    for (double t : times) {
        if (!clusters.empty() && t - clusters.back().back() < cfg.min_separation)
            clusters.back().push_back(t);
        else
            clusters.push_back({t});
    }
    std::vector<std::vector<std::vector<double>>> runs(1);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (i > 0 && clusters[i].front() - clusters[i - 1].back() > cfg.max_separation)
            runs.emplace_back();
        runs.back().push_back(clusters[i]);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].size() > runs[best].size()) best = i;
    return runs[best];
}

}  // namespace

TEST_CASE("transform of a constant series is identically zero") {
    TimeSeries s = make_uniform(0.0, 25.0, std::vector<double>(200, 3.7));
    TimeSeries out = pan_tompkins_transform(s, PanTompkinsConfig{});
    for (double x : out.v) CHECK(x == doctest::Approx(0.0));
}

TEST_CASE("transform of a linear ramp is the squared slope in the interior") {
    const double slope = 1.5;
    TimeSeries out = pan_tompkins_transform(ramp_series(25.0, 10.0, slope),
                                            PanTompkinsConfig{});
    for (std::size_t i = 60; i + 60 < out.size(); ++i)
        CHECK(out.v[i] == doctest::Approx(slope * slope).epsilon(1e-6));
}

TEST_CASE("doubling a sine's amplitude scales the transform fourfold") {
    PanTompkinsConfig cfg;
    TimeSeries a = pan_tompkins_transform(sine_series(25.0, 20.0, 0.5, 1.0), cfg);
    TimeSeries b = pan_tompkins_transform(sine_series(25.0, 20.0, 0.5, 2.0), cfg);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.v[i] > 1e-9) CHECK(b.v[i] / a.v[i] == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("transform is nonnegative and offset invariant") {
    PanTompkinsConfig cfg;
    TimeSeries s = sine_series(25.0, 20.0, 0.5, 1.3);
    TimeSeries a = pan_tompkins_transform(s, cfg);
    for (double& x : s.v) x += 10.0;
    TimeSeries b = pan_tompkins_transform(s, cfg);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.v[i] >= 0.0);
        CHECK(b.v[i] == doctest::Approx(a.v[i]).epsilon(1e-9));
    }
}

TEST_CASE("transform rejects too-short input") {
    TimeSeries s = make_uniform(0.0, 25.0, std::vector<double>{1, 2, 3});
    CHECK_THROWS_AS(pan_tompkins_transform(s, PanTompkinsConfig{}), std::domain_error);
}

TEST_CASE("select_top_peaks keeps the tallest k, time ordered") {
    // 12 spikes with distinct heights; the two shortest must be dropped.
    std::vector<std::pair<double, double>> spikes;
    std::vector<double> heights = {5, 12, 3, 9, 7, 11, 4, 10, 8, 6, 2, 13};
    for (std::size_t i = 0; i < heights.size(); ++i)
        spikes.push_back({2.0 + 3.0 * static_cast<double>(i), heights[i]});
    TimeSeries s = spike_series(spikes, 25.0, 40.0);
    std::vector<Extremum> top = select_top_peaks(s, 10);
    REQUIRE(top.size() == 10);
    for (std::size_t i = 1; i < top.size(); ++i) CHECK(top[i].time > top[i - 1].time);
    for (const Extremum& e : top) CHECK(e.value > 3.0);  // heights 2 and 3 dropped
}

TEST_CASE("select_top_peaks returns everything when fewer than k exist") {
    TimeSeries s = spike_series({{2, 1.0}, {5, 2.0}, {8, 3.0}}, 25.0, 12.0);
    CHECK(select_top_peaks(s, 10).size() == 3);
}

TEST_CASE("equal-height tie at the cutoff goes to the earlier peak") {
    // Heights: 9, 5, 5 with k=2 -> the 9 and the EARLIER 5.
    TimeSeries s = spike_series({{2, 9.0}, {5, 5.0}, {8, 5.0}}, 25.0, 12.0);
    std::vector<Extremum> top = select_top_peaks(s, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].time == doctest::Approx(2.0));
    CHECK(top[1].time == doctest::Approx(5.0));
}

TEST_CASE("time filter merges close peaks and removes the distant one") {
    PanTompkinsConfig cfg;
    std::vector<PeakCluster> out = time_filter_peaks(peaks_at({10, 11.5, 14, 17, 40}), cfg);
    REQUIRE(out.size() == 3);
    CHECK(out[0].representative_time == doctest::Approx(10.0));
    REQUIRE(out[0].member_times.size() == 2);
    CHECK(out[0].member_times[1] == doctest::Approx(11.5));
    CHECK(out[1].representative_time == doctest::Approx(14.0));
    CHECK(out[2].representative_time == doctest::Approx(17.0));
}

TEST_CASE("single peak survives as a single cluster") {
    std::vector<PeakCluster> out = time_filter_peaks(peaks_at({42.0}), PanTompkinsConfig{});
    REQUIRE(out.size() == 1);
    CHECK(out[0].representative_time == doctest::Approx(42.0));
}

TEST_CASE("evenly spaced peaks at 3 s gaps form one full run") {
    std::vector<double> times;
    for (int i = 0; i < 8; ++i) times.push_back(5.0 + 3.0 * i);
    std::vector<PeakCluster> out = time_filter_peaks(peaks_at(times), PanTompkinsConfig{});
    CHECK(out.size() == times.size());
}

TEST_CASE("empty peak list filters to empty") {
    CHECK(time_filter_peaks({}, PanTompkinsConfig{}).empty());
}

TEST_CASE("filtering the representatives again is a no-op") {
    PanTompkinsConfig cfg;
    std::vector<PeakCluster> first = time_filter_peaks(peaks_at({10, 11.5, 14, 17, 40}), cfg);
    std::vector<double> reps;
    for (const PeakCluster& c : first) reps.push_back(c.representative_time);
    std::vector<PeakCluster> second = time_filter_peaks(peaks_at(reps), cfg);
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(second[i].representative_time == first[i].representative_time);
}

TEST_CASE("randomized peak sets match the brute-force clustering reference") {
    PanTompkinsConfig cfg;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> gap(0.3, 12.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> times;
        double t = gap(gen);
        std::uniform_int_distribution<int> count(1, 12);
        int n = count(gen);
        for (int i = 0; i < n; ++i) {
            times.push_back(t);
            t += gap(gen);
        }
        std::vector<PeakCluster> got = time_filter_peaks(peaks_at(times), cfg);
        std::vector<std::vector<double>> want = naive_filter(times, cfg);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].representative_time == want[i].front());
            REQUIRE(got[i].member_times.size() == want[i].size());
            for (std::size_t j = 0; j < want[i].size(); ++j)
                CHECK(got[i].member_times[j] == want[i][j]);
        }
    }
}

TEST_CASE("cluster invariants hold on the worked example") {
    std::vector<PeakCluster> out =
        time_filter_peaks(peaks_at({3, 4.2, 5.1, 9, 12, 30}), PanTompkinsConfig{});
    for (const PeakCluster& c : out) {
        REQUIRE_FALSE(c.member_times.empty());
        CHECK(c.representative_time == c.member_times.front());
        for (double m : c.member_times) CHECK(c.representative_time <= m);
    }
}

TEST_CASE("full pass fuses as the max of both paths") {
    SynthSpec spec;
    spec.duration = 90.0;
    spec.fatigue_onset = 50.0;
    StrainTruth truth = generate_strain(spec);
    PostHocResult r = posthoc_detect_norm(truth.series, RealTimeConfig{},
                                          PanTompkinsConfig{});
    CHECK(r.fatigued);
    REQUIRE(r.t2.has_value());
    CHECK(r.t_p == std::max(r.t1, *r.t2));
    CHECK(r.t_p >= r.t1);
    // Both paths should land near the onset.
    CHECK(r.t1 == doctest::Approx(truth.fatigue_onset).epsilon(0.2));
    CHECK(r.t_p == doctest::Approx(truth.fatigue_onset).epsilon(0.25));
}

TEST_CASE("t1 equal to t2 collapses the fusion") {
    PostHocResult r;
    r.t1 = 42.0;
    r.t2 = 42.0;
    r.t_p = std::max(r.t1, r.t2.value_or(r.t1));
    CHECK(r.t_p == 42.0);
}

TEST_CASE("raw-session entry point slices off the static rest head") {
    SynthSpec spec;
    spec.duration = 80.0;
    spec.fatigue_onset = 40.0;
    SessionRecord rec = generate_full_session(
        spec, std::filesystem::temp_directory_path() / "fatigue-ph-slice");
    PostHocResult r = posthoc_detect(rec.strain, rec.manifest.static_t0,
                                     rec.manifest.static_t1, RealTimeConfig{},
                                     PanTompkinsConfig{});
    CHECK(r.fatigued);
    double t_s = *rec.manifest.declared_fatigue_time;
    CHECK(r.t_p >= t_s - 4.0);
    CHECK(r.t_p <= t_s + 12.0);
}

TEST_CASE("config validation rejects inverted separations") {
    PanTompkinsConfig cfg;
    cfg.min_separation = 9.0;  // above max_separation 8
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = PanTompkinsConfig{};
    cfg.top_k = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
