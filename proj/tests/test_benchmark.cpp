#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fatigue/benchmark.hpp"
#include "fatigue/signal.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace fatigue;

namespace {

constexpr double kPi = M_PI;

TimeSeries sine_series(double rate, double duration, double freq, double amp) {
    std::size_t n = static_cast<std::size_t>(rate * duration);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amp * std::sin(2 * kPi * freq * static_cast<double>(i) / rate);
    return make_uniform(0.0, rate, std::move(v), Unit::volts);
}

double interior_rms(const TimeSeries& s, double skip) {
    double acc = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.t[i] >= s.t.front() + skip && s.t[i] <= s.t.back() - skip) {
            acc += s.v[i] * s.v[i];
            ++n;
        }
    return std::sqrt(acc / static_cast<double>(n));
}

// 80 Hz carrier whose amplitude steps from `before` to `after` volts at
// `step_time`; deterministic stand-in for an sEMG burst.
TimeSeries emg_step(double duration, double step_time, double before, double after) {
    const double rate = 1000.0;
    std::size_t n = static_cast<std::size_t>(rate * duration);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / rate;
        double a = t < step_time ? before : after;
        v[i] = a * std::sin(2 * kPi * 80.0 * t);
    }
    return make_uniform(0.0, rate, std::move(v), Unit::volts);
}

// Raised-cosine elevation cycles (period 2 s, peak at 0.48 s of each cycle)
// whose range of motion follows rom(t).
template <class RomFn>
TimeSeries elevation_track(double duration, RomFn rom) {
    const double rate = 100.0, period = 2.0;
    std::size_t n = static_cast<std::size_t>(rate * duration);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / rate;
        v[i] = rom(t) * 0.5 * (1.0 - std::cos(2 * kPi * (t / period + 0.26)));
    }
    return make_uniform(0.0, rate, std::move(v), Unit::degrees);
}

KinConfig kin_cfg() {
    KinConfig cfg;
    cfg.baseline_t0 = 2.0;
    cfg.baseline_t1 = 10.0;
    return cfg;
}

// Independent rotation-matrix oracle for the Euler round-trip.
Mat3 axis_rotation(char axis, double deg) {
    double r = deg * kPi / 180.0, c = std::cos(r), s = std::sin(r);
    switch (axis) {
        case 'x': return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
        case 'y': return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
        default: return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
    }
}

Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
    return out;
}

double frobenius_diff(const Mat3& a, const Mat3& b) {
    double acc = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
    return std::sqrt(acc);
}

Mat3 recompose(const EulerAngles& e, EulerOrder order) {
    if (order == EulerOrder::YZY)
        return mul(axis_rotation('y', e.first),
                   mul(axis_rotation('z', e.second), axis_rotation('y', e.third)));
    return mul(axis_rotation('x', e.first),
               mul(axis_rotation('z', e.second), axis_rotation('y', e.third)));
}

}  // namespace

TEST_CASE("bandpass keeps an 80 Hz tone within 10%") {
    TimeSeries out = bandpass_filter(sine_series(1000.0, 4.0, 80.0, 1.0), 10.0, 150.0);
    double rms = interior_rms(out, 0.5);
    CHECK(rms == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.10));
}

TEST_CASE("bandpass attenuates 1 Hz drift by at least 20 dB") {
    TimeSeries out = bandpass_filter(sine_series(1000.0, 6.0, 1.0, 1.0), 10.0, 150.0);
    double rms = interior_rms(out, 1.0);
    CHECK(rms < 0.1 / std::sqrt(2.0));  // -20 dB on the input RMS
}

TEST_CASE("bandpass squelches a DC-only signal") {
    TimeSeries s = make_uniform(0.0, 1000.0, std::vector<double>(4000, 5.0), Unit::volts);
    TimeSeries out = bandpass_filter(s, 10.0, 150.0);
    CHECK(interior_rms(out, 0.5) < 0.05);
}

TEST_CASE("bandpass validates the band against the rate") {
    TimeSeries s = sine_series(1000.0, 1.0, 80.0, 1.0);
    CHECK_THROWS_AS(bandpass_filter(s, 0.0, 150.0), std::invalid_argument);
    CHECK_THROWS_AS(bandpass_filter(s, 150.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(bandpass_filter(s, 10.0, 600.0), std::invalid_argument);
}

TEST_CASE("sEMG detector fires near a 0.05 V to 0.15 V step") {
    TimeSeries emg = emg_step(60.0, 30.0, 0.05, 0.15);
    std::optional<double> t_e = semg_fatigue_detect(emg, EmgConfig{}, 2.0, 10.0);
    REQUIRE(t_e.has_value());
    CHECK(*t_e >= 28.0);
    CHECK(*t_e <= 32.0);
}

TEST_CASE("sEMG step to only 1.5x baseline stays undetected") {
    TimeSeries emg = emg_step(60.0, 30.0, 0.05, 0.075);
    CHECK_FALSE(semg_fatigue_detect(emg, EmgConfig{}, 2.0, 10.0).has_value());
}

TEST_CASE("constant sEMG envelope stays undetected") {
    TimeSeries emg = emg_step(60.0, 30.0, 0.05, 0.05);
    CHECK_FALSE(semg_fatigue_detect(emg, EmgConfig{}, 2.0, 10.0).has_value());
}

TEST_CASE("sEMG decision is invariant under gain") {
    TimeSeries emg = emg_step(60.0, 30.0, 0.05, 0.15);
    std::optional<double> ref = semg_fatigue_detect(emg, EmgConfig{}, 2.0, 10.0);
    REQUIRE(ref.has_value());
    for (double c : {0.1, 10.0}) {
        TimeSeries scaled = emg;
        for (double& x : scaled.v) x *= c;
        std::optional<double> t_e = semg_fatigue_detect(scaled, EmgConfig{}, 2.0, 10.0);
        REQUIRE(t_e.has_value());
        CHECK(*t_e == doctest::Approx(*ref));
    }
}

TEST_CASE("identity quaternion decomposes to zero angles") {
    for (EulerOrder order : {EulerOrder::YZY, EulerOrder::XZY}) {
        EulerAngles e = quat_to_euler({0, 1, 0, 0, 0}, order);
        CHECK(e.first == doctest::Approx(0.0));
        CHECK(e.second == doctest::Approx(0.0));
        CHECK(e.third == doctest::Approx(0.0));
    }
}

TEST_CASE("pure middle-axis rotation isolates the middle angle") {
    double half = 15.0 * kPi / 180.0;  // 30 degrees about Z
    QuaternionSample q{0, std::cos(half), 0, 0, std::sin(half)};
    for (EulerOrder order : {EulerOrder::YZY, EulerOrder::XZY}) {
        EulerAngles e = quat_to_euler(q, order);
        CHECK_FALSE(e.degenerate);
        CHECK(e.second == doctest::Approx(30.0));
        CHECK(e.first == doctest::Approx(0.0));
        CHECK(e.third == doctest::Approx(0.0));
    }
}

TEST_CASE("random quaternions round-trip through both decompositions") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> normal;
    int degenerate = 0;
    for (int i = 0; i < 1000; ++i) {
        QuaternionSample q{0, normal(gen), normal(gen), normal(gen), normal(gen)};
        q = q.normalized();
        for (EulerOrder order : {EulerOrder::YZY, EulerOrder::XZY}) {
            EulerAngles e = quat_to_euler(q, order);
            if (e.degenerate) {
                ++degenerate;
                continue;
            }
            CHECK(frobenius_diff(recompose(e, order), quat_to_matrix(q)) < 1e-9);
        }
    }
    CHECK(degenerate < 4);
}

TEST_CASE("non-unit quaternion is rejected") {
    CHECK_THROWS_AS(quat_to_euler({0, 1.1, 0, 0, 0}, EulerOrder::YZY),
                    std::invalid_argument);
}

TEST_CASE("elevation_series recovers a pure elevation trajectory") {
    std::vector<QuaternionSample> quats;
    for (int i = 0; i < 200; ++i) {
        double t = i / 100.0;
        double theta = 12.0 * 0.5 * (1.0 - std::cos(2 * kPi * t / 2.0));
        double half = 0.5 * theta * kPi / 180.0;
        quats.push_back({t, std::cos(half), 0, 0, std::sin(half)});
    }
    TimeSeries elev = elevation_series(quats);
    REQUIRE(elev.size() == quats.size());
    for (std::size_t i = 0; i < elev.size(); ++i) {
        double expect = 12.0 * 0.5 * (1.0 - std::cos(2 * kPi * elev.t[i] / 2.0));
        CHECK(elev.v[i] == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("kinematic detector fires at the first enlarged cycle's peak") {
    TimeSeries elev = elevation_track(40.0, [](double t) { return t < 24.0 ? 7.0 : 20.0; });
    std::optional<double> t_k = kinematics_fatigue_detect(elev, kin_cfg());
    REQUIRE(t_k.has_value());
    CHECK(*t_k == doctest::Approx(24.48).epsilon(0.01));
}

TEST_CASE("62% range-of-motion growth stays undetected") {
    TimeSeries elev = elevation_track(40.0, [](double t) { return t < 24.0 ? 7.0 : 11.34; });
    CHECK_FALSE(kinematics_fatigue_detect(elev, kin_cfg()).has_value());
}

TEST_CASE("two enlarged cycles then regression stays undetected") {
    TimeSeries elev = elevation_track(40.0, [](double t) {
        return (t >= 24.0 && t < 28.0) ? 20.0 : 7.0;
    });
    CHECK_FALSE(kinematics_fatigue_detect(elev, kin_cfg()).has_value());
}

TEST_CASE("kinematic decision is invariant under constant offsets") {
    TimeSeries base = elevation_track(40.0, [](double t) { return t < 24.0 ? 7.0 : 20.0; });
    std::optional<double> ref = kinematics_fatigue_detect(base, kin_cfg());
    REQUIRE(ref.has_value());
    for (double off : {50.0, -50.0}) {
        TimeSeries shifted = base;
        for (double& x : shifted.v) x += off;
        std::optional<double> t_k = kinematics_fatigue_detect(shifted, kin_cfg());
        REQUIRE(t_k.has_value());
        CHECK(*t_k == doctest::Approx(*ref));
    }
}

TEST_CASE("empty kinematic baseline is a domain error") {
    TimeSeries elev = elevation_track(40.0, [](double) { return 7.0; });
    KinConfig cfg = kin_cfg();
    cfg.baseline_t0 = 0.0;
    cfg.baseline_t1 = 0.1;  // no extremum pair fits
    CHECK_THROWS_AS(kinematics_fatigue_detect(elev, cfg), std::domain_error);
}
