#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatigue {

enum class Unit { volts, ohms, dimensionless, degrees };

std::string unit_name(Unit u);
Unit unit_from_name(const std::string& name);

/// Timestamped scalar samples; the carrier for every stream in the pipeline.
/// Timestamps are seconds and must be strictly increasing.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> v;
    Unit unit = Unit::dimensionless;
    std::optional<double> nominal_rate;  // Hz, hint only

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }
    double duration() const { return t.empty() ? 0.0 : t.back() - t.front(); }

    // Median reciprocal spacing; falls back to nominal_rate for size < 2.
    double sample_rate() const;

    // Throws std::invalid_argument on any invariant violation.
    void validate() const;

    // Samples with time in [t0, t1], timestamps preserved.
    TimeSeries slice_time(double t0, double t1) const;
    // Half-open sample range [first, last).
    TimeSeries slice(std::size_t first, std::size_t last) const;
};

/// Uniformly sampled series starting at t0.
TimeSeries make_uniform(double t0, double rate, std::vector<double> values,
                        Unit unit = Unit::dimensionless);

struct DividerConfig {
    double v_in = 5.0;    // volts
    double r_ref = 1000;  // ohms
};

enum class ExtremumKind { peak, trough };

struct Extremum {
    std::size_t index;
    double time;
    double value;
    ExtremumKind kind;
};

struct LagCorrelation {
    double coefficient;  // in [-1, 1]
    double lag;          // seconds, positive = first series leads
};

}  // namespace fatigue
