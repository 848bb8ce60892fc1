#include "fatigue/types.hpp"

#include <algorithm>
#include <cmath>

namespace fatigue {

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::volts: return "volts";
        case Unit::ohms: return "ohms";
        case Unit::dimensionless: return "dimensionless";
        case Unit::degrees: return "degrees";
    }
    return "dimensionless";
}

Unit unit_from_name(const std::string& name) {
    if (name == "volts") return Unit::volts;
    if (name == "ohms") return Unit::ohms;
    if (name == "dimensionless") return Unit::dimensionless;
    if (name == "degrees") return Unit::degrees;
    throw std::invalid_argument("unknown unit: " + name);
}

double TimeSeries::sample_rate() const {
    if (t.size() < 2) {
        if (nominal_rate) return *nominal_rate;
        throw std::invalid_argument("sample_rate: series too short");
    }
    std::vector<double> dt(t.size() - 1);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) dt[i] = t[i + 1] - t[i];
    auto mid = dt.begin() + static_cast<std::ptrdiff_t>(dt.size() / 2);
    std::nth_element(dt.begin(), mid, dt.end());
    return 1.0 / *mid;
}

void TimeSeries::validate() const {
    if (t.size() != v.size())
        throw std::invalid_argument("TimeSeries: timestamp/value length mismatch");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(v[i]))
            throw std::invalid_argument("TimeSeries: non-finite sample at row " +
                                        std::to_string(i));
        if (i > 0 && t[i] <= t[i - 1])
            throw std::invalid_argument(
                "TimeSeries: timestamps not strictly increasing at row " +
                std::to_string(i));
    }
    if (nominal_rate && t.size() >= 2) {
        double measured = sample_rate();
        if (std::abs(measured - *nominal_rate) > 0.10 * *nominal_rate)
            throw std::invalid_argument(
                "TimeSeries: nominal rate " + std::to_string(*nominal_rate) +
                " Hz differs >10% from measured " + std::to_string(measured));
    }
}

TimeSeries TimeSeries::slice_time(double t0, double t1) const {
    TimeSeries out;
    out.unit = unit;
    out.nominal_rate = nominal_rate;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t0 && t[i] <= t1) {
            out.t.push_back(t[i]);
            out.v.push_back(v[i]);
        }
    }
    return out;
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t last) const {
    TimeSeries out;
    out.unit = unit;
    out.nominal_rate = nominal_rate;
    out.t.assign(t.begin() + static_cast<std::ptrdiff_t>(first),
                 t.begin() + static_cast<std::ptrdiff_t>(last));
    out.v.assign(v.begin() + static_cast<std::ptrdiff_t>(first),
                 v.begin() + static_cast<std::ptrdiff_t>(last));
    return out;
}

TimeSeries make_uniform(double t0, double rate, std::vector<double> values,
                        Unit unit) {
    TimeSeries s;
    s.unit = unit;
    s.nominal_rate = rate;
    s.v = std::move(values);
    s.t.resize(s.v.size());
    for (std::size_t i = 0; i < s.t.size(); ++i)
        s.t[i] = t0 + static_cast<double>(i) / rate;
    return s;
}

}  // namespace fatigue
