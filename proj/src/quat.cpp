#include "fatigue/quat.hpp"

#include <cmath>

namespace fatigue {

namespace {
constexpr double kDegPerRad = 180.0 / M_PI;
constexpr double kGimbalTol = 1e-6;

double clamp1(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }
}  // namespace

double QuaternionSample::norm() const {
    return std::sqrt(w * w + x * x + y * y + z * z);
}

QuaternionSample QuaternionSample::normalized() const {
    double n = norm();
    if (n == 0) throw std::invalid_argument("quaternion: zero norm");
    return {time, w / n, x / n, y / n, z / n};
}

Mat3 quat_to_matrix(const QuaternionSample& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

EulerAngles quat_to_euler(const QuaternionSample& q, EulerOrder order) {
    if (std::abs(q.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("quat_to_euler: non-unit quaternion");
    const Mat3 m = quat_to_matrix(q);
    EulerAngles e;

    if (order == EulerOrder::YZY) {
        // R = Ry(a) Rz(b) Ry(c); b = acos(m11) in [0, pi].
        double cb = clamp1(m[1][1]);
        double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
        e.second = std::acos(cb) * kDegPerRad;
        if (sb > kGimbalTol) {
            e.first = std::atan2(m[2][1], -m[0][1]) * kDegPerRad;
            e.third = std::atan2(m[1][2], m[1][0]) * kDegPerRad;
        } else {
            e.degenerate = true;
            // b ~ 0: R = Ry(a+c); b ~ pi: m encodes a-c.
            e.first = cb > 0 ? std::atan2(m[0][2], m[0][0]) * kDegPerRad
                             : std::atan2(m[0][2], -m[0][0]) * kDegPerRad;
            e.third = 0;
        }
    } else {
        // R = Rx(a) Rz(b) Ry(c); b = asin(-m01) in [-pi/2, pi/2].
        double sb = clamp1(-m[0][1]);
        double cb = std::sqrt(std::max(0.0, 1.0 - sb * sb));
        e.second = std::asin(sb) * kDegPerRad;
        if (cb > kGimbalTol) {
            e.first = std::atan2(m[2][1], m[1][1]) * kDegPerRad;
            e.third = std::atan2(m[0][2], m[0][0]) * kDegPerRad;
        } else {
            e.degenerate = true;
            e.first = sb > 0 ? std::atan2(m[2][0], m[1][0]) * kDegPerRad
                             : std::atan2(-m[2][0], -m[1][0]) * kDegPerRad;
            e.third = 0;
        }
    }
    return e;
}

namespace {

TimeSeries middle_angle_series(const std::vector<QuaternionSample>& quats,
                               EulerOrder order) {
    TimeSeries out;
    out.unit = Unit::degrees;
    out.t.reserve(quats.size());
    out.v.reserve(quats.size());
    for (const QuaternionSample& q : quats) {
        out.t.push_back(q.time);
        out.v.push_back(quat_to_euler(q, order).second);
    }
    return out;
}

}  // namespace

TimeSeries elevation_series(const std::vector<QuaternionSample>& quats) {
    return middle_angle_series(quats, EulerOrder::YZY);
}

TimeSeries flexion_series(const std::vector<QuaternionSample>& quats) {
    return middle_angle_series(quats, EulerOrder::XZY);
}

}  // namespace fatigue
