#pragma once

#include "fatigue/types.hpp"

#include <array>
#include <vector>

namespace fatigue {

struct QuaternionSample {
    double time = 0;
    double w = 1, x = 0, y = 0, z = 0;

    double norm() const;
    QuaternionSample normalized() const;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 quat_to_matrix(const QuaternionSample& q);

enum class EulerOrder { YZY, XZY };

/// Intrinsic Euler decomposition, degrees. `degenerate` marks gimbal
/// proximity; there the full rotation is assigned to the first angle and the
/// third is zeroed.
struct EulerAngles {
    double first = 0;
    double second = 0;
    double third = 0;
    bool degenerate = false;
};

/// Throws std::invalid_argument when the quaternion norm is off unity by more
/// than 1e-6.
EulerAngles quat_to_euler(const QuaternionSample& q, EulerOrder order);

struct JointAngles {
    double time = 0;
    double plane_of_elevation = 0;   // YZY first
    double elevation = 0;            // YZY middle, shoulder elevation-depression
    double axial_rotation = 0;       // YZY third
    double flexion_extension = 0;    // XZY middle, elbow convention
};

/// Shoulder elevation-depression trajectory (YZY middle angle) in degrees.
TimeSeries elevation_series(const std::vector<QuaternionSample>& quats);

/// Elbow flexion-extension trajectory (XZY middle angle) in degrees.
TimeSeries flexion_series(const std::vector<QuaternionSample>& quats);

}  // namespace fatigue
