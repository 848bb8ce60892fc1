#pragma once

#include "fatigue/quat.hpp"
#include "fatigue/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fatigue {

/// Load failures carry the offending file (and row, where known) in the
/// message.
struct SessionLoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StreamInfo {
    std::string path;
    double rate = 0;     // Hz
    double offset = 0;   // seconds added at load (trigger alignment)
    Unit unit = Unit::dimensionless;
};

struct SessionManifest {
    std::string subject_id;
    double static_t0 = 0, static_t1 = 0;      // stationary rest
    double baseline_t0 = 0, baseline_t1 = 0;  // standard curls
    std::optional<double> declared_fatigue_time;  // t_s
    StreamInfo strain;
    std::optional<StreamInfo> semg;
    std::optional<StreamInfo> shoulder_quat;
    std::optional<StreamInfo> elbow_quat;
    std::filesystem::path base_dir;  // directory of the manifest file
};

struct SessionRecord {
    SessionManifest manifest;
    TimeSeries strain;
    std::optional<TimeSeries> semg;
    std::optional<std::vector<QuaternionSample>> shoulder_quats;
    std::optional<std::vector<QuaternionSample>> elbow_quats;
};

SessionManifest parse_manifest(const std::filesystem::path& manifest_path);

/// Loads every referenced stream, unit-tagged, trigger-aligned, validated.
SessionRecord load_session(const std::filesystem::path& manifest_path);

// Stream CSV primitives (header "t,value" / "t,qw,qx,qy,qz").
TimeSeries read_scalar_csv(const std::filesystem::path& path, Unit unit,
                           std::optional<double> nominal_rate = std::nullopt);
std::vector<QuaternionSample> read_quat_csv(const std::filesystem::path& path);
void write_scalar_csv(const std::filesystem::path& path, const TimeSeries& series);
void write_quat_csv(const std::filesystem::path& path,
                    const std::vector<QuaternionSample>& quats);

}  // namespace fatigue
