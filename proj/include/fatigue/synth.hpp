#pragma once

#include <random>

#include "fatigue/session.hpp"
#include "fatigue/types.hpp"

#include <cstdint>
#include <filesystem>

namespace fatigue {

/// Parameters for a ground-truthed synthetic curl session. Exercise time runs
/// from 0 to `duration`; a static rest head is prepended only when a full
/// session is written to disk.
struct SynthSpec {
    std::uint64_t seed = 1;
    double duration = 120.0;       // seconds of exercise
    double curl_period = 2.0;      // seconds per repetition
    double baseline_amp = 0.5;     // R_norm units
    double fatigue_onset = 60.0;   // seconds into the exercise
    double fatigue_amp = 2.0;      // R_norm units
    double amp_ramp = 4.0;         // transition width, seconds
    double drift_slope = 0.0;      // R_norm units per second
    double noise_sigma = 0.0;      // R_norm units
    double semg_baseline_rms = 0.05;   // volts
    double semg_fatigue_rms = 0.15;    // volts
    double elevation_baseline_rom = 7.0;   // degrees
    double elevation_fatigue_rom = 20.0;   // degrees
    double static_duration = 3.0;  // rest head for full sessions
    double strain_rate = 25.0;     // Hz
    double semg_rate = 1000.0;     // Hz
    double kin_rate = 100.0;       // Hz

    void validate() const;
};

/// Deterministic Gaussian source: mt19937_64 with a fixed 53-bit uniform
/// mapping and Box-Muller, so identical seeds reproduce identical streams on
/// every platform. std::normal_distribution is deliberately avoided (its
/// algorithm is implementation-defined).
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double gauss();

  private:
    std::mt19937_64 gen_;
    double spare_ = 0;
    bool has_spare_ = false;
};

struct StrainTruth {
    TimeSeries series;     // dimensionless, 25 Hz, exercise only
    double fatigue_onset;  // seconds
};

/// Raised-cosine curl cycles whose amplitude ramps from baseline_amp to
/// fatigue_amp across [onset, onset + amp_ramp], plus linear drift and seeded
/// Gaussian noise.
StrainTruth generate_strain(const SynthSpec& spec);

/// Writes strain / sEMG / shoulder-quaternion streams plus manifest.json into
/// out_dir and returns the in-memory record. Streams carry a static rest head
/// of static_duration; all manifest times (including t_s) are shifted
/// accordingly.
SessionRecord generate_full_session(const SynthSpec& spec,
                                    const std::filesystem::path& out_dir);

}  // namespace fatigue
