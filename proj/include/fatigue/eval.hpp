#pragma once

#include "fatigue/benchmark.hpp"
#include "fatigue/posthoc.hpp"
#include "fatigue/realtime.hpp"
#include "fatigue/session.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fatigue {

struct DetectorConfigs {
    RealTimeConfig realtime;
    PanTompkinsConfig pan_tompkins;
    EmgConfig emg;
    KinConfig kinematics;  // baseline interval filled per session
    std::size_t median_window = 3;
};

/// Per-subject detection times and signed differences against the declared
/// fatigue time t_s. NotDetected propagates as an empty optional; the
/// Real-Time and Post Hoc entries always carry a value (end-of-signal
/// sentinel when nothing fired).
struct EvaluationRow {
    std::string subject_id;
    double t_s = 0;
    std::optional<double> t_k, t_e, t_r, t_p;
    std::optional<double> d_k, d_e, d_r, d_p;  // t_s - t_*
};

struct MethodStats {
    double avr1_mean = 0;              // NotDetected counted as detection time 0
    std::optional<double> avr1_std;    // sample std of signed diffs, n-1
    std::optional<double> avr2_mean;   // NotDetected excluded
    std::optional<double> avr2_std;
    std::size_t n_detected = 0;
};

struct SummaryStats {
    MethodStats kinematics, semg, realtime, posthoc;
};

/// Runs every detector a session's streams allow for and fills one row per
/// session. Sessions without a declared fatigue time are skipped with a
/// warning on stderr.
std::vector<EvaluationRow> evaluate_sessions(const std::vector<SessionRecord>& sessions,
                                             const DetectorConfigs& configs);

EvaluationRow evaluate_session(const SessionRecord& session,
                               const DetectorConfigs& configs);

/// Avr1/Avr2 aggregates: mean of absolute diffs, sample standard deviation of
/// the signed diffs. Avr1 substitutes NotDetected with detection time 0
/// (diff = t_s); Avr2 drops those subjects.
SummaryStats summary_stats(const std::vector<EvaluationRow>& rows);

enum class ReportFormat { csv, json };

/// Deterministic report with 0.01 s timestamp precision. CSV columns:
/// subject,t_s,dt_kin,dt_semg,dt_rt,dt_ph (NA for NotDetected).
void write_report(const std::vector<EvaluationRow>& rows,
                  const std::filesystem::path& path, ReportFormat format);

/// Parses a report-format CSV (the Table II fixture uses it too).
std::vector<EvaluationRow> read_report_csv(const std::filesystem::path& path);

}  // namespace fatigue
