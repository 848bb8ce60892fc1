// Command-line front end: synthetic session generation, single-detector runs,
// cohort evaluation, and the published-aggregate recomputation.

#include "fatigue/eval.hpp"
#include "fatigue/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using fatigue::DetectorConfigs;
using nlohmann::ordered_json;

fatigue::SynthSpec parse_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec: " + path.string());
    nlohmann::json j;
    in >> j;
    fatigue::SynthSpec s;
    s.seed = j.value("seed", s.seed);
    s.duration = j.value("duration", s.duration);
    s.curl_period = j.value("curl_period", s.curl_period);
    s.baseline_amp = j.value("baseline_amp", s.baseline_amp);
    s.fatigue_onset = j.value("fatigue_onset", s.fatigue_onset);
    s.fatigue_amp = j.value("fatigue_amp", s.fatigue_amp);
    s.amp_ramp = j.value("amp_ramp", s.amp_ramp);
    s.drift_slope = j.value("drift_slope", s.drift_slope);
    s.noise_sigma = j.value("noise_sigma", s.noise_sigma);
    s.semg_baseline_rms = j.value("semg_baseline_rms", s.semg_baseline_rms);
    s.semg_fatigue_rms = j.value("semg_fatigue_rms", s.semg_fatigue_rms);
    s.elevation_baseline_rom = j.value("elevation_baseline_rom", s.elevation_baseline_rom);
    s.elevation_fatigue_rom = j.value("elevation_fatigue_rom", s.elevation_fatigue_rom);
    s.static_duration = j.value("static_duration", s.static_duration);
    return s;
}

ordered_json opt_json(const std::optional<double>& x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

void print_stats(const char* name, const fatigue::MethodStats& m) {
    auto cell = [](double mean, const std::optional<double>& sd) {
        char buf[64];
        if (sd)
            std::snprintf(buf, sizeof buf, "%.2f (%.2f)", mean, *sd);
        else
            std::snprintf(buf, sizeof buf, "%.2f (-)", mean);
        return std::string(buf);
    };
    std::printf("%-12s avr1 %-16s", name, cell(m.avr1_mean, m.avr1_std).c_str());
    if (m.avr2_mean)
        std::printf(" avr2 %-16s", cell(*m.avr2_mean, m.avr2_std).c_str());
    else
        std::printf(" avr2 -");
    std::printf("  detected %zu\n", m.n_detected);
}

int run(int argc, char** argv) {
    CLI::App app{"Strain-patch fatigue detection toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic session");
    std::string spec_path, out_dir;
    synth->add_option("--spec", spec_path, "Synthesis spec JSON")->required();
    synth->add_option("--out", out_dir, "Output directory")->required();

    // detect
    auto* detect = app.add_subcommand("detect", "Run one detector on a session");
    std::string method, manifest_path;
    DetectorConfigs cfg;
    detect->add_option("method", method, "realtime|posthoc|semg|kinematics")
        ->required()
        ->check(CLI::IsMember({"realtime", "posthoc", "semg", "kinematics"}));
    detect->add_option("--manifest", manifest_path, "Session manifest")->required();
    detect->add_option("--batch-size", cfg.realtime.batch_size,
                       "Real-Time batch size, samples (default 50, ~2 s at 25 Hz)");
    detect->add_option("--tau", cfg.realtime.tau,
                       "Amplitude-ratio fatigue threshold (default 3.5)");
    detect->add_option("--consecutive", cfg.realtime.consecutive_required,
                       "Consecutive above-threshold batches required (default 2)");
    detect->add_option("--prominence", cfg.realtime.prominence,
                       "Extremum prominence in R_norm units (default 0.05)");
    detect->add_option("--median-window", cfg.median_window,
                       "Median filter width, samples (default 3)");
    detect->add_option("--top-k", cfg.pan_tompkins.top_k,
                       "Variability peaks kept (default 10)");
    detect->add_option("--min-sep", cfg.pan_tompkins.min_separation,
                       "Merge peaks closer than this, seconds (default 2)");
    detect->add_option("--max-sep", cfg.pan_tompkins.max_separation,
                       "Drop peaks further than this, seconds (default 8)");
    detect->add_option("--emg-threshold", cfg.emg.increase_threshold,
                       "sEMG RMS increase fraction (default 1.27, i.e. +127%)");
    detect->add_option("--kin-threshold", cfg.kinematics.increase_threshold,
                       "Cycle-amplitude increase fraction (default 1.50, i.e. +150%)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a session corpus");
    std::vector<std::string> manifests;
    std::string report_path, format = "csv";
    evaluate->add_option("--manifests", manifests, "Manifest files")
        ->required()
        ->expected(-1);
    evaluate->add_option("--out", report_path, "Report path")->required();
    evaluate->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // table2
    auto* table2 = app.add_subcommand(
        "table2", "Recompute published aggregates from a per-subject diff table");
    std::string rows_path;
    table2->add_option("--rows", rows_path, "Per-subject CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors exit 1; --help and friends exit 0.
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*synth) {
        fatigue::SessionRecord rec =
            fatigue::generate_full_session(parse_spec(spec_path), out_dir);
        std::cout << "wrote session '" << rec.manifest.subject_id << "' to "
                  << out_dir << "\n";
        return 0;
    }

    if (*detect) {
        fatigue::SessionRecord rec = fatigue::load_session(manifest_path);
        const fatigue::SessionManifest& m = rec.manifest;
        ordered_json out;
        if (method == "realtime") {
            fatigue::RealTimeResult r = fatigue::realtime_detect(
                rec.strain, m.static_t0, m.static_t1, cfg.realtime, cfg.median_window);
            out["t_r"] = r.t_r;
            out["fatigued"] = r.fatigued;
        } else if (method == "posthoc") {
            fatigue::PostHocResult r = fatigue::posthoc_detect(
                rec.strain, m.static_t0, m.static_t1, cfg.realtime,
                cfg.pan_tompkins, cfg.median_window);
            out["t1"] = r.t1;
            out["t2"] = opt_json(r.t2);
            out["t_p"] = r.t_p;
            out["fatigued"] = r.fatigued;
        } else if (method == "semg") {
            if (!rec.semg) throw std::runtime_error("session has no sEMG stream");
            auto t_e = fatigue::semg_fatigue_detect(*rec.semg, cfg.emg,
                                                    m.baseline_t0, m.baseline_t1);
            out["t_e"] = opt_json(t_e);
            out["detected"] = static_cast<bool>(t_e);
        } else {
            if (!rec.shoulder_quats)
                throw std::runtime_error("session has no shoulder quaternion stream");
            fatigue::KinConfig kin = cfg.kinematics;
            kin.baseline_t0 = m.baseline_t0;
            kin.baseline_t1 = m.baseline_t1;
            auto t_k = fatigue::kinematics_fatigue_detect(
                fatigue::elevation_series(*rec.shoulder_quats), kin);
            out["t_k"] = opt_json(t_k);
            out["detected"] = static_cast<bool>(t_k);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*evaluate) {
        std::vector<fatigue::SessionRecord> sessions;
        for (const std::string& p : manifests)
            sessions.push_back(fatigue::load_session(p));
        DetectorConfigs defaults;
        std::vector<fatigue::EvaluationRow> rows =
            fatigue::evaluate_sessions(sessions, defaults);
        fatigue::write_report(rows, report_path,
                              format == "json" ? fatigue::ReportFormat::json
                                               : fatigue::ReportFormat::csv);
        std::cout << "wrote " << rows.size() << " rows to " << report_path << "\n";
        return 0;
    }

    // table2
    std::vector<fatigue::EvaluationRow> rows = fatigue::read_report_csv(rows_path);
    fatigue::SummaryStats s = fatigue::summary_stats(rows);
    print_stats("kinematics", s.kinematics);
    print_stats("semg", s.semg);
    print_stats("realtime", s.realtime);
    print_stats("posthoc", s.posthoc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
