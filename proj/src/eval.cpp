#include "fatigue/eval.hpp"

#include "fatigue/signal.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fatigue {

EvaluationRow evaluate_session(const SessionRecord& session,
                               const DetectorConfigs& configs) {
    const SessionManifest& m = session.manifest;
    if (!m.declared_fatigue_time)
        throw std::invalid_argument("evaluate_session: session has no declared fatigue time");

    EvaluationRow row;
    row.subject_id = m.subject_id;
    row.t_s = *m.declared_fatigue_time;

    PostHocResult ph = posthoc_detect(session.strain, m.static_t0, m.static_t1,
                                      configs.realtime, configs.pan_tompkins,
                                      configs.median_window);
    row.t_r = ph.t1;
    row.t_p = ph.t_p;

    if (session.semg)
        row.t_e = semg_fatigue_detect(*session.semg, configs.emg, m.baseline_t0,
                                      m.baseline_t1);
    if (session.shoulder_quats) {
        KinConfig kin = configs.kinematics;
        kin.baseline_t0 = m.baseline_t0;
        kin.baseline_t1 = m.baseline_t1;
        row.t_k = kinematics_fatigue_detect(elevation_series(*session.shoulder_quats), kin);
    }

    auto diff = [&](const std::optional<double>& t) -> std::optional<double> {
        if (!t) return std::nullopt;
        return row.t_s - *t;
    };
    row.d_k = diff(row.t_k);
    row.d_e = diff(row.t_e);
    row.d_r = diff(row.t_r);
    row.d_p = diff(row.t_p);
    return row;
}

std::vector<EvaluationRow> evaluate_sessions(const std::vector<SessionRecord>& sessions,
                                             const DetectorConfigs& configs) {
    std::vector<EvaluationRow> rows;
    for (const SessionRecord& s : sessions) {
        if (!s.manifest.declared_fatigue_time) {
            std::cerr << "warning: skipping session '" << s.manifest.subject_id
                      << "' without declared fatigue time\n";
            continue;
        }
        rows.push_back(evaluate_session(s, configs));
    }
    return rows;
}

namespace {

MethodStats method_stats(const std::vector<EvaluationRow>& rows,
                         std::optional<double> EvaluationRow::* diff) {
    MethodStats out;
    std::vector<double> detected, all;
    for (const EvaluationRow& r : rows) {
        const std::optional<double>& d = r.*diff;
        if (d) {
            detected.push_back(*d);
            all.push_back(*d);
        } else {
            all.push_back(r.t_s);  // detection time substituted with 0
        }
    }
    out.n_detected = detected.size();

    auto mean_abs = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += std::abs(x);
        return s / static_cast<double>(v.size());
    };
    auto sample_std = [](const std::vector<double>& v) -> std::optional<double> {
        if (v.size() < 2) return std::nullopt;
        double m = 0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double acc = 0;
        for (double x : v) acc += (x - m) * (x - m);
        return std::sqrt(acc / static_cast<double>(v.size() - 1));
    };

    out.avr1_mean = mean_abs(all);
    out.avr1_std = sample_std(all);
    if (!detected.empty()) {
        out.avr2_mean = mean_abs(detected);
        out.avr2_std = sample_std(detected);
    }
    return out;
}

}  // namespace

SummaryStats summary_stats(const std::vector<EvaluationRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("summary_stats: no rows");
    SummaryStats s;
    s.kinematics = method_stats(rows, &EvaluationRow::d_k);
    s.semg = method_stats(rows, &EvaluationRow::d_e);
    s.realtime = method_stats(rows, &EvaluationRow::d_r);
    s.posthoc = method_stats(rows, &EvaluationRow::d_p);
    return s;
}

namespace {

std::string fmt2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string fmt2_or_na(const std::optional<double>& x) {
    return x ? fmt2(*x) : "NA";
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

nlohmann::ordered_json stats_json(const MethodStats& m) {
    nlohmann::ordered_json j;
    j["avr1_mean"] = round2(m.avr1_mean);
    j["avr1_std"] = m.avr1_std ? nlohmann::ordered_json(round2(*m.avr1_std))
                               : nlohmann::ordered_json(nullptr);
    j["avr2_mean"] = m.avr2_mean ? nlohmann::ordered_json(round2(*m.avr2_mean))
                                 : nlohmann::ordered_json(nullptr);
    j["avr2_std"] = m.avr2_std ? nlohmann::ordered_json(round2(*m.avr2_std))
                               : nlohmann::ordered_json(nullptr);
    j["n_detected"] = m.n_detected;
    return j;
}

}  // namespace

void write_report(const std::vector<EvaluationRow>& rows,
                  const std::filesystem::path& path, ReportFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report: cannot write " + path.string());
    if (format == ReportFormat::csv) {
        out << "subject,t_s,dt_kin,dt_semg,dt_rt,dt_ph\n";
        for (const EvaluationRow& r : rows) {
            out << r.subject_id << ',' << fmt2(r.t_s) << ',' << fmt2_or_na(r.d_k)
                << ',' << fmt2_or_na(r.d_e) << ',' << fmt2_or_na(r.d_r) << ','
                << fmt2_or_na(r.d_p) << '\n';
        }
        return;
    }
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const EvaluationRow& r : rows) {
        nlohmann::ordered_json o;
        o["subject"] = r.subject_id;
        o["t_s"] = round2(r.t_s);
        auto put = [&](const char* key, const std::optional<double>& x) {
            o[key] = x ? nlohmann::ordered_json(round2(*x))
                       : nlohmann::ordered_json(nullptr);
        };
        put("t_k", r.t_k);
        put("t_e", r.t_e);
        put("t_r", r.t_r);
        put("t_p", r.t_p);
        put("dt_kin", r.d_k);
        put("dt_semg", r.d_e);
        put("dt_rt", r.d_r);
        put("dt_ph", r.d_p);
        j["rows"].push_back(o);
    }
    if (!rows.empty()) {
        SummaryStats s = summary_stats(rows);
        j["summary"]["kinematics"] = stats_json(s.kinematics);
        j["summary"]["semg"] = stats_json(s.semg);
        j["summary"]["realtime"] = stats_json(s.realtime);
        j["summary"]["posthoc"] = stats_json(s.posthoc);
    }
    out << j.dump(2) << "\n";
}

std::vector<EvaluationRow> read_report_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_report_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "subject,t_s,dt_kin,dt_semg,dt_rt,dt_ph")
        throw std::runtime_error(path.string() + ": unexpected report header");
    std::vector<EvaluationRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6)
            throw std::runtime_error(path.string() + ": expected 6 columns, got row '" + line + "'");
        EvaluationRow r;
        r.subject_id = cells[0];
        r.t_s = std::stod(cells[1]);
        auto opt = [](const std::string& s) -> std::optional<double> {
            if (s == "NA") return std::nullopt;
            return std::stod(s);
        };
        r.d_k = opt(cells[2]);
        r.d_e = opt(cells[3]);
        r.d_r = opt(cells[4]);
        r.d_p = opt(cells[5]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace fatigue
