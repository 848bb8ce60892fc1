#include "fatigue/session.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fatigue {

namespace {

using nlohmann::json;

[[noreturn]] void load_fail(const std::filesystem::path& file, std::size_t row,
                            const std::string& what) {
    throw SessionLoadError(file.string() + ":" + std::to_string(row) + ": " + what);
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          std::size_t columns,
                                          const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw SessionLoadError("cannot open stream file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) load_fail(path, 1, "empty file");
    if (line != expected_header)
        load_fail(path, 1, "expected header '" + expected_header + "', got '" + line + "'");
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double x;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (ec != std::errc{} || p != cell.data() + cell.size())
                load_fail(path, lineno, "malformed number '" + cell + "'");
            row.push_back(x);
        }
        if (row.size() != columns)
            load_fail(path, lineno, "expected " + std::to_string(columns) + " columns");
        for (double x : row)
            if (!std::isfinite(x)) load_fail(path, lineno, "non-finite value");
        rows.push_back(std::move(row));
    }
    return rows;
}

void check_monotone(const std::filesystem::path& path,
                    const std::vector<double>& t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] <= t[i - 1])
            load_fail(path, i + 2, "timestamps not strictly increasing");
}

void check_rate(const std::filesystem::path& path, const TimeSeries& s,
                double expected) {
    if (s.size() < 2 || expected <= 0) return;
    double measured = s.sample_rate();
    if (std::abs(measured - expected) > 0.10 * expected)
        throw SessionLoadError(path.string() + ": measured rate " +
                               std::to_string(measured) + " Hz differs >10% from manifest " +
                               std::to_string(expected) + " Hz");
}

StreamInfo parse_stream(const json& j, Unit default_unit) {
    StreamInfo info;
    info.path = j.at("path").get<std::string>();
    info.rate = j.at("rate").get<double>();
    info.offset = j.value("offset", 0.0);
    info.unit = j.contains("unit") ? unit_from_name(j["unit"].get<std::string>())
                                   : default_unit;
    return info;
}

}  // namespace

SessionManifest parse_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw SessionLoadError("cannot open manifest: " + manifest_path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SessionLoadError(manifest_path.string() + ": " + e.what());
    }
    if (j.value("schema_version", 0) != 1)
        throw SessionLoadError(manifest_path.string() + ": unsupported schema_version");

    SessionManifest m;
    m.base_dir = manifest_path.parent_path();
    m.subject_id = j.at("subject_id").get<std::string>();
    m.static_t0 = j.at("static_interval").at(0).get<double>();
    m.static_t1 = j.at("static_interval").at(1).get<double>();
    m.baseline_t0 = j.at("baseline_interval").at(0).get<double>();
    m.baseline_t1 = j.at("baseline_interval").at(1).get<double>();
    if (j.contains("declared_fatigue_time"))
        m.declared_fatigue_time = j["declared_fatigue_time"].get<double>();
    if (m.static_t1 <= m.static_t0 || m.baseline_t1 <= m.baseline_t0 ||
        m.baseline_t0 < m.static_t1)
        throw SessionLoadError(manifest_path.string() +
                               ": static interval must precede baseline interval");
    if (m.declared_fatigue_time && *m.declared_fatigue_time < m.baseline_t1)
        throw SessionLoadError(manifest_path.string() +
                               ": declared fatigue time precedes baseline interval");

    const json& streams = j.at("streams");
    m.strain = parse_stream(streams.at("strain"), Unit::ohms);
    if (streams.contains("semg"))
        m.semg = parse_stream(streams["semg"], Unit::volts);
    if (streams.contains("shoulder_quat"))
        m.shoulder_quat = parse_stream(streams["shoulder_quat"], Unit::dimensionless);
    if (streams.contains("elbow_quat"))
        m.elbow_quat = parse_stream(streams["elbow_quat"], Unit::dimensionless);
    return m;
}

TimeSeries read_scalar_csv(const std::filesystem::path& path, Unit unit,
                           std::optional<double> nominal_rate) {
    auto rows = read_csv(path, 2, "t,value");
    TimeSeries s;
    s.unit = unit;
    s.nominal_rate = nominal_rate;
    for (const auto& r : rows) {
        s.t.push_back(r[0]);
        s.v.push_back(r[1]);
    }
    check_monotone(path, s.t);
    return s;
}

std::vector<QuaternionSample> read_quat_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path, 5, "t,qw,qx,qy,qz");
    std::vector<QuaternionSample> out;
    std::vector<double> t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        QuaternionSample q{r[0], r[1], r[2], r[3], r[4]};
        if (q.norm() == 0) load_fail(path, i + 2, "zero-norm quaternion");
        out.push_back(q.normalized());
        t.push_back(r[0]);
    }
    check_monotone(path, t);
    return out;
}

void write_scalar_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out(path);
    if (!out) throw SessionLoadError("cannot write: " + path.string());
    out << "t,value\n";
    char buf[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", series.t[i], series.v[i]);
        out << buf;
    }
}

void write_quat_csv(const std::filesystem::path& path,
                    const std::vector<QuaternionSample>& quats) {
    std::ofstream out(path);
    if (!out) throw SessionLoadError("cannot write: " + path.string());
    out << "t,qw,qx,qy,qz\n";
    char buf[160];
    for (const QuaternionSample& q : quats) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", q.time,
                      q.w, q.x, q.y, q.z);
        out << buf;
    }
}

SessionRecord load_session(const std::filesystem::path& manifest_path) {
    SessionRecord rec;
    rec.manifest = parse_manifest(manifest_path);
    const SessionManifest& m = rec.manifest;

    auto resolve = [&](const StreamInfo& info) {
        std::filesystem::path p = m.base_dir / info.path;
        if (!std::filesystem::exists(p))
            throw SessionLoadError("missing stream file: " + p.string());
        return p;
    };

    rec.strain = read_scalar_csv(resolve(m.strain), m.strain.unit, m.strain.rate);
    for (double& x : rec.strain.t) x += m.strain.offset;
    check_rate(m.base_dir / m.strain.path, rec.strain, m.strain.rate);

    if (m.semg) {
        rec.semg = read_scalar_csv(resolve(*m.semg), m.semg->unit, m.semg->rate);
        for (double& x : rec.semg->t) x += m.semg->offset;
        check_rate(m.base_dir / m.semg->path, *rec.semg, m.semg->rate);
    }
    if (m.shoulder_quat) {
        rec.shoulder_quats = read_quat_csv(resolve(*m.shoulder_quat));
        for (QuaternionSample& q : *rec.shoulder_quats) q.time += m.shoulder_quat->offset;
    }
    if (m.elbow_quat) {
        rec.elbow_quats = read_quat_csv(resolve(*m.elbow_quat));
        for (QuaternionSample& q : *rec.elbow_quats) q.time += m.elbow_quat->offset;
    }
    return rec;
}

}  // namespace fatigue
