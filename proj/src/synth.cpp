#include "fatigue/synth.hpp"

#include "fatigue/benchmark.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace fatigue {

void SynthSpec::validate() const {
    if (!(duration > 0) || !(curl_period > 0))
        throw std::invalid_argument("synth: duration and curl_period must be positive");
    if (!(fatigue_onset > curl_period) || fatigue_onset >= duration)
        throw std::invalid_argument("synth: fatigue_onset must lie inside (curl_period, duration)");
    if (baseline_amp < 0 || fatigue_amp < 0 || noise_sigma < 0 ||
        semg_baseline_rms < 0 || semg_fatigue_rms < 0 ||
        elevation_baseline_rom < 0 || elevation_fatigue_rom < 0)
        throw std::invalid_argument("synth: amplitudes must be nonnegative");
}

double GaussianRng::gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1, u2;
    do {
        u1 = uniform();
    } while (u1 <= 0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

namespace {

// Linear interpolation of an envelope level across [onset, onset + ramp].
double envelope(double t, double onset, double ramp, double before, double after) {
    if (t < onset) return before;
    if (ramp <= 0 || t >= onset + ramp) return after;
    return before + (after - before) * (t - onset) / ramp;
}

// One raised-cosine repetition per curl_period, range [0, 1]. Cycles start
// near quarter phase so batch windows aligned to the exercise start hold both
// extrema in their interior; the 0.26 offset additionally lands the peak and
// trough exactly on samples at the default 25/100 Hz rates, avoiding
// equal-neighbor ties at the crest.
double curl_wave(double t, double period) {
    return 0.5 * (1.0 - std::cos(2.0 * M_PI * (t / period + 0.26)));
}

}  // namespace

StrainTruth generate_strain(const SynthSpec& spec) {
    spec.validate();
    GaussianRng rng(spec.seed);
    std::size_t n = static_cast<std::size_t>(spec.duration * spec.strain_rate);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / spec.strain_rate;
        double amp = envelope(t, spec.fatigue_onset, spec.amp_ramp,
                              spec.baseline_amp, spec.fatigue_amp);
        v[i] = amp * curl_wave(t, spec.curl_period) + spec.drift_slope * t +
               spec.noise_sigma * rng.gauss();
    }
    return {make_uniform(0.0, spec.strain_rate, std::move(v)), spec.fatigue_onset};
}

namespace {

TimeSeries generate_semg(const SynthSpec& spec) {
    GaussianRng rng(spec.seed ^ 0x5eed5eedULL);
    double total = spec.static_duration + spec.duration;
    std::size_t n = static_cast<std::size_t>(total * spec.semg_rate);
    std::vector<double> carrier(n);
    for (double& x : carrier) x = rng.gauss();
    TimeSeries raw = make_uniform(0.0, spec.semg_rate, std::move(carrier), Unit::volts);
    TimeSeries band = bandpass_filter(raw, 10.0, 150.0);
    double power = 0;
    for (double x : band.v) power += x * x;
    double rms = std::sqrt(power / static_cast<double>(n));
    double onset = spec.static_duration + spec.fatigue_onset;
    for (std::size_t i = 0; i < n; ++i) {
        double level = envelope(band.t[i], onset, spec.amp_ramp,
                                spec.semg_baseline_rms, spec.semg_fatigue_rms);
        band.v[i] *= level / rms;
    }
    return band;
}

std::vector<QuaternionSample> generate_shoulder_quats(const SynthSpec& spec) {
    double total = spec.static_duration + spec.duration;
    std::size_t n = static_cast<std::size_t>(total * spec.kin_rate);
    std::vector<QuaternionSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / spec.kin_rate;
        double te = t - spec.static_duration;
        double theta = 0;
        if (te >= 0) {
            double rom = envelope(te, spec.fatigue_onset, spec.amp_ramp,
                                  spec.elevation_baseline_rom, spec.elevation_fatigue_rom);
            theta = rom * curl_wave(te, spec.curl_period);
        }
        // Pure elevation: rotation about the middle (Z) axis of the YZY chain.
        double half = 0.5 * theta * M_PI / 180.0;
        out.push_back({t, std::cos(half), 0, 0, std::sin(half)});
    }
    return out;
}

}  // namespace

SessionRecord generate_full_session(const SynthSpec& spec,
                                    const std::filesystem::path& out_dir) {
    spec.validate();
    std::filesystem::create_directories(out_dir);
    const double kStaticOhms = 700.0;

    // Strain: static rest head, then the exercise signal, scaled into ohms.
    StrainTruth truth = generate_strain(spec);
    GaussianRng head_rng(spec.seed ^ 0x6eadULL);
    TimeSeries strain;
    strain.unit = Unit::ohms;
    strain.nominal_rate = spec.strain_rate;
    std::size_t n_head = static_cast<std::size_t>(spec.static_duration * spec.strain_rate);
    for (std::size_t i = 0; i < n_head; ++i) {
        strain.t.push_back(static_cast<double>(i) / spec.strain_rate);
        strain.v.push_back(kStaticOhms *
                           (1.0 + spec.noise_sigma * head_rng.gauss()));
    }
    for (std::size_t i = 0; i < truth.series.size(); ++i) {
        strain.t.push_back(spec.static_duration + truth.series.t[i]);
        strain.v.push_back(kStaticOhms * (1.0 + truth.series.v[i]));
    }

    TimeSeries semg = generate_semg(spec);
    std::vector<QuaternionSample> quats = generate_shoulder_quats(spec);

    write_scalar_csv(out_dir / "strain.csv", strain);
    write_scalar_csv(out_dir / "semg.csv", semg);
    write_quat_csv(out_dir / "shoulder_quat.csv", quats);

    double t_s = spec.static_duration + spec.fatigue_onset;
    double baseline_t0 = spec.static_duration + spec.curl_period;
    double baseline_t1 =
        spec.static_duration + std::min(spec.curl_period + 8.0, spec.fatigue_onset);

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["subject_id"] = "synth-" + std::to_string(spec.seed);
    j["static_interval"] = {0.0, spec.static_duration};
    j["baseline_interval"] = {baseline_t0, baseline_t1};
    j["declared_fatigue_time"] = t_s;
    j["streams"]["strain"] = {{"path", "strain.csv"},
                              {"rate", spec.strain_rate},
                              {"unit", "ohms"}};
    j["streams"]["semg"] = {{"path", "semg.csv"}, {"rate", spec.semg_rate}};
    j["streams"]["shoulder_quat"] = {{"path", "shoulder_quat.csv"},
                                     {"rate", spec.kin_rate}};
    std::ofstream(out_dir / "manifest.json") << j.dump(2) << "\n";

    return load_session(out_dir / "manifest.json");
}

}  // namespace fatigue
