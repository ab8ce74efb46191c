#include "kdi/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kdi/errors.hpp"

namespace kdi {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v != std::floor(v)) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

std::string parse_string(const std::string& value) {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        return value.substr(1, value.size() - 2);
    }
    return value;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
    static const std::map<std::string, Setter> table = {
        {"laser.wavelength_m",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.laser.wavelength = parse_number(k, v); }},
        {"laser.intensity_1_w_per_m2",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.laser.intensity_1 = parse_number(k, v); }},
        {"laser.intensity_2_w_per_m2",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.laser.intensity_2 = parse_number(k, v); }},
        {"laser.phase_1_rad",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.laser.phase_1 = parse_number(k, v); }},
        {"laser.phase_2_rad",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.laser.phase_2 = parse_number(k, v); }},
        {"laser.polarization",
         [](RunConfig& c, const std::string&, const std::string& v) { c.laser.polarization = parse_string(v); }},
        {"wavepacket.width_w_m",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.wavepacket.width_w_m = parse_number(k, v); }},
        {"wavepacket.mean_velocity_mps",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.wavepacket.mean_velocity_mps = parse_number(k, v); }},
        {"sequence.T_ns",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.sequence.T_ns = parse_number(k, v); }},
        {"sequence.T_prime_ns",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.sequence.T_prime_ns = parse_number(k, v); }},
        {"sequence.T_doubleprime_ns",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.sequence.T_doubleprime_ns = parse_number(k, v); }},
        {"sequence.acceleration_mps2",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.sequence.acceleration_mps2 = parse_number(k, v); }},
        {"numerics.kbar_points",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.numerics.kbar_points = parse_int(k, v); }},
        {"numerics.ladder_max",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.numerics.ladder_max = parse_int(k, v); }},
        {"numerics.spatial_points",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.numerics.spatial_points = parse_int(k, v); }},
        {"numerics.window_um",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.numerics.window_um = parse_number(k, v); }},
        {"output.csv_path",
         [](RunConfig& c, const std::string&, const std::string& v) { c.output.csv_path = parse_string(v); }},
        {"output.json_path",
         [](RunConfig& c, const std::string&, const std::string& v) { c.output.json_path = parse_string(v); }},
    };
    return table;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full_key = section.empty() ? key : section + "." + key;

        const auto it = key_table().find(full_key);
        if (it == key_table().end()) {
            throw ConfigError("unknown config key '" + full_key + "'");
        }
        it->second(cfg, full_key, value);
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void RunConfig::validate() const {
    laser.validate();
    if (!(wavepacket.width_w_m > 0.0)) {
        throw ConfigError("wavepacket.width_w_m must be > 0");
    }
    if (sequence.T_ns < 0.0) throw ConfigError("sequence.T_ns must be >= 0");
    if (sequence.T_prime_ns < 0.0) throw ConfigError("sequence.T_prime_ns must be >= 0");
    if (sequence.T_doubleprime_ns < 0.0) {
        throw ConfigError("sequence.T_doubleprime_ns must be >= 0");
    }
    if (numerics.kbar_points < 2) throw ConfigError("numerics.kbar_points must be >= 2");
    if (numerics.ladder_max < 2) throw ConfigError("numerics.ladder_max must be >= 2");
    if (numerics.spatial_points < 2) throw ConfigError("numerics.spatial_points must be >= 2");
    if (numerics.window_um < 0.0) throw ConfigError("numerics.window_um must be >= 0");
    if (output.csv_path.empty()) throw ConfigError("output.csv_path must not be empty");
    if (output.json_path.empty()) throw ConfigError("output.json_path must not be empty");
}

std::vector<std::string> RunConfig::warnings() const {
    std::vector<std::string> out;
    const double margin = weak_coupling_margin(
        std::max(laser.intensity_1, laser.intensity_2), laser.optical_frequency(),
        laser.mean_wavenumber());
    if (margin >= 0.1) {
        std::ostringstream s;
        s << "weak-coupling margin " << margin
          << " >= 0.1: the two-level reduction degrades at this intensity";
        out.push_back(s.str());
    }
    // Large transverse velocities detune the counter-propagating fields; the
    // solver ignores that shift, so flag the regime.
    const double total_time = (sequence.T_prime_ns + sequence.T_ns +
                               sequence.T_doubleprime_ns) * 1e-9;
    const double velocity_scale = sequence.acceleration_mps2 * total_time;
    if (velocity_scale > 500.0) {
        std::ostringstream s;
        s << "acceleration * (T' + T + T'') = " << velocity_scale
          << " m/s > 500 m/s: Doppler detuning of the pulses is not modeled";
        out.push_back(s.str());
    }
    return out;
}

bool RunConfig::operator==(const RunConfig& other) const {
    return laser.wavelength == other.laser.wavelength &&
           laser.intensity_1 == other.laser.intensity_1 &&
           laser.intensity_2 == other.laser.intensity_2 &&
           laser.phase_1 == other.laser.phase_1 &&
           laser.phase_2 == other.laser.phase_2 &&
           laser.polarization == other.laser.polarization &&
           wavepacket == other.wavepacket && sequence == other.sequence &&
           numerics == other.numerics && output == other.output;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["laser"] = {{"wavelength_m", cfg.laser.wavelength},
                  {"intensity_1_w_per_m2", cfg.laser.intensity_1},
                  {"intensity_2_w_per_m2", cfg.laser.intensity_2},
                  {"phase_1_rad", cfg.laser.phase_1},
                  {"phase_2_rad", cfg.laser.phase_2},
                  {"polarization", cfg.laser.polarization}};
    j["wavepacket"] = {{"width_w_m", cfg.wavepacket.width_w_m},
                       {"mean_velocity_mps", cfg.wavepacket.mean_velocity_mps}};
    j["sequence"] = {{"T_ns", cfg.sequence.T_ns},
                     {"T_prime_ns", cfg.sequence.T_prime_ns},
                     {"T_doubleprime_ns", cfg.sequence.T_doubleprime_ns},
                     {"acceleration_mps2", cfg.sequence.acceleration_mps2}};
    j["numerics"] = {{"kbar_points", cfg.numerics.kbar_points},
                     {"ladder_max", cfg.numerics.ladder_max},
                     {"spatial_points", cfg.numerics.spatial_points},
                     {"window_um", cfg.numerics.window_um}};
    j["output"] = {{"csv_path", cfg.output.csv_path},
                   {"json_path", cfg.output.json_path}};
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.laser.wavelength = j.at("laser").at("wavelength_m").get<double>();
    cfg.laser.intensity_1 = j.at("laser").at("intensity_1_w_per_m2").get<double>();
    cfg.laser.intensity_2 = j.at("laser").at("intensity_2_w_per_m2").get<double>();
    cfg.laser.phase_1 = j.at("laser").at("phase_1_rad").get<double>();
    cfg.laser.phase_2 = j.at("laser").at("phase_2_rad").get<double>();
    cfg.laser.polarization = j.at("laser").at("polarization").get<std::string>();
    cfg.wavepacket.width_w_m = j.at("wavepacket").at("width_w_m").get<double>();
    cfg.wavepacket.mean_velocity_mps =
        j.at("wavepacket").at("mean_velocity_mps").get<double>();
    cfg.sequence.T_ns = j.at("sequence").at("T_ns").get<double>();
    cfg.sequence.T_prime_ns = j.at("sequence").at("T_prime_ns").get<double>();
    cfg.sequence.T_doubleprime_ns =
        j.at("sequence").at("T_doubleprime_ns").get<double>();
    cfg.sequence.acceleration_mps2 =
        j.at("sequence").at("acceleration_mps2").get<double>();
    cfg.numerics.kbar_points = j.at("numerics").at("kbar_points").get<int>();
    cfg.numerics.ladder_max = j.at("numerics").at("ladder_max").get<int>();
    cfg.numerics.spatial_points = j.at("numerics").at("spatial_points").get<int>();
    cfg.numerics.window_um = j.at("numerics").at("window_um").get<double>();
    cfg.output.csv_path = j.at("output").at("csv_path").get<std::string>();
    cfg.output.json_path = j.at("output").at("json_path").get<std::string>();
    cfg.validate();
    return cfg;
}

}  // namespace kdi
