#include "kdi/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kdi/errors.hpp"

namespace kdi {

std::string format_float(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string density_csv(const SpatialDensity& density) {
    std::string out = "z_m,density_per_m\n";
    for (std::size_t i = 0; i < density.positions.size(); ++i) {
        out += format_float(density.positions[i]);
        out += ',';
        out += format_float(density.density[i]);
        out += '\n';
    }
    return out;
}

std::string fringe_csv(const std::vector<FringePoint>& points) {
    std::string out = "param,pop_I,pop_V,delta_phi_rad,model_I,model_V\n";
    for (const FringePoint& p : points) {
        out += format_float(p.param);
        out += ',';
        out += format_float(p.pop_I);
        out += ',';
        out += format_float(p.pop_V);
        out += ',';
        out += format_float(p.delta_phi);
        out += ',';
        out += format_float(p.model_I);
        out += ',';
        out += format_float(p.model_V);
        out += '\n';
    }
    return out;
}

std::string splitter_csv(const std::vector<SplitterPoint>& points,
                         const std::string& param_name) {
    std::string out = param_name + ",p_transfer_numeric,p_transfer_two_level\n";
    for (const SplitterPoint& p : points) {
        out += format_float(p.param);
        out += ',';
        out += format_float(p.p_numeric);
        out += ',';
        out += format_float(p.p_two_level);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json summary_json(const RunConfig& cfg, const RunResult& result) {
    nlohmann::ordered_json j;
    j["config"] = config_to_json(cfg);
    j["derived"] = {
        {"omega_rec_rad_per_s", result.setup.omega_rec},
        {"g1g2_rad_per_s", result.setup.g1g2},
        {"pulse_duration_s", result.setup.pulse_duration},
        {"delta_phi_prediction_rad", result.delta_phi_prediction},
        {"window_min_m", result.setup.window_min},
        {"window_max_m", result.setup.window_max},
    };
    nlohmann::ordered_json beams = nlohmann::ordered_json::array();
    for (const BeamReport& b : result.beams) {
        beams.push_back({{"label", b.label},
                         {"predicted_position_m", b.predicted_position},
                         {"measured_position_m", b.measured_position},
                         {"population", b.population},
                         {"width_m", b.width}});
    }
    j["beams"] = beams;
    j["norm_drift"] = result.norm_drift;
    return j;
}

nlohmann::ordered_json paths_json(const RunConfig& cfg,
                                  const std::vector<ClassicalPath>& paths,
                                  const std::vector<BeamPrediction>& beams) {
    nlohmann::ordered_json j;
    j["config"] = config_to_json(cfg);
    nlohmann::ordered_json jpaths = nlohmann::ordered_json::array();
    for (const ClassicalPath& p : paths) {
        jpaths.push_back({{"beam_label", p.beam_label},
                          {"kick_pattern", p.kick_pattern},
                          {"final_position_m", p.final_position},
                          {"final_momentum_kg_mps", p.final_momentum},
                          {"amplitude_weight_re", p.amplitude_weight.real()},
                          {"amplitude_weight_im", p.amplitude_weight.imag()}});
    }
    j["paths"] = jpaths;
    nlohmann::ordered_json jbeams = nlohmann::ordered_json::array();
    for (const BeamPrediction& b : beams) {
        jbeams.push_back({{"label", b.label},
                          {"position_m", b.position},
                          {"momentum_kg_mps", b.momentum},
                          {"path_count", b.path_count}});
    }
    j["beams"] = jbeams;
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << contents;
}

}  // namespace kdi
