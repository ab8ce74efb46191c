#pragma once

#include <string>
#include <vector>

#include "kdi/units.hpp"

#include <json.hpp>

namespace kdi {

// Full run configuration, SI at the boundary with units embedded in the key
// names. Defaults reproduce the reference interference-pattern parameter set.
struct RunConfig {
    LaserConfig laser{};

    struct Wavepacket {
        double width_w_m = 3.0e-6;
        double mean_velocity_mps = 0.0;
        bool operator==(const Wavepacket&) const = default;
    } wavepacket;

    struct SequenceParams {
        double T_ns = 12.0;
        double T_prime_ns = 10.0;
        double T_doubleprime_ns = 40.0;
        double acceleration_mps2 = 1.0e10;
        bool operator==(const SequenceParams&) const = default;
    } sequence;

    struct Numerics {
        int kbar_points = 512;
        int ladder_max = 5;
        int spatial_points = 8192;
        double window_um = 0.0;  // half-width; 0 = auto from classical paths
        bool operator==(const Numerics&) const = default;
    } numerics;

    struct Output {
        std::string csv_path = "density.csv";
        std::string json_path = "summary.json";
        bool operator==(const Output&) const = default;
    } output;

    void validate() const;  // throws ConfigError naming the offending field
    std::vector<std::string> warnings() const;

    bool operator==(const RunConfig&) const;
};

// Flat TOML-style sections of key = value lines; '#' starts a comment.
// Unknown sections or keys are rejected.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace kdi
