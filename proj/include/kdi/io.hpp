#pragma once

#include <string>
#include <vector>

#include "kdi/config.hpp"
#include "kdi/run.hpp"

namespace kdi {

// 17 significant digits, enough to round-trip a double exactly.
std::string format_float(double value);

std::string density_csv(const SpatialDensity& density);
std::string fringe_csv(const std::vector<FringePoint>& points);
std::string splitter_csv(const std::vector<SplitterPoint>& points,
                         const std::string& param_name);

nlohmann::ordered_json summary_json(const RunConfig& cfg, const RunResult& result);
nlohmann::ordered_json paths_json(const RunConfig& cfg,
                                  const std::vector<ClassicalPath>& paths,
                                  const std::vector<BeamPrediction>& beams);

void write_file(const std::string& path, const std::string& contents);

}  // namespace kdi
