#pragma once

#include <string>

#include "hm/counterexample.hpp"
#include "hm/projector.hpp"

namespace hm {

// 17 significant digits; reproducible round trip
std::string fmt17(double v);

std::string map_to_json(const RationalMap& m);
RationalMap map_from_json(const std::string& text);
std::string alpha_to_json(const ParamVec& a);
ParamVec alpha_from_json(const std::string& text);

// x, y, u1, u2, u3 rows on a uniform grid, for external plotting
std::string field_samples_csv(const SphereField& u, double half_width, int n_per_side);

std::string report_to_json(const CounterexampleReport& rep, const std::string& config_json);
std::string projection_to_json(const ProjectionResult& res, const std::string& config_json);
std::string gram_to_csv(const GramMatrix& g);
std::string gram_meta_to_json(const GramMatrix& g, const std::string& config_json);

} // namespace hm
