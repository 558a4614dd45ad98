#pragma once

#include <vector>

#include "json.hpp"
#include "sbls/likeproj.hpp"
#include "sbls/oracle.hpp"
#include "sbls/solvers.hpp"
#include "sbls/stationarity.hpp"

namespace sbls {

/// JSON views of results. Index lists are converted to 1-based.
nlohmann::json vector_to_json(const Vec& v);
nlohmann::json point_to_json(const Point& z);
nlohmann::json indices_to_json(const std::vector<int>& zero_based);
nlohmann::json to_json(const StationarityReport& report);
nlohmann::json to_json(const ProjectionResult& result);
nlohmann::json to_json(const SolveTrace& trace);
nlohmann::json to_json(const BruteResult& result);

}  // namespace sbls
