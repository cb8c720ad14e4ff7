#pragma once

#include "preper/archimedean.hpp"
#include "preper/boundengine.hpp"
#include "preper/census.hpp"
#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"

#include "json.hpp"

#include <string>

namespace preper {

using json = nlohmann::json;

// Non-finite doubles are written as the strings "inf", "-inf", "nan".
json number_json(double x);
double number_from_json(const json& j);

json to_json(const LocalHeight& h);
json to_json(const CanonicalHeight& h);
json to_json(const HeightConstants& hc);
json to_json(const DeltaBound& d);
json to_json(const NonArchDelta& d);
json to_json(const ArchDeltaReport& r);
json to_json(const BoundReport& r);
json to_json(const IntBoundDetail& d);
json to_json(const CensusReport& r);
json to_json(const VerifyReport& r);

DeltaBound delta_bound_from_json(const json& j);
BoundReport bound_report_from_json(const json& j);

std::string census_csv(const CensusReport& r);
std::string deltas_csv(const std::vector<DeltaBound>& ds);

}  // namespace preper
