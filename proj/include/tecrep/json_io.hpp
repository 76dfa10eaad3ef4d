#pragma once

#include "json.hpp"
#include "tecrep/chain.hpp"
#include "tecrep/sweep.hpp"
#include "tecrep/tec_oracle.hpp"

namespace tecrep {

nlohmann::json to_json(const CodeParams& code);
nlohmann::json to_json(const ChannelParams& channel);
nlohmann::json to_json(const StationTable& table);
StationTable station_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RateResult& result);
nlohmann::json to_json(const OracleRun& run);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const RegionMap& map);

}  // namespace tecrep
