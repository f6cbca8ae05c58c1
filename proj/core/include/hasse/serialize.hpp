#pragma once

#include <nlohmann/json.hpp>

#include "hasse/localsolve.hpp"

namespace hasse {

nlohmann::json to_json(const LocalCertificate& c);
LocalCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CurveCount& c);

nlohmann::json to_json(const RealPoint& rp);
RealPoint real_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LocalSweep& s);
LocalSweep local_sweep_from_json(const nlohmann::json& j);

}  // namespace hasse
