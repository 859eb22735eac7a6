#pragma once

#include <json.hpp>

#include "pacpose/geometry.hpp"
#include "pacpose/observation.hpp"

namespace pac {

// JSON encodings shared by bundle metadata, configs, and reports. Rotations
// serialize as 9 row-major numbers; {"axis_angle": {axis, angle_deg}} is also
// accepted on input.
nlohmann::json pose_to_json(const Pose& pose);
Pose pose_from_json(const nlohmann::json& j);

nlohmann::json intrinsics_to_json(const Intrinsics& K);
Intrinsics intrinsics_from_json(const nlohmann::json& j);

nlohmann::json symmetry_to_json(const SymmetryPrior& prior);
SymmetryPrior symmetry_from_json(const nlohmann::json& j);

// Required-key lookup that names the missing key in the error.
const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                  const char* context);

}  // namespace pac
