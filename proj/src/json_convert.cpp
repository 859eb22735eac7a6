#include "pacpose/json_convert.hpp"

#include <cmath>
#include <string>

#include "pacpose/error.hpp"

namespace pac {

using nlohmann::json;

const json& require_key(const json& j, const char* key, const char* context) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(context, 0, std::string("missing key '") + key + "'");
  }
  return *it;
}

namespace {

Eigen::Vector3d vec3_from_json(const json& j, const char* context) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(context, 0, "expected a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Eigen::Vector3d& v) {
  return json::array({v.x(), v.y(), v.z()});
}

}  // namespace

json pose_to_json(const Pose& pose) {
  const Eigen::Matrix3d& m = pose.rotation.matrix();
  json rot = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rot.push_back(m(r, c));
  }
  return json{{"rotation", rot}, {"translation", vec3_to_json(pose.translation)}};
}

Pose pose_from_json(const json& j) {
  Pose pose;
  if (j.contains("axis_angle")) {
    const json& aa = j["axis_angle"];
    const Eigen::Vector3d axis = vec3_from_json(require_key(aa, "axis", "pose"), "pose");
    const double deg = require_key(aa, "angle_deg", "pose").get<double>();
    pose.rotation = Rotation::from_axis_angle(axis, deg * M_PI / 180.0);
  } else {
    const json& rot = require_key(j, "rotation", "pose");
    if (!rot.is_array() || rot.size() != 9) {
      throw ParseError("pose", 0, "rotation must be 9 row-major numbers");
    }
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m(r, c) = rot[3 * r + c].get<double>();
    }
    pose.rotation = Rotation::from_matrix(m);
  }
  if (j.contains("translation")) {
    pose.translation = vec3_from_json(j["translation"], "pose");
  }
  return pose;
}

json intrinsics_to_json(const Intrinsics& K) {
  return json{{"fx", K.fx}, {"fy", K.fy}, {"cx", K.cx},
              {"cy", K.cy}, {"width", K.width}, {"height", K.height}};
}

Intrinsics intrinsics_from_json(const json& j) {
  Intrinsics K;
  K.fx = require_key(j, "fx", "intrinsics").get<double>();
  K.fy = require_key(j, "fy", "intrinsics").get<double>();
  K.cx = require_key(j, "cx", "intrinsics").get<double>();
  K.cy = require_key(j, "cy", "intrinsics").get<double>();
  K.width = require_key(j, "width", "intrinsics").get<int>();
  K.height = require_key(j, "height", "intrinsics").get<int>();
  K.validate();
  return K;
}

json symmetry_to_json(const SymmetryPrior& prior) {
  const char* axis = "none";
  switch (prior.plane_axis) {
    case SymmetryAxis::X: axis = "x"; break;
    case SymmetryAxis::Y: axis = "y"; break;
    case SymmetryAxis::Z: axis = "z"; break;
    case SymmetryAxis::None: axis = "none"; break;
  }
  return json{{"axis", axis}, {"offset", prior.plane_offset}, {"diameter", prior.diameter}};
}

SymmetryPrior symmetry_from_json(const json& j) {
  SymmetryPrior prior;
  const std::string axis = require_key(j, "axis", "symmetry").get<std::string>();
  if (axis == "x") {
    prior.plane_axis = SymmetryAxis::X;
  } else if (axis == "y") {
    prior.plane_axis = SymmetryAxis::Y;
  } else if (axis == "z") {
    prior.plane_axis = SymmetryAxis::Z;
  } else if (axis == "none") {
    prior.plane_axis = SymmetryAxis::None;
  } else {
    throw ParseError("symmetry", 0, "axis must be one of x, y, z, none");
  }
  prior.plane_offset = j.value("offset", 0.0);
  prior.diameter = require_key(j, "diameter", "symmetry").get<double>();
  if (!(prior.diameter > 0.0)) {
    throw ParseError("symmetry", 0, "diameter must be positive");
  }
  return prior;
}

}  // namespace pac
