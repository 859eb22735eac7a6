#include "pacpose/scene_spec_io.hpp"

#include <fstream>

#include "pacpose/error.hpp"
#include "pacpose/json_convert.hpp"

namespace pac {

using nlohmann::json;

namespace {

std::array<std::uint8_t, 3> color_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("scene spec", 0, "color must be a 3-element array");
  }
  return {j[0].get<std::uint8_t>(), j[1].get<std::uint8_t>(), j[2].get<std::uint8_t>()};
}

json color_to_json(const std::array<std::uint8_t, 3>& c) {
  return json::array({c[0], c[1], c[2]});
}

}  // namespace

synth::SceneSpec scene_spec_from_json(const json& j) {
  synth::SceneSpec spec;

  const json& js = require_key(j, "shape", "scene spec");
  const std::string shape_type = require_key(js, "type", "scene spec").get<std::string>();
  if (shape_type == "box") {
    spec.shape = synth::BoxShape{require_key(js, "w", "shape").get<double>(),
                                 require_key(js, "h", "shape").get<double>(),
                                 require_key(js, "d", "shape").get<double>()};
  } else if (shape_type == "cylinder") {
    spec.shape = synth::CylinderShape{require_key(js, "radius", "shape").get<double>(),
                                      require_key(js, "height", "shape").get<double>()};
  } else if (shape_type == "sphere") {
    spec.shape = synth::SphereShape{require_key(js, "radius", "shape").get<double>()};
  } else if (shape_type == "asym_box") {
    spec.shape = synth::AsymBoxShape{require_key(js, "w", "shape").get<double>(),
                                     require_key(js, "h", "shape").get<double>(),
                                     require_key(js, "d", "shape").get<double>()};
  } else {
    throw ParseError("scene spec", 0, "unknown shape type '" + shape_type + "'");
  }

  if (j.contains("texture")) {
    const json& jt = j["texture"];
    const std::string tex_type = require_key(jt, "type", "scene spec").get<std::string>();
    if (tex_type == "checker") {
      synth::CheckerTexture tex;
      tex.cell = jt.value("cell", tex.cell);
      if (jt.contains("color_a")) tex.color_a = color_from_json(jt["color_a"]);
      if (jt.contains("color_b")) tex.color_b = color_from_json(jt["color_b"]);
      spec.texture = tex;
    } else if (tex_type == "axis_gradient") {
      spec.texture = synth::AxisGradientTexture{};
    } else if (tex_type == "solid") {
      synth::SolidTexture tex;
      if (jt.contains("color")) tex.color = color_from_json(jt["color"]);
      spec.texture = tex;
    } else {
      throw ParseError("scene spec", 0, "unknown texture type '" + tex_type + "'");
    }
  }

  spec.object_pose = pose_from_json(require_key(j, "object_pose", "scene spec"));
  spec.camera = intrinsics_from_json(require_key(j, "camera", "scene spec"));
  spec.noise_sigma = j.value("noise_sigma", 0.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.validate();
  return spec;
}

json scene_spec_to_json(const synth::SceneSpec& spec) {
  json js = std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, synth::BoxShape>) {
          return json{{"type", "box"}, {"w", s.w}, {"h", s.h}, {"d", s.d}};
        } else if constexpr (std::is_same_v<T, synth::SphereShape>) {
          return json{{"type", "sphere"}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, synth::CylinderShape>) {
          return json{{"type", "cylinder"}, {"radius", s.radius}, {"height", s.height}};
        } else {
          return json{{"type", "asym_box"}, {"w", s.w}, {"h", s.h}, {"d", s.d}};
        }
      },
      spec.shape);

  json jt = std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, synth::CheckerTexture>) {
          return json{{"type", "checker"},
                      {"cell", t.cell},
                      {"color_a", color_to_json(t.color_a)},
                      {"color_b", color_to_json(t.color_b)}};
        } else if constexpr (std::is_same_v<T, synth::AxisGradientTexture>) {
          return json{{"type", "axis_gradient"}};
        } else {
          return json{{"type", "solid"}, {"color", color_to_json(t.color)}};
        }
      },
      spec.texture);

  return json{{"shape", js},
              {"texture", jt},
              {"object_pose", pose_to_json(spec.object_pose)},
              {"camera", intrinsics_to_json(spec.camera)},
              {"noise_sigma", spec.noise_sigma},
              {"seed", spec.seed}};
}

json scene_truth_to_json(const SceneTruth& truth) {
  json verts = json::array();
  for (const Eigen::Vector3d& v : truth.model.vertices) {
    verts.push_back(json::array({v.x(), v.y(), v.z()}));
  }
  return json{{"schema_version", 1},
              {"reference_pose", pose_to_json(truth.reference_pose)},
              {"query_pose", pose_to_json(truth.query_pose)},
              {"relative_pose", pose_to_json(truth.relative)},
              {"symmetry", symmetry_to_json(truth.symmetry)},
              {"model", json{{"diameter", truth.model.diameter}, {"vertices", verts}}}};
}

SceneTruth scene_truth_from_json(const json& j) {
  SceneTruth truth{pose_from_json(require_key(j, "reference_pose", "truth")),
                   pose_from_json(require_key(j, "query_pose", "truth")),
                   pose_from_json(require_key(j, "relative_pose", "truth")),
                   symmetry_from_json(require_key(j, "symmetry", "truth")),
                   ModelPoints{}};
  const json& jm = require_key(j, "model", "truth");
  std::vector<Eigen::Vector3d> verts;
  for (const json& jv : require_key(jm, "vertices", "truth")) {
    verts.emplace_back(jv[0].get<double>(), jv[1].get<double>(), jv[2].get<double>());
  }
  truth.model = ModelPoints::with_claimed_diameter(
      std::move(verts), require_key(jm, "diameter", "truth").get<double>());
  return truth;
}

void write_scene_truth(const std::filesystem::path& path, const SceneTruth& truth) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError(path.string(), 0, "cannot open file for writing");
  }
  out << scene_truth_to_json(truth).dump(2) << "\n";
}

SceneTruth load_scene_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  try {
    return scene_truth_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), e.byte, e.what());
  }
}

}  // namespace pac
