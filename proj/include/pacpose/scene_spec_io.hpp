#pragma once

#include <filesystem>
#include <json.hpp>

#include "pacpose/synth.hpp"

namespace pac {

// JSON encoding of synthetic scene specs, the input of scene generation.
// Shapes: {"type":"box"|"cylinder"|"sphere"|"asym_box", dims...};
// textures: {"type":"checker"|"axis_gradient"|"solid", params...}.
synth::SceneSpec scene_spec_from_json(const nlohmann::json& j);
nlohmann::json scene_spec_to_json(const synth::SceneSpec& spec);

// Ground truth companion written next to generated bundle pairs.
struct SceneTruth {
  Pose reference_pose;
  Pose query_pose;
  Pose relative;
  SymmetryPrior symmetry;
  ModelPoints model;
};

nlohmann::json scene_truth_to_json(const SceneTruth& truth);
SceneTruth scene_truth_from_json(const nlohmann::json& j);

void write_scene_truth(const std::filesystem::path& path, const SceneTruth& truth);
SceneTruth load_scene_truth(const std::filesystem::path& path);

}  // namespace pac
