#pragma once

#include <filesystem>
#include <optional>

#include "pacpose/geometry.hpp"
#include "pacpose/observation.hpp"

namespace pac {

// On-disk scene layout: rgb.ppm (P6), depth.pgm (P5 16-bit big-endian
// millimeters, 0 = invalid), mask.pgm (P5 8-bit, 255 = object), optional
// prior.pgm (P5 8-bit, value/255 = weight), meta.json (intrinsics, optional
// pose, symmetry prior, units "mm-depth/m-pose").
struct SceneBundle {
  Observation observation;
  std::optional<Pose> pose;
  SymmetryPrior symmetry;
  Intrinsics intrinsics;
};

void write_bundle(const std::filesystem::path& dir, const Observation& obs,
                  const std::optional<Pose>& pose, const SymmetryPrior& symmetry,
                  const Intrinsics& K);

// Validates dimensions across files; valid = (mask == 255 and depth > 0);
// xyz recovered by back-projection. Throws ParseError on malformed input.
SceneBundle load_bundle(const std::filesystem::path& dir);

}  // namespace pac
