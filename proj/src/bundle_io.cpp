#include "pacpose/bundle_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "pacpose/error.hpp"
#include "pacpose/json_convert.hpp"
#include "pacpose/netpbm.hpp"

namespace pac {

using nlohmann::json;

namespace {

constexpr const char* kUnits = "mm-depth/m-pose";

}  // namespace

void write_bundle(const std::filesystem::path& dir, const Observation& obs,
                  const std::optional<Pose>& pose, const SymmetryPrior& symmetry,
                  const Intrinsics& K) {
  validate_observation(obs, K);
  std::filesystem::create_directories(dir);

  const std::size_t n = obs.pixel_count();
  RgbImage8 rgb{obs.width, obs.height, {}};
  rgb.pixels.resize(n * 3);
  GrayImage16 depth{obs.width, obs.height, {}};
  depth.pixels.assign(n, 0);
  GrayImage8 mask{obs.width, obs.height, {}};
  mask.pixels.assign(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    rgb.pixels[3 * i] = obs.rgb[i][0];
    rgb.pixels[3 * i + 1] = obs.rgb[i][1];
    rgb.pixels[3 * i + 2] = obs.rgb[i][2];
    if (obs.valid[i]) {
      const long mm = std::lround(obs.xyz[i].z() * 1000.0);
      // A valid pixel must not quantize to the invalid sentinel.
      depth.pixels[i] = static_cast<std::uint16_t>(std::clamp(mm, 1L, 65535L));
      mask.pixels[i] = 255;
    }
  }

  write_ppm8(dir / "rgb.ppm", rgb);
  write_pgm16(dir / "depth.pgm", depth);
  write_pgm8(dir / "mask.pgm", mask);

  if (obs.has_prior()) {
    GrayImage8 prior{obs.width, obs.height, {}};
    prior.pixels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      prior.pixels[i] = static_cast<std::uint8_t>(
          std::clamp(std::lround(obs.prior[i] * 255.0), 0L, 255L));
    }
    write_pgm8(dir / "prior.pgm", prior);
  }

  json meta{{"schema_version", 1},
            {"units", kUnits},
            {"intrinsics", intrinsics_to_json(K)},
            {"symmetry", symmetry_to_json(symmetry)}};
  if (pose) {
    meta["pose"] = pose_to_json(*pose);
  }
  std::ofstream out(dir / "meta.json");
  if (!out) {
    throw ParseError((dir / "meta.json").string(), 0, "cannot open file for writing");
  }
  out << meta.dump(2) << "\n";
}

SceneBundle load_bundle(const std::filesystem::path& dir) {
  const std::filesystem::path meta_path = dir / "meta.json";
  std::ifstream meta_in(meta_path);
  if (!meta_in) {
    throw ParseError(meta_path.string(), 0, "cannot open file");
  }
  json meta;
  try {
    meta = json::parse(meta_in);
  } catch (const json::parse_error& e) {
    throw ParseError(meta_path.string(), e.byte, e.what());
  }

  SceneBundle bundle;
  bundle.intrinsics = intrinsics_from_json(
      require_key(meta, "intrinsics", meta_path.string().c_str()));
  bundle.symmetry =
      symmetry_from_json(require_key(meta, "symmetry", meta_path.string().c_str()));
  if (meta.contains("pose")) {
    bundle.pose = pose_from_json(meta["pose"]);
  }
  const std::string units =
      require_key(meta, "units", meta_path.string().c_str()).get<std::string>();
  if (units != kUnits) {
    throw ParseError(meta_path.string(), 0, "unsupported units '" + units + "'");
  }

  const RgbImage8 rgb = read_ppm8(dir / "rgb.ppm");
  const GrayImage16 depth = read_pgm16(dir / "depth.pgm");
  const GrayImage8 mask = read_pgm8(dir / "mask.pgm");

  if (depth.width != rgb.width || depth.height != rgb.height ||
      mask.width != rgb.width || mask.height != rgb.height) {
    throw ParseError((dir / "depth.pgm").string(), 0, "image dimensions disagree");
  }
  if (rgb.width != bundle.intrinsics.width || rgb.height != bundle.intrinsics.height) {
    throw ParseError(meta_path.string(), 0, "intrinsics dimensions disagree with images");
  }

  std::optional<GrayImage8> prior;
  if (std::filesystem::exists(dir / "prior.pgm")) {
    prior = read_pgm8(dir / "prior.pgm");
    if (prior->width != rgb.width || prior->height != rgb.height) {
      throw ParseError((dir / "prior.pgm").string(), 0, "image dimensions disagree");
    }
  }

  Observation obs = Observation::create(rgb.width, rgb.height);
  const Intrinsics& K = bundle.intrinsics;
  for (int v = 0; v < obs.height; ++v) {
    for (int u = 0; u < obs.width; ++u) {
      const std::size_t i = obs.index(u, v);
      obs.rgb[i] = {rgb.pixels[3 * i], rgb.pixels[3 * i + 1], rgb.pixels[3 * i + 2]};
      const std::uint16_t mm = depth.pixels[i];
      if (mask.pixels[i] == 255 && mm > 0) {
        obs.xyz[i] = backproject(mm / 1000.0, u, v, K);
        obs.valid[i] = 1;
      }
    }
  }
  if (prior) {
    obs.prior.resize(obs.pixel_count());
    for (std::size_t i = 0; i < obs.pixel_count(); ++i) {
      obs.prior[i] = prior->pixels[i] / 255.0;
    }
  }
  bundle.observation = std::move(obs);
  return bundle;
}

}  // namespace pac
