// Command-line front end: synthetic scene generation, single-pair pose
// estimation, and batch evaluation over a trial manifest.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "pacpose/bundle_io.hpp"
#include "pacpose/error.hpp"
#include "pacpose/hash.hpp"
#include "pacpose/json_convert.hpp"
#include "pacpose/pipeline.hpp"
#include "pacpose/report.hpp"
#include "pacpose/scene_spec_io.hpp"
#include "pacpose/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNoHypotheses = 3;

json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw pac::ParseError(path.string(), 0, "cannot open file");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw pac::ParseError(path.string(), e.byte, e.what());
  }
}

pac::RunConfig load_config(const std::string& path, int parallel_override,
                           long long seed_override) {
  pac::RunConfig cfg;
  if (!path.empty()) {
    cfg = pac::run_config_from_json(parse_json_file(path));
  }
  if (parallel_override >= 0) cfg.parallelism = parallel_override;
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  cfg.validate();
  return cfg;
}

void emit_report(const pac::RunReport& report, const std::string& out,
                 bool strip_timings) {
  const std::string text = pac::report_to_string(report, !strip_timings);
  if (out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) {
    throw pac::ParseError(out, 0, "cannot open file for writing");
  }
  file << text;
}

struct GenSceneArgs {
  std::string spec_path;
  std::string out_dir;
  long long seed_override = -1;
};

int cmd_gen_scene(const GenSceneArgs& args) {
  const json j = parse_json_file(args.spec_path);
  pac::synth::SceneSpec spec = pac::scene_spec_from_json(j);
  if (args.seed_override >= 0) {
    spec.seed = static_cast<std::uint64_t>(args.seed_override);
  }
  const pac::Pose relative =
      pac::pose_from_json(pac::require_key(j, "relative_pose", args.spec_path.c_str()));

  const pac::synth::ScenePair pair = pac::synth::make_pair(spec, relative);
  const fs::path out(args.out_dir);
  pac::write_bundle(out / "ref", pair.reference.observation, pair.reference.pose,
                    pair.reference.symmetry, spec.camera);
  pac::write_bundle(out / "query", pair.query.observation, std::nullopt,
                    pair.query.symmetry, spec.camera);
  pac::write_scene_truth(out / "truth.json",
                         pac::SceneTruth{pair.reference.pose, pair.query.pose,
                                         pair.relative, pair.reference.symmetry,
                                         pair.reference.model});
  std::cout << "wrote " << (out / "ref").string() << ", " << (out / "query").string()
            << ", " << (out / "truth.json").string() << "\n";
  return 0;
}

struct EstimateArgs {
  std::string ref_dir;
  std::string query_dir;
  std::string config_path;
  std::string truth_path;
  std::string out = "-";
  std::string name = "trial";
  int parallel_override = -1;
  long long seed_override = -1;
  bool strip_timings = false;
};

int cmd_estimate(const EstimateArgs& args) {
  const pac::RunConfig cfg =
      load_config(args.config_path, args.parallel_override, args.seed_override);
  const pac::SceneBundle ref = pac::load_bundle(args.ref_dir);
  const pac::SceneBundle query = pac::load_bundle(args.query_dir);

  std::optional<pac::TrialTruth> truth;
  if (!args.truth_path.empty()) {
    pac::SceneTruth st = pac::load_scene_truth(args.truth_path);
    truth = pac::TrialTruth{st.query_pose, std::move(st.model)};
  }

  pac::TrialResult trial = pac::estimate_pose(ref, query, cfg, args.name, truth);
  trial.ref_hash = pac::bundle_content_hash(args.ref_dir);
  trial.query_hash = pac::bundle_content_hash(args.query_dir);

  pac::RunReport report;
  report.config = cfg;
  report.trials.push_back(std::move(trial));
  report.aggregate = pac::compute_aggregate(report.trials);
  emit_report(report, args.out, args.strip_timings);
  return 0;
}

struct EvalArgs {
  std::string manifest_path;
  std::string config_path;
  std::string out = "-";
  int parallel_override = -1;
  long long seed_override = -1;
  bool strip_timings = false;
};

int cmd_eval(const EvalArgs& args) {
  const pac::RunConfig cfg =
      load_config(args.config_path, args.parallel_override, args.seed_override);
  const json manifest = parse_json_file(args.manifest_path);
  const fs::path base = fs::path(args.manifest_path).parent_path();

  pac::RunReport report;
  report.config = cfg;
  for (const json& jt : pac::require_key(manifest, "trials", args.manifest_path.c_str())) {
    pac::TrialResult trial;
    trial.name = jt.value("name", "trial" + std::to_string(report.trials.size()));
    try {
      const fs::path ref_dir =
          base / pac::require_key(jt, "ref", "manifest").get<std::string>();
      const fs::path query_dir =
          base / pac::require_key(jt, "query", "manifest").get<std::string>();
      std::optional<pac::TrialTruth> truth;
      if (jt.contains("truth")) {
        pac::SceneTruth st = pac::load_scene_truth(base / jt["truth"].get<std::string>());
        truth = pac::TrialTruth{st.query_pose, std::move(st.model)};
      }
      const pac::SceneBundle ref = pac::load_bundle(ref_dir);
      const pac::SceneBundle query = pac::load_bundle(query_dir);
      const std::string name = trial.name;
      trial = pac::estimate_pose(ref, query, cfg, name, truth);
      trial.ref_hash = pac::bundle_content_hash(ref_dir);
      trial.query_hash = pac::bundle_content_hash(query_dir);
    } catch (const std::exception& e) {
      trial.failed = true;
      trial.failure = e.what();
    }
    report.trials.push_back(std::move(trial));
  }
  report.aggregate = pac::compute_aggregate(report.trials);
  emit_report(report, args.out, args.strip_timings);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Project-and-compare 6D pose estimation on RGB-D scene bundles"};
  app.require_subcommand(1);

  GenSceneArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-scene", "Render a synthetic reference/query pair");
  gen->add_option("--spec", gen_args.spec_path, "Scene spec JSON")->required();
  gen->add_option("--out", gen_args.out_dir, "Output directory")->required();
  gen->add_option("--seed", gen_args.seed_override, "Override the spec seed");

  EstimateArgs est_args;
  CLI::App* est = app.add_subcommand("estimate", "Estimate the query pose for one pair");
  est->add_option("--ref", est_args.ref_dir, "Reference bundle directory")->required();
  est->add_option("--query", est_args.query_dir, "Query bundle directory")->required();
  est->add_option("--config", est_args.config_path, "Run config JSON");
  est->add_option("--truth", est_args.truth_path, "Ground truth JSON (adds error metrics)");
  est->add_option("--out", est_args.out, "Report path, - for stdout");
  est->add_option("--name", est_args.name, "Trial name in the report");
  est->add_option("--parallel", est_args.parallel_override, "Worker threads, 0 = auto");
  est->add_option("--seed", est_args.seed_override, "Seed recorded in the config");
  est->add_flag("--strip-timings", est_args.strip_timings,
                "Omit wall-time fields for byte-stable output");

  EvalArgs eval_args;
  CLI::App* ev = app.add_subcommand("eval", "Run a manifest of trials and aggregate");
  ev->add_option("--manifest", eval_args.manifest_path, "Trials manifest JSON")->required();
  ev->add_option("--config", eval_args.config_path, "Run config JSON");
  ev->add_option("--out", eval_args.out, "Report path, - for stdout");
  ev->add_option("--parallel", eval_args.parallel_override, "Worker threads, 0 = auto");
  ev->add_option("--seed", eval_args.seed_override, "Seed recorded in the config");
  ev->add_flag("--strip-timings", eval_args.strip_timings,
               "Omit wall-time fields for byte-stable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen_scene(gen_args);
    if (est->parsed()) return cmd_estimate(est_args);
    if (ev->parsed()) return cmd_eval(eval_args);
  } catch (const pac::NoObservation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoHypotheses;
  } catch (const pac::EmptyHypothesisSet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoHypotheses;
  } catch (const pac::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pac::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
