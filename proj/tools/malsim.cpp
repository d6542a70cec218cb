#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "malsim/experiments.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::string out_dir = "out";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
};

malsim::SimConfig load(const GlobalArgs& args) {
  malsim::SimConfig config = malsim::load_config(args.config_path);
  if (args.seed_override) config.master_seed = *args.seed_override;
  return config;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
}

void write_artifacts(const GlobalArgs& args, const std::vector<malsim::Artifact>& artifacts,
                     const malsim::SimConfig& config, const std::string& command) {
  fs::create_directories(args.out_dir);
  for (const malsim::Artifact& a : artifacts) {
    write_file(fs::path(args.out_dir) / a.filename, a.bytes);
    std::cout << "wrote " << (fs::path(args.out_dir) / a.filename).string() << "\n";
  }
  write_file(fs::path(args.out_dir) / "run_meta.json", malsim::run_metadata(config, command));
}

void add_globals(CLI::App* cmd, GlobalArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (JSON)")->required();
  cmd->add_option("--seed", args.seed_override, "override the master seed");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--workers", args.workers, "replica worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Malware propagation on street-system D2D networks"};
  app.require_subcommand(1);
  GlobalArgs args;

  bool streets_svg = false;
  CLI::App* streets = app.add_subcommand("streets", "generate a street system");
  add_globals(streets, args);
  streets->add_flag("--svg", streets_svg, "also emit an SVG rendering");

  CLI::App* speed = app.add_subcommand("speed", "propagation-speed estimates");
  add_globals(speed, args);
  CLI::App* survival = app.add_subcommand("survival", "conditioned survival probabilities");
  add_globals(survival, args);
  CLI::App* phase = app.add_subcommand("phase", "critical-curve sweep");
  add_globals(phase, args);
  CLI::App* snap = app.add_subcommand("snapshot", "SVG snapshots at stop radii");
  add_globals(snap, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const malsim::SimConfig config = load(args);
    if (streets->parsed()) {
      write_artifacts(args, malsim::streets_artifacts(config, streets_svg), config, "streets");
    } else if (speed->parsed()) {
      write_artifacts(args, malsim::speed_artifacts(config, args.workers), config, "speed");
    } else if (survival->parsed()) {
      write_artifacts(args, malsim::survival_artifacts(config, args.workers), config, "survival");
    } else if (phase->parsed()) {
      // A marker file flags interrupted sweeps next to any partial output.
      fs::create_directories(args.out_dir);
      const fs::path marker = fs::path(args.out_dir) / "INCOMPLETE";
      write_file(marker, "phase sweep in progress\n");
      const malsim::PhaseArtifacts result = malsim::phase_artifacts(config, args.workers);
      write_artifacts(args, result.files, config, "phase");
      fs::remove(marker);
    } else if (snap->parsed()) {
      write_artifacts(args, malsim::snapshot_artifacts(config), config, "snapshot");
    }
  } catch (const malsim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
