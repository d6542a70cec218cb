#pragma once

#include <string>
#include <vector>

#include "malsim/config.hpp"
#include "malsim/phase.hpp"

namespace malsim {

/// In-memory artifacts of one command, written to disk by the CLI. Keeping the
/// byte production here makes end-to-end determinism testable at library level.
struct Artifact {
  std::string filename;
  std::string bytes;
};

std::vector<Artifact> streets_artifacts(const SimConfig& config, bool with_svg);
std::vector<Artifact> speed_artifacts(const SimConfig& config, int workers);
std::vector<Artifact> survival_artifacts(const SimConfig& config, int workers);

struct PhaseArtifacts {
  std::vector<Artifact> files;
  std::vector<PhasePoint> curve;
};
PhaseArtifacts phase_artifacts(const SimConfig& config, int workers);

std::vector<Artifact> snapshot_artifacts(const SimConfig& config);

/// SweepPlan/PhaseModel as configured (phase command); exposed for tests.
SweepPlan sweep_plan_from_config(const SimConfig& config, int workers);
PhaseModel phase_model_from_config(const SimConfig& config);

}  // namespace malsim
