#include "malsim/runner.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "malsim/streets.hpp"

namespace malsim {

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const auto threads = static_cast<std::size_t>(std::max(workers, 1));
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(std::min(threads, n));
  for (std::size_t t = 0; t < std::min(threads, n); ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t environment_label(std::size_t point_index, std::size_t env_index) {
  return (static_cast<std::uint64_t>(point_index) << 32) | static_cast<std::uint64_t>(env_index);
}

Environment build_environment(const EnvironmentParams& params, std::uint64_t master_seed,
                              std::uint64_t env_label, bool keep_streets) {
  auto streets = std::make_shared<const StreetSystem>(generate_streets(
      params.gamma, Window(params.half_width),
      derive_seed(master_seed, Stage::Streets, env_label, 0)));

  RandomStream ordinary_rng(derive_seed(master_seed, Stage::Devices, env_label, 0));
  RandomStream knight_rng(derive_seed(master_seed, Stage::Knights, env_label, 0));
  DeviceSet devices =
      build_device_set(streets, params.lambda, params.rho, ordinary_rng, knight_rng);

  Environment env;
  env.graph = std::make_shared<const GilbertGraph>(build_graph(devices, params.radius));
  if (keep_streets)
    env.streets = streets;
  else
    devices.streets.reset();
  env.devices = std::move(devices);
  return env;
}

std::vector<RunSummary> run_replicas(const ReplicaSetup& setup, std::size_t point_index) {
  if (setup.replicas.environments < 1 || setup.replicas.dynamics_per_environment < 1)
    throw std::invalid_argument("run_replicas: replica counts must be at least 1");
  if (setup.record_radii.empty())
    throw std::invalid_argument("run_replicas: no record radii");

  const auto n_env = static_cast<std::size_t>(setup.replicas.environments);
  const auto per_env = static_cast<std::size_t>(setup.replicas.dynamics_per_environment);
  const double u = setup.record_radii.back();

  std::vector<RunSummary> results(n_env * per_env);
  parallel_for(n_env, setup.workers, [&](std::size_t e) {
    const std::uint64_t label = environment_label(point_index, e);
    EnvironmentParams params = setup.env;
    const Environment env = build_environment(params, setup.master_seed, label);
    RunOptions options;
    options.record_radii = setup.record_radii;
    for (std::size_t d = 0; d < per_env; ++d) {
      RandomStream rng(derive_seed(setup.master_seed, Stage::Dynamics, label, d));
      const EpidemicRun run = run_epidemic(*env.graph, env.devices, setup.dynamics, u,
                                           setup.time_cap, rng, options);
      results[e * per_env + d] = RunSummary::of(run);
    }
  });
  return results;
}

}  // namespace malsim
