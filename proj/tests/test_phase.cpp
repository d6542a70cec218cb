#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "malsim/phase.hpp"
#include "test_helpers.hpp"

using namespace malsim;

namespace {

PhaseModel desk_model(double lambda, double rho, bool markovian) {
  PhaseModel model;
  model.env = EnvironmentParams{20.0, 1.5, lambda, rho, 0.3};
  if (markovian)
    model.dynamics = DynamicsSpec{WaitingTimeModel::exponential(1.0),
                                  WaitingTimeModel::exponential(1.0)};
  else
    model.dynamics = DynamicsSpec{WaitingTimeModel::uniform_window(2.0 / 3.0, 2.0),
                                  WaitingTimeModel::uniform_window(2.0 / 3.0, 2.0)};
  return model;
}

SweepPlan desk_plan(std::vector<double> rho_grid, std::vector<double> control_grid,
                    ControlKind kind, double u) {
  SweepPlan plan;
  plan.rho_grid = std::move(rho_grid);
  plan.control = kind;
  plan.control_grid = std::move(control_grid);
  plan.replicas = ReplicaLayout{6, 3};
  plan.survival_radius = u;
  plan.threshold = 0.6;
  plan.time_cap = 1e4;
  plan.workers = 2;
  return plan;
}

}  // namespace

TEST_CASE("scan stops at the first crossing") {
  const std::vector<double> grid{0.1, 0.15, 0.2, 0.25};
  const std::map<double, double> fractions{{0.1, 0.2}, {0.15, 0.5}, {0.2, 0.7}, {0.25, 0.9}};
  int evaluations = 0;
  auto eval = [&](double control) {
    ++evaluations;
    return FractionResult{fractions.at(control), 10, 10,
                          static_cast<int>(10 * fractions.at(control))};
  };

  SUBCASE("from the grid start") {
    const PhasePoint p = scan_grid(grid, std::nullopt, 0.6, 0.5, eval);
    REQUIRE(p.critical_value.has_value());
    CHECK(*p.critical_value == 0.2);
    CHECK(evaluations == 3);
    CHECK(p.tested.size() == 3);
    for (std::size_t i = 0; i + 1 < p.tested.size(); ++i)
      CHECK(p.tested[i].result.fraction <= 0.6);
  }
  SUBCASE("warm start skips smaller grid values") {
    const PhasePoint p = scan_grid(grid, 0.15, 0.6, 0.5, eval);
    CHECK(p.tested.front().control == 0.15);
    CHECK(evaluations == 2);
    CHECK(*p.critical_value == 0.2);
    CHECK(p.warm_start_from == 0.15);
  }
  SUBCASE("grid exhausted without crossing") {
    auto low = [&](double) { return FractionResult{0.1, 10, 10, 1}; };
    const PhasePoint p = scan_grid(grid, std::nullopt, 0.6, 0.5, low);
    CHECK(!p.critical_value.has_value());
    CHECK(p.tested.size() == grid.size());
  }
}

TEST_CASE("warm-started sweeps stay within the evaluation budget") {
  // Stub sweep: the crossing index grows with rho, as in the real dynamics.
  std::vector<double> rho_grid{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> control_grid;
  for (int i = 0; i < 20; ++i) control_grid.push_back(0.25 * (i + 1));
  int evaluations = 0;

  std::optional<double> lower;
  std::vector<PhasePoint> curve;
  for (double rho : rho_grid) {
    auto eval = [&](double control) {
      ++evaluations;
      const double critical = 1.0 + 6.0 * rho;  // crossing moves up with rho
      return FractionResult{control > critical ? 0.9 : 0.1, 10, 10, 0};
    };
    PhasePoint p = scan_grid(control_grid, lower, 0.6, rho, eval);
    if (p.critical_value)
      lower = p.critical_value;
    else if (!p.tested.empty())
      lower = p.tested.back().control;
    curve.push_back(std::move(p));
  }

  CHECK(evaluations <= static_cast<int>(rho_grid.size() + control_grid.size()) + 4);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    REQUIRE(curve[i].critical_value.has_value());
    CHECK(*curve[i].critical_value <= *curve[i + 1].critical_value);
  }
}

TEST_CASE("plan validation") {
  SweepPlan plan = desk_plan({0.5}, {1.0, 2.0}, ControlKind::InfectionRate, 1.0);
  CHECK_NOTHROW(plan.validate());
  SweepPlan bad = plan;
  bad.control_grid = {2.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = plan;
  bad.threshold = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = plan;
  bad.rho_grid.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("control application") {
  const PhaseModel model = desk_model(2.5, 0.5, true);
  const DynamicsSpec spec = apply_control(model.dynamics, ControlKind::InfectionRate, 3.5);
  CHECK(spec.infection.rate == 3.5);
  CHECK(spec.patch == model.dynamics.patch);

  const PhaseModel nm = desk_model(2.5, 0.5, false);
  const DynamicsSpec patched = apply_control(nm.dynamics, ControlKind::PatchMax, 4.0);
  CHECK(patched.patch->high == 4.0);
  CHECK(patched.patch->low == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(apply_control(model.dynamics, ControlKind::PatchMax, 4.0),
                  std::invalid_argument);  // Markovian patch has no window
}

TEST_CASE("the SI limit survives and a zero infection rate never does") {
  const PhaseModel model = desk_model(2.5, 0.0, true);
  const SweepPlan plan = desk_plan({0.0, 0.5}, {0.0, 2.0}, ControlKind::InfectionRate, 1.0);

  const FractionResult si = survival_fraction(model, plan, 0.0, 0, 2.0, 11);
  CHECK(si.fraction == 1.0);
  CHECK(si.n_connected > 0);

  const FractionResult dead = survival_fraction(model, plan, 0.0, 0, 0.0, 11);
  CHECK(dead.fraction == 0.0);
}

TEST_CASE("sub-percolation parameters raise a diagnostic") {
  PhaseModel model = desk_model(0.02, 0.0, true);
  const SweepPlan plan = desk_plan({0.0}, {1.0}, ControlKind::InfectionRate, 1.0);
  CHECK_THROWS_AS(survival_fraction(model, plan, 0.0, 0, 1.0, 3), std::runtime_error);
}

TEST_CASE("find_critical is deterministic and respects the first-crossing rule") {
  const PhaseModel model = desk_model(2.5, 0.3, true);
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 * i);
  const SweepPlan plan = desk_plan({0.3}, grid, ControlKind::InfectionRate, 1.0);

  const PhasePoint a = find_critical(model, plan, 0.3, 0, std::nullopt, 99);
  const PhasePoint b = find_critical(model, plan, 0.3, 0, std::nullopt, 99);
  REQUIRE(a.tested.size() == b.tested.size());
  for (std::size_t i = 0; i < a.tested.size(); ++i) {
    CHECK(a.tested[i].control == b.tested[i].control);
    CHECK(a.tested[i].result.fraction == b.tested[i].result.fraction);
  }
  if (a.critical_value) {
    for (const TestedPoint& t : a.tested)
      if (t.control < *a.critical_value) CHECK(t.result.fraction <= plan.threshold);
    CHECK(a.tested.back().control == *a.critical_value);
  }
}

TEST_CASE("sweep curves are nondecreasing and reuse warm starts") {
  const PhaseModel model = desk_model(2.5, 0.0, true);
  std::vector<double> grid;
  for (int i = 0; i <= 14; ++i) grid.push_back(0.25 + 0.25 * i);
  SweepPlan plan = desk_plan({0.2, 0.6, 1.0}, grid, ControlKind::InfectionRate, 1.0);
  plan.replicas = ReplicaLayout{5, 2};

  const auto curve = sweep_curve(model, plan, 314159);
  REQUIRE(curve.size() == 3);
  std::size_t evaluations = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    evaluations += curve[i].tested.size();
    if (i > 0 && curve[i - 1].critical_value && curve[i].critical_value) {
      CHECK(*curve[i].critical_value >= *curve[i - 1].critical_value);
      CHECK(curve[i].warm_start_from == curve[i - 1].critical_value);
    }
  }
  CHECK(evaluations <= plan.rho_grid.size() + plan.control_grid.size() + 4);
}

TEST_CASE("slower patching cannot hurt the malware (non-Markovian)") {
  const PhaseModel model = desk_model(2.5, 0.5, false);
  SweepPlan plan = desk_plan({0.5}, {0.8, 2.5, 6.0}, ControlKind::PatchMax, 1.2);
  plan.replicas = ReplicaLayout{12, 8};

  std::vector<FractionResult> results;
  for (double g : plan.control_grid)
    results.push_back(survival_fraction(model, plan, 0.5, 0, g, 2718));
  for (std::size_t i = 0; i + 1 < results.size(); ++i) {
    const FractionResult& lo = results[i];
    const FractionResult& hi = results[i + 1];
    const double se = std::sqrt(std::max(lo.fraction * (1 - lo.fraction), 0.25 / lo.n_connected) /
                                lo.n_connected) +
                      std::sqrt(std::max(hi.fraction * (1 - hi.fraction), 0.25 / hi.n_connected) /
                                hi.n_connected);
    CHECK(hi.fraction >= lo.fraction - 2.0 * se);
  }
}
