#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hanspec/acs.hpp"
#include "hanspec/baselines.hpp"
#include "hanspec/errors.hpp"

using namespace hanspec;

namespace {

NanLayout layout_of(std::vector<std::vector<std::size_t>> members) { return NanLayout{std::move(members)}; }

// Two HGWs in one NAN, two channels. HGW 0 has both channels (b = 16) and
// interferes with HGW 1 on channel 0; HGW 1 only has channel 0.
SpectrumModel score_fixture() {
  return SpectrumModelBuilder(2, 2)
      .channel(0, 0, 16.0)
      .channel(0, 1, 16.0)
      .channel(1, 0, 4.0)
      .conflict(0, 1, 0)
      .build();
}

} // namespace

TEST_CASE("AcsParams validation") {
  AcsParams p;
  CHECK_NOTHROW(validate(p));
  p.rho = 1.0;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p = {};
  p.g_prime = 0.0;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p = {};
  p.n_ants = 0;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p = {};
  p.iterations = 0;
  CHECK_THROWS_AS(validate(p), ConfigError);
}

TEST_CASE("PheromoneTensor starts at one and averages recorded slices") {
  const NanLayout layout = layout_of({{0, 1}, {2}});
  PheromoneTensor t(layout, 2);
  CHECK(t.nan_count() == 2);
  CHECK(t.hgw_count(0) == 2);
  CHECK(t.at(1, 0, 1) == 1.0);
  CHECK_THROWS_AS(t.mean(), ContractError);
  t.record_iteration();
  t.at(1, 0, 1) = 3.0;
  t.record_iteration();
  const auto mean = t.mean();
  CHECK(mean[2 * 2 + 1] == 2.0);
  CHECK(mean[0] == 1.0);
}

TEST_CASE("hgw_score") {
  const SpectrumModel model = score_fixture();
  const NanLayout layout = layout_of({{0, 1}});
  const PheromoneTensor t(layout, 2);
  AcsParams p;

  // 16 / (2 * 2 * 16) * 2 available channels * (1 + 1 interferer)
  CHECK(hgw_score(0, 0, 0, t, model, p) == 1.0);
  CHECK(hgw_score(0, 1, 1, t, model, p) == 0.0); // l = 0

  p.interference_smoothing = false;
  CHECK(hgw_score(0, 0, 0, t, model, p) == 0.5);
  CHECK(hgw_score(0, 0, 1, t, model, p) == 0.0); // no interferer on channel 1
}

TEST_CASE("hgw_score: isolated users under both interference modes") {
  // Two non-interfering SUs, one channel, b = 16 and 4, one NAN.
  const SpectrumModel model = SpectrumModelBuilder(2, 1).channel(0, 0, 16.0).channel(1, 0, 4.0).build();
  const NanLayout layout = layout_of({{0, 1}});
  const PheromoneTensor t(layout, 1);
  AcsParams p;
  p.interference_smoothing = false;
  CHECK(hgw_score(0, 0, 0, t, model, p) == 0.0);
  CHECK(hgw_score(0, 1, 0, t, model, p) == 0.0);
  p.interference_smoothing = true;
  // T * b / (M * N_i * b_max) * sum_l L * 1
  CHECK(hgw_score(0, 0, 0, t, model, p) == 16.0 / (1 * 2 * 16.0));
  CHECK(hgw_score(0, 1, 0, t, model, p) == 4.0 / (1 * 2 * 16.0));
}

TEST_CASE("interference factor counts interferers in the HGW's own NAN") {
  const SpectrumModel model =
      SpectrumModelBuilder(3, 1).channel(0, 0, 16.0).channel(1, 0, 16.0).channel(2, 0, 16.0)
          .conflict(0, 1, 0).conflict(0, 2, 0).build();
  AcsParams p;
  p.interference_smoothing = false;
  const NanLayout together = layout_of({{0, 1, 2}});
  const NanLayout split = layout_of({{0, 1}, {2}});
  CHECK(hgw_score(0, 0, 0, PheromoneTensor(together, 1), model, p) == 16.0 / (3 * 16.0) * 2.0);
  CHECK(hgw_score(0, 0, 0, PheromoneTensor(split, 1), model, p) == 16.0 / (2 * 16.0) * 1.0);
}

TEST_CASE("nan_probabilities") {
  // NAN 0 = {0, 1}, NAN 1 = {2}; one channel, no conflicts, b_max = 16.
  const SpectrumModel model =
      SpectrumModelBuilder(3, 1).channel(0, 0, 16.0).channel(1, 0, 16.0).channel(2, 0, 8.0).build();
  const NanLayout layout = layout_of({{0, 1}, {2}});
  PheromoneTensor t(layout, 1);
  t.at(0, 0, 0) = 2.0;
  const AcsParams p;
  REQUIRE(hgw_score(0, 0, 0, t, model, p) == 1.0);
  REQUIRE(hgw_score(0, 1, 0, t, model, p) == 0.5);
  REQUIRE(hgw_score(1, 0, 0, t, model, p) == 0.5);

  const auto probs = nan_probabilities(0, t, model, admit_all(), p);
  CHECK(probs == std::vector<double>{0.75, 0.25});

  const AdmissionPolicy block_all = [](std::size_t, std::size_t, std::size_t) { return false; };
  CHECK(nan_probabilities(0, t, model, block_all, p) == std::vector<double>{0.0, 0.0});

  const NanLayout one = layout_of({{0, 1, 2}});
  CHECK(nan_probabilities(0, PheromoneTensor(one, 1), model, admit_all(), p) ==
        std::vector<double>{1.0});

  // An ant that already served both HGWs of NAN 0 only sees NAN 1.
  AntState ant(3, 1);
  ant.take(0, 0, model);
  ant.take(1, 0, model);
  CHECK(nan_probabilities(0, t, model, admit_all(), p, &ant) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("select with explicit draws") {
  const std::vector<double> skewed{0.2, 0.8};
  CHECK(select_with_draws(skewed, 0.9, 0.95, 0.0) == 1);
  const std::vector<double> even{0.5, 0.5};
  CHECK(select_with_draws(even, 0.9, 0.5, 0.25) == 0);
  CHECK(select_with_draws(even, 0.9, 0.5, 0.75) == 1);
  const std::vector<double> tie{0.7, 0.7};
  CHECK(select_with_draws(tie, 0.9, 0.95, 0.0) == 0);
  // Zero-mass entries are never picked by the wheel.
  const std::vector<double> gap{0.0, 0.0, 3.0};
  CHECK(select_with_draws(gap, 0.9, 0.1, 1e-12) == 2);
  const std::vector<double> none{0.0, 0.0};
  CHECK_THROWS_AS(select_with_draws(none, 0.9, 0.5, 0.5), NoCandidateError);
  Rng rng(1);
  CHECK_THROWS_AS(select(none, 0.9, rng), NoCandidateError);
}

TEST_CASE("select degenerates to roulette or argmax at the threshold extremes") {
  const std::vector<double> p{0.1, 0.6, 0.3};
  const int draws = 10000;
  Rng rng(77);
  std::vector<int> counts(3, 0);
  for (int k = 0; k < draws; ++k) {
    ++counts[select(p, 1.0 - 1e-12, rng)];
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const double freq = counts[k] / double(draws);
    const double sigma = std::sqrt(p[k] * (1 - p[k]) / draws);
    CHECK(std::abs(freq - p[k]) < 5 * sigma);
  }
  std::fill(counts.begin(), counts.end(), 0);
  for (int k = 0; k < draws; ++k) {
    ++counts[select(p, 1e-12, rng)];
  }
  CHECK(counts[1] == draws);
}

TEST_CASE("deposit_amount") {
  AcsParams p;
  const SpectrumModel both = SpectrumModelBuilder(1, 2).channel(0, 0, 16.0).channel(0, 1, 16.0).build();
  CHECK(deposit_amount(0, 0, both, p) == 1.0);

  // b = 4 with b_max 16 from another user; one available channel of two.
  const SpectrumModel sparse =
      SpectrumModelBuilder(2, 2).channel(0, 0, 4.0).channel(1, 0, 16.0).channel(1, 1, 16.0).build();
  CHECK(deposit_amount(0, 0, sparse, p) == 0.0625);
  CHECK(deposit_amount(0, 1, sparse, p) == 0.0);

  p.normalize_deposit = false;
  CHECK(deposit_amount(0, 0, both, p) == 16.0);

  const SpectrumModel none = SpectrumModelBuilder(1, 2).build();
  CHECK(deposit_amount(0, 0, none, p) == 0.0);
}

TEST_CASE("pheromone updates") {
  // NAN 0 = {0, 1} both with b = b_max on channel 0 only... plus NAN 1 = {2}.
  const SpectrumModel model = SpectrumModelBuilder(3, 2)
                                  .channel(0, 0, 16.0)
                                  .channel(0, 1, 16.0)
                                  .channel(1, 0, 16.0)
                                  .channel(1, 1, 16.0)
                                  .channel(2, 0, 16.0)
                                  .channel(2, 1, 16.0)
                                  .build();
  const NanLayout layout = layout_of({{0, 1}, {2}});
  const AcsParams p;

  SUBCASE("semi-local update touches the whole selected NAN only") {
    PheromoneTensor t(layout, 2);
    semi_local_update(t, 0, 0, model, p);
    CHECK(t.at(0, 0, 0) == 2.0);
    CHECK(t.at(0, 1, 0) == 2.0);
    CHECK(t.at(0, 0, 1) == 1.0);
    CHECK(t.at(1, 0, 0) == 1.0);
  }
  SUBCASE("local update touches a single entry") {
    PheromoneTensor t(layout, 2);
    local_update(t, 0, 1, 1, model, p);
    CHECK(t.at(0, 1, 1) == 2.0);
    CHECK(t.at(0, 0, 1) == 1.0);
    CHECK(t.at(0, 1, 0) == 1.0);
    CHECK(t.at(1, 0, 1) == 1.0);
  }
  SUBCASE("zero deposit leaves unavailable entries alone") {
    const SpectrumModel gap =
        SpectrumModelBuilder(3, 2).channel(0, 0, 16.0).channel(2, 0, 16.0).build();
    PheromoneTensor t(layout, 2);
    semi_local_update(t, 0, 1, gap, p);
    local_update(t, 0, 1, 0, gap, p);
    CHECK(t.at(0, 0, 1) == 1.0);
    CHECK(t.at(0, 1, 0) == 1.0);
  }
  SUBCASE("evaporation") {
    PheromoneTensor t(layout, 2);
    t.at(0, 1, 0) = 2.0;
    global_evaporation(t, p);
    CHECK(t.at(0, 0, 0) == 0.9);
    global_evaporation(t, p);
    CHECK(t.at(0, 1, 0) == 2.0 * 0.9 * 0.9);
    CHECK(t.at(0, 1, 0) == doctest::Approx(1.62));
  }
  SUBCASE("evaporation alone is geometric decay and stays positive") {
    PheromoneTensor t(layout, 2);
    double expected = 1.0;
    for (int k = 0; k < 400; ++k) {
      global_evaporation(t, p);
      expected *= p.rho;
      for (double v : t.current()) {
        REQUIRE(v == expected);
        REQUIRE(v > 0.0);
      }
    }
  }
}

TEST_CASE("AntState visits each HGW once") {
  const SpectrumModel model = score_fixture();
  AntState ant(2, 2);
  CHECK(ant.can_take(0, 0));
  ant.take(0, 1, model);
  CHECK_FALSE(ant.can_take(0, 0));
  CHECK_FALSE(ant.can_take(0, 1));
  CHECK(ant.can_take(1, 0)); // 0 and 1 only clash on channel 0
  ant.take(1, 0, model);
  CHECK(ant.solution.get(0, 1));
  CHECK(ant.solution.get(1, 0));
  CHECK(is_feasible(ant.solution, model));
}

TEST_CASE("final_selection") {
  SUBCASE("argmax of mean pheromone") {
    const SpectrumModel model = SpectrumModelBuilder(1, 2).channel(0, 0, 1.0).channel(0, 1, 1.0).build();
    const std::vector<double> mean{0.3, 0.9};
    const Assignment a = final_selection(mean, model);
    CHECK(a.get(0, 1));
    CHECK_FALSE(a.get(0, 0));
  }
  SUBCASE("conflict resolved in favour of the stronger pheromone") {
    const SpectrumModel model = SpectrumModelBuilder(2, 2)
                                    .channel(0, 0, 1.0)
                                    .channel(0, 1, 1.0)
                                    .channel(1, 0, 1.0)
                                    .channel(1, 1, 1.0)
                                    .conflict(0, 1, 0)
                                    .build();
    const std::vector<double> mean{0.8, 0.2, 0.9, 0.5};
    const Assignment a = final_selection(mean, model);
    CHECK(a.get(1, 0));
    CHECK(a.get(0, 1));
    CHECK(is_feasible(a, model));
  }
  SUBCASE("no available channel means starved") {
    const SpectrumModel model = SpectrumModelBuilder(2, 2).channel(1, 1, 1.0).build();
    const Assignment a = final_selection(std::vector<double>{5.0, 5.0, 1.0, 1.0}, model);
    CHECK_FALSE(a.channel_of(0).has_value());
    CHECK(a.get(1, 1));
  }
  SUBCASE("dimension mismatch") {
    const SpectrumModel model = SpectrumModelBuilder(1, 2).build();
    CHECK_THROWS_AS(final_selection(std::vector<double>{1.0}, model), ContractError);
  }
}

TEST_CASE("convergence helpers") {
  ConvergenceTrace one;
  one.points.push_back({1, 5.0, 5.0, 0.0});
  normalize_costs(one);
  CHECK(one.points[0].normalized_cost == 0.0);
  CHECK(converged_iteration(one) == 1);

  ConvergenceTrace t;
  for (std::size_t xi = 1; xi <= 30; ++xi) {
    const double u = xi < 5 ? double(xi) : 5.0;
    t.points.push_back({xi, u, u, 0.0});
  }
  normalize_costs(t);
  CHECK(t.points.front().normalized_cost == 1.0);
  CHECK(t.points[1].normalized_cost == 0.75);
  CHECK(t.points.back().normalized_cost == 0.0);
  CHECK(converged_iteration(t) == 5);

  // Improvement inside the final window: not confirmed.
  t.points.back().best_utility = 6.0;
  CHECK(converged_iteration(t) == 30);
}

TEST_CASE("allocate: single user, single channel") {
  const SpectrumModel model = SpectrumModelBuilder(1, 1).channel(0, 0, 16.0).build();
  AcsParams p;
  p.iterations = 5;
  const AcsResult r = allocate(model, singleton_layout(1), p);
  CHECK(r.assignment.get(0, 0));
  CHECK(evaluate(r.assignment, model, UtilityKind::msr) == 16.0);
  CHECK(r.utility == 16.0);
}

TEST_CASE("allocate: degenerate model gives the empty assignment") {
  const SpectrumModel model = SpectrumModelBuilder(3, 2).build();
  AcsParams p;
  p.iterations = 3;
  const AcsResult r = allocate(model, layout_of({{0, 1, 2}}), p);
  CHECK(r.assignment == Assignment(3, 2));
  CHECK(r.trace.points.size() == 3);
}

TEST_CASE("allocate: layout must cover the model") {
  const SpectrumModel model = SpectrumModelBuilder(3, 1).build();
  CHECK_THROWS_AS(allocate(model, layout_of({{0, 1}}), AcsParams{}), ContractError);
}

TEST_CASE("allocate: feasibility, shape, trace and determinism on random scenarios") {
  Rng pick(5);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    ScenarioConfig cfg;
    cfg.channels = 1 + pick.below(5);
    cfg.n_nans = 1 + pick.below(3);
    cfg.sus_per_nan = 1 + pick.below(8);
    cfg.n_pus = pick.below(6);
    const Scenario scn = generate_scenario(cfg, seed);
    const SpectrumModel model = build_model(scn);
    AcsParams p;
    p.iterations = 15;
    p.n_ants = 1 + pick.below(6);
    p.seed = seed;
    p.trace_utility = static_cast<UtilityKind>(seed % 3);
    const AcsResult r = allocate(model, nan_layout(scn), p);
    REQUIRE(is_feasible(r.assignment, model));
    for (std::size_t n = 0; n < model.user_count(); ++n) {
      REQUIRE(r.assignment.channels_held(n) <= 1);
    }
    REQUIRE(r.trace.points.size() == 15);
    for (std::size_t k = 1; k < r.trace.points.size(); ++k) {
      REQUIRE(r.trace.points[k].best_utility >= r.trace.points[k - 1].best_utility);
      REQUIRE(r.trace.points[k].incumbent_utility >= r.trace.points[k - 1].incumbent_utility);
    }
    for (const auto& pt : r.trace.points) {
      REQUIRE(pt.normalized_cost >= 0.0);
      REQUIRE(pt.normalized_cost <= 1.0);
      REQUIRE(pt.incumbent_utility >= pt.best_utility);
    }
    REQUIRE(r.utility == evaluate(r.assignment, model, p.trace_utility));
    REQUIRE(r.utility == r.trace.points.back().incumbent_utility);

    const AcsResult again = allocate(model, nan_layout(scn), p);
    REQUIRE(again.assignment == r.assignment);
    for (std::size_t k = 0; k < r.trace.points.size(); ++k) {
      REQUIRE(again.trace.points[k].best_utility == r.trace.points[k].best_utility);
    }
  }
}

TEST_CASE("allocate: admission policy") {
  const SpectrumModel model = SpectrumModelBuilder(2, 1).channel(0, 0, 16.0).channel(1, 0, 9.0)
                                  .conflict(0, 1, 0).build();
  AcsParams p;
  p.iterations = 4;
  const AdmissionPolicy block_all = [](std::size_t, std::size_t, std::size_t) { return false; };
  CHECK(allocate(model, layout_of({{0, 1}}), p, block_all).assignment == Assignment(2, 1));

  // Only HGW 1 admitted: it gets the channel despite the smaller reward.
  const AdmissionPolicy only_second = [](std::size_t, std::size_t hgw, std::size_t) {
    return hgw == 1;
  };
  const AcsResult r = allocate(model, layout_of({{0, 1}}), p, only_second);
  CHECK(r.assignment.get(1, 0));
  CHECK_FALSE(r.assignment.get(0, 0));
}

TEST_CASE("allocate: tiny instances against the exact optimum") {
  int within_90 = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng shape(1000 + s);
    ScenarioConfig cfg;
    cfg.side = 6.0;
    cfg.n_nans = 1 + shape.below(2);
    cfg.sus_per_nan = 1 + shape.below(2);
    cfg.channels = 1 + shape.below(3);
    cfg.n_pus = shape.below(4);
    const Scenario scn = generate_scenario(cfg, 5000 + s);
    const SpectrumModel model = build_model(scn);
    AcsParams p;
    p.iterations = 50;
    p.seed = s;
    const double got = evaluate(allocate(model, nan_layout(scn), p).assignment, model, UtilityKind::msr);
    const double best = brute_force_optimal(model, UtilityKind::msr).utility;
    within_90 += got >= 0.9 * best ? 1 : 0;
  }
  CHECK(within_90 >= 90);
}
