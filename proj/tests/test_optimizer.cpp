#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tangle/ghz_state.hpp"
#include "tangle/optimizer.hpp"
#include "tangle/oracle.hpp"

using namespace tangle;

namespace {

const HamiltonianParams r2{2.0, 1.0, 1.0};

HamiltonianParams random_params(std::mt19937_64& rng) {
  const double gy = (uniform_unit(rng) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.2, 3.0);
  return {uniform(rng, -5.0, 5.0), gy, 1.0};
}

GHZState random_interior(std::mt19937_64& rng) {
  // away from p in {0,1} and p = 1/2, where the optimal phase degenerates
  double p = uniform(rng, 0.02, 0.98);
  while (std::abs(p - 0.5) < 1e-3) p = uniform(rng, 0.02, 0.98);
  return GHZState(p, uniform(rng, 0.0, two_pi));
}

}  // namespace

TEST_CASE("optimal_phase branches") {
  // phi above pi/4 takes branch II = arctan r + pi
  const OptimalPhase hi = optimal_phase(phi_of(GHZState(0.8, 0.0)), r2);
  CHECK(hi.branch == 2);
  CHECK(hi.varphi == doctest::Approx(std::atan(2.0) + pi).epsilon(1e-12));
  CHECK(!hi.phi_boundary);
  CHECK(!hi.zero_ratio);

  // phi below pi/4 takes branch I = arctan r
  const OptimalPhase lo = optimal_phase(phi_of(GHZState(0.2, 0.0)), r2);
  CHECK(lo.branch == 1);
  CHECK(lo.varphi == doctest::Approx(std::atan(2.0)).epsilon(1e-12));

  // r = 0: flagged, phase defaults to the arctan closure
  const OptimalPhase z = optimal_phase(pi / 8.0, HamiltonianParams{0.0, 1.0, 1.0});
  CHECK(z.zero_ratio);
  CHECK(z.varphi == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  // boundaries of the population angle are flagged but served
  CHECK(optimal_phase(0.0, r2).phi_boundary);
  CHECK(optimal_phase(pi / 2.0, r2).phi_boundary);

  // the balanced angle has no rate to optimize: stationary phase applies
  CHECK_THROWS_AS(optimal_phase(pi / 4.0, r2), std::domain_error);
  CHECK_THROWS_AS(optimal_phase(-0.1, r2), std::invalid_argument);
  CHECK_THROWS_AS(optimal_phase(1.7, r2), std::invalid_argument);
}

TEST_CASE("rotate_to_optimal") {
  const GHZState b = rotate_to_optimal(GHZState(0.8, 1.2), r2);
  CHECK(b.p == 0.8);
  CHECK(b.varphi == doctest::Approx(4.2487413713838835).epsilon(1e-12));

  // an already optimal state is a fixed point
  const GHZState d = rotate_to_optimal(GHZState(0.2, std::atan(2.0)), r2);
  CHECK(d.varphi == doctest::Approx(std::atan(2.0)).epsilon(1e-12));

  CHECK(rotate_to_optimal(GHZState(0.2, two_pi - 1.2), r2).varphi ==
        doctest::Approx(std::atan(2.0)).epsilon(1e-12));
}

TEST_CASE("rotation maximizes the initial rate over all phase shifts") {
  std::mt19937_64 rng(127);
  for (int i = 0; i < 200; ++i) {
    const GHZState s = random_interior(rng);
    const HamiltonianParams h = random_params(rng);
    const double best = rate_initial(rotate_to_optimal(s, h), h);
    for (int k = 0; k < 72; ++k) {
      const GHZState alt = apply_local_op(s, LocalOp::phase_shift(k * two_pi / 72.0));
      CHECK(rate_initial(alt, h) <= best + 1e-10);
    }
  }
}

TEST_CASE("t_prime_max") {
  CHECK(t_prime_max(pi / 8.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(t_prime_max(3.0 * pi / 8.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(t_prime_max(pi / 4.0)) < 1e-12);
  CHECK(t_prime_max(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t_prime_max(pi / 2.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("flip_decision cases") {
  // raises a negative rate but cannot make it positive
  const FlipDecision f1 = flip_decision(GHZState(0.8, 1.2), r2);
  CHECK(f1.useful);
  CHECK(f1.reason == FlipDecision::Reason::cond2);
  CHECK(f1.gamma0_before == doctest::Approx(-3.0029375795656668).epsilon(1e-12));
  CHECK(f1.gamma0_flip == doctest::Approx(-2.0254670804087107).epsilon(1e-10));
  CHECK(std::string(to_string(f1.reason)) == "cond2");

  // already at the optimal phase: nothing to gain
  const FlipDecision f2 = flip_decision(make_state(pi / 8.0, std::atan(2.0)), r2);
  CHECK(!f2.useful);
  CHECK(f2.reason == FlipDecision::Reason::not_useful);

  // sign-changing flip met by the first condition
  const FlipDecision f3 = flip_decision(make_state(3.0 * pi / 8.0, 0.0), r2);
  CHECK(f3.useful);
  CHECK(f3.reason == FlipDecision::Reason::cond_signo);
  CHECK(f3.gamma0_before < 0.0);
  CHECK(f3.gamma0_flip > 0.0);
  CHECK(f3.gamma0_flip == doctest::Approx(-f3.gamma0_before).epsilon(1e-12));
}

TEST_CASE("flip_decision agrees with the direct comparison") {
  std::mt19937_64 rng(131);
  for (int i = 0; i < 2000; ++i) {
    const GHZState s = random_ghz(rng);
    const HamiltonianParams h = random_params(rng);
    const FlipDecision f = flip_decision(s, h);
    CHECK(f.gamma0_before == doctest::Approx(rate_initial(s, h)).epsilon(1e-12).scale(1.0));
    CHECK(f.gamma0_flip ==
          doctest::Approx(rate_initial(apply_local_op(s, LocalOp::flip()), h)).epsilon(1e-10).scale(1.0));
    if (std::abs(f.gamma0_flip - f.gamma0_before) > 1e-9)
      CHECK(f.useful == (f.gamma0_flip > f.gamma0_before));
  }
}

TEST_CASE("optimization_paths reference route") {
  const PathReport pr = optimization_paths(GHZState(0.8, 1.2), r2);
  CHECK(pr.a.p == 0.8);
  CHECK(pr.b.p == 0.8);
  CHECK(pr.b.varphi == doctest::Approx(4.2487413713838835).epsilon(1e-12));
  CHECK(pr.c.p == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(pr.c.varphi == doctest::Approx(two_pi - 1.2).epsilon(1e-12));
  CHECK(pr.d.p == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(pr.d.varphi == doctest::Approx(1.1071487177940904).epsilon(1e-12));
  CHECK(pr.tau == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(!pr.degenerate);

  // both routes land on the same maximal rate
  CHECK(pr.gamma0_b == doctest::Approx(3.0159289474462008).epsilon(1e-12));
  CHECK(pr.gamma0_b == doctest::Approx(pr.gamma0_d).epsilon(1e-12));
  CHECK(pr.gamma0_c == doctest::Approx(-2.0254670804087107).epsilon(1e-10));

  CHECK_THROWS_AS(optimization_paths(GHZState(0.5, 1.0), r2), std::domain_error);
  CHECK(optimization_paths(GHZState(1.0, 0.3), r2).degenerate);
}

TEST_CASE("path equivalence on random states") {
  std::mt19937_64 rng(137);
  for (int i = 0; i < 300; ++i) {
    const GHZState s = random_interior(rng);
    const HamiltonianParams h = random_params(rng);
    const PathReport pr = optimization_paths(s, h);
    CHECK(std::abs(pr.gamma0_b - pr.gamma0_d) < 1e-10);
    CHECK(std::abs(tangle_of(pr.b) - tangle_of(pr.d)) < 1e-12);
    CHECK(pr.gamma0_b >= pr.gamma0_a - 1e-10);
    CHECK(pr.gamma0_b >= pr.gamma0_c - 1e-10);
  }
}

TEST_CASE("optimization_report bookkeeping") {
  const OptimizationReport rep = optimization_report(GHZState(0.8, 1.2), r2);
  CHECK(rep.gamma0_before == doctest::Approx(-3.0029375795656668).epsilon(1e-12));
  CHECK(rep.gamma0_after == doctest::Approx(3.0159289474462008).epsilon(1e-12));
  CHECK(rep.t_max_before == doctest::Approx(0.7945072664207841).epsilon(1e-10));
  CHECK(rep.t_max_after == doctest::Approx(0.20483276469913347).epsilon(1e-10));
  CHECK(rep.ratio == doctest::Approx(rep.t_max_after / rep.t_max_before).epsilon(1e-12));

  std::mt19937_64 rng(139);
  std::vector<double> ratio_neg, ratio_pos;
  for (int i = 0; i < 500; ++i) {
    const GHZState s = random_interior(rng);
    const HamiltonianParams h = random_params(rng);
    const OptimizationReport r = optimization_report(s, h);
    CHECK(r.gamma0_after >= r.gamma0_before - 1e-10);
    CHECK(r.t_max_after <= r.t_max_before + 1e-10);
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio <= 1.0 + 1e-12);
    (r.gamma0_before < 0.0 ? ratio_neg : ratio_pos).push_back(r.ratio);
  }
  // states starting against the flow gain more from the rotation
  const auto mean = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
  };
  REQUIRE(ratio_neg.size() > 50);
  REQUIRE(ratio_pos.size() > 50);
  CHECK(mean(ratio_neg) < mean(ratio_pos));
}
