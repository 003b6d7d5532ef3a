#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "normball/errors.hpp"
#include "normball/oracle.hpp"
#include "normball/rng.hpp"
#include "normball/single_ball.hpp"
#include "test_support.hpp"

using namespace normball;
using nbtest::linf_diff;

namespace {

// Brute-force check for the l1 threshold: scan theta over a fine grid and
// return the value whose survivor mass is closest to tau.
double scan_l1_threshold(const std::vector<double>& mags, double tau) {
  const double hi = *std::max_element(mags.begin(), mags.end());
  double best_theta = 0.0;
  double best_gap = 1e300;
  const int steps = 2000000;
  for (int k = 0; k <= steps; ++k) {
    const double theta = hi * k / steps;
    double mass = 0.0;
    for (double m : mags) mass += std::max(m - theta, 0.0);
    if (std::abs(mass - tau) < best_gap) {
      best_gap = std::abs(mass - tau);
      best_theta = theta;
    }
  }
  return best_theta;
}

}  // namespace

TEST_CASE("l1 projection: thresholded example") {
  const GroupedVector c({3.0, 1.0}, {2});
  const SingleBallResult res = project_l1(c, 2.0);
  CHECK(res.threshold == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.x.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(res.x.values[1] == doctest::Approx(0.0));
  CHECK(res.active_count == 1);

  const double scanned = scan_l1_threshold({3.0, 1.0}, 2.0);
  CHECK(res.threshold == doctest::Approx(scanned).epsilon(1e-5));
}

TEST_CASE("l1 projection: feasible input, symmetry, zero radius") {
  const SingleBallResult feasible =
      project_l1(GroupedVector({0.5, 0.5}, {2}), 2.0);
  CHECK(feasible.threshold == 0.0);
  CHECK(feasible.x.values[0] == 0.5);

  const SingleBallResult sym =
      project_l1(GroupedVector({1.0, 1.0, 1.0, 1.0}, {4}), 2.0);
  for (double v : sym.x.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

  const SingleBallResult zero = project_l1(GroupedVector({3.0, -1.0}, {2}), 0.0);
  CHECK(zero.x.values[0] == 0.0);
  CHECK(zero.x.values[1] == 0.0);
  CHECK(zero.threshold == 3.0);

  CHECK_THROWS_AS(project_l1(GroupedVector({1.0}, {1}), -0.5),
                  invalid_radius_error);
}

TEST_CASE("l1 projection keeps signs") {
  const SingleBallResult res = project_l1(GroupedVector({-3.0, 1.0}, {2}), 2.0);
  CHECK(res.x.values[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(res.x.values[1] == doctest::Approx(0.0));
}

TEST_CASE("l1,2 projection: group soft-threshold examples") {
  const SingleBallResult two_groups =
      project_l12(GroupedVector({3.0, 4.0, 0.0, 0.0}, {2, 2}), 2.5);
  CHECK(two_groups.x.values[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(two_groups.x.values[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(two_groups.x.values[2] == 0.0);
  CHECK(two_groups.x.values[3] == 0.0);
  CHECK(two_groups.threshold == doctest::Approx(2.5).epsilon(1e-12));

  const SingleBallResult single =
      project_l12(GroupedVector({3.0, 4.0}, {2}), 1.0);
  CHECK(single.x.values[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(single.x.values[1] == doctest::Approx(0.8).epsilon(1e-12));

  const GroupedVector feasible({0.1, 0.2, 0.3}, {1, 2});
  CHECK(project_l12(feasible, 5.0).x.values == feasible.values);
  CHECK_THROWS_AS(project_l12(feasible, -1.0), invalid_radius_error);
}

TEST_CASE("l1,inf projection: clamp and cap splitting examples") {
  const LinfBallResult one_group =
      project_l1inf(GroupedVector({3.0, 1.0}, {2}), 2.0);
  CHECK(one_group.x.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(one_group.x.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one_group.caps[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(one_group.lambda1 == doctest::Approx(1.0).epsilon(1e-12));

  const GroupedVector feasible({1.0, -2.0, 0.5}, {2, 1});
  const LinfBallResult f = project_l1inf(feasible, 5.0);
  CHECK(f.x.values == feasible.values);
  CHECK(f.lambda1 == 0.0);
  CHECK(f.caps[0] == 2.0);
  CHECK(f.caps[1] == 0.5);

  const LinfBallResult split =
      project_l1inf(GroupedVector({4.0, 3.0}, {1, 1}), 3.0);
  CHECK(split.caps[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(split.caps[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(split.x.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(split.x.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(split.lambda1 == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(project_l1inf(feasible, -0.1), invalid_radius_error);

  const LinfBallResult zero = project_l1inf(GroupedVector({2.0, 1.0}, {2}), 0.0);
  CHECK(zero.x.values[0] == 0.0);
  CHECK(zero.x.values[1] == 0.0);
  CHECK(zero.caps[0] == doctest::Approx(0.0));
}

TEST_CASE("single-ball feasibility, idempotence and sum rule on random data") {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const GroupedVector c = nbtest::random_grouped(rng, 50, 10, 3.0);
    const Norms nm = norms(c);
    const double tau = rng.uniform(0.05, 1.2) * std::max(nm.l1, 1e-3);

    const SingleBallResult p1 = project_l1(c, tau);
    CHECK(norms(p1.x).l1 <= tau * (1 + 1e-12) + 1e-12);
    CHECK(linf_diff(project_l1(p1.x, tau).x, p1.x) <= 1e-12);

    const SingleBallResult p12 = project_l12(c, tau);
    CHECK(norms(p12.x).l12 <= tau * (1 + 1e-12) + 1e-12);
    CHECK(linf_diff(project_l12(p12.x, tau).x, p12.x) <= 1e-12);

    const LinfBallResult pinf = project_l1inf(c, tau);
    CHECK(norms(pinf.x).linf_group_sum <= tau * (1 + 1e-12) + 1e-12);
    CHECK(linf_diff(project_l1inf(pinf.x, tau).x, pinf.x) <= 1e-10);

    // caps bound the reflected coordinates and sum to tau when active
    double cap_sum = 0.0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < c.num_groups(); ++i) {
      cap_sum += pinf.caps[i];
      for (std::size_t j = 0; j < c.group_sizes[i]; ++j) {
        CHECK(std::abs(pinf.x.values[pos + j]) <= pinf.caps[i] + 1e-9);
      }
      pos += c.group_sizes[i];
    }
    if (norms(c).linf_group_sum > tau) {
      CHECK(cap_sum == doctest::Approx(tau).epsilon(1e-9));
      CHECK(pinf.lambda1 > 0.0);
    } else {
      CHECK(pinf.lambda1 == 0.0);
    }

    // sign preservation
    for (std::size_t i = 0; i < c.dim(); ++i) {
      CHECK(p1.x.values[i] * c.values[i] >= 0.0);
      CHECK(p12.x.values[i] * c.values[i] >= 0.0);
      CHECK(pinf.x.values[i] * c.values[i] >= 0.0);
    }
  }
}

TEST_CASE("single-ball projections are nonexpansive") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupedVector a = nbtest::random_grouped(rng, 30, 6, 2.0);
    GroupedVector b = a;
    for (double& v : b.values) v += rng.uniform(-1.0, 1.0);
    const double tau = rng.uniform(0.1, 2.0);
    const double dist = nbtest::l2_diff(a, b);

    CHECK(nbtest::l2_diff(project_l1(a, tau).x, project_l1(b, tau).x) <=
          dist + 1e-10);
    CHECK(nbtest::l2_diff(project_l12(a, tau).x, project_l12(b, tau).x) <=
          dist + 1e-10);
    CHECK(nbtest::l2_diff(project_l1inf(a, tau).x, project_l1inf(b, tau).x) <=
          dist + 1e-10);
  }
}

TEST_CASE("single-ball projections satisfy the variational inequality") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const GroupedVector c = nbtest::random_grouped(rng, 20, 5, 2.0);
    const double tau = rng.uniform(0.1, 1.5);

    // Each single ball is the q-ball with the other radius huge.
    BallSpec l1_spec{Q::Two, 1e12, tau};
    CHECK(nbtest::worst_vi_violation(c, project_l1(c, tau).x, l1_spec, rng,
                                     60) <= 1e-9);
    BallSpec l12_spec{Q::Two, tau, 1e12};
    CHECK(nbtest::worst_vi_violation(c, project_l12(c, tau).x, l12_spec, rng,
                                     60) <= 1e-9);
    BallSpec linf_spec{Q::Inf, tau, 1e12};
    CHECK(nbtest::worst_vi_violation(c, project_l1inf(c, tau).x, linf_spec,
                                     rng, 60) <= 1e-9);
  }
}

TEST_CASE("single-ball projections agree with the descent oracle") {
  Rng rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const GroupedVector c = nbtest::random_grouped(rng, 20, 5, 2.0);
    const double tau = rng.uniform(0.1, 1.5);

    // A huge second radius reduces the intersection to the single ball.
    const GroupedVector w12 =
        oracle_projected_descent(c, {Q::Two, tau, 1e9});
    CHECK(linf_diff(project_l12(c, tau).x, w12) <= 1e-9);

    const GroupedVector winf =
        oracle_projected_descent(c, {Q::Inf, tau, 1e9});
    CHECK(linf_diff(project_l1inf(c, tau).x, winf) <= 1e-9);

    const GroupedVector w1 = oracle_projected_descent(c, {Q::Two, 1e9, tau});
    CHECK(linf_diff(project_l1(c, tau).x, w1) <= 1e-9);
  }
}
