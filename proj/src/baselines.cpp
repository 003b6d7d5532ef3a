#include "normball/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "normball/errors.hpp"
#include "normball/single_ball.hpp"

namespace normball {

namespace {

GroupedVector project_l1q_ball(const GroupedVector& v, Q q, double tau1) {
  return q == Q::Two ? project_l12(v, tau1).x : project_l1inf(v, tau1).x;
}

double l2_distance(const GroupedVector& a, const GroupedVector& b) {
  double sumsq = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a.values[i] - b.values[i];
    sumsq += d * d;
  }
  return std::sqrt(sumsq);
}

void check_spec(const BallSpec& spec) {
  if (spec.tau1 <= 0.0 || spec.tau2 <= 0.0) {
    throw invalid_radius_error("baseline projections need positive radii");
  }
}

}  // namespace

BaselineResult dykstra_project(const GroupedVector& c, const BallSpec& spec,
                               SweepOrder ordering, double tol,
                               long max_iters) {
  check_spec(spec);
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  const bool l1_first = ordering == SweepOrder::L1First;
  GroupedVector x = c;
  GroupedVector prev = c;
  std::vector<double> corr_a(c.dim(), 0.0);
  std::vector<double> corr_b(c.dim(), 0.0);
  GroupedVector work = c;
  double change = 0.0;
  double change_prev = -1.0;

  for (long it = 1; it <= max_iters; ++it) {
    // First set: project x + correction, then update the correction.
    for (std::size_t i = 0; i < c.dim(); ++i) {
      work.values[i] = x.values[i] + corr_a[i];
    }
    GroupedVector ya = l1_first ? project_l1(work, spec.tau2).x
                                : project_l1q_ball(work, spec.q, spec.tau1);
    for (std::size_t i = 0; i < c.dim(); ++i) {
      corr_a[i] = work.values[i] - ya.values[i];
    }

    // Second set.
    for (std::size_t i = 0; i < c.dim(); ++i) {
      work.values[i] = ya.values[i] + corr_b[i];
    }
    GroupedVector yb = l1_first ? project_l1q_ball(work, spec.q, spec.tau1)
                                : project_l1(work, spec.tau2).x;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      corr_b[i] = work.values[i] - yb.values[i];
    }

    // The sweep-to-sweep change alone can plateau at zero while the
    // corrections still move, so fold in the within-sweep gap between the
    // two projected points, and gate on the geometric tail estimate
    // m * rho/(1-rho) so the stop bounds the distance to the limit by tol
    // rather than just the last step.
    const double within = l2_distance(ya, yb);
    const double step = l2_distance(yb, prev);
    change = std::max(within, step);
    double tail;
    if (change == 0.0) {
      tail = 0.0;
    } else if (change_prev <= 0.0) {
      tail = std::numeric_limits<double>::infinity();
    } else {
      const double rho = std::min(change / change_prev, 0.99);
      tail = change * rho / (1.0 - rho);
    }
    change_prev = change;

    x = std::move(yb);
    prev = x;
    if (change <= tol && tail <= 0.5 * tol) {
      return {std::move(x), it, true, change, ordering};
    }
  }
  return {std::move(x), max_iters, false, change, ordering};
}

BaselineResult admm_project(const GroupedVector& c, const BallSpec& spec,
                            double rho, double tol, long max_iters) {
  check_spec(spec);
  if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  GroupedVector x = c;
  GroupedVector z = c;
  std::vector<double> u(c.dim(), 0.0);
  GroupedVector work = c;
  double final_change = 0.0;

  for (long it = 1; it <= max_iters; ++it) {
    // x-update: argmin_{x in B_{1,q}} 0.5||x-c||^2 + rho/2 ||x - z + u||^2.
    for (std::size_t i = 0; i < c.dim(); ++i) {
      work.values[i] =
          (c.values[i] + rho * (z.values[i] - u[i])) / (1.0 + rho);
    }
    x = project_l1q_ball(work, spec.q, spec.tau1);

    // z-update with the old z kept for the dual residual.
    for (std::size_t i = 0; i < c.dim(); ++i) {
      work.values[i] = x.values[i] + u[i];
    }
    GroupedVector z_new = project_l1(work, spec.tau2).x;

    double primal_sq = 0.0;
    double dual_sq = 0.0;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      const double pr = x.values[i] - z_new.values[i];
      const double dz = z_new.values[i] - z.values[i];
      primal_sq += pr * pr;
      dual_sq += dz * dz;
      u[i] += pr;
    }
    z = std::move(z_new);
    const double primal = std::sqrt(primal_sq);
    const double dual = rho * std::sqrt(dual_sq);
    final_change = std::max(primal, dual);
    if (primal <= tol && dual <= tol) {
      return {std::move(x), it, true, final_change, SweepOrder::L1First};
    }
  }
  return {std::move(x), max_iters, false, final_change, SweepOrder::L1First};
}

}  // namespace normball
