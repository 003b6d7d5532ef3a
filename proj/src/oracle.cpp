#include "normball/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "normball/composite_l1_l12.hpp"
#include "normball/composite_l1_l1inf.hpp"
#include "normball/errors.hpp"
#include "normball/single_ball.hpp"

namespace normball {

namespace {

double max_abs(const GroupedVector& v) {
  double m = 0.0;
  for (double x : v.values) m = std::max(m, std::abs(x));
  return m;
}

struct GridPoint {
  double lambda2 = 0.0;
  double value = 0.0;  // f or h
  bool defined = false;
};

GridPoint probe(const GroupedVector& a, const BallSpec& spec, double lambda2) {
  GridPoint p;
  p.lambda2 = lambda2;
  if (spec.q == Q::Two) {
    const FValue fv = eval_f(a, lambda2, spec.tau1, spec.tau2);
    p.defined = fv.found;
    p.value = fv.f;
  } else {
    const HValue hv = eval_h(a, lambda2, spec.tau1, spec.tau2);
    p.defined = true;
    p.value = hv.h;
  }
  return p;
}

GroupedVector rebuild(const GroupedVector& a, const BallSpec& spec,
                      double lambda2, double* lambda1_out) {
  if (spec.q == Q::Two) {
    const Lambda1Result lr = find_lambda1(a, lambda2, spec.tau1);
    const double lambda1 = lr.found ? lr.lambda1 : 0.0;
    if (lambda1_out) *lambda1_out = lambda1;
    GroupedVector x = a;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < a.num_groups(); ++i) {
      double sumsq = 0.0;
      for (std::size_t j = 0; j < a.group_sizes[i]; ++j) {
        const double v = std::max(a.values[pos + j] - lambda2, 0.0);
        x.values[pos + j] = v;
        sumsq += v * v;
      }
      const double r = std::sqrt(sumsq);
      const double scale = r > lambda1 ? (r - lambda1) / r : 0.0;
      for (std::size_t j = 0; j < a.group_sizes[i]; ++j) {
        x.values[pos + j] *= scale;
      }
      pos += a.group_sizes[i];
    }
    return x;
  }
  GroupedVector shrunk = a;
  for (double& v : shrunk.values) v = std::max(v - lambda2, 0.0);
  const LinfBallResult inner = project_l1inf(shrunk, spec.tau1);
  if (lambda1_out) *lambda1_out = inner.lambda1;
  return inner.x;
}

}  // namespace

ProjectionResult oracle_dual_grid(const GroupedVector& c, const BallSpec& spec,
                                  int grid_resolution) {
  if (grid_resolution < 1000) {
    throw std::invalid_argument("grid resolution must be at least 1000");
  }
  if (spec.tau1 <= 0.0 || spec.tau2 <= 0.0) {
    throw invalid_radius_error("grid oracle needs positive radii");
  }

  auto [a, mask] = reflect_to_positive(c);
  const Norms nm = norms(a);
  const double l1q = spec.q == Q::Two ? nm.l12 : nm.linf_group_sum;
  if (l1q <= spec.tau1 || nm.l1 <= spec.tau2) {
    throw std::invalid_argument(
        "grid oracle expects both constraints individually violated");
  }

  const double max_c = max_abs(a);
  const double step = max_c / static_cast<double>(grid_resolution);

  bool saw_positive = false;
  bool saw_crossing = false;
  double best_lambda2 = 0.0;
  double best_abs = std::numeric_limits<double>::infinity();
  bool have_best = false;
  int evals = 0;

  for (int j = 0; j <= grid_resolution; ++j) {
    const GridPoint p = probe(a, spec, step * j);
    ++evals;
    if (p.defined) {
      if (std::abs(p.value) < best_abs) {
        best_abs = std::abs(p.value);
        best_lambda2 = p.lambda2;
        have_best = true;
      }
      if (p.value > 0.0) {
        saw_positive = true;
      } else if (saw_positive) {
        saw_crossing = true;
      }
    } else if (saw_positive) {
      // Past the zone where the l1,q constraint can bind: the root sits
      // below this lambda2, which counts as the negative side.
      saw_crossing = true;
    }
  }
  if (!saw_positive || !saw_crossing || !have_best) {
    throw oracle_failure_error(
        "root function never changed sign across the grid; instance is not "
        "in the interior-of-region-III case");
  }

  // One refinement pass: 10x finer grid centered on the best coarse point.
  const double lo = std::max(0.0, best_lambda2 - step);
  const double hi = std::min(max_c, best_lambda2 + step);
  const double fine = step / 10.0;
  for (double l2 = lo; l2 <= hi + 0.5 * fine; l2 += fine) {
    const GridPoint p = probe(a, spec, std::min(l2, hi));
    ++evals;
    if (p.defined && std::abs(p.value) < best_abs) {
      best_abs = std::abs(p.value);
      best_lambda2 = p.lambda2;
    }
  }

  double lambda1 = 0.0;
  GroupedVector x = rebuild(a, spec, best_lambda2, &lambda1);
  ProjectionResult out{restore_signs(x, mask),
                       {lambda1, best_lambda2},
                       Region::RegionIII,
                       evals,
                       best_abs,
                       {}};
  if (spec.q == Q::Inf) {
    out.caps = eval_h(a, best_lambda2, spec.tau1, spec.tau2).caps;
  }
  return out;
}

GroupedVector oracle_projected_descent(const GroupedVector& c,
                                       const BallSpec& spec, long iters) {
  if (spec.tau1 <= 0.0 || spec.tau2 <= 0.0) {
    throw invalid_radius_error("descent oracle needs positive radii");
  }
  constexpr double kTol = 1e-12;

  GroupedVector x = c;
  GroupedVector prev = c;
  std::vector<double> corr_q(c.dim(), 0.0);
  std::vector<double> corr_1(c.dim(), 0.0);
  GroupedVector work = c;
  double change_prev = -1.0;

  for (long it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < c.dim(); ++i) {
      work.values[i] = x.values[i] + corr_q[i];
    }
    GroupedVector yq = spec.q == Q::Two
                           ? project_l12(work, spec.tau1).x
                           : project_l1inf(work, spec.tau1).x;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      corr_q[i] = work.values[i] - yq.values[i];
      work.values[i] = yq.values[i] + corr_1[i];
    }
    GroupedVector y1 = project_l1(work, spec.tau2).x;
    double within_sq = 0.0;
    double step_sq = 0.0;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      corr_1[i] = work.values[i] - y1.values[i];
      const double dg = y1.values[i] - yq.values[i];
      const double dc = y1.values[i] - prev.values[i];
      within_sq += dg * dg;
      step_sq += dc * dc;
    }
    x = std::move(y1);
    prev = x;

    // Same plateau-proof stop as the Dykstra baseline: within-sweep gap and
    // iterate step, gated on the geometric tail estimate.
    const double change = std::max(std::sqrt(within_sq), std::sqrt(step_sq));
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
    if (change <= kTol && tail <= 0.5 * kTol) return x;
  }
  throw oracle_failure_error("descent oracle did not converge within budget");
}

}  // namespace normball
