#include "normball/single_ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "normball/errors.hpp"

namespace normball {

namespace {

// Soft-threshold level theta for a nonnegative vector of magnitudes:
// sum_i max(mags_i - theta, 0) = tau, assuming sum(mags) > tau. For tau = 0
// the level is max(mags). Duchi et al. (2008), sort-based variant; ties are
// broken by index order, which cannot change the (unique) projection.
double l1_threshold_level(std::vector<double> mags, double tau) {
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  if (tau == 0.0) return mags.front();
  double cumsum = 0.0;
  std::size_t rho = 0;
  double rho_cumsum = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cumsum += mags[j];
    if (mags[j] - (cumsum - tau) / static_cast<double>(j + 1) > 0.0) {
      rho = j + 1;
      rho_cumsum = cumsum;
    }
  }
  return (rho_cumsum - tau) / static_cast<double>(rho);
}

}  // namespace

SingleBallResult project_l1(const GroupedVector& c, double tau) {
  if (tau < 0.0) throw invalid_radius_error("l1 radius must be nonnegative");

  double l1 = 0.0;
  for (double v : c.values) l1 += std::abs(v);
  if (l1 <= tau) {
    std::size_t nonzero = 0;
    for (double v : c.values) nonzero += (v != 0.0);
    return {c, 0.0, nonzero};
  }

  std::vector<double> mags(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) mags[i] = std::abs(c.values[i]);
  const double theta = l1_threshold_level(std::move(mags), tau);

  SingleBallResult out{c, theta, 0};
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const double a = std::abs(c.values[i]);
    if (a > theta) {
      out.x.values[i] = std::copysign(a - theta, c.values[i]);
      ++out.active_count;
    } else {
      out.x.values[i] = 0.0;
    }
  }
  return out;
}

SingleBallResult project_l12(const GroupedVector& c, double tau1) {
  if (tau1 < 0.0) {
    throw invalid_radius_error("l1,2 radius must be nonnegative");
  }

  const std::size_t g = c.num_groups();
  std::vector<double> r(g, 0.0);
  double total = 0.0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < g; ++i) {
    double sumsq = 0.0;
    for (std::size_t j = 0; j < c.group_sizes[i]; ++j) {
      sumsq += c.values[pos + j] * c.values[pos + j];
    }
    r[i] = std::sqrt(sumsq);
    total += r[i];
    pos += c.group_sizes[i];
  }

  if (total <= tau1) {
    std::size_t nonzero = 0;
    for (double ri : r) nonzero += (ri > 0.0);
    return {c, 0.0, nonzero};
  }

  const double theta = l1_threshold_level(r, tau1);

  SingleBallResult out{c, theta, 0};
  pos = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const double scale = r[i] > theta ? 1.0 - theta / r[i] : 0.0;
    if (scale > 0.0) ++out.active_count;
    for (std::size_t j = 0; j < c.group_sizes[i]; ++j) {
      out.x.values[pos + j] = c.values[pos + j] * scale;
    }
    pos += c.group_sizes[i];
  }
  return out;
}

LinfBallResult project_l1inf(const GroupedVector& c, double tau1) {
  if (tau1 < 0.0) {
    throw invalid_radius_error("l1,inf radius must be nonnegative");
  }

  const std::size_t g = c.num_groups();

  // Per-group magnitudes sorted descending, with prefix sums.
  std::vector<std::vector<double>> sorted(g);
  std::vector<std::vector<double>> prefix(g);
  double linf_sum = 0.0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < g; ++i) {
    auto& b = sorted[i];
    b.reserve(c.group_sizes[i]);
    for (std::size_t j = 0; j < c.group_sizes[i]; ++j) {
      const double a = std::abs(c.values[pos + j]);
      if (a > 0.0) b.push_back(a);
    }
    std::sort(b.begin(), b.end(), std::greater<double>());
    auto& B = prefix[i];
    B.resize(b.size());
    double run = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      run += b[k];
      B[k] = run;
    }
    if (!b.empty()) linf_sum += b.front();
    pos += c.group_sizes[i];
  }

  if (linf_sum <= tau1) {
    LinfBallResult out{c, std::vector<double>(g, 0.0), 0.0, 0};
    for (std::size_t i = 0; i < g; ++i) {
      out.caps[i] = sorted[i].empty() ? 0.0 : sorted[i].front();
      out.active_count += (out.caps[i] > 0.0);
    }
    return out;
  }

  // Each group's cap d_i(lambda) solves  G_i(d) = sum_j max(b_ij - d, 0)
  // = lambda for the current lambda; on the segment where exactly k
  // elements exceed d_i it is d_i = (B_ik - lambda)/k. The aggregate
  // Psi(lambda) = sum_i d_i(lambda) is continuous, piecewise linear and
  // decreasing, so we sweep the merged breakpoints until Psi crosses tau1
  // and solve the crossing segment exactly.
  struct Event {
    double lambda;
    std::uint32_t group;
    std::uint32_t new_k;  // 0 marks the group's exit (d_i reaches 0)
  };
  std::vector<Event> events;
  events.reserve(c.dim() + g);
  double slope_accum = 0.0;  // S = sum over active groups of 1/k_i
  double level_accum = 0.0;  // A = sum over active groups of B_ik / k_i
  for (std::size_t i = 0; i < g; ++i) {
    const auto& b = sorted[i];
    if (b.empty()) continue;
    const auto& B = prefix[i];
    for (std::size_t k = 2; k <= b.size(); ++k) {
      events.push_back({B[k - 1] - static_cast<double>(k) * b[k - 1],
                        static_cast<std::uint32_t>(i),
                        static_cast<std::uint32_t>(k)});
    }
    events.push_back({B.back(), static_cast<std::uint32_t>(i), 0});
    level_accum += B[0];
    slope_accum += 1.0;
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.lambda < b.lambda; });

  std::vector<std::uint32_t> seg_k(g, 1);
  double lambda1 = 0.0;
  bool solved = false;
  for (const Event& e : events) {
    const double psi = level_accum - e.lambda * slope_accum;
    if (psi <= tau1) {
      lambda1 = (level_accum - tau1) / slope_accum;
      solved = true;
      break;
    }
    const auto& B = prefix[e.group];
    if (e.new_k == 0) {
      const double m = static_cast<double>(B.size());
      level_accum -= B.back() / m;
      slope_accum -= 1.0 / m;
      seg_k[e.group] = 0;
    } else {
      const double k_new = e.new_k;
      level_accum += B[e.new_k - 1] / k_new - B[e.new_k - 2] / (k_new - 1.0);
      slope_accum += 1.0 / k_new - 1.0 / (k_new - 1.0);
      seg_k[e.group] = e.new_k;
    }
  }
  // Psi hits 0 <= tau1 at the last breakpoint, so the loop breaks there at
  // the latest; accumulated rounding can leave a hair of mass when tau1 is
  // 0, in which case the largest breakpoint is the exact answer.
  if (!solved) lambda1 = events.back().lambda;

  LinfBallResult out{c, std::vector<double>(g, 0.0), lambda1, 0};
  pos = 0;
  for (std::size_t i = 0; i < g; ++i) {
    double d = 0.0;
    if (!sorted[i].empty() && seg_k[i] > 0) {
      const double k = static_cast<double>(seg_k[i]);
      d = (prefix[i][seg_k[i] - 1] - lambda1) / k;
      d = std::clamp(d, 0.0, sorted[i].front());
    }
    out.caps[i] = d;
    if (d > 0.0) ++out.active_count;
    for (std::size_t j = 0; j < c.group_sizes[i]; ++j) {
      const double a = std::abs(c.values[pos + j]);
      out.x.values[pos + j] = std::copysign(std::min(a, d), c.values[pos + j]);
    }
    pos += c.group_sizes[i];
  }
  return out;
}

}  // namespace normball
