#include "normball/grouped_vector.hpp"

#include <cmath>
#include <stdexcept>

#include "normball/errors.hpp"

namespace normball {

GroupedVector::GroupedVector(std::vector<double> values_in,
                             std::vector<std::size_t> group_sizes_in)
    : values(std::move(values_in)), group_sizes(std::move(group_sizes_in)) {
  if (values.empty()) {
    throw std::invalid_argument("grouped vector needs at least one element");
  }
  if (group_sizes.empty()) {
    throw std::invalid_argument("grouped vector needs at least one group");
  }
  std::size_t total = 0;
  for (std::size_t s : group_sizes) {
    if (s == 0) throw std::invalid_argument("group sizes must be positive");
    total += s;
  }
  if (total != values.size()) {
    throw std::invalid_argument("group sizes must sum to the vector length");
  }
}

GroupedVector GroupedVector::single_group(std::vector<double> v) {
  const std::size_t n = v.size();
  return GroupedVector(std::move(v), std::vector<std::size_t>{n});
}

Norms norms(const GroupedVector& v) {
  Norms out;
  std::size_t pos = 0;
  for (std::size_t s : v.group_sizes) {
    double sumsq = 0.0;
    double maxabs = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      const double a = std::abs(v.values[pos + j]);
      out.l1 += a;
      sumsq += a * a;
      if (a > maxabs) maxabs = a;
    }
    out.l12 += std::sqrt(sumsq);
    out.linf_group_sum += maxabs;
    pos += s;
  }
  return out;
}

std::pair<GroupedVector, SignMask> reflect_to_positive(const GroupedVector& v) {
  GroupedVector out = v;
  SignMask mask;
  mask.signs.resize(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    mask.signs[i] = std::signbit(v.values[i]) ? -1 : 1;
    out.values[i] = std::abs(v.values[i]);
  }
  return {std::move(out), std::move(mask)};
}

GroupedVector restore_signs(const GroupedVector& x, const SignMask& mask) {
  if (x.dim() != mask.signs.size()) {
    throw size_mismatch_error("sign mask length does not match vector length");
  }
  GroupedVector out = x;
  for (std::size_t i = 0; i < out.dim(); ++i) {
    out.values[i] *= static_cast<double>(mask.signs[i]);
  }
  return out;
}

}  // namespace normball
