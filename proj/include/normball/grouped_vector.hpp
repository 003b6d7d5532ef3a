#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace normball {

// Dense real vector split into g contiguous, disjoint groups. Group i is the
// slice of length group_sizes[i] starting right after groups 0..i-1.
struct GroupedVector {
  std::vector<double> values;
  std::vector<std::size_t> group_sizes;

  GroupedVector() = default;

  // Throws std::invalid_argument when the partition is malformed (empty
  // vector, empty group list, zero-sized group, sizes not summing to n).
  GroupedVector(std::vector<double> values_in,
                std::vector<std::size_t> group_sizes_in);

  static GroupedVector single_group(std::vector<double> v);

  std::size_t dim() const { return values.size(); }
  std::size_t num_groups() const { return group_sizes.size(); }
};

struct Norms {
  double l1 = 0.0;              // sum of |v_i|
  double l12 = 0.0;             // sum of per-group l2 norms
  double linf_group_sum = 0.0;  // sum of per-group max |v_ij|
};

Norms norms(const GroupedVector& v);

// Records the original sign of every coordinate (+1 or -1) so a projection
// computed on |c| can be mapped back. A negative zero keeps its sign bit,
// which makes restore(reflect(c)) bit-exact on all finite inputs.
struct SignMask {
  std::vector<std::int8_t> signs;
};

std::pair<GroupedVector, SignMask> reflect_to_positive(const GroupedVector& v);

// Throws size_mismatch_error when mask and vector lengths differ.
GroupedVector restore_signs(const GroupedVector& x, const SignMask& mask);

}  // namespace normball
