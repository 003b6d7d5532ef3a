#pragma once

#include <stdexcept>
#include <string>

namespace normball {

struct invalid_radius_error : std::invalid_argument {
  explicit invalid_radius_error(const std::string& what)
      : std::invalid_argument(what) {}
};

struct size_mismatch_error : std::invalid_argument {
  explicit size_mismatch_error(const std::string& what)
      : std::invalid_argument(what) {}
};

struct nonconvergence_error : std::runtime_error {
  explicit nonconvergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised by the reference solvers when their own guarantees fail; the test
// harness treats this as a hard abort, never as a tolerable miss.
struct oracle_failure_error : std::runtime_error {
  explicit oracle_failure_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace normball
