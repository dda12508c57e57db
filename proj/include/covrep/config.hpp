#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covrep {

inline constexpr const char* kToolVersion = "0.1.0";

/// Process-wide defaults. COVREP_TOL and COVREP_MAX_DIM environment
/// variables override the built-in values; explicit function arguments
/// override both.
struct Settings {
  double tol = 1e-10;          // default comparison tolerance
  std::ptrdiff_t max_dim = 4096;  // cap on any created matrix dimension
  int max_power = 8;           // default truncation depth for power chains
};

Settings& settings();

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeCapError : std::length_error {
  using std::length_error::length_error;
};

struct FactorizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline double resolve_tol(double tol) { return tol >= 0 ? tol : settings().tol; }
inline int resolve_power(int k) { return k >= 0 ? k : settings().max_power; }

}  // namespace covrep
