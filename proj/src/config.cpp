#include "covrep/config.hpp"

#include <cstdlib>

namespace covrep {

namespace {

Settings load_from_env() {
  Settings s;
  if (const char* tol = std::getenv("COVREP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(tol, &end);
    if (end != tol && v >= 0) s.tol = v;
  }
  if (const char* cap = std::getenv("COVREP_MAX_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) s.max_dim = v;
  }
  return s;
}

}  // namespace

Settings& settings() {
  static Settings s = load_from_env();
  return s;
}

}  // namespace covrep
