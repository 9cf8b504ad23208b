#pragma once

#include <string>

#include "ztop/exact_torus.hpp"
#include "ztop/topology.hpp"
#include "ztop/zelenyuk.hpp"

namespace ztop {

/// Caps and precision defaults, read from a key=value file and overridable per flag.
struct Config {
  PrecisionPolicy precision;
  SearchCaps caps;
  Window window{Integer(-10000), Integer(10000)};
  std::size_t window_budget = kDefaultWindowBudget;
  std::size_t separation_cap = 6;
  std::size_t continuity_cap = 20;

  /// Lines "key = value"; '#' starts a comment. Unknown keys are errors.
  static Config load(const std::string& path);
  void set(const std::string& key, const std::string& value);
};

}  // namespace ztop
