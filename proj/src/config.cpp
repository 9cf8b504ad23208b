#include "ztop/config.hpp"

#include <fstream>
#include <stdexcept>

namespace ztop {

namespace {

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t positive(const std::string& key, const std::string& value) {
  Integer n = parse_integer(value);
  if (n < 1 || !n.fits_ulong_p()) throw std::invalid_argument(key + " must be a positive integer, got '" + value + "'");
  return n.get_ui();
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "precision_ceiling") {
    precision.ceiling_bits = static_cast<mpfr_prec_t>(positive(key, value));
  } else if (key == "precision_start") {
    precision.start_bits = static_cast<mpfr_prec_t>(positive(key, value));
  } else if (key == "index_cap") {
    caps.index_cap = positive(key, value);
  } else if (key == "slot_cap") {
    caps.slot_cap = positive(key, value);
  } else if (key == "node_budget") {
    caps.node_budget = positive(key, value);
  } else if (key == "window") {
    window = Window::parse(value);
  } else if (key == "window_budget") {
    window_budget = positive(key, value);
  } else if (key == "separation_cap") {
    separation_cap = positive(key, value);
  } else if (key == "continuity_cap") {
    continuity_cap = positive(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
  if (precision.start_bits < 2 || precision.start_bits > precision.ceiling_bits) {
    throw std::invalid_argument("precision_start must lie in [2, precision_ceiling]");
  }
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  Config config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key = value");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

}  // namespace ztop
