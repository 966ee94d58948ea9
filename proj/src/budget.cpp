#include "bloch_forge/budget.hpp"

#include <cstdlib>
#include <sstream>

namespace bf {

namespace {

size_t parse_count(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size() || v < 0) throw std::invalid_argument("bad budget value: " + s);
  return static_cast<size_t>(v);
}

}  // namespace

void Budget::apply_spec(const std::string& spec) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      max_columns = parse_count(item);
      continue;
    }
    std::string key = item.substr(0, eq);
    size_t v = parse_count(item.substr(eq + 1));
    if (key == "cols") {
      max_columns = v;
    } else if (key == "fill") {
      max_fill = v;
    } else if (key == "group") {
      max_group_order = v;
    } else if (key == "ring") {
      max_ring_size = v;
    } else if (key == "bar3") {
      bar_order_deg3 = v;
    } else if (key == "bar2") {
      bar_order_deg2 = v;
    } else if (key == "nodes") {
      search_nodes = v;
    } else {
      throw std::invalid_argument("unknown budget key: " + key);
    }
  }
}

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("BLOCH_FORGE_BUDGET")) b.apply_spec(env);
  return b;
}

Budget& default_budget() {
  static Budget b = Budget::from_env();
  return b;
}

}  // namespace bf
