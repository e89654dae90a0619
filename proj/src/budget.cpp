#include "noether/budget.hpp"

#include <cstdlib>
#include <string>

#include "noether/error.hpp"

namespace noether {

namespace {

template <typename T>
void override_from(const char* name, T& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::size_t used = 0;
    long long v = std::stoll(raw, &used);
    if (used != std::string(raw).size() || v < 0) throw std::invalid_argument(raw);
    slot = static_cast<T>(v);
  } catch (const std::exception&) {
    throw ParseError(std::string("environment variable ") + name + " is not a nonnegative integer");
  }
}

}  // namespace

Budget Budget::from_environment() {
  Budget b;
  override_from("NOETHER_BUDGET_PAIRS", b.max_pairs);
  override_from("NOETHER_BUDGET_DEGREE", b.max_degree);
  override_from("NOETHER_BUDGET_RING_SIZE", b.max_ring_size);
  override_from("NOETHER_BUDGET_MODULE_SIZE", b.max_module_size);
  override_from("NOETHER_BUDGET_NODES", b.max_digraph_nodes);
  override_from("NOETHER_BUDGET_DEPTH", b.max_extraction_depth);
  override_from("NOETHER_BUDGET_TOWER_DEPTH", b.max_tower_depth);
  return b;
}

const Budget& default_budget() {
  static const Budget budget{};
  return budget;
}

}  // namespace noether
