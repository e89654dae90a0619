#pragma once

#include <cstddef>
#include <cstdint>

namespace noether {

/// Resource limits for every search or completion procedure. Defaults can be
/// overridden from the environment with `Budget::from_environment()`
/// (`NOETHER_BUDGET_PAIRS`, `NOETHER_BUDGET_DEGREE`, `NOETHER_BUDGET_RING_SIZE`,
/// `NOETHER_BUDGET_MODULE_SIZE`, `NOETHER_BUDGET_NODES`, `NOETHER_BUDGET_DEPTH`,
/// `NOETHER_BUDGET_TOWER_DEPTH`).
struct Budget {
  /// S-polynomial pairs processed by one Buchberger run.
  std::uint64_t max_pairs = 1'000'000;
  /// Largest total degree a newly produced basis element may have.
  int max_degree = 64;
  /// Finite rings larger than this are refused by exhaustive operations.
  std::size_t max_ring_size = 256;
  /// Explicit (tabulated) finite modules are capped here.
  std::size_t max_module_size = 4096;
  /// Digraph node cap; stalkwise criteria are exponential in it.
  std::size_t max_digraph_nodes = 16;
  /// Generation depth cap for digraph extraction.
  std::size_t max_extraction_depth = 32;
  /// Deepest tower level `run_tower_suite` accepts.
  int max_tower_depth = 8;

  static Budget from_environment();
};

/// Process-wide default used when an operation is called without a budget.
const Budget& default_budget();

}  // namespace noether
