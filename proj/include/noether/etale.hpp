#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noether/check.hpp"
#include "noether/ring.hpp"

namespace noether {

/// Which exponents e have x^e - 2 inverted at level n: `power` uses
/// 2, 4, ..., 2^n (the pullbacks of x - 2 along x -> x^2), `literal` uses
/// 2, 4, ..., 2n.
enum class ExponentRule { power, literal };

ExponentRule parse_exponent_rule(const std::string& name);
std::string to_string(ExponentRule rule);
std::vector<long> deleted_exponents(int level, ExponentRule rule);

/// k[x] with x and every x^e - 2 (e in deleted_exponents) inverted, and the
/// ideal (x - 1).
struct TowerLevel {
  int level = 0;
  ExponentRule rule = ExponentRule::power;
  RingPtr ring;
  IdealHandle ideal;
  std::vector<long> exponents;
};

/// Throws DomainError for characteristic 2 or a negative level.
TowerLevel tower_ring(int level, const Field& field, ExponentRule rule = ExponentRule::power);

/// p(x^(2^k)).
Polynomial pull_back(const PolyRing& ring, const Polynomial& p, int steps);

struct CoverMapReport {
  int source = 0;
  int target = 0;
  /// well_defined, unramified, level0_compatible.
  std::vector<InvariantCheck> checks;
  bool ok() const;
};

/// The squaring map from `source` to `target` (one level up).
CoverMapReport verify_cover_map(const TowerLevel& source, const TowerLevel& target,
                                const Budget& budget = default_budget());

struct LevelReport {
  int level = 0;
  std::vector<InvariantCheck> checks;
  bool ok() const;
};

/// J = ideal of the pulled-back (x - 1) from all lower levels; checks
/// J = (x^2 - 1), J ⊊ (x - 1), and the witness x + 1.
LevelReport pullback_strictness(const TowerLevel& level, const Budget& budget = default_budget());

/// (x - 1) is proper, x -> 1 is a field-valued point, and no inverted
/// element vanishes at 1 or -1.
LevelReport properness_and_maximality(const TowerLevel& level,
                                      const Budget& budget = default_budget());

struct TowerSuiteReport {
  int depth = 0;
  std::string field;
  ExponentRule rule = ExponentRule::power;
  std::vector<CoverMapReport> cover_maps;
  std::vector<LevelReport> strictness;
  std::vector<LevelReport> properness;
  /// (x^(2^depth) - 1) ⊊ ... ⊊ (x^2 - 1) ⊊ (x - 1) in the top ring, largest exponent first.
  std::vector<std::string> chain;
  std::size_t strict_inclusions = 0;
  /// Level at which the first failing check occurred; the suite stops there.
  std::optional<int> failed_level;
  std::string failure;
  bool passed() const { return !failed_level; }
};

/// Every check for every level up to `depth`. Throws ResourceError above
/// budget.max_tower_depth.
TowerSuiteReport run_tower_suite(int depth, const Field& field,
                                 ExponentRule rule = ExponentRule::power,
                                 const Budget& budget = default_budget());

}  // namespace noether
