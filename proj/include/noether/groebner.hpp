#pragma once

#include <vector>

#include "noether/budget.hpp"
#include "noether/polynomial.hpp"

namespace noether {

/// Reduced Groebner basis (monic, sorted by increasing leading monomial) of the
/// ideal generated by `generators`. The zero ideal gives an empty list, the
/// unit ideal gives {1}.
///
/// Buchberger's algorithm with the normal selection strategy and both of
/// Buchberger's criteria. Throws ResourceError naming `max_pairs` or
/// `max_degree` when a budget runs out. The degree budget applies to newly
/// produced elements and is never below the largest input degree.
std::vector<Polynomial> groebner_basis(const PolyRing& ring, std::vector<Polynomial> generators,
                                       const Budget& budget = default_budget());

/// Same ideal, computed without univariate shortcuts. Kept for cross-checks.
std::vector<Polynomial> buchberger(const PolyRing& ring, std::vector<Polynomial> generators,
                                   const Budget& budget = default_budget());

/// Interreduces a Groebner basis into the reduced one.
std::vector<Polynomial> reduce_basis(const PolyRing& ring, std::vector<Polynomial> basis);

/// Generators of (ideal in `ring`) intersected with the polynomials free of
/// the first `count` variables, expressed in `target` (the ring without them).
/// `ring` must use a block order whose first block has size `count`.
std::vector<Polynomial> eliminate(const PolyRing& ring, std::vector<Polynomial> generators,
                                  std::size_t count, const PolyRing& target,
                                  const Budget& budget = default_budget());

/// True iff `basis` contains a nonzero constant.
bool is_unit_basis(const std::vector<Polynomial>& basis);

}  // namespace noether
