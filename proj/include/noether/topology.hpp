#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noether/finite_ring.hpp"
#include "noether/ring.hpp"

namespace noether {

/// D(f): the primes of the ring not containing f. Compared by radical
/// equality, never by the defining element.
struct DistinguishedOpen {
  RingPtr ring;
  Polynomial f;

  static DistinguishedOpen whole(const RingPtr& ring);
  static DistinguishedOpen parse(const RingPtr& ring, std::string_view text);
  std::string describe() const { return "D(" + ring->format(f) + ")"; }
};

/// D(b) ⊆ D(a).
bool open_contains(const DistinguishedOpen& a, const DistinguishedOpen& b,
                   const Budget& budget = default_budget());
bool open_equal(const DistinguishedOpen& a, const DistinguishedOpen& b,
                const Budget& budget = default_budget());
bool open_is_empty(const DistinguishedOpen& u, const Budget& budget = default_budget());
DistinguishedOpen open_intersect(const DistinguishedOpen& a, const DistinguishedOpen& b);

struct OpenCover {
  DistinguishedOpen target;
  std::vector<DistinguishedOpen> pieces;
};

/// target.f ∈ √(piece elements).
bool cover_check(const OpenCover& cover, const Budget& budget = default_budget());

/// The ring of sections over a nonempty open; opens equal to the whole space
/// give the ring itself.
RingPtr coordinate_ring(const DistinguishedOpen& u, const Budget& budget = default_budget());

bool is_prime_ideal(const FiniteRing& ring, const ElementSet& ideal);
std::vector<ElementSet> enumerate_spec(const FiniteRing& ring,
                                       const Budget& budget = default_budget());

/// Finite topological space whose opens are the down-sets of a preorder on
/// points 0..n-1. Subsets are bitmasks.
class FiniteSpace {
public:
  using Subset = std::uint32_t;

  /// `relations` lists pairs (a, b) meaning a ≤ b; the reflexive transitive
  /// closure is taken.
  static FiniteSpace from_preorder(std::size_t points,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& relations);

  std::size_t size() const noexcept { return n_; }
  Subset whole() const noexcept { return n_ == 32 ? ~Subset(0) : (Subset(1) << n_) - 1; }
  bool leq(std::size_t a, std::size_t b) const { return (down_[b] >> a) & 1; }
  /// Smallest open containing the point.
  Subset down(std::size_t p) const { return down_[p]; }
  bool is_open(Subset s) const;
  /// Every open set, sorted by size then value.
  const std::vector<Subset>& opens() const noexcept { return opens_; }
  /// Connected in the subspace topology; the empty set is not connected.
  bool is_connected(Subset s) const;
  std::vector<Subset> connected_opens() const;
  std::string format(Subset s) const;

private:
  std::size_t n_ = 0;
  std::vector<Subset> down_;
  std::vector<Subset> opens_;
};

}  // namespace noether
