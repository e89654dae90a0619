#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noether/budget.hpp"
#include "noether/groebner.hpp"
#include "noether/polynomial.hpp"

namespace noether {

class PresentedRing;
using RingPtr = std::shared_ptr<const PresentedRing>;

/// k[vars] / quotient, localized at the multiplicative set generated by
/// `inverted`. Immutable; shared by pointer.
class PresentedRing {
public:
  /// Validates that every inverted element is nonzero modulo the quotient.
  static RingPtr make(Field field, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::degrevlex(),
                      std::vector<Polynomial> quotient = {},
                      std::vector<Polynomial> inverted = {});
  /// Same as `make` but polynomials given as text.
  static RingPtr parse(Field field, std::vector<std::string> vars,
                       const std::vector<std::string>& quotient = {},
                       const std::vector<std::string>& inverted = {},
                       MonomialOrder order = MonomialOrder::degrevlex());

  const Field& field() const noexcept { return poly_.field(); }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const MonomialOrder& order() const noexcept { return poly_.order(); }
  const std::vector<Polynomial>& quotient() const noexcept { return quotient_; }
  const std::vector<Polynomial>& inverted() const noexcept { return inverted_; }
  const PolyRing& poly() const noexcept { return poly_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  bool is_univariate() const noexcept { return vars_.size() == 1; }
  bool has_quotient() const noexcept { return !quotient_.empty(); }

  Polynomial parse_polynomial(std::string_view text) const;
  std::string format(const Polynomial& p) const;

  /// Product of the inverted generators (1 when none).
  Polynomial inverted_product() const;
  /// Reduced Groebner basis of the quotient ideal.
  const std::vector<Polynomial>& quotient_basis() const { return quotient_basis_; }

  /// The ring with `f` appended to the inverted set.
  RingPtr localized_at(const Polynomial& f) const;
  /// The same presentation without any inverted elements.
  RingPtr without_localization() const;

  /// Structural equality of presentations.
  friend bool operator==(const PresentedRing& a, const PresentedRing& b);
  std::string describe() const;

private:
  PresentedRing(PolyRing poly, std::vector<std::string> vars, std::vector<Polynomial> quotient,
                std::vector<Polynomial> inverted);

  PolyRing poly_;
  std::vector<std::string> vars_;
  std::vector<Polynomial> quotient_;
  std::vector<Polynomial> inverted_;
  std::vector<Polynomial> quotient_basis_;
};

/// Throws DomainError unless both rings are the same presentation.
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what);

/// A finitely generated ideal of a presented ring with a lazily computed
/// canonical form: the reduced basis of (generators + quotient) saturated at
/// every inverted element. Copies share the cache.
class IdealHandle {
public:
  IdealHandle(RingPtr ring, std::vector<Polynomial> generators);
  static IdealHandle parse(RingPtr ring, const std::vector<std::string>& generators);
  static IdealHandle zero(RingPtr ring) { return IdealHandle(std::move(ring), {}); }
  static IdealHandle unit(RingPtr ring);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }

  /// Canonical reduced basis in the polynomial ring k[vars]; two handles over
  /// one ring describe the same ideal iff these coincide.
  const std::vector<Polynomial>& canonical_basis(const Budget& budget = default_budget()) const;
  /// The same ideal read in another ring with identical variables and field.
  IdealHandle in_ring(RingPtr other) const { return IdealHandle(std::move(other), generators_); }

  std::vector<std::string> format_generators() const;

private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Polynomial>> canonical;
  };

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis of the ideal. Without `canonical`, the ring must
/// have no inverted elements and the basis is that of generators + quotient.
std::vector<Polynomial> groebner_basis(const IdealHandle& ideal, bool canonical = false,
                                       const Budget& budget = default_budget());

bool ideal_membership(const Polynomial& p, const IdealHandle& ideal,
                      const Budget& budget = default_budget());
bool ideal_equal(const IdealHandle& a, const IdealHandle& b, const Budget& budget = default_budget());
/// small ⊆ big.
bool ideal_contains(const IdealHandle& big, const IdealHandle& small,
                    const Budget& budget = default_budget());
bool is_unit_ideal(const IdealHandle& ideal, const Budget& budget = default_budget());

enum class CombineOp { sum, product, intersection };
CombineOp parse_combine_op(const std::string& name);
IdealHandle ideal_combine(CombineOp op, const IdealHandle& a, const IdealHandle& b,
                          const Budget& budget = default_budget());

/// I : f^∞ (closure under removing factors of f).
IdealHandle saturate(const IdealHandle& ideal, const Polynomial& f,
                     const Budget& budget = default_budget());
/// I : g.
IdealHandle colon(const IdealHandle& ideal, const Polynomial& g,
                  const Budget& budget = default_budget());
/// f ∈ √I, by the Rabinowitsch trick: 1 ∈ I + (1 - t f).
bool radical_membership(const Polynomial& f, const IdealHandle& ideal,
                        const Budget& budget = default_budget());

/// Polynomial-ring level primitives on generator lists (no quotient or
/// localization); these carry the elimination computations.
namespace polyideal {
std::vector<Polynomial> saturate(const PolyRing& ring, std::vector<Polynomial> gens,
                                 const Polynomial& f, const Budget& budget);
std::vector<Polynomial> intersect(const PolyRing& ring, std::vector<Polynomial> a,
                                  std::vector<Polynomial> b, const Budget& budget);
std::vector<Polynomial> colon(const PolyRing& ring, std::vector<Polynomial> gens,
                              const Polynomial& g, const Budget& budget);
bool radical_contains(const PolyRing& ring, std::vector<Polynomial> gens, const Polynomial& f,
                      const Budget& budget);
}  // namespace polyideal

}  // namespace noether
