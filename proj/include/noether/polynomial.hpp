#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noether/field.hpp"

namespace noether {

using Exponents = std::vector<std::int32_t>;

struct Term {
  Exponents exp;
  Coeff coeff;
};

/// Monomial orders. `block` compares the first `block_size` variables by
/// degrevlex and breaks ties by degrevlex on the rest, so the first block is
/// eliminated first.
class MonomialOrder {
public:
  enum class Kind { degrevlex, lex, block };

  MonomialOrder() = default;
  static MonomialOrder degrevlex() { return {Kind::degrevlex, 0}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder block(std::size_t first_block) { return {Kind::block, first_block}; }
  static MonomialOrder parse(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  std::size_t block_size() const noexcept { return block_; }
  std::string name() const;

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Exponents& a, const Exponents& b) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
  MonomialOrder(Kind k, std::size_t b) : kind_(k), block_(b) {}
  Kind kind_ = Kind::degrevlex;
  std::size_t block_ = 0;
};

/// Sparse polynomial: nonzero terms sorted by decreasing monomial under the
/// order of the `PolyRing` that produced it.
class Polynomial {
public:
  Polynomial() = default;

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& leading() const { return terms_.front(); }
  const Exponents& leading_monomial() const { return terms_.front().exp; }
  const Coeff& leading_coeff() const { return terms_.front().coeff; }
  int total_degree() const;
  /// True for a nonzero constant.
  bool is_constant() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
  friend class PolyRing;
  std::vector<Term> terms_;
};

int monomial_degree(const Exponents& e);
bool monomial_divides(const Exponents& a, const Exponents& b);
Exponents monomial_lcm(const Exponents& a, const Exponents& b);
Exponents monomial_quotient(const Exponents& b, const Exponents& a);

/// Arithmetic context: field, number of variables and monomial order.
/// Every polynomial operation goes through one of these.
class PolyRing {
public:
  PolyRing(Field field, std::size_t nvars, MonomialOrder order = MonomialOrder::degrevlex())
      : field_(std::move(field)), nvars_(nvars), order_(order) {}

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const MonomialOrder& order() const noexcept { return order_; }

  Polynomial zero() const { return {}; }
  Polynomial constant(const Coeff& c) const;
  Polynomial one() const { return constant(Coeff(1)); }
  Polynomial variable(std::size_t i) const;
  Polynomial monomial(const Exponents& e, const Coeff& c) const;
  /// Sorts, merges equal monomials and drops zeros.
  Polynomial from_terms(std::vector<Term> terms) const;
  /// Re-sorts a polynomial that was built under another order.
  Polynomial reorder(const Polynomial& p) const { return from_terms(p.terms()); }

  Polynomial add(const Polynomial& a, const Polynomial& b) const;
  Polynomial sub(const Polynomial& a, const Polynomial& b) const;
  Polynomial neg(const Polynomial& a) const;
  Polynomial mul(const Polynomial& a, const Polynomial& b) const;
  Polynomial scale(const Polynomial& a, const Coeff& c) const;
  Polynomial mul_term(const Polynomial& a, const Exponents& e, const Coeff& c) const;
  Polynomial pow(const Polynomial& a, unsigned n) const;
  Polynomial product(std::span<const Polynomial> factors) const;
  /// Leading coefficient one; zero stays zero.
  Polynomial monic(const Polynomial& a) const;

  /// a - c * m * b, the elementary reduction step.
  Polynomial sub_mul_term(const Polynomial& a, const Exponents& m, const Coeff& c,
                          const Polynomial& b) const;

  /// Full normal form of `p` modulo `basis` (all terms reduced).
  Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis) const;
  /// Exact division; returns false when `b` does not divide `a`.
  bool divide_exact(const Polynomial& a, const Polynomial& b, Polynomial& quotient) const;

  /// Called on the larger ring: embeds `p` from a ring with `extra` fewer
  /// variables, the new variables placed first.
  Polynomial prepend_vars(const Polynomial& p, std::size_t extra) const;
  /// Called on the smaller ring: drops the first `count` variables of `p`
  /// (which must have exponent zero).
  Polynomial drop_leading_vars(const Polynomial& p, std::size_t count) const;
  bool uses_leading_vars(const Polynomial& p, std::size_t count) const;

  /// Substitutes polynomials (of `target`) for each variable.
  Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                        const PolyRing& target) const;
  /// Evaluates at a point of the field.
  Coeff evaluate(const Polynomial& p, std::span<const Coeff> point) const;
  Polynomial derivative(const Polynomial& p, std::size_t var) const;

  // Univariate helpers (nvars == 1).
  int degree_univariate(const Polynomial& p) const;
  void divmod_univariate(const Polynomial& a, const Polynomial& b, Polynomial& q,
                         Polynomial& r) const;
  /// Monic gcd; gcd(0, 0) = 0.
  Polynomial gcd_univariate(const Polynomial& a, const Polynomial& b) const;

private:
  Field field_;
  std::size_t nvars_;
  MonomialOrder order_;
};

}  // namespace noether
