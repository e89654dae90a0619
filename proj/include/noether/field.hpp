#pragma once

#include <gmpxx.h>

#include <string>

namespace noether {

/// Field coefficients are exact rationals. Over F_p they are kept reduced to
/// an integer in [0, p).
using Coeff = mpq_class;

/// An exact base field: the rationals or a prime field F_p.
class Field {
public:
  enum class Kind { rationals, prime };

  static Field rationals() { return Field(Kind::rationals, 0); }
  /// Throws DomainError unless p is prime.
  static Field prime(const mpz_class& p);
  /// Accepts "q", "Q", "fp:<p>".
  static Field parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool is_rationals() const noexcept { return kind_ == Kind::rationals; }
  /// 0 for the rationals.
  const mpz_class& characteristic() const noexcept { return p_; }

  Coeff from_int(long v) const;
  Coeff from_mpz(const mpz_class& v) const;
  /// Throws DomainError if the denominator vanishes in the field.
  Coeff from_rational(const mpq_class& v) const;

  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  /// Throws DomainError on zero.
  Coeff inv(const Coeff& a) const;
  Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }

  bool is_zero(const Coeff& a) const { return sgn(a) == 0; }
  bool is_one(const Coeff& a) const { return a == 1; }

  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

private:
  Field(Kind k, const mpz_class& p) : kind_(k), p_(p) {}
  Coeff reduce(const mpz_class& v) const;

  Kind kind_;
  mpz_class p_;
};

}  // namespace noether
