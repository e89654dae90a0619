#include "noether/field.hpp"

#include "noether/error.hpp"

namespace noether {

Field Field::prime(const mpz_class& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw DomainError("field characteristic " + p.get_str() + " is not prime");
  return Field(Kind::prime, p);
}

Field Field::parse(const std::string& text) {
  if (text == "q" || text == "Q" || text == "rationals") return rationals();
  const std::string prefix = "fp:";
  if (text.rfind(prefix, 0) == 0) {
    mpz_class p;
    if (p.set_str(text.substr(prefix.size()), 10) != 0)
      throw ParseError("bad prime in field descriptor '" + text + "'");
    return prime(p);
  }
  throw ParseError("unknown field '" + text + "' (expected q or fp:<p>)");
}

Coeff Field::reduce(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
  return Coeff(r);
}

Coeff Field::from_int(long v) const { return from_mpz(mpz_class(v)); }

Coeff Field::from_mpz(const mpz_class& v) const {
  if (is_rationals()) return Coeff(v);
  return reduce(v);
}

Coeff Field::from_rational(const mpq_class& v) const {
  if (is_rationals()) return v;
  Coeff den = reduce(v.get_den());
  if (is_zero(den)) throw DomainError("denominator vanishes in " + to_string());
  return mul(reduce(v.get_num()), inv(den));
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
  if (is_rationals()) return a + b;
  return reduce(a.get_num() + b.get_num());
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const {
  if (is_rationals()) return a - b;
  return reduce(a.get_num() - b.get_num());
}

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
  if (is_rationals()) return a * b;
  return reduce(a.get_num() * b.get_num());
}

Coeff Field::neg(const Coeff& a) const {
  if (is_rationals()) return -a;
  return reduce(-a.get_num());
}

Coeff Field::inv(const Coeff& a) const {
  if (is_zero(a)) throw DomainError("division by zero in " + to_string());
  if (is_rationals()) return 1 / a;
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p_.get_mpz_t());
  return Coeff(r);
}

std::string Field::to_string() const {
  return is_rationals() ? std::string("q") : "fp:" + p_.get_str();
}

}  // namespace noether
