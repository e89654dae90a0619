#include "noether/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "noether/error.hpp"

namespace noether {

namespace {

int degrevlex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  long da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

MonomialOrder MonomialOrder::parse(const std::string& name) {
  if (name == "degrevlex" || name == "grevlex") return degrevlex();
  if (name == "lex") return lex();
  throw ParseError("unknown monomial order '" + name + "'");
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::degrevlex: return "degrevlex";
    case Kind::lex: return "lex";
    case Kind::block: return "block(" + std::to_string(block_) + ")";
  }
  return "?";
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  const std::size_t n = a.size();
  switch (kind_) {
    case Kind::degrevlex: return degrevlex_compare(a.data(), b.data(), n);
    case Kind::lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::block: {
      const std::size_t k = std::min(block_, n);
      if (int c = degrevlex_compare(a.data(), b.data(), k); c != 0) return c;
      return degrevlex_compare(a.data() + k, b.data() + k, n - k);
    }
  }
  return 0;
}

int monomial_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool monomial_divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents monomial_lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents monomial_quotient(const Exponents& b, const Exponents& a) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, monomial_degree(t.exp));
  return d;
}

bool Polynomial::is_constant() const {
  return terms_.size() == 1 && monomial_degree(terms_[0].exp) == 0;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Polynomial PolyRing::constant(const Coeff& c) const {
  return monomial(Exponents(nvars_, 0), c);
}

Polynomial PolyRing::variable(std::size_t i) const {
  Exponents e(nvars_, 0);
  e.at(i) = 1;
  return monomial(e, Coeff(1));
}

Polynomial PolyRing::monomial(const Exponents& e, const Coeff& c) const {
  Polynomial p;
  Coeff v = field_.from_rational(c);
  if (!field_.is_zero(v)) p.terms_.push_back({e, std::move(v)});
  return p;
}

Polynomial PolyRing::from_terms(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order_.compare(a.exp, b.exp) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    Coeff c = field_.from_rational(t.coeff);
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coeff = field_.add(p.terms_.back().coeff, c);
      if (field_.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    } else if (!field_.is_zero(c)) {
      p.terms_.push_back({std::move(t.exp), std::move(c)});
    }
  }
  return p;
}

Polynomial PolyRing::add(const Polynomial& a, const Polynomial& b) const {
  Polynomial r;
  r.terms_.reserve(a.size() + b.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    int c = order_.compare(i->exp, j->exp);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(*j++);
    } else {
      Coeff s = field_.add(i->coeff, j->coeff);
      if (!field_.is_zero(s)) r.terms_.push_back({i->exp, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, a.terms_.end());
  r.terms_.insert(r.terms_.end(), j, b.terms_.end());
  return r;
}

Polynomial PolyRing::neg(const Polynomial& a) const {
  Polynomial r = a;
  for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
  return r;
}

Polynomial PolyRing::sub(const Polynomial& a, const Polynomial& b) const { return add(a, neg(b)); }

Polynomial PolyRing::scale(const Polynomial& a, const Coeff& c) const {
  if (field_.is_zero(c)) return {};
  Polynomial r = a;
  for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
  return r;
}

Polynomial PolyRing::mul_term(const Polynomial& a, const Exponents& e, const Coeff& c) const {
  if (field_.is_zero(c)) return {};
  Polynomial r = a;
  for (auto& t : r.terms_) {
    for (std::size_t k = 0; k < nvars_; ++k) t.exp[k] += e[k];
    t.coeff = field_.mul(t.coeff, c);
  }
  return r;
}

Polynomial PolyRing::mul(const Polynomial& a, const Polynomial& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Exponents e(nvars_);
      for (std::size_t k = 0; k < nvars_; ++k) e[k] = s.exp[k] + t.exp[k];
      terms.push_back({std::move(e), field_.mul(s.coeff, t.coeff)});
    }
  }
  return from_terms(std::move(terms));
}

Polynomial PolyRing::pow(const Polynomial& a, unsigned n) const {
  Polynomial result = one();
  Polynomial base = a;
  while (n > 0) {
    if (n & 1u) result = mul(result, base);
    n >>= 1u;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

Polynomial PolyRing::product(std::span<const Polynomial> factors) const {
  Polynomial r = one();
  for (const auto& f : factors) r = mul(r, f);
  return r;
}

Polynomial PolyRing::monic(const Polynomial& a) const {
  if (a.is_zero()) return a;
  return scale(a, field_.inv(a.leading_coeff()));
}

Polynomial PolyRing::sub_mul_term(const Polynomial& a, const Exponents& m, const Coeff& c,
                                  const Polynomial& b) const {
  return add(a, mul_term(b, m, field_.neg(c)));
}

Polynomial PolyRing::normal_form(const Polynomial& p, std::span<const Polynomial> basis) const {
  Polynomial rest = p;
  std::vector<Term> out;
  while (!rest.is_zero()) {
    const Term& lt = rest.leading();
    const Polynomial* divisor = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && monomial_divides(g.leading_monomial(), lt.exp)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      out.push_back(lt);
      rest.terms_.erase(rest.terms_.begin());
      continue;
    }
    Coeff c = field_.div(lt.coeff, divisor->leading_coeff());
    rest = sub_mul_term(rest, monomial_quotient(lt.exp, divisor->leading_monomial()), c, *divisor);
  }
  Polynomial r;
  r.terms_ = std::move(out);
  return r;
}

bool PolyRing::divide_exact(const Polynomial& a, const Polynomial& b, Polynomial& quotient) const {
  if (b.is_zero()) throw DomainError("exact division by zero polynomial");
  Polynomial rest = a;
  std::vector<Term> q;
  while (!rest.is_zero()) {
    const Term& lt = rest.leading();
    if (!monomial_divides(b.leading_monomial(), lt.exp)) return false;
    Exponents m = monomial_quotient(lt.exp, b.leading_monomial());
    Coeff c = field_.div(lt.coeff, b.leading_coeff());
    rest = sub_mul_term(rest, m, c, b);
    q.push_back({std::move(m), std::move(c)});
  }
  quotient = from_terms(std::move(q));
  return true;
}

Polynomial PolyRing::prepend_vars(const Polynomial& p, std::size_t extra) const {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Exponents e(extra, 0);
    e.insert(e.end(), t.exp.begin(), t.exp.end());
    terms.push_back({std::move(e), t.coeff});
  }
  return from_terms(std::move(terms));
}

bool PolyRing::uses_leading_vars(const Polynomial& p, std::size_t count) const {
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < count; ++i)
      if (t.exp[i] != 0) return true;
  return false;
}

Polynomial PolyRing::drop_leading_vars(const Polynomial& p, std::size_t count) const {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    terms.push_back({Exponents(t.exp.begin() + static_cast<long>(count), t.exp.end()), t.coeff});
  }
  return from_terms(std::move(terms));
}

Polynomial PolyRing::substitute(const Polynomial& p, std::span<const Polynomial> images,
                                const PolyRing& target) const {
  if (images.size() != nvars_) throw DomainError("substitution needs one image per variable");
  Polynomial result;
  for (const auto& t : p.terms()) {
    Polynomial term = target.constant(t.coeff);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exp[i] != 0) term = target.mul(term, target.pow(images[i], static_cast<unsigned>(t.exp[i])));
    }
    result = target.add(result, term);
  }
  return result;
}

Coeff PolyRing::evaluate(const Polynomial& p, std::span<const Coeff> point) const {
  Coeff acc = field_.from_int(0);
  for (const auto& t : p.terms()) {
    Coeff v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::int32_t k = 0; k < t.exp[i]; ++k) v = field_.mul(v, point[i]);
    acc = field_.add(acc, v);
  }
  return acc;
}

Polynomial PolyRing::derivative(const Polynomial& p, std::size_t var) const {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coeff = field_.mul(t.coeff, field_.from_int(t.exp[var]));
    d.exp[var] -= 1;
    terms.push_back(std::move(d));
  }
  return from_terms(std::move(terms));
}

int PolyRing::degree_univariate(const Polynomial& p) const {
  return p.is_zero() ? -1 : p.leading_monomial()[0];
}

void PolyRing::divmod_univariate(const Polynomial& a, const Polynomial& b, Polynomial& q,
                                 Polynomial& r) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  q = {};
  r = a;
  const int db = degree_univariate(b);
  const Coeff inv_lc = field_.inv(b.leading_coeff());
  std::vector<Term> qt;
  while (!r.is_zero() && degree_univariate(r) >= db) {
    Exponents m{degree_univariate(r) - db};
    Coeff c = field_.mul(r.leading_coeff(), inv_lc);
    r = sub_mul_term(r, m, c, b);
    qt.push_back({std::move(m), std::move(c)});
  }
  q = from_terms(std::move(qt));
}

Polynomial PolyRing::gcd_univariate(const Polynomial& a, const Polynomial& b) const {
  Polynomial x = a, y = b, q, r;
  while (!y.is_zero()) {
    divmod_univariate(x, y, q, r);
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

}  // namespace noether
