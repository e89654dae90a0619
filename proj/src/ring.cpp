#include "noether/ring.hpp"

#include "noether/error.hpp"
#include "noether/parse.hpp"

namespace noether {

// ---------------------------------------------------------------- polyideal

namespace polyideal {

namespace {

PolyRing with_aux_variable(const PolyRing& ring) {
  return PolyRing(ring.field(), ring.nvars() + 1, MonomialOrder::block(1));
}

std::vector<Polynomial> lift(const PolyRing& big, const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(big.prepend_vars(g, 1));
  return out;
}

Polynomial univariate_generator(const PolyRing& ring, const std::vector<Polynomial>& gens) {
  Polynomial g;
  for (const auto& p : gens) g = ring.gcd_univariate(g, p);
  return g;
}

std::vector<Polynomial> as_basis(const Polynomial& g) {
  if (g.is_zero()) return {};
  return {g};
}

}  // namespace

std::vector<Polynomial> saturate(const PolyRing& ring, std::vector<Polynomial> gens,
                                 const Polynomial& f, const Budget& budget) {
  if (f.is_zero()) throw DomainError("saturation at the zero element");
  if (ring.nvars() == 1) {
    Polynomial g = univariate_generator(ring, gens);
    if (g.is_zero()) return {};
    Polynomial d = ring.gcd_univariate(g, f), q, r;
    while (ring.degree_univariate(d) > 0) {
      ring.divmod_univariate(g, d, q, r);
      g = ring.monic(q);
      d = ring.gcd_univariate(g, f);
    }
    return as_basis(g);
  }
  PolyRing big = with_aux_variable(ring);
  std::vector<Polynomial> lifted = lift(big, gens);
  Polynomial tf = big.mul(big.variable(0), big.prepend_vars(f, 1));
  lifted.push_back(big.sub(big.one(), tf));
  return eliminate(big, std::move(lifted), 1, ring, budget);
}

std::vector<Polynomial> intersect(const PolyRing& ring, std::vector<Polynomial> a,
                                  std::vector<Polynomial> b, const Budget& budget) {
  if (ring.nvars() == 1) {
    Polynomial ga = univariate_generator(ring, a), gb = univariate_generator(ring, b);
    if (ga.is_zero() || gb.is_zero()) return {};
    Polynomial d = ring.gcd_univariate(ga, gb), q, r;
    ring.divmod_univariate(ring.mul(ga, gb), d, q, r);
    return as_basis(ring.monic(q));
  }
  PolyRing big = with_aux_variable(ring);
  const Polynomial t = big.variable(0);
  const Polynomial one_minus_t = big.sub(big.one(), t);
  std::vector<Polynomial> gens;
  for (const auto& p : lift(big, a)) gens.push_back(big.mul(t, p));
  for (const auto& p : lift(big, b)) gens.push_back(big.mul(one_minus_t, p));
  return eliminate(big, std::move(gens), 1, ring, budget);
}

std::vector<Polynomial> colon(const PolyRing& ring, std::vector<Polynomial> gens,
                              const Polynomial& g, const Budget& budget) {
  if (g.is_zero()) return {ring.one()};
  if (ring.nvars() == 1) {
    Polynomial h = univariate_generator(ring, gens);
    if (h.is_zero()) return {};
    Polynomial d = ring.gcd_univariate(h, g), q, r;
    ring.divmod_univariate(h, d, q, r);
    return as_basis(ring.monic(q));
  }
  std::vector<Polynomial> meet = intersect(ring, std::move(gens), {g}, budget);
  std::vector<Polynomial> out;
  for (const auto& p : meet) {
    Polynomial q;
    if (!ring.divide_exact(p, g, q)) throw DomainError("internal: colon quotient not exact");
    out.push_back(q);
  }
  return groebner_basis(ring, std::move(out), budget);
}

bool radical_contains(const PolyRing& ring, std::vector<Polynomial> gens, const Polynomial& f,
                      const Budget& budget) {
  if (f.is_zero()) return true;
  if (ring.nvars() <= 1) {
    if (ring.nvars() == 0) return groebner_basis(ring, gens, budget).size() == 1;
    return is_unit_basis(saturate(ring, std::move(gens), f, budget));
  }
  PolyRing big = with_aux_variable(ring);
  std::vector<Polynomial> lifted = lift(big, gens);
  Polynomial tf = big.mul(big.variable(0), big.prepend_vars(f, 1));
  lifted.push_back(big.sub(big.one(), tf));
  return is_unit_basis(buchberger(big, std::move(lifted), budget));
}

}  // namespace polyideal

// ------------------------------------------------------------ PresentedRing

PresentedRing::PresentedRing(PolyRing poly, std::vector<std::string> vars,
                             std::vector<Polynomial> quotient, std::vector<Polynomial> inverted)
    : poly_(std::move(poly)),
      vars_(std::move(vars)),
      quotient_(std::move(quotient)),
      inverted_(std::move(inverted)) {}

RingPtr PresentedRing::make(Field field, std::vector<std::string> vars, MonomialOrder order,
                            std::vector<Polynomial> quotient, std::vector<Polynomial> inverted) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    bool ok = !v.empty() && v[0] >= 'a' && v[0] <= 'z';
    for (std::size_t k = 1; ok && k < v.size(); ++k) ok = v[k] >= '0' && v[k] <= '9';
    if (!ok) throw ParseError("bad variable name '" + v + "' (expected [a-z][0-9]*)");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[j] == v) throw ParseError("duplicate variable '" + v + "'");
  }
  PolyRing poly(field, vars.size(), order);
  for (auto* list : {&quotient, &inverted}) {
    for (auto& p : *list) {
      for (const auto& t : p.terms())
        if (t.exp.size() != vars.size())
          throw DomainError("polynomial uses a different number of variables than the ring");
      p = poly.reorder(p);
    }
  }
  auto ring = std::shared_ptr<PresentedRing>(
      new PresentedRing(poly, std::move(vars), std::move(quotient), std::move(inverted)));
  ring->quotient_basis_ = groebner_basis(poly, ring->quotient_);
  for (const auto& s : ring->inverted_) {
    if (poly.normal_form(s, ring->quotient_basis_).is_zero())
      throw DomainError("inverted element " + ring->format(s) + " is zero modulo the quotient");
  }
  return ring;
}

RingPtr PresentedRing::parse(Field field, std::vector<std::string> vars,
                             const std::vector<std::string>& quotient,
                             const std::vector<std::string>& inverted, MonomialOrder order) {
  PolyRing poly(field, vars.size(), order);
  std::vector<Polynomial> q, s;
  for (const auto& t : quotient) q.push_back(noether::parse_polynomial(t, vars, poly));
  for (const auto& t : inverted) s.push_back(noether::parse_polynomial(t, vars, poly));
  return make(std::move(field), std::move(vars), order, std::move(q), std::move(s));
}

Polynomial PresentedRing::parse_polynomial(std::string_view text) const {
  return noether::parse_polynomial(text, vars_, poly_);
}

std::string PresentedRing::format(const Polynomial& p) const { return format_polynomial(p, vars_); }

Polynomial PresentedRing::inverted_product() const { return poly_.product(inverted_); }

RingPtr PresentedRing::localized_at(const Polynomial& f) const {
  std::vector<Polynomial> inv = inverted_;
  inv.push_back(f);
  return make(field(), vars_, order(), quotient_, std::move(inv));
}

RingPtr PresentedRing::without_localization() const {
  return make(field(), vars_, order(), quotient_, {});
}

bool operator==(const PresentedRing& a, const PresentedRing& b) {
  return a.field() == b.field() && a.vars_ == b.vars_ && a.order() == b.order() &&
         a.quotient_ == b.quotient_ && a.inverted_ == b.inverted_;
}

std::string PresentedRing::describe() const {
  std::string out = field().to_string() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) out += (i ? "," : "") + vars_[i];
  out += "]";
  if (!quotient_.empty()) {
    out += "/(";
    for (std::size_t i = 0; i < quotient_.size(); ++i) out += (i ? ", " : "") + format(quotient_[i]);
    out += ")";
  }
  if (!inverted_.empty()) {
    out += " inverting {";
    for (std::size_t i = 0; i < inverted_.size(); ++i) out += (i ? ", " : "") + format(inverted_[i]);
    out += "}";
  }
  return out;
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw DomainError(std::string(what) + ": operands live in different rings");
}

// -------------------------------------------------------------- IdealHandle

IdealHandle::IdealHandle(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  if (!ring_) throw DomainError("ideal without a ring");
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    if (g.terms().front().exp.size() != ring_->nvars())
      throw DomainError("generator has the wrong number of variables");
    generators_.push_back(ring_->poly().reorder(g));
  }
}

IdealHandle IdealHandle::parse(RingPtr ring, const std::vector<std::string>& generators) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(ring->parse_polynomial(g));
  return IdealHandle(std::move(ring), std::move(gens));
}

IdealHandle IdealHandle::unit(RingPtr ring) {
  Polynomial one = ring->poly().one();
  return IdealHandle(std::move(ring), {one});
}

const std::vector<Polynomial>& IdealHandle::canonical_basis(const Budget& budget) const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->canonical) {
    const PolyRing& poly = ring_->poly();
    std::vector<Polynomial> gens = generators_;
    gens.insert(gens.end(), ring_->quotient_basis().begin(), ring_->quotient_basis().end());
    std::vector<Polynomial> basis = groebner_basis(poly, std::move(gens), budget);
    for (const auto& s : ring_->inverted()) {
      if (basis.empty() || is_unit_basis(basis)) break;
      basis = polyideal::saturate(poly, std::move(basis), s, budget);
    }
    cache_->canonical = std::move(basis);
  }
  return *cache_->canonical;
}

std::vector<std::string> IdealHandle::format_generators() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) out.push_back(ring_->format(g));
  return out;
}

// --------------------------------------------------------------- operations

std::vector<Polynomial> groebner_basis(const IdealHandle& ideal, bool canonical,
                                       const Budget& budget) {
  if (canonical) return ideal.canonical_basis(budget);
  if (!ideal.ring()->inverted().empty())
    throw DomainError("groebner_basis on a localized ring requires the canonical (saturated) basis");
  return ideal.canonical_basis(budget);
}

bool ideal_membership(const Polynomial& p, const IdealHandle& ideal, const Budget& budget) {
  const auto& basis = ideal.canonical_basis(budget);
  const PolyRing& poly = ideal.ring()->poly();
  return poly.normal_form(poly.reorder(p), basis).is_zero();
}

bool ideal_contains(const IdealHandle& big, const IdealHandle& small, const Budget& budget) {
  require_same_ring(big.ring(), small.ring(), "ideal_contains");
  for (const auto& g : small.canonical_basis(budget))
    if (!ideal_membership(g, big, budget)) return false;
  return true;
}

bool ideal_equal(const IdealHandle& a, const IdealHandle& b, const Budget& budget) {
  require_same_ring(a.ring(), b.ring(), "ideal_equal");
  return a.canonical_basis(budget) == b.canonical_basis(budget);
}

bool is_unit_ideal(const IdealHandle& ideal, const Budget& budget) {
  return is_unit_basis(ideal.canonical_basis(budget));
}

CombineOp parse_combine_op(const std::string& name) {
  if (name == "sum") return CombineOp::sum;
  if (name == "product") return CombineOp::product;
  if (name == "intersection") return CombineOp::intersection;
  throw ParseError("unknown ideal combination '" + name + "'");
}

IdealHandle ideal_combine(CombineOp op, const IdealHandle& a, const IdealHandle& b,
                          const Budget& budget) {
  require_same_ring(a.ring(), b.ring(), "ideal_combine");
  const PolyRing& poly = a.ring()->poly();
  switch (op) {
    case CombineOp::sum: {
      std::vector<Polynomial> gens = a.generators();
      gens.insert(gens.end(), b.generators().begin(), b.generators().end());
      return IdealHandle(a.ring(), std::move(gens));
    }
    case CombineOp::product: {
      std::vector<Polynomial> gens;
      for (const auto& p : a.generators())
        for (const auto& q : b.generators()) gens.push_back(poly.mul(p, q));
      return IdealHandle(a.ring(), std::move(gens));
    }
    case CombineOp::intersection:
      return IdealHandle(a.ring(), polyideal::intersect(poly, a.canonical_basis(budget),
                                                        b.canonical_basis(budget), budget));
  }
  throw DomainError("unknown combination");
}

IdealHandle saturate(const IdealHandle& ideal, const Polynomial& f, const Budget& budget) {
  const PolyRing& poly = ideal.ring()->poly();
  return IdealHandle(ideal.ring(),
                     polyideal::saturate(poly, ideal.canonical_basis(budget), poly.reorder(f), budget));
}

IdealHandle colon(const IdealHandle& ideal, const Polynomial& g, const Budget& budget) {
  const PolyRing& poly = ideal.ring()->poly();
  return IdealHandle(ideal.ring(),
                     polyideal::colon(poly, ideal.canonical_basis(budget), poly.reorder(g), budget));
}

bool radical_membership(const Polynomial& f, const IdealHandle& ideal, const Budget& budget) {
  const PolyRing& poly = ideal.ring()->poly();
  return polyideal::radical_contains(poly, ideal.canonical_basis(budget), poly.reorder(f), budget);
}

}  // namespace noether
