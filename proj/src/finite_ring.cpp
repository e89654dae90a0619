#include "noether/finite_ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "noether/error.hpp"
#include "noether/parse.hpp"
#include "noether/polynomial.hpp"

namespace noether {

namespace {

void check_ring_size(std::size_t size, const Budget& budget) {
  if (size > budget.max_ring_size)
    throw ResourceError("max_ring_size", "finite ring of size " + std::to_string(size) +
                                             " exceeds the bound " +
                                             std::to_string(budget.max_ring_size));
}

void check_module_size(std::size_t size, const Budget& budget) {
  if (size > budget.max_module_size)
    throw ResourceError("max_module_size", "finite module of size " + std::to_string(size) +
                                               " exceeds the bound " +
                                               std::to_string(budget.max_module_size));
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

// --------------------------------------------------------------- FiniteRing

void FiniteRing::finish() {
  neg_.assign(size_, 0);
  for (Element a = 0; a < size_; ++a)
    for (Element b = 0; b < size_; ++b)
      if (add(a, b) == 0) neg_[a] = b;
}

FiniteRingPtr FiniteRing::integers_mod(unsigned n, const Budget& budget) {
  if (n < 1) throw DomainError("Z/n needs n >= 1");
  check_ring_size(n, budget);
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->size_ = n;
  r->one_ = n == 1 ? 0 : 1;
  r->add_.resize(std::size_t(n) * n);
  r->mul_.resize(std::size_t(n) * n);
  for (unsigned a = 0; a < n; ++a) {
    r->labels_.push_back(std::to_string(a));
    for (unsigned b = 0; b < n; ++b) {
      r->add_[a * n + b] = (a + b) % n;
      r->mul_[a * n + b] = static_cast<Element>((std::uint64_t(a) * b) % n);
    }
  }
  r->name_ = "Z/" + std::to_string(n);
  r->finish();
  return r;
}

FiniteRingPtr FiniteRing::poly_quotient(unsigned p, std::vector<unsigned> modulus,
                                        const Budget& budget) {
  Field field = Field::prime(p);
  while (!modulus.empty() && modulus.back() % p == 0) modulus.pop_back();
  if (modulus.size() < 2 || modulus.back() % p != 1)
    throw DomainError("F_p[x]/(f) needs a monic f of degree >= 1");
  const std::size_t deg = modulus.size() - 1;
  std::size_t size = 1;
  for (std::size_t i = 0; i < deg; ++i) {
    size *= p;
    check_ring_size(size, budget);
  }
  auto digits = [&](std::size_t idx) {
    std::vector<unsigned> c(deg);
    for (std::size_t i = 0; i < deg; ++i) {
      c[i] = idx % p;
      idx /= p;
    }
    return c;
  };
  auto index = [&](const std::vector<unsigned>& c) {
    std::size_t idx = 0;
    for (std::size_t i = deg; i-- > 0;) idx = idx * p + c[i];
    return static_cast<Element>(idx);
  };
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->size_ = size;
  r->one_ = 1;
  r->add_.resize(size * size);
  r->mul_.resize(size * size);
  PolyRing poly(field, 1);
  std::vector<std::string> xs{"x"};
  for (std::size_t a = 0; a < size; ++a) {
    auto ca = digits(a);
    std::vector<Term> terms;
    for (std::size_t i = 0; i < deg; ++i) terms.push_back({Exponents{std::int32_t(i)}, Coeff(ca[i])});
    r->labels_.push_back(format_polynomial(poly.from_terms(terms), xs));
    for (std::size_t b = 0; b < size; ++b) {
      auto cb = digits(b);
      std::vector<unsigned> sum(deg), prod(2 * deg, 0);
      for (std::size_t i = 0; i < deg; ++i) sum[i] = (ca[i] + cb[i]) % p;
      for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      for (std::size_t k = 2 * deg; k-- > deg;) {
        unsigned c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (std::size_t i = 0; i < deg; ++i)
          prod[k - deg + i] = (prod[k - deg + i] + (p - c) * modulus[i] % p) % p;
      }
      r->add_[a * size + b] = index(sum);
      r->mul_[a * size + b] = index(std::vector<unsigned>(prod.begin(), prod.begin() + long(deg)));
    }
  }
  std::vector<Term> mterms;
  for (std::size_t i = 0; i < modulus.size(); ++i)
    mterms.push_back({Exponents{std::int32_t(i)}, Coeff(modulus[i])});
  r->name_ = "F" + std::to_string(p) + "[x]/(" + format_polynomial(poly.from_terms(mterms), xs) + ")";
  r->finish();
  return r;
}

FiniteRingPtr FiniteRing::product(const std::vector<FiniteRingPtr>& factors, const Budget& budget) {
  if (factors.empty()) throw DomainError("product of no rings");
  if (factors.size() == 1) return factors[0];
  std::size_t size = 1;
  for (const auto& f : factors) {
    size *= f->size();
    check_ring_size(size, budget);
  }
  auto split = [&](std::size_t idx) {
    std::vector<Element> c(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      c[i] = static_cast<Element>(idx % factors[i]->size());
      idx /= factors[i]->size();
    }
    return c;
  };
  auto join = [&](const std::vector<Element>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i]->size() + c[i];
    return static_cast<Element>(idx);
  };
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->size_ = size;
  r->add_.resize(size * size);
  r->mul_.resize(size * size);
  std::vector<Element> ones;
  for (const auto& f : factors) ones.push_back(f->one());
  r->one_ = join(ones);
  for (std::size_t a = 0; a < size; ++a) {
    auto ca = split(a);
    std::string label = "(";
    for (std::size_t i = 0; i < ca.size(); ++i) label += (i ? "," : "") + factors[i]->label(ca[i]);
    r->labels_.push_back(label + ")");
    for (std::size_t b = 0; b < size; ++b) {
      auto cb = split(b);
      std::vector<Element> s(ca.size()), m(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) {
        s[i] = factors[i]->add(ca[i], cb[i]);
        m[i] = factors[i]->mul(ca[i], cb[i]);
      }
      r->add_[a * size + b] = join(s);
      r->mul_[a * size + b] = join(m);
    }
  }
  for (std::size_t i = 0; i < factors.size(); ++i) r->name_ += (i ? " x " : "") + factors[i]->name();
  r->finish();
  return r;
}

FiniteRingPtr FiniteRing::parse(const std::string& raw, const Budget& budget) {
  const std::string text = trim(raw);
  // Products: split on " x " at top level.
  std::vector<std::string> parts;
  std::size_t start = 0, depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && depth > 0) --depth;
    if (depth == 0 && text.compare(i, 3, " x ") == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 3;
    }
  }
  parts.push_back(text.substr(start));
  if (parts.size() > 1) {
    std::vector<FiniteRingPtr> factors;
    for (const auto& p : parts) factors.push_back(parse(p, budget));
    return product(factors, budget);
  }
  if (text.rfind("Z/", 0) == 0) {
    try {
      std::size_t used = 0;
      int n = std::stoi(text.substr(2), &used);
      if (used == text.size() - 2 && n >= 1) return integers_mod(unsigned(n), budget);
    } catch (const std::logic_error&) {
    }
    throw ParseError("bad ring '" + text + "' (expected Z/n with n >= 1)");
  }
  if (text.rfind("F", 0) == 0) {
    auto bracket = text.find("[x]/(");
    if (bracket != std::string::npos && text.back() == ')') {
      int p = 0;
      try {
        p = std::stoi(text.substr(1, bracket - 1));
      } catch (const std::logic_error&) {
        throw ParseError("bad prime in ring '" + text + "'");
      }
      if (p < 2) throw ParseError("bad prime in ring '" + text + "'");
      Field field = Field::prime(p);
      PolyRing poly(field, 1);
      std::string body = text.substr(bracket + 5, text.size() - bracket - 6);
      Polynomial f = parse_polynomial(body, {"x"}, poly);
      if (f.is_zero()) throw DomainError("modulus must be nonzero");
      f = poly.monic(f);
      std::vector<unsigned> coeffs(std::size_t(poly.degree_univariate(f)) + 1, 0);
      for (const auto& t : f.terms()) coeffs[std::size_t(t.exp[0])] = unsigned(t.coeff.get_num().get_ui());
      return poly_quotient(unsigned(p), coeffs, budget);
    }
  }
  throw ParseError("unrecognized finite ring '" + text + "'");
}

Element FiniteRing::element(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), trim(label));
  if (it == labels_.end()) throw ParseError("no element '" + label + "' in " + name_);
  return static_cast<Element>(it - labels_.begin());
}

// ------------------------------------------------------------- FiniteModule

FiniteModule make_module(FiniteRingPtr ring, std::size_t size, std::vector<Element> add,
                         std::vector<Element> action, std::vector<std::string> labels) {
  FiniteModule m;
  m.ring_ = std::move(ring);
  m.size_ = size;
  m.add_ = std::move(add);
  m.act_ = std::move(action);
  m.labels_ = std::move(labels);
  m.compute_negatives();
  return m;
}

void FiniteModule::compute_negatives() {
  neg_.assign(size_, 0);
  for (Element a = 0; a < size_; ++a)
    for (Element b = 0; b < size_; ++b)
      if (add(a, b) == 0) {
        neg_[a] = b;
        break;
      }
}

std::string FiniteModule::label(Element a) const {
  if (a < labels_.size()) return labels_[a];
  return "m" + std::to_string(a);
}

FiniteModule FiniteModule::from_tables(FiniteRingPtr ring, std::vector<Element> add,
                                       std::vector<Element> action, std::vector<std::string> labels,
                                       const Budget& budget) {
  std::size_t n = 0;
  while (n * n < add.size()) ++n;
  if (n == 0 || n * n != add.size()) throw ValidationError("addition table is not square");
  check_module_size(n, budget);
  if (action.size() != ring->size() * n)
    throw ValidationError("scalar table must have |R| rows of |M| entries");
  for (Element v : add)
    if (v >= n) throw ValidationError("addition table entry out of range");
  for (Element v : action)
    if (v >= n) throw ValidationError("scalar table entry out of range");
  if (!labels.empty() && labels.size() != n) throw ValidationError("label count differs from size");
  FiniteModule m = make_module(std::move(ring), n, std::move(add), std::move(action), std::move(labels));
  m.validate();
  return m;
}

void FiniteModule::validate() const {
  const FiniteRing& r = *ring_;
  auto fail = [](const std::string& axiom) { throw ValidationError("module axiom fails: " + axiom); };
  for (Element a = 0; a < size_; ++a) {
    if (add(0, a) != a || add(a, 0) != a) fail("0 is the additive identity");
    if (add(a, neg(a)) != 0) fail("additive inverses");
    if (scale(r.one(), a) != a) fail("1*m = m");
    for (Element b = 0; b < size_; ++b) {
      if (add(a, b) != add(b, a)) fail("commutativity of addition");
      for (Element c = 0; c < size_; ++c)
        if (add(add(a, b), c) != add(a, add(b, c))) fail("associativity of addition");
    }
  }
  for (Element x = 0; x < r.size(); ++x)
    for (Element a = 0; a < size_; ++a) {
      for (Element b = 0; b < size_; ++b)
        if (scale(x, add(a, b)) != add(scale(x, a), scale(x, b))) fail("r(m+n) = rm + rn");
      for (Element y = 0; y < r.size(); ++y) {
        if (scale(r.add(x, y), a) != add(scale(x, a), scale(y, a))) fail("(r+s)m = rm + sm");
        if (scale(r.mul(x, y), a) != scale(x, scale(y, a))) fail("(rs)m = r(sm)");
      }
    }
}

FiniteModule FiniteModule::zero(FiniteRingPtr ring) {
  std::size_t rs = ring->size();
  return make_module(std::move(ring), 1, {0}, std::vector<Element>(rs, 0), {"0"});
}

FiniteModule FiniteModule::regular(FiniteRingPtr ring) {
  const std::size_t n = ring->size();
  std::vector<Element> add(n * n), act(n * n);
  std::vector<std::string> labels;
  for (Element a = 0; a < n; ++a) {
    labels.push_back(ring->label(a));
    for (Element b = 0; b < n; ++b) {
      add[a * n + b] = ring->add(a, b);
      act[a * n + b] = ring->mul(a, b);
    }
  }
  return make_module(std::move(ring), n, std::move(add), std::move(act), std::move(labels));
}

FiniteModule FiniteModule::cyclic(FiniteRingPtr ring, const ElementSet& ideal) {
  FiniteModule r = regular(std::move(ring));
  if (!r.is_submodule(ideal)) throw ValidationError("R/I needs an ideal I");
  return r.quotient(ideal);
}

FiniteModule FiniteModule::free(FiniteRingPtr ring, std::size_t rank, const Budget& budget) {
  std::vector<FiniteModule> copies(rank, regular(ring));
  return direct_sum(ring, copies, budget).module;
}

ElementSet FiniteModule::span(const std::vector<Element>& generators) const {
  std::vector<char> seen(size_, 0);
  std::vector<Element> queue{0};
  seen[0] = 1;
  // Closure under adding scalar multiples of the generators.
  std::vector<Element> multiples;
  for (Element g : generators)
    for (Element r = 0; r < ring_->size(); ++r) multiples.push_back(scale(r, g));
  std::sort(multiples.begin(), multiples.end());
  multiples.erase(std::unique(multiples.begin(), multiples.end()), multiples.end());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Element x = queue[head];
    for (Element m : multiples) {
      Element y = add(x, m);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

bool FiniteModule::is_submodule(const ElementSet& subset) const {
  if (subset.empty() || subset.front() != 0) return false;
  std::vector<char> in(size_, 0);
  for (Element e : subset) {
    if (e >= size_) return false;
    in[e] = 1;
  }
  for (Element a : subset) {
    for (Element b : subset)
      if (!in[add(a, b)]) return false;
    for (Element r = 0; r < ring_->size(); ++r)
      if (!in[scale(r, a)]) return false;
  }
  return true;
}

std::vector<Element> FiniteModule::greedy_generators(const ElementSet& submodule) const {
  std::vector<Element> gens;
  ElementSet current{0};
  for (Element e : submodule) {
    if (std::binary_search(current.begin(), current.end(), e)) continue;
    gens.push_back(e);
    current = span(gens);
  }
  return gens;
}

std::vector<Element> FiniteModule::generators() const {
  ElementSet all(size_);
  std::iota(all.begin(), all.end(), 0);
  return greedy_generators(all);
}

FiniteModule FiniteModule::submodule(const ElementSet& subset) const {
  if (!is_submodule(subset)) throw ValidationError("subset is not a submodule");
  const std::size_t n = subset.size();
  std::map<Element, Element> index;
  for (std::size_t i = 0; i < n; ++i) index[subset[i]] = static_cast<Element>(i);
  std::vector<Element> add_t(n * n), act(ring_->size() * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(label(subset[i]));
    for (std::size_t j = 0; j < n; ++j) add_t[i * n + j] = index.at(add(subset[i], subset[j]));
    for (Element r = 0; r < ring_->size(); ++r) act[r * n + i] = index.at(scale(r, subset[i]));
  }
  return make_module(ring_, n, std::move(add_t), std::move(act), std::move(labels));
}

FiniteModule FiniteModule::quotient(const ElementSet& sub, ModuleMap* projection) const {
  if (!is_submodule(sub)) throw ValidationError("quotient needs a submodule");
  // Congruence closure of a ~ a + n: classes are cosets, numbered by least member.
  std::vector<Element> cls(size_, Element(-1));
  std::vector<Element> reps;
  for (Element a = 0; a < size_; ++a) {
    if (cls[a] != Element(-1)) continue;
    Element id = static_cast<Element>(reps.size());
    reps.push_back(a);
    for (Element n : sub) cls[add(a, n)] = id;
  }
  const std::size_t q = reps.size();
  std::vector<Element> add_t(q * q), act(ring_->size() * q);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < q; ++i) {
    labels.push_back(sub.size() == 1 ? label(reps[i]) : "[" + label(reps[i]) + "]");
    for (std::size_t j = 0; j < q; ++j) add_t[i * q + j] = cls[add(reps[i], reps[j])];
    for (Element r = 0; r < ring_->size(); ++r) act[r * q + i] = cls[scale(r, reps[i])];
  }
  if (projection) *projection = cls;
  return make_module(ring_, q, std::move(add_t), std::move(act), std::move(labels));
}

// ---------------------------------------------------------------- searches

std::vector<ElementSet> enumerate_submodules(const FiniteModule& module, const Budget& budget) {
  check_module_size(module.size(), budget);
  std::set<ElementSet> found{ElementSet{0}};
  std::vector<ElementSet> frontier{ElementSet{0}};
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& sub : frontier) {
      std::vector<char> in(module.size(), 0);
      for (Element e : sub) in[e] = 1;
      auto gens = module.greedy_generators(sub);
      // sub + Rx depends only on the cyclic submodule Rx.
      std::set<ElementSet> cyclic;
      for (Element x = 0; x < module.size(); ++x) {
        if (in[x]) continue;
        ElementSet rx;
        for (Element r = 0; r < module.ring()->size(); ++r) rx.push_back(module.scale(r, x));
        std::sort(rx.begin(), rx.end());
        rx.erase(std::unique(rx.begin(), rx.end()), rx.end());
        if (!cyclic.insert(std::move(rx)).second) continue;
        auto g = gens;
        g.push_back(x);
        ElementSet bigger = module.span(g);
        if (found.insert(bigger).second) next.push_back(std::move(bigger));
      }
    }
    frontier = std::move(next);
  }
  std::vector<ElementSet> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const ElementSet& a, const ElementSet& b) { return a.size() < b.size(); });
  return out;
}

std::vector<ElementSet> enumerate_ideals(const FiniteRing& ring, const Budget& budget) {
  check_ring_size(ring.size(), budget);
  std::lock_guard lock(ring.ideal_cache_->mutex);
  if (!ring.ideal_cache_->ideals) {
    // The table-driven module machinery needs shared ownership; copy the ring.
    auto copy = std::make_shared<FiniteRing>(ring);
    ring.ideal_cache_->ideals = enumerate_submodules(FiniteModule::regular(copy), budget);
  }
  return *ring.ideal_cache_->ideals;
}

NoetherianReport noetherian_witness(const FiniteRing& ring, const std::vector<ElementSet>& family,
                                    const Budget& budget) {
  if (family.empty()) throw ValidationError("noetherian_witness needs a nonempty family of ideals");
  auto copy = std::make_shared<FiniteRing>(ring);
  FiniteModule r = FiniteModule::regular(copy);
  NoetherianReport report;
  for (std::size_t i = 0; i < family.size(); ++i) {
    ElementSet s = family[i];
    std::sort(s.begin(), s.end());
    if (!r.is_submodule(s))
      throw ValidationError("family member " + std::to_string(i) + " is not an ideal");
    auto gens = r.greedy_generators(s);
    if (r.span(gens) != s) throw ValidationError("internal: generator extraction failed");
    report.generators.push_back(std::move(gens));
  }
  auto contains = [&](std::size_t big, std::size_t small) {
    return std::includes(family[big].begin(), family[big].end(), family[small].begin(),
                         family[small].end());
  };
  // Longest strict chain: DP over members sorted by size.
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return family[a].size() < family[b].size(); });
  std::vector<std::size_t> best(family.size(), 1);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (family[order[j]].size() < family[order[i]].size() && contains(order[i], order[j]))
        best[order[i]] = std::max(best[order[i]], best[order[j]] + 1);
  report.longest_strict_chain = *std::max_element(best.begin(), best.end());
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < family.size() && maximal; ++j)
      if (family[j].size() > family[i].size() && contains(j, i)) maximal = false;
    if (maximal) report.maximal.push_back(i);
  }
  report.ideal_count = enumerate_ideals(ring, budget).size();
  return report;
}

DirectSum direct_sum(const FiniteRingPtr& ring, const std::vector<FiniteModule>& summands,
                     const Budget& budget) {
  std::size_t size = 1;
  for (const auto& m : summands) {
    if (!(*m.ring() == *ring)) throw DomainError("direct_sum: summands over different rings");
    size *= m.size();
    check_module_size(size, budget);
  }
  const std::size_t k = summands.size();
  auto split = [&](std::size_t idx) {
    std::vector<Element> c(k);
    for (std::size_t i = k; i-- > 0;) {
      c[i] = static_cast<Element>(idx % summands[i].size());
      idx /= summands[i].size();
    }
    return c;
  };
  auto join = [&](const std::vector<Element>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx = idx * summands[i].size() + c[i];
    return static_cast<Element>(idx);
  };
  std::vector<Element> add_t(size * size), act(ring->size() * size);
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> coords(size);
  for (std::size_t a = 0; a < size; ++a) coords[a] = split(a);
  for (std::size_t a = 0; a < size; ++a) {
    std::string label = "(";
    for (std::size_t i = 0; i < k; ++i) label += (i ? "," : "") + summands[i].label(coords[a][i]);
    labels.push_back(label + ")");
    std::vector<Element> c(k);
    for (std::size_t b = 0; b < size; ++b) {
      for (std::size_t i = 0; i < k; ++i) c[i] = summands[i].add(coords[a][i], coords[b][i]);
      add_t[a * size + b] = join(c);
    }
    for (Element r = 0; r < ring->size(); ++r) {
      for (std::size_t i = 0; i < k; ++i) c[i] = summands[i].scale(r, coords[a][i]);
      act[r * size + a] = join(c);
    }
  }
  DirectSum out{make_module(ring, size, std::move(add_t), std::move(act), std::move(labels)), {}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    ModuleMap inj(summands[i].size()), proj(size);
    for (Element x = 0; x < summands[i].size(); ++x) {
      std::vector<Element> c(k, 0);
      c[i] = x;
      inj[x] = join(c);
    }
    for (std::size_t a = 0; a < size; ++a) proj[a] = coords[a][i];
    out.injections.push_back(std::move(inj));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

bool is_linear(const FiniteModule& source, const FiniteModule& target, const ModuleMap& map) {
  if (map.size() != source.size()) return false;
  for (Element a = 0; a < source.size(); ++a) {
    for (Element b = 0; b < source.size(); ++b)
      if (map[source.add(a, b)] != target.add(map[a], map[b])) return false;
    for (Element r = 0; r < source.ring()->size(); ++r)
      if (map[source.scale(r, a)] != target.scale(r, map[a])) return false;
  }
  return true;
}

bool is_injective(const ModuleMap& map) {
  std::vector<Element> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<ModuleMap> module_homs(const FiniteModule& source, const FiniteModule& target,
                                   const std::vector<Element>& generators,
                                   std::uint64_t max_candidates) {
  if (!(*source.ring() == *target.ring())) throw DomainError("module_homs: different rings");
  if (source.span(generators).size() != source.size())
    throw ValidationError("module_homs: listed elements do not generate the source");
  const std::size_t k = generators.size();
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < k; ++i) {
    candidates *= target.size();
    if (candidates > max_candidates)
      throw ResourceError("hom_candidates", "Hom search needs more than " +
                                                std::to_string(max_candidates) + " candidates");
  }
  const std::size_t rs = source.ring()->size();
  // Pre-build the scalar multiples r*g_i as (source element, ring element) steps.
  std::vector<ModuleMap> result;
  std::vector<Element> images(k, 0);
  ModuleMap phi(source.size());
  std::vector<char> known(source.size());
  for (std::uint64_t c = 0; c < candidates; ++c) {
    std::uint64_t rest = c;
    for (std::size_t i = 0; i < k; ++i) {
      images[i] = static_cast<Element>(rest % target.size());
      rest /= target.size();
    }
    std::fill(known.begin(), known.end(), 0);
    phi[0] = 0;
    known[0] = 1;
    std::vector<Element> queue{0};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      Element x = queue[head];
      for (std::size_t i = 0; i < k && ok; ++i) {
        for (Element r = 0; r < rs && ok; ++r) {
          Element y = source.add(x, source.scale(r, generators[i]));
          Element v = target.add(phi[x], target.scale(r, images[i]));
          if (!known[y]) {
            known[y] = 1;
            phi[y] = v;
            queue.push_back(y);
          } else if (phi[y] != v) {
            ok = false;
          }
        }
      }
    }
    if (ok) result.push_back(phi);
  }
  return result;
}

std::vector<ModuleMap> module_homs(const FiniteModule& source, const FiniteModule& target,
                                   std::uint64_t max_candidates) {
  return module_homs(source, target, source.generators(), max_candidates);
}

IdealHoms hom_from_ideal(const FiniteRing& ring, const std::vector<Element>& generators,
                         const FiniteModule& module, const Budget& budget) {
  if (!(*module.ring() == ring)) throw DomainError("hom_from_ideal: module over a different ring");
  check_ring_size(ring.size(), budget);
  FiniteModule r = FiniteModule::regular(module.ring());
  for (Element g : generators)
    if (g >= ring.size()) throw ValidationError("ideal generator out of range");
  IdealHoms out;
  out.ideal = r.span(generators);
  FiniteModule sub = r.submodule(out.ideal);
  std::vector<Element> local_gens;
  for (Element g : generators)
    local_gens.push_back(static_cast<Element>(
        std::lower_bound(out.ideal.begin(), out.ideal.end(), g) - out.ideal.begin()));
  if (local_gens.empty()) local_gens.push_back(0);
  out.maps = module_homs(sub, module, local_gens);
  return out;
}

}  // namespace noether
