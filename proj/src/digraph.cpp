#include "noether/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "noether/error.hpp"

namespace noether {

namespace {

std::string edge_name(std::size_t p, std::size_t c) {
  return "edge " + std::to_string(p) + "->" + std::to_string(c);
}

std::string ideal_text(const IdealHandle& ideal) {
  auto gens = ideal.format_generators();
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ")";
}

using Subsets = std::vector<std::vector<std::size_t>>;

/// Every subset of the nodes that contains the root, as index lists.
Subsets subsets_with_root(const IdealDigraph& d, const Budget& budget) {
  const std::size_t n = d.nodes.size();
  if (n > budget.max_digraph_nodes)
    throw ResourceError("max_digraph_nodes", "digraph has " + std::to_string(n) +
                                                 " nodes; the bound is " +
                                                 std::to_string(budget.max_digraph_nodes));
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i)
    if (i != d.root) others.push_back(i);
  Subsets out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << others.size()); ++mask) {
    std::vector<std::size_t> s{d.root};
    for (std::size_t k = 0; k < others.size(); ++k)
      if ((mask >> k) & 1) s.push_back(others[k]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> IdealDigraph::children(std::size_t node) const {
  std::vector<std::size_t> out;
  for (auto [p, c] : edges)
    if (p == node) out.push_back(c);
  return out;
}

bool DigraphReport::valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.ok; });
}

const InvariantCheck& DigraphReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw DomainError("no invariant named '" + name + "'");
}

std::string DigraphReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return c.name + ": " + c.witness;
  return {};
}

IdealHandle localize_to(const IdealHandle& ideal, const DistinguishedOpen& u, const Budget& budget) {
  return ideal.in_ring(coordinate_ring(u, budget));
}

DigraphReport validate_digraph(const IdealDigraph& d, const Budget& budget) {
  DigraphReport report;
  InvariantCheck global{"global", true, {}}, functional{"functional", true, {}},
      decreasing{"decreasing", true, {}},
      increasing{"increasing", true, {}}, structural{"structural", true, {}};
  auto fail = [](InvariantCheck& c, std::string witness) {
    if (!c.ok) return;
    c.ok = false;
    c.witness = std::move(witness);
  };
  const std::size_t n = d.nodes.size();

  // Structural first: later checks skip malformed edges and nodes.
  std::vector<char> usable(n, 1);
  if (n == 0) fail(structural, "the digraph has no nodes");
  if (n > 0 && d.root >= n) fail(structural, "root index " + std::to_string(d.root) + " out of range");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = d.nodes[i];
    if (!(*node.open.ring == *d.ring) || !(*node.ideal.ring() == *d.ring)) {
      fail(structural, "node " + std::to_string(i) + " lives in a different ring");
      usable[i] = 0;
    } else if (open_is_empty(node.open, budget)) {
      fail(structural, "node " + std::to_string(i) + " has the empty open " + node.open.describe());
      usable[i] = 0;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [p, c] : d.edges) {
    if (p >= n || c >= n) {
      fail(structural, edge_name(p, c) + " names a missing node");
      continue;
    }
    if (p == c) fail(structural, edge_name(p, c) + " is a loop");
    if (!seen.insert({p, c}).second) fail(structural, edge_name(p, c) + " is repeated");
    if (c == d.root) fail(structural, edge_name(p, c) + " enters the root");
    edges.push_back({p, c});
  }
  if (structural.ok) {
    std::vector<int> state(n, 0);
    std::vector<std::vector<std::size_t>> out(n);
    for (auto [p, c] : edges) out[p].push_back(c);
    bool cyclic = false;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
      state[v] = 1;
      for (std::size_t w : out[v]) {
        if (state[w] == 1) cyclic = true;
        if (state[w] == 0) visit(w);
      }
      state[v] = 2;
    };
    visit(d.root);
    for (std::size_t i = 0; i < n; ++i)
      if (state[i] == 0) {
        fail(structural, "node " + std::to_string(i) + " is not reachable from the root");
        break;
      }
    if (cyclic) fail(structural, "the edges contain a directed cycle");
  }

  if (d.root < n && usable[d.root]) {
    const auto& root = d.nodes[d.root];
    if (!open_equal(root.open, DistinguishedOpen::whole(d.ring), budget))
      fail(global, "root open " + root.open.describe() + " is not the whole spectrum");
  } else {
    fail(global, "no usable root");
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (usable[i] && usable[j] && open_equal(d.nodes[i].open, d.nodes[j].open, budget))
        fail(functional, "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                             " share the open " + d.nodes[i].open.describe());

  for (auto [p, c] : edges) {
    if (!usable[p] || !usable[c]) continue;
    const auto& parent = d.nodes[p];
    const auto& child = d.nodes[c];
    if (!open_contains(parent.open, child.open, budget) ||
        open_contains(child.open, parent.open, budget)) {
      fail(decreasing, edge_name(p, c) + ": " + child.open.describe() + " is not strictly inside " +
                           parent.open.describe());
      continue;
    }
    IdealHandle k = localize_to(child.ideal, child.open, budget);
    IdealHandle h = localize_to(parent.ideal, child.open, budget);
    if (!ideal_contains(k, h, budget))
      fail(increasing, edge_name(p, c) + ": " + ideal_text(child.ideal) +
                           " does not contain the localization of " + ideal_text(parent.ideal) +
                           " to " + child.open.describe());
    else if (ideal_contains(h, k, budget))
      fail(increasing, edge_name(p, c) + ": the localization of " + ideal_text(parent.ideal) +
                           " to " + child.open.describe() + " already equals " +
                           ideal_text(child.ideal));
  }

  report.checks = {global, functional, decreasing, increasing, structural};
  return report;
}

void require_valid(const IdealDigraph& d, const Budget& budget) {
  auto report = validate_digraph(d, budget);
  if (!report.valid()) throw ValidationError("invalid digraph: " + report.first_failure());
}

IdealDigraph clear_denominators(const RingPtr& ring, const std::vector<FractionalNode>& nodes,
                                std::vector<std::pair<std::size_t, std::size_t>> edges,
                                std::size_t root, const Budget& budget) {
  IdealDigraph d{ring, {}, std::move(edges), root};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    RingPtr local = coordinate_ring(node.open, budget);
    std::vector<Polynomial> numerators;
    for (const auto& g : node.generators) {
      if (g.denominator.is_zero())
        throw DomainError("node " + std::to_string(i) + ": zero denominator");
      if (!is_unit_ideal(IdealHandle(local, {g.denominator}), budget))
        throw DomainError("node " + std::to_string(i) + ": denominator " +
                          ring->format(g.denominator) + " is not a unit on " +
                          node.open.describe());
      numerators.push_back(g.numerator);
    }
    d.nodes.push_back({node.open, IdealHandle(ring, numerators)});
  }
  return d;
}

bool section_membership(const IdealDigraph& d, const DistinguishedOpen& u,
                        const Polynomial& numerator, const Budget& budget) {
  require_valid(d, budget);
  require_same_ring(d.ring, u.ring, "section_membership");
  if (open_is_empty(u, budget)) throw DomainError("section_membership over the empty open");
  const PolyRing& poly = d.ring->poly();
  Polynomial s = poly.reorder(numerator);
  if (s.is_zero()) return true;
  const auto& q = d.ring->quotient_basis();
  Polynomial base = poly.mul(u.f, d.ring->inverted_product());
  for (const auto& subset : subsets_with_root(d, budget)) {
    std::vector<char> in(d.nodes.size(), 0);
    for (std::size_t i : subset) in[i] = 1;
    Polynomial stratum = base;
    std::vector<Polynomial> outside(q.begin(), q.end());
    std::vector<Polynomial> sum(q.begin(), q.end());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      if (in[i]) {
        stratum = poly.mul(stratum, d.nodes[i].open.f);
        for (const auto& g : d.nodes[i].ideal.generators()) sum.push_back(g);
      } else {
        outside.push_back(d.nodes[i].open.f);
      }
    }
    // Points of u with exactly these nodes applicable; skip when there are none.
    if (polyideal::radical_contains(poly, outside, stratum, budget)) continue;
    std::vector<Polynomial> test = polyideal::colon(poly, groebner_basis(poly, sum, budget), s, budget);
    test.insert(test.end(), outside.begin(), outside.end());
    if (!polyideal::radical_contains(poly, std::move(test), stratum, budget)) return false;
  }
  return true;
}

bool section_membership(const IdealDigraph& d, const DistinguishedOpen& u, const Fraction& section,
                        const Budget& budget) {
  if (section.denominator.is_zero()) throw DomainError("section with zero denominator");
  if (!is_unit_ideal(IdealHandle(coordinate_ring(u, budget), {section.denominator}), budget))
    throw DomainError("denominator " + u.ring->format(section.denominator) + " is not a unit on " +
                      u.describe());
  return section_membership(d, u, section.numerator, budget);
}

// ----------------------------------------------------------- evaluate_sheaf

namespace {

/// Pairwise coprime monic polynomials of positive degree such that every
/// input is a unit times a product of their powers.
std::vector<Polynomial> coprime_base(const PolyRing& poly, const std::vector<Polynomial>& inputs) {
  std::vector<Polynomial> base;
  for (const auto& p : inputs)
    if (!p.is_zero() && poly.degree_univariate(p) > 0) base.push_back(poly.monic(p));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < base.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        if (base[i] == base[j]) {
          base.erase(base.begin() + long(j));
          changed = true;
          break;
        }
        Polynomial g = poly.gcd_univariate(base[i], base[j]);
        if (poly.degree_univariate(g) == 0) continue;
        Polynomial a, b, r;
        poly.divmod_univariate(base[i], g, a, r);
        poly.divmod_univariate(base[j], g, b, r);
        std::vector<Polynomial> next;
        for (std::size_t k = 0; k < base.size(); ++k)
          if (k != i && k != j) next.push_back(base[k]);
        for (const auto& piece : {g, a, b})
          if (poly.degree_univariate(piece) > 0) next.push_back(poly.monic(piece));
        base = std::move(next);
        changed = true;
      }
  }
  return base;
}

unsigned multiplicity(const PolyRing& poly, Polynomial p, const Polynomial& b) {
  unsigned e = 0;
  Polynomial q, r;
  while (!p.is_zero()) {
    poly.divmod_univariate(p, b, q, r);
    if (!r.is_zero()) break;
    p = q;
    ++e;
  }
  return e;
}

}  // namespace

IdealHandle evaluate_sheaf(const IdealDigraph& d, const DistinguishedOpen& u, const Budget& budget) {
  if (d.ring->nvars() != 1 || d.ring->has_quotient())
    throw CapabilityError(
        "evaluate_sheaf needs a univariate base ring without a quotient; use section_membership");
  require_valid(d, budget);
  require_same_ring(d.ring, u.ring, "evaluate_sheaf");
  RingPtr target = coordinate_ring(u, budget);
  const PolyRing& poly = d.ring->poly();
  const std::size_t n = d.nodes.size();
  Polynomial base_f = poly.mul(u.f, d.ring->inverted_product());

  auto generator_of = [&](const std::vector<std::size_t>& subset) {
    Polynomial g;
    for (std::size_t i : subset)
      for (const auto& p : d.nodes[i].ideal.generators()) g = poly.gcd_univariate(g, p);
    return g;
  };
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  Polynomial g_all = generator_of(all);
  if (g_all.is_zero()) return IdealHandle::zero(target);

  std::vector<Polynomial> inputs{base_f, g_all};
  for (const auto& node : d.nodes) inputs.push_back(node.open.f);
  auto applicable = [&](const Polynomial& b) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (multiplicity(poly, d.nodes[i].open.f, b) == 0) s.push_back(i);
    return s;
  };
  for (const auto& b : coprime_base(poly, inputs)) {
    if (multiplicity(poly, base_f, b) > 0) continue;
    Polynomial g = generator_of(applicable(b));
    if (g.is_zero()) return IdealHandle::zero(target);
    inputs.push_back(g);
  }
  std::vector<Polynomial> base = coprime_base(poly, inputs);
  Polynomial h = poly.one();
  std::vector<Polynomial> factors;
  for (const auto& b : base) {
    if (multiplicity(poly, base_f, b) > 0) continue;
    Polynomial g = generator_of(applicable(b));
    unsigned e = multiplicity(poly, g, b);
    if (e == 0) continue;
    h = poly.mul(h, poly.pow(b, e));
    factors.push_back(b);
  }
  if (!section_membership(d, u, h, budget))
    throw OracleError("evaluate_sheaf: computed generator " + d.ring->format(h) +
                      " fails the stalkwise test");
  for (const auto& b : factors) {
    Polynomial smaller, r;
    poly.divmod_univariate(h, b, smaller, r);
    if (section_membership(d, u, smaller, budget))
      throw OracleError("evaluate_sheaf: generator " + d.ring->format(h) + " is not minimal");
  }
  return IdealHandle(target, {h});
}

// ------------------------------------------------------------------ oracles

namespace {

class TableOracle final : public SheafOracle {
public:
  TableOracle(RingPtr ring, std::vector<std::pair<DistinguishedOpen, IdealHandle>> table,
              std::vector<DistinguishedOpen> basis)
      : SheafOracle(std::move(ring), std::move(basis), "table"), table_(std::move(table)) {}

  IdealHandle value(const DistinguishedOpen& u, const Budget& budget) const override {
    for (const auto& [open, ideal] : table_)
      if (open_equal(open, u, budget)) return ideal;
    throw OracleError("table oracle has no entry for " + u.describe());
  }

private:
  std::vector<std::pair<DistinguishedOpen, IdealHandle>> table_;
};

class QuasiCoherentOracle final : public SheafOracle {
public:
  QuasiCoherentOracle(IdealHandle ideal, std::vector<DistinguishedOpen> basis)
      : SheafOracle(ideal.ring(), std::move(basis), "quasi-coherent"), ideal_(std::move(ideal)) {}

  IdealHandle value(const DistinguishedOpen&, const Budget&) const override { return ideal_; }

private:
  IdealHandle ideal_;
};

class DigraphOracle final : public SheafOracle {
public:
  DigraphOracle(IdealDigraph digraph, std::vector<DistinguishedOpen> basis)
      : SheafOracle(digraph.ring, std::move(basis), "digraph"), digraph_(std::move(digraph)) {}

  IdealHandle value(const DistinguishedOpen& u, const Budget& budget) const override {
    return evaluate_sheaf(digraph_, u, budget).in_ring(ring());
  }

private:
  IdealDigraph digraph_;
};

class FunctionOracle final : public SheafOracle {
public:
  using Fn = std::function<IdealHandle(const DistinguishedOpen&, const Budget&)>;
  FunctionOracle(RingPtr ring, Fn fn, std::vector<DistinguishedOpen> basis)
      : SheafOracle(std::move(ring), std::move(basis), "function"), fn_(std::move(fn)) {}

  IdealHandle value(const DistinguishedOpen& u, const Budget& budget) const override {
    return fn_(u, budget);
  }

private:
  Fn fn_;
};

}  // namespace

OraclePtr make_table_oracle(const RingPtr& ring,
                            std::vector<std::pair<DistinguishedOpen, IdealHandle>> table,
                            std::vector<DistinguishedOpen> basis) {
  return std::make_shared<TableOracle>(ring, std::move(table), std::move(basis));
}

OraclePtr make_quasi_coherent_oracle(const IdealHandle& ideal, std::vector<DistinguishedOpen> basis) {
  return std::make_shared<QuasiCoherentOracle>(ideal, std::move(basis));
}

OraclePtr make_digraph_oracle(IdealDigraph digraph, std::vector<DistinguishedOpen> basis) {
  return std::make_shared<DigraphOracle>(std::move(digraph), std::move(basis));
}

OraclePtr make_function_oracle(
    const RingPtr& ring, std::function<IdealHandle(const DistinguishedOpen&, const Budget&)> value,
    std::vector<DistinguishedOpen> basis) {
  return std::make_shared<FunctionOracle>(ring, std::move(value), std::move(basis));
}

// --------------------------------------------------------------- extraction

IdealDigraph extract_digraph(const SheafOracle& oracle, const Budget& budget) {
  const RingPtr& ring = oracle.ring();
  const PolyRing& poly = ring->poly();
  IdealDigraph d{ring, {}, {}, 0};
  auto query = [&](const DistinguishedOpen& u) {
    IdealHandle v = oracle.value(u, budget);
    require_same_ring(ring, v.ring(), "extract_digraph");
    return v;
  };
  auto contains_in = [&](const DistinguishedOpen& u, const IdealHandle& big, const IdealHandle& small) {
    return ideal_contains(localize_to(big, u, budget), localize_to(small, u, budget), budget);
  };
  // Presheaf law for U ⊆ V: the restriction of 𝓘(V) lies in 𝓘(U).
  auto check_law = [&](const DistinguishedOpen& v, const IdealHandle& iv, const DistinguishedOpen& u,
                       const IdealHandle& iu) {
    if (!contains_in(u, iu, iv))
      throw OracleError("presheaf law fails: " + u.describe() + " ⊆ " + v.describe() + " but " +
                        ideal_text(iv) + " does not restrict into " + ideal_text(iu));
  };

  DistinguishedOpen whole = DistinguishedOpen::whole(ring);
  d.nodes.push_back({whole, query(whole)});
  std::vector<std::size_t> depth{0};
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t v : frontier) {
      const DistinguishedOpen node_open = d.nodes[v].open;
      const IdealHandle node_ideal = d.nodes[v].ideal;
      std::vector<DistinguishedOpen> candidates;
      for (const auto& b : oracle.basis()) {
        require_same_ring(ring, b.ring, "extract_digraph basis");
        DistinguishedOpen u{ring, poly.mul(node_open.f, b.f)};
        if (open_is_empty(u, budget) || open_contains(u, node_open, budget)) continue;
        bool duplicate = false;
        for (const auto& c : candidates) duplicate = duplicate || open_equal(c, u, budget);
        if (!duplicate) candidates.push_back(u);
      }
      std::vector<std::pair<DistinguishedOpen, IdealHandle>> expansive;
      for (const auto& u : candidates) {
        IdealHandle value = query(u);
        check_law(node_open, node_ideal, u, value);
        if (!contains_in(u, node_ideal, value)) expansive.push_back({u, value});
      }
      for (std::size_t i = 0; i < expansive.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < expansive.size(); ++j) {
          if (i == j || !open_contains(expansive[j].first, expansive[i].first, budget)) continue;
          check_law(expansive[j].first, expansive[j].second, expansive[i].first, expansive[i].second);
          maximal = false;
        }
        if (!maximal) continue;
        const auto& [u, value] = expansive[i];
        std::size_t target = d.nodes.size();
        for (std::size_t k = 0; k < d.nodes.size(); ++k)
          if (open_equal(d.nodes[k].open, u, budget)) target = k;
        if (target == d.nodes.size()) {
          if (depth[v] + 1 > budget.max_extraction_depth)
            throw ResourceError("max_extraction_depth",
                                "extraction passed depth " + std::to_string(budget.max_extraction_depth));
          if (d.nodes.size() + 1 > budget.max_digraph_nodes)
            throw ResourceError("max_digraph_nodes", "extraction produced more than " +
                                                         std::to_string(budget.max_digraph_nodes) +
                                                         " nodes");
          d.nodes.push_back({u, value});
          depth.push_back(depth[v] + 1);
          next.push_back(target);
        }
        if (std::find(d.edges.begin(), d.edges.end(), std::pair{v, target}) == d.edges.end())
          d.edges.push_back({v, target});
      }
    }
    frontier = std::move(next);
  }
  auto report = validate_digraph(d, budget);
  if (!report.valid())
    throw OracleError("extracted digraph is invalid (" + report.first_failure() +
                      "); the oracle is not a sheaf of ideals");
  return d;
}

bool is_quasi_coherent(const IdealDigraph& d, const std::vector<DistinguishedOpen>& basis,
                       const Budget& budget) {
  require_valid(d, budget);
  std::vector<DistinguishedOpen> opens = basis;
  if (opens.empty()) opens.push_back(DistinguishedOpen::whole(d.ring));
  const IdealHandle& root = d.nodes[d.root].ideal;
  for (const auto& h : opens)
    for (const auto& node : d.nodes) {
      DistinguishedOpen u = open_intersect(node.open, h);
      if (open_is_empty(u, budget)) continue;
      if (!ideal_contains(localize_to(root, u, budget), localize_to(node.ideal, u, budget), budget))
        return false;
    }
  return true;
}

bool extraction_certificate(const IdealDigraph& d, const Budget& budget) {
  const PolyRing& poly = d.ring->poly();
  for (auto [p, c] : d.edges) {
    const Polynomial& f = d.nodes[c].open.f;
    auto parent = IdealHandle(d.ring, polyideal::saturate(poly, d.nodes[p].ideal.canonical_basis(budget),
                                                          f, budget));
    auto child = IdealHandle(d.ring, polyideal::saturate(poly, d.nodes[c].ideal.canonical_basis(budget),
                                                         f, budget));
    if (!ideal_contains(child, parent, budget) || ideal_contains(parent, child, budget)) return false;
  }
  return true;
}

// ------------------------------------------------------- constant sheaf ℤ

bool zz_divides(std::uint64_t a, std::uint64_t b) { return b == 0 || (a != 0 && b % a == 0); }

std::uint64_t zz_gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t zz_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

namespace {

std::uint64_t zz_value(const ZZSheafData& data, FiniteSpace::Subset u) {
  auto it = data.values.find(u);
  if (it == data.values.end())
    throw ValidationError("no value for the connected open " + data.space.format(u));
  return it->second;
}

}  // namespace

void validate_zz_sheaf(const ZZSheafData& data) {
  const auto& space = data.space;
  for (const auto& [u, n] : data.values)
    if (!space.is_open(u) || !space.is_connected(u))
      throw ValidationError(space.format(u) + " is not a connected open");
  auto opens = space.connected_opens();
  for (auto u : opens)
    for (auto v : opens)
      if ((u & ~v) == 0 && !zz_divides(zz_value(data, u), zz_value(data, v)))
        throw ValidationError("restriction law fails: " + space.format(u) + " ⊆ " + space.format(v) +
                              " but " + std::to_string(zz_value(data, u)) + " does not divide " +
                              std::to_string(zz_value(data, v)));
  for (auto u : opens) {
    std::uint64_t glued = 1;
    for (std::size_t p = 0; p < space.size(); ++p)
      if ((u >> p) & 1) glued = zz_lcm(glued, zz_value(data, space.down(p)));
    if (glued != zz_value(data, u))
      throw ValidationError("gluing fails on " + space.format(u) + ": value " +
                            std::to_string(zz_value(data, u)) + " but the stalks glue to " +
                            std::to_string(glued));
  }
}

ZZDigraph extract_zz_digraph(const ZZSheafData& data) {
  const auto& space = data.space;
  if (!space.is_connected(space.whole()))
    throw DomainError("space is not connected; extract each component separately");
  validate_zz_sheaf(data);
  auto opens = space.connected_opens();
  ZZDigraph d;
  d.nodes.push_back({space.whole(), zz_value(data, space.whole())});
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t v : frontier) {
      const ZZNode node = d.nodes[v];
      std::vector<FiniteSpace::Subset> expansive;
      for (auto u : opens) {
        if (u == node.open || (u & ~node.open) != 0) continue;
        std::uint64_t n = zz_value(data, u);
        if (zz_divides(n, node.n) && n != node.n) expansive.push_back(u);
      }
      for (auto u : expansive) {
        bool maximal = true;
        for (auto w : expansive)
          if (w != u && (u & ~w) == 0) maximal = false;
        if (!maximal) continue;
        std::size_t target = d.nodes.size();
        for (std::size_t k = 0; k < d.nodes.size(); ++k)
          if (d.nodes[k].open == u) target = k;
        if (target == d.nodes.size()) {
          d.nodes.push_back({u, zz_value(data, u)});
          next.push_back(target);
        }
        d.edges.push_back({v, target});
      }
    }
    frontier = std::move(next);
  }
  return d;
}

std::uint64_t zz_generated_value(const FiniteSpace& space, const ZZDigraph& d,
                                 FiniteSpace::Subset open) {
  std::uint64_t value = 1;
  for (std::size_t p = 0; p < space.size(); ++p) {
    if (!((open >> p) & 1)) continue;
    std::uint64_t stalk = 0;
    for (const auto& node : d.nodes)
      if ((node.open >> p) & 1) stalk = zz_gcd(stalk, node.n);
    value = zz_lcm(value, stalk);
  }
  return value;
}

// ---------------------------------------------------------- digraph spaces

namespace {

/// Vocabulary: for each open, the admissible node ideals; `below[a][b]`
/// says open b lies strictly inside open a, `grows[a][i][b][j]` that ideal j
/// on b strictly contains the localization of ideal i on a.
struct Vocabulary {
  std::size_t root_open = 0;
  std::vector<std::size_t> ideal_count;
  std::function<bool(std::size_t, std::size_t)> below;
  std::function<bool(std::size_t, std::size_t, std::size_t, std::size_t)> grows;
};

std::uint64_t count_over(const Vocabulary& v, std::uint64_t max_configurations) {
  const std::size_t opens = v.ideal_count.size();
  std::uint64_t count = 0, work = 0;
  std::vector<std::size_t> choice(opens, 0);  // 0 = absent, k = ideal k-1
  std::function<void(std::size_t)> assign = [&](std::size_t o) {
    if (o == opens) {
      std::vector<std::size_t> chosen;
      for (std::size_t k = 0; k < opens; ++k)
        if (choice[k]) chosen.push_back(k);
      std::vector<std::pair<std::size_t, std::size_t>> allowed;
      for (std::size_t a : chosen)
        for (std::size_t b : chosen)
          if (a != b && b != v.root_open && v.below(a, b) &&
              v.grows(a, choice[a] - 1, b, choice[b] - 1))
            allowed.push_back({a, b});
      if (allowed.size() > 24)
        throw ResourceError("digraph_space", "too many candidate edges to enumerate");
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << allowed.size()); ++mask) {
        if (++work > max_configurations)
          throw ResourceError("digraph_space", "more than " + std::to_string(max_configurations) +
                                                   " configurations");
        std::uint64_t reached = std::uint64_t(1) << v.root_open;
        bool grew = true;
        while (grew) {
          grew = false;
          for (std::size_t e = 0; e < allowed.size(); ++e)
            if (((mask >> e) & 1) && ((reached >> allowed[e].first) & 1) &&
                !((reached >> allowed[e].second) & 1)) {
              reached |= std::uint64_t(1) << allowed[e].second;
              grew = true;
            }
        }
        bool all = true;
        for (std::size_t k : chosen) all = all && ((reached >> k) & 1);
        count += all;
      }
      return;
    }
    std::size_t start = o == v.root_open ? 1 : 0;
    for (std::size_t k = start; k <= v.ideal_count[o]; ++k) {
      choice[o] = k;
      assign(o + 1);
    }
    choice[o] = 0;
  };
  assign(0);
  return count;
}

}  // namespace

std::uint64_t count_digraph_space(const FiniteRing& ring, const Budget& budget,
                                  std::uint64_t max_configurations) {
  auto primes = enumerate_spec(ring, budget);
  auto ideals = enumerate_ideals(ring, budget);
  if (primes.size() > 63) throw ResourceError("digraph_space", "too many primes");
  auto open_of = [&](Element f) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (!std::binary_search(primes[i].begin(), primes[i].end(), f)) mask |= std::uint64_t(1) << i;
    return mask;
  };
  std::vector<std::uint64_t> masks;
  std::vector<Element> reps;
  for (Element f = 0; f < ring.size(); ++f) {
    std::uint64_t m = open_of(f);
    if (m == 0 || std::find(masks.begin(), masks.end(), m) != masks.end()) continue;
    masks.push_back(m);
    reps.push_back(f);
  }
  if (masks.size() > 63) throw ResourceError("digraph_space", "too many opens");
  // I : f^∞ as an element set.
  auto saturate_at = [&](const ElementSet& ideal, Element f) {
    ElementSet out;
    for (Element r = 0; r < ring.size(); ++r) {
      Element power = ring.one();
      for (std::size_t k = 0; k <= ring.size(); ++k) {
        if (std::binary_search(ideal.begin(), ideal.end(), ring.mul(power, r))) {
          out.push_back(r);
          break;
        }
        power = ring.mul(power, f);
      }
    }
    return out;
  };
  std::vector<std::vector<ElementSet>> local(masks.size());
  for (std::size_t o = 0; o < masks.size(); ++o)
    for (const auto& ideal : ideals)
      if (saturate_at(ideal, reps[o]) == ideal) local[o].push_back(ideal);
  Vocabulary v;
  v.root_open = std::size_t(std::find(masks.begin(), masks.end(), open_of(ring.one())) - masks.begin());
  for (const auto& l : local) v.ideal_count.push_back(l.size());
  v.below = [&](std::size_t a, std::size_t b) { return masks[a] != masks[b] && (masks[b] & ~masks[a]) == 0; };
  v.grows = [&](std::size_t a, std::size_t i, std::size_t b, std::size_t j) {
    ElementSet h = saturate_at(local[a][i], reps[b]);
    const ElementSet& k = local[b][j];
    return k != h && std::includes(k.begin(), k.end(), h.begin(), h.end());
  };
  return count_over(v, max_configurations);
}

std::uint64_t count_digraph_space(const RingPtr& ring, const std::vector<DistinguishedOpen>& opens,
                                  const std::vector<IdealHandle>& ideals, const Budget& budget,
                                  std::uint64_t max_configurations) {
  if (opens.empty() || ideals.empty()) throw ValidationError("empty digraph vocabulary");
  std::vector<DistinguishedOpen> distinct;
  for (const auto& u : opens) {
    require_same_ring(ring, u.ring, "count_digraph_space");
    if (open_is_empty(u, budget)) continue;
    bool seen = false;
    for (const auto& w : distinct) seen = seen || open_equal(u, w, budget);
    if (!seen) distinct.push_back(u);
  }
  std::vector<std::vector<IdealHandle>> local(distinct.size());
  for (std::size_t o = 0; o < distinct.size(); ++o)
    for (const auto& ideal : ideals) {
      require_same_ring(ring, ideal.ring(), "count_digraph_space");
      IdealHandle here = localize_to(ideal, distinct[o], budget);
      bool seen = false;
      for (const auto& k : local[o]) seen = seen || ideal_equal(k, here, budget);
      if (!seen) local[o].push_back(here);
    }
  std::size_t root = distinct.size();
  for (std::size_t o = 0; o < distinct.size(); ++o)
    if (open_equal(distinct[o], DistinguishedOpen::whole(ring), budget)) root = o;
  if (root == distinct.size()) return 0;
  Vocabulary v;
  v.root_open = root;
  for (const auto& l : local) v.ideal_count.push_back(l.size());
  v.below = [&](std::size_t a, std::size_t b) {
    return open_contains(distinct[a], distinct[b], budget) &&
           !open_contains(distinct[b], distinct[a], budget);
  };
  v.grows = [&](std::size_t a, std::size_t i, std::size_t b, std::size_t j) {
    IdealHandle h = local[a][i].in_ring(local[b][j].ring());
    return ideal_contains(local[b][j], h, budget) && !ideal_contains(h, local[b][j], budget);
  };
  return count_over(v, max_configurations);
}

}  // namespace noether
