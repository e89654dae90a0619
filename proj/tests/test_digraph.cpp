#include <random>

#include "noether/digraph.hpp"
#include "noether/error.hpp"
#include "oracles/stalk_oracle.hpp"
#include "test_util.hpp"

using namespace noether;
using namespace noether::testing;

namespace {

DistinguishedOpen D(const RingPtr& r, const char* f) { return DistinguishedOpen::parse(r, f); }

IdealDigraph digraph(const RingPtr& r,
                     std::vector<std::pair<const char*, std::vector<std::string>>> nodes,
                     std::vector<std::pair<std::size_t, std::size_t>> edges) {
  IdealDigraph d{r, {}, std::move(edges), 0};
  for (auto& [f, gens] : nodes) d.nodes.push_back({D(r, f), ideal(r, gens)});
  return d;
}

IdealDigraph g0(const RingPtr& r) { return digraph(r, {{"1", {}}, {"x", {"1"}}}, {{0, 1}}); }

std::vector<DistinguishedOpen> opens(const RingPtr& r, std::vector<const char*> fs) {
  std::vector<DistinguishedOpen> out;
  for (const char* f : fs) out.push_back(D(r, f));
  return out;
}

}  // namespace

TEST_CASE("validate_digraph examples") {
  auto r = qring({"x"});
  auto root_only = digraph(r, {{"1", {"x"}}}, {});
  CHECK(validate_digraph(root_only).valid());

  auto report = validate_digraph(g0(r));
  CHECK(report.valid());
  CHECK_FALSE(is_quasi_coherent(g0(r), opens(r, {"x", "x - 1"})));

  auto bad = digraph(r, {{"1", {"x"}}, {"x", {"1"}}}, {{0, 1}});
  auto verdict = validate_digraph(bad);
  CHECK_FALSE(verdict.valid());
  CHECK(verdict.check("global").ok);
  CHECK(verdict.check("functional").ok);
  CHECK(verdict.check("decreasing").ok);
  CHECK(verdict.check("structural").ok);
  CHECK_FALSE(verdict.check("increasing").ok);
  CHECK(verdict.check("increasing").witness ==
        "edge 0->1: the localization of (x) to D(x) already equals (1)");
}

TEST_CASE("validate_digraph catches each invariant") {
  auto r = qring({"x"});
  auto not_global = digraph(r, {{"x", {"1"}}}, {});
  CHECK_FALSE(validate_digraph(not_global).check("global").ok);

  auto repeated = digraph(r, {{"1", {}}, {"x", {"1"}}, {"x^2", {"1"}}}, {{0, 1}, {0, 2}});
  auto rep = validate_digraph(repeated);
  CHECK_FALSE(rep.check("functional").ok);
  CHECK(rep.check("functional").witness == "nodes 1 and 2 share the open D(x)");

  auto upward = digraph(r, {{"1", {}}, {"x", {"1"}}, {"x*(x - 1)", {"x"}}}, {{0, 2}, {2, 1}});
  auto up = validate_digraph(upward);
  CHECK_FALSE(up.check("decreasing").ok);
  CHECK(up.check("decreasing").witness == "edge 2->1: D(x) is not strictly inside D(x^2 - x)");

  auto shrinking = digraph(r, {{"1", {"x - 1"}}, {"x", {"x^2 - 1"}}}, {{0, 1}});
  CHECK_FALSE(validate_digraph(shrinking).check("increasing").ok);

  auto orphan = digraph(r, {{"1", {}}, {"x", {"1"}}}, {});
  CHECK_FALSE(validate_digraph(orphan).check("structural").ok);
  auto empty_open = digraph(r, {{"1", {}}, {"0", {"1"}}}, {{0, 1}});
  CHECK_FALSE(validate_digraph(empty_open).check("structural").ok);
  auto dangling = digraph(r, {{"1", {}}}, {{0, 3}});
  CHECK_FALSE(validate_digraph(dangling).check("structural").ok);
  CHECK_THROWS_AS(require_valid(dangling), ValidationError);
}

TEST_CASE("clear_denominators examples") {
  auto q = qring({"x"});
  auto xp = [&](const char* s) { return q->parse_polynomial(s); };
  auto d = clear_denominators(q, {{D(q, "1"), {}}, {D(q, "x"), {{xp("x - 1"), xp("x")}}}}, {{0, 1}}, 0);
  CHECK(d.nodes[1].ideal.format_generators() == std::vector<std::string>{"x - 1"});
  auto e = clear_denominators(q, {{D(q, "x"), {{xp("1"), xp("x^2")}}}}, {}, 0);
  CHECK(e.nodes[0].ideal.format_generators() == std::vector<std::string>{"1"});

  auto r = qring({"x", "y"});
  auto rp = [&](const char* s) { return r->parse_polynomial(s); };
  auto f = clear_denominators(r, {{D(r, "x*y"), {{rp("y"), rp("x")}}}}, {}, 0);
  CHECK(f.nodes[0].ideal.format_generators() == std::vector<std::string>{"y"});
  auto local = coordinate_ring(D(r, "x*y"));
  CHECK(ideal_equal(f.nodes[0].ideal.in_ring(local), ideal(local, {"y*x^2"})));

  CHECK_THROWS_AS(clear_denominators(q, {{D(q, "x"), {{xp("1"), xp("0")}}}}, {}, 0), DomainError);
  CHECK_THROWS_AS(clear_denominators(q, {{D(q, "x"), {{xp("1"), xp("x - 1")}}}}, {}, 0),
                  DomainError);
}

TEST_CASE("section_membership examples") {
  auto q = qring({"x"});
  auto d = g0(q);
  CHECK(section_membership(d, D(q, "x"), q->parse_polynomial("1")));
  CHECK_FALSE(section_membership(d, D(q, "1"), q->parse_polynomial("1")));
  CHECK(section_membership(d, D(q, "1"), Polynomial()));
  CHECK(section_membership(d, D(q, "x"), Fraction{q->parse_polynomial("1"), q->parse_polynomial("x^3")}));
  CHECK_THROWS_AS(
      section_membership(d, D(q, "x"), Fraction{q->parse_polynomial("1"), q->parse_polynomial("x - 1")}),
      DomainError);
  auto bad = digraph(q, {{"1", {"x"}}, {"x", {"1"}}}, {{0, 1}});
  CHECK_THROWS_AS(section_membership(bad, D(q, "x"), q->parse_polynomial("1")), ValidationError);
}

TEST_CASE("section_membership in two variables") {
  auto r = qring({"x", "y"});
  auto d = digraph(r, {{"1", {}}, {"x", {"y"}}}, {{0, 1}});
  REQUIRE(validate_digraph(d).valid());
  auto p = [&](const char* s) { return r->parse_polynomial(s); };
  CHECK(section_membership(d, D(r, "x"), p("y")));
  CHECK(section_membership(d, D(r, "x"), p("x*y^2 + 3*y")));
  CHECK_FALSE(section_membership(d, D(r, "x"), p("x")));
  CHECK_FALSE(section_membership(d, D(r, "1"), p("y")));
  CHECK_FALSE(section_membership(d, D(r, "1"), p("x*y")));
  CHECK(section_membership(d, D(r, "x*y"), p("1")));

  auto q = qring({"x", "y"});
  auto qc = digraph(q, {{"1", {"x", "y"}}}, {});
  CHECK(section_membership(qc, D(q, "1"), p("x^2 + y")));
  CHECK_FALSE(section_membership(qc, D(q, "1"), p("x + 1")));
  CHECK(section_membership(qc, D(q, "x"), p("1")));
}

TEST_CASE("evaluate_sheaf examples") {
  auto q = qring({"x"});
  auto d = g0(q);
  auto on_x = evaluate_sheaf(d, D(q, "x"));
  CHECK(is_unit_ideal(on_x));
  auto on_all = evaluate_sheaf(d, D(q, "1"));
  CHECK(on_all.generators().empty());
  auto qc = digraph(q, {{"1", {"x - 1"}}}, {});
  auto val = evaluate_sheaf(qc, D(q, "x"));
  CHECK(val.ring()->inverted().size() == 1);
  CHECK(ideal_equal(val, ideal(val.ring(), {"x - 1"})));
  CHECK_THROWS_AS(evaluate_sheaf(digraph(qring({"x", "y"}), {{"1", {"x"}}}, {}), D(qring({"x", "y"}), "1")),
                  CapabilityError);
}

TEST_CASE("evaluate_sheaf on a three-level digraph") {
  auto q = qring({"x"});
  // Root (x^2 (x-1)^2), child on D(x) gains (x-1), grandchild on D(x(x-2)) gains 1.
  auto d = digraph(q, {{"1", {"x^2*(x - 1)^2"}}, {"x", {"x - 1"}}, {"x*(x - 2)", {"1"}}},
                   {{0, 1}, {1, 2}});
  REQUIRE(validate_digraph(d).valid());
  auto check = [&](std::string open, const char* expect) {
    auto value = evaluate_sheaf(d, D(q, open.c_str()));
    CAPTURE(open);
    CHECK(ideal_equal(value, ideal(value.ring(), {expect})));
  };
  check("1", "x^2");
  check("x", "1");
  check("x - 1", "x^2");
  check("x - 2", "x^2");
  check("x*(x - 2)", "1");
  check("x*(x + 1)", "1");
}

namespace {

Polynomial random_factor(std::mt19937& rng, const PolyRing& poly) {
  int degree = 1 + int(rng() % 2);
  std::vector<Term> terms{{Exponents{degree}, Coeff(1)}};
  terms.push_back({Exponents{0}, Coeff(int(rng() % 5))});
  if (degree == 2) terms.push_back({Exponents{1}, Coeff(int(rng() % 5))});
  return poly.from_terms(terms);
}

/// Random valid digraph over F_5[x] with at most four nodes.
IdealDigraph random_digraph(std::mt19937& rng, const RingPtr& r) {
  const PolyRing& poly = r->poly();
  for (;;) {
    IdealDigraph d{r, {}, {}, 0};
    std::vector<Polynomial> root_factors;
    for (int k = rng() % 4; k > 0; --k) root_factors.push_back(random_factor(rng, poly));
    Polynomial root = rng() % 5 == 0 ? Polynomial() : poly.product(root_factors);
    d.nodes.push_back({DistinguishedOpen::whole(r), IdealHandle(r, {root})});
    std::size_t extra = 1 + rng() % 3;
    for (std::size_t k = 0; k < extra; ++k) {
      std::size_t parent = rng() % d.nodes.size();
      Polynomial f = poly.mul(d.nodes[parent].open.f, random_factor(rng, poly));
      Polynomial g = poly.one();
      for (const auto& factor : root_factors)
        if (rng() % 2) g = poly.mul(g, factor);
      d.nodes.push_back({DistinguishedOpen{r, f}, IdealHandle(r, {g})});
      d.edges.push_back({parent, d.nodes.size() - 1});
    }
    if (validate_digraph(d).valid()) return d;
  }
}

}  // namespace

TEST_CASE("evaluate_sheaf and section_membership match the stalk oracle") {
  auto r = fpring(5, {"x"});
  const PolyRing& poly = r->poly();
  auto primes = oracle::irreducibles(poly, 4);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    auto d = random_digraph(rng, r);
    std::vector<DistinguishedOpen> us{DistinguishedOpen::whole(r)};
    for (const auto& node : d.nodes) us.push_back(node.open);
    us.push_back({r, random_factor(rng, poly)});
    for (const auto& u : us) {
      auto value = evaluate_sheaf(d, u);
      Polynomial expect = oracle::stalk_section_generator(d, u, primes);
      CHECK(ideal_equal(value, IdealHandle(value.ring(), {expect})));
      for (int k = 0; k < 3; ++k) {
        Polynomial s = random_poly(rng, poly, 5, 3);
        CHECK(section_membership(d, u, s) == oracle::stalk_member(d, u, s, primes));
      }
    }
  }
}

TEST_CASE("section ideals are closed under addition and scaling") {
  auto r = fpring(5, {"x"});
  const PolyRing& poly = r->poly();
  std::mt19937 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    auto d = random_digraph(rng, r);
    auto u = d.nodes[rng() % d.nodes.size()].open;
    auto value = evaluate_sheaf(d, u);
    std::vector<Polynomial> members;
    for (const auto& g : value.generators())
      for (int k = 0; k < 3; ++k) members.push_back(poly.mul(g, random_poly(rng, poly, 3, 3)));
    for (const auto& a : members) {
      CHECK(section_membership(d, u, a));
      for (const auto& b : members) CHECK(section_membership(d, u, poly.add(a, b)));
    }
  }
}

TEST_CASE("adding a larger node never shrinks sections") {
  auto r = fpring(5, {"x"});
  const PolyRing& poly = r->poly();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    auto d = random_digraph(rng, r);
    IdealDigraph bigger = d;
    std::size_t parent = rng() % d.nodes.size();
    Polynomial f = poly.mul(d.nodes[parent].open.f, random_factor(rng, poly));
    bigger.nodes.push_back({DistinguishedOpen{r, f}, IdealHandle::unit(r)});
    bigger.edges.push_back({parent, bigger.nodes.size() - 1});
    if (!validate_digraph(bigger).valid()) continue;
    for (const auto& node : d.nodes) {
      auto before = evaluate_sheaf(d, node.open);
      for (const auto& g : before.generators()) CHECK(section_membership(bigger, node.open, g));
    }
  }
}

TEST_CASE("extract_digraph examples") {
  auto q = qring({"x"});
  auto basis = opens(q, {"x", "x - 1", "x*(x - 1)"});
  auto qc = extract_digraph(*make_quasi_coherent_oracle(ideal(q, {"x - 1"}), basis));
  CHECK(qc.nodes.size() == 1);
  CHECK(qc.edges.empty());

  auto from_g0 = extract_digraph(*make_digraph_oracle(g0(q), basis));
  REQUIRE(from_g0.nodes.size() == 2);
  CHECK(from_g0.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  CHECK(open_equal(from_g0.nodes[1].open, D(q, "x")));
  CHECK(is_unit_ideal(localize_to(from_g0.nodes[1].ideal, from_g0.nodes[1].open)));
  CHECK(from_g0.nodes[0].ideal.generators().empty());

  auto unit = extract_digraph(*make_quasi_coherent_oracle(IdealHandle::unit(q), basis));
  CHECK(unit.nodes.size() == 1);
  CHECK(is_unit_ideal(unit.nodes[0].ideal));

  auto table = make_table_oracle(
      q, {{D(q, "1"), ideal(q, {})}, {D(q, "x"), ideal(q, {"1"})}, {D(q, "x - 1"), ideal(q, {})},
          {D(q, "x*(x - 1)"), ideal(q, {"1"})}},
      basis);
  auto from_table = extract_digraph(*table);
  CHECK(from_table.nodes.size() == 2);
  CHECK(extraction_certificate(from_table));
}

TEST_CASE("extract_digraph reports bad oracles") {
  auto q = qring({"x"});
  auto basis = opens(q, {"x"});
  auto shrinking = make_table_oracle(q, {{D(q, "1"), ideal(q, {"1"})}, {D(q, "x"), ideal(q, {"x - 1"})}},
                                     basis);
  CHECK_THROWS_AS(extract_digraph(*shrinking), OracleError);
  auto missing = make_table_oracle(q, {{D(q, "1"), ideal(q, {})}}, basis);
  CHECK_THROWS_AS(extract_digraph(*missing), OracleError);

  // A presheaf whose expansive opens nest three deep.
  auto oracle = make_table_oracle(
      q,
      {{D(q, "1"), ideal(q, {})}, {D(q, "x"), ideal(q, {"(x - 1)^2"})}, {D(q, "x + 1"), ideal(q, {})},
       {D(q, "x + 2"), ideal(q, {})}, {D(q, "x*(x + 1)"), ideal(q, {"x - 1"})},
       {D(q, "x*(x + 2)"), ideal(q, {"(x - 1)^2"})}, {D(q, "x*(x + 1)*(x + 2)"), ideal(q, {"1"})}},
      opens(q, {"x", "x + 1", "x + 2"}));
  Budget shallow;
  shallow.max_extraction_depth = 1;
  CHECK_THROWS_AS(extract_digraph(*oracle, shallow), ResourceError);
  auto full = extract_digraph(*oracle);
  CHECK(full.nodes.size() == 4);
  CHECK(extraction_certificate(full));
}

TEST_CASE("extraction round trip on random digraph sheaves") {
  auto r = fpring(5, {"x"});
  const PolyRing& poly = r->poly();
  std::mt19937 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    auto d = random_digraph(rng, r);
    std::vector<DistinguishedOpen> basis;
    for (const auto& node : d.nodes)
      if (!open_equal(node.open, DistinguishedOpen::whole(r))) basis.push_back(node.open);
    basis.push_back({r, random_factor(rng, poly)});
    auto oracle = make_digraph_oracle(d, basis);
    auto e = extract_digraph(*oracle);
    CHECK(validate_digraph(e).valid());
    CHECK(extraction_certificate(e));
    std::vector<DistinguishedOpen> test = basis;
    for (const auto& a : basis)
      for (const auto& b : basis) test.push_back(open_intersect(a, b));
    test.push_back(DistinguishedOpen::whole(r));
    for (const auto& u : test) {
      if (open_is_empty(u)) continue;
      CHECK(ideal_equal(evaluate_sheaf(e, u), evaluate_sheaf(d, u)));
    }
  }
}

TEST_CASE("quasi-coherent oracles collapse to the root") {
  auto q = qring({"x"});
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto i = IdealHandle(q, {random_poly(rng, q->poly(), 6, 4)});
    std::vector<DistinguishedOpen> basis;
    for (int k = 0; k < 4; ++k) basis.push_back({q, random_poly(rng, q->poly(), 3, 3)});
    auto e = extract_digraph(*make_quasi_coherent_oracle(i, basis));
    CHECK(e.nodes.size() == 1);
    CHECK(is_quasi_coherent(e, basis));
  }
}

TEST_CASE("is_quasi_coherent") {
  auto q = qring({"x"});
  CHECK(is_quasi_coherent(digraph(q, {{"1", {"x^2"}}}, {}), opens(q, {"x", "x + 1"})));
  CHECK_FALSE(is_quasi_coherent(g0(q), {}));
  CHECK(is_quasi_coherent(g0(q), opens(q, {"x - 1"})) == false);
  auto bad = digraph(q, {{"1", {"x"}}, {"x", {"1"}}}, {{0, 1}});
  CHECK_THROWS_AS(is_quasi_coherent(bad, {}), ValidationError);
  auto r = qring({"x", "y"});
  CHECK(is_quasi_coherent(digraph(r, {{"1", {"x", "y"}}}, {}), {}));
  CHECK_FALSE(is_quasi_coherent(digraph(r, {{"1", {}}, {"x", {"y"}}}, {{0, 1}}), {}));
}

TEST_CASE("extract_zz_digraph examples") {
  auto sierpinski = FiniteSpace::from_preorder(2, {{0, 1}});
  ZZSheafData data{sierpinski, {{0b01, 2}, {0b11, 4}}};
  auto d = extract_zz_digraph(data);
  REQUIRE(d.nodes.size() == 2);
  CHECK(d.nodes[0].n == 4);
  CHECK(d.nodes[1].open == 0b01);
  CHECK(d.nodes[1].n == 2);

  ZZSheafData constant{sierpinski, {{0b01, 3}, {0b11, 3}}};
  CHECK(extract_zz_digraph(constant).nodes.size() == 1);

  ZZSheafData analog{sierpinski, {{0b01, 1}, {0b11, 0}}};
  auto a = extract_zz_digraph(analog);
  REQUIRE(a.nodes.size() == 2);
  CHECK(a.nodes[0].n == 0);
  CHECK(a.nodes[1].n == 1);

  ZZSheafData broken{sierpinski, {{0b01, 4}, {0b11, 2}}};
  CHECK_THROWS_AS(extract_zz_digraph(broken), ValidationError);
  auto discrete = FiniteSpace::from_preorder(2, {});
  CHECK_THROWS_AS(extract_zz_digraph({discrete, {{1, 1}, {2, 1}}}), DomainError);
}

TEST_CASE("zz digraphs regenerate every sheaf on small posets") {
  // Posets on three points; values in {0, 1, 2, 4} on the principal down-sets.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> shapes{
      {{0, 2}, {1, 2}}, {{0, 1}, {0, 2}}, {{0, 1}, {1, 2}}, {{0, 1}}};
  const std::uint64_t values[] = {0, 1, 2, 4};
  for (const auto& rel : shapes) {
    std::size_t n = rel.size() == 1 ? 2 : 3;
    auto space = FiniteSpace::from_preorder(n, rel);
    for (unsigned code = 0; code < (1u << (2 * n)); ++code) {
      std::vector<std::uint64_t> at(n);
      for (std::size_t p = 0; p < n; ++p) at[p] = values[(code >> (2 * p)) & 3];
      bool monotone = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (space.leq(a, b) && !zz_divides(at[a], at[b])) monotone = false;
      if (!monotone) continue;
      ZZSheafData data{space, {}};
      for (auto u : space.connected_opens()) {
        std::uint64_t v = 1;
        for (std::size_t p = 0; p < n; ++p)
          if ((u >> p) & 1) v = zz_lcm(v, at[p]);
        data.values[u] = v;
      }
      if (!space.is_connected(space.whole())) continue;
      auto d = extract_zz_digraph(data);
      for (auto [u, v] : data.values) CHECK(zz_generated_value(space, d, u) == v);
    }
  }
}

TEST_CASE("count_digraph_space") {
  CHECK(count_digraph_space(*FiniteRing::integers_mod(4)) == 3);
  CHECK(count_digraph_space(*FiniteRing::integers_mod(6)) == 9);
  CHECK(count_digraph_space(*FiniteRing::integers_mod(5)) == 2);
  auto q = qring({"x"});
  CHECK_THROWS_AS(count_digraph_space(q, {}, {}), ValidationError);
  // Opens D(1), D(x); ideals (0), (1): root (0) or (1), child (1) over (0).
  CHECK(count_digraph_space(q, opens(q, {"1", "x"}), {ideal(q, {}), ideal(q, {"1"})}) == 3);
}

TEST_CASE("count_digraph_space agrees with validation on an explicit vocabulary") {
  auto q = qring({"x"});
  auto us = opens(q, {"1", "x", "x - 1"});
  std::vector<IdealHandle> ks{ideal(q, {}), ideal(q, {"x*(x - 1)"}), ideal(q, {"x"}), ideal(q, {"1"})};
  // Brute force: every node choice and edge set, filtered by validate_digraph.
  std::uint64_t brute = 0;
  std::vector<std::vector<IdealHandle>> local(us.size());
  for (std::size_t o = 0; o < us.size(); ++o)
    for (const auto& k : ks) {
      auto here = localize_to(k, us[o]);
      bool seen = false;
      for (const auto& e : local[o]) seen = seen || ideal_equal(e, here);
      if (!seen) local[o].push_back(here);
    }
  for (std::size_t a = 1; a <= local[0].size(); ++a)
    for (std::size_t b = 0; b <= local[1].size(); ++b)
      for (std::size_t c = 0; c <= local[2].size(); ++c) {
        IdealDigraph d{q, {}, {}, 0};
        d.nodes.push_back({us[0], local[0][a - 1].in_ring(q)});
        if (b) d.nodes.push_back({us[1], local[1][b - 1].in_ring(q)});
        if (c) d.nodes.push_back({us[2], local[2][c - 1].in_ring(q)});
        std::vector<std::pair<std::size_t, std::size_t>> all;
        for (std::size_t i = 0; i < d.nodes.size(); ++i)
          for (std::size_t j = 1; j < d.nodes.size(); ++j)
            if (i != j) all.push_back({i, j});
        for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
          d.edges.clear();
          for (std::size_t e = 0; e < all.size(); ++e)
            if ((mask >> e) & 1) d.edges.push_back(all[e]);
          brute += validate_digraph(d).valid();
        }
      }
  CHECK(count_digraph_space(q, us, ks) == brute);
}
