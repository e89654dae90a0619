#include <algorithm>
#include <set>

#include "doctest.h"
#include "noether/error.hpp"
#include "noether/finite_ring.hpp"
#include "noether/topology.hpp"
#include "oracles/finite_oracles.hpp"

using namespace noether;

namespace {

ElementSet principal(const FiniteRingPtr& r, Element g) {
  return FiniteModule::regular(r).span({g});
}

ElementSet ideal_of(const FiniteRingPtr& r, const std::string& label) {
  return principal(r, r->element(label));
}

}  // namespace

TEST_CASE("finite ring constructors") {
  auto z8 = FiniteRing::integers_mod(8);
  CHECK(z8->size() == 8);
  CHECK(z8->mul(3, 5) == 7);
  CHECK(z8->neg(3) == 5);

  auto dual = FiniteRing::parse("F2[x]/(x^2)");
  CHECK(dual->size() == 4);
  Element x = dual->element("x");
  CHECK(dual->mul(x, x) == 0);
  CHECK(dual->name() == "F2[x]/(x^2)");

  auto f4 = FiniteRing::parse("F2[x]/(x^2 + x + 1)");
  for (Element a = 1; a < 4; ++a) {
    bool invertible = false;
    for (Element b = 1; b < 4; ++b) invertible |= f4->mul(a, b) == f4->one();
    CHECK(invertible);
  }

  auto z6 = FiniteRing::parse("Z/2 x Z/3");
  CHECK(z6->size() == 6);
  CHECK(z6->label(z6->one()) == "(1,1)");

  auto zero_ring = FiniteRing::parse("Z/1");
  CHECK(zero_ring->size() == 1);
  CHECK(zero_ring->one() == zero_ring->zero());
  CHECK(enumerate_spec(*zero_ring).empty());
  CHECK_THROWS_AS(FiniteRing::parse("Z/0"), ParseError);
  CHECK_THROWS_AS(FiniteRing::parse("Q[x]"), ParseError);
  CHECK_THROWS_AS(FiniteRing::parse("F4[x]/(x)"), DomainError);
  CHECK_THROWS_AS(FiniteRing::integers_mod(300), ResourceError);
  Budget small;
  small.max_ring_size = 16;
  CHECK_THROWS_AS(FiniteRing::parse("F3[x]/(x^3)", small), ResourceError);
}

TEST_CASE("enumerate_ideals examples") {
  auto z8 = FiniteRing::integers_mod(8);
  auto ideals = enumerate_ideals(*z8);
  REQUIRE(ideals.size() == 4);
  CHECK(ideals[0] == ElementSet{0});
  CHECK(ideals[1] == ElementSet{0, 4});
  CHECK(ideals[2] == ElementSet{0, 2, 4, 6});
  CHECK(ideals[3].size() == 8);

  auto z6 = FiniteRing::integers_mod(6);
  auto six = enumerate_ideals(*z6);
  CHECK(six.size() == 4);
  CHECK(std::count(six.begin(), six.end(), ElementSet{0, 2, 4}) == 1);
  CHECK(std::count(six.begin(), six.end(), ElementSet{0, 3}) == 1);

  CHECK(enumerate_ideals(*FiniteRing::integers_mod(5)).size() == 2);
}

TEST_CASE("enumerate_ideals matches the subset oracle") {
  std::vector<FiniteRingPtr> rings;
  for (unsigned n = 2; n <= 16; ++n) rings.push_back(FiniteRing::integers_mod(n));
  rings.push_back(FiniteRing::parse("F2[x]/(x^2)"));
  rings.push_back(FiniteRing::parse("F2[x]/(x^3)"));
  rings.push_back(FiniteRing::parse("F2[x]/(x^2 + x)"));
  rings.push_back(FiniteRing::parse("F3[x]/(x^2)"));
  rings.push_back(FiniteRing::parse("Z/2 x Z/2 x Z/2"));
  rings.push_back(FiniteRing::parse("Z/4 x Z/2"));
  for (const auto& r : rings) {
    CAPTURE(r->name());
    auto got = enumerate_ideals(*r);
    auto want = oracle::ideals_by_subsets(*r);
    CHECK(std::set<ElementSet>(got.begin(), got.end()) ==
          std::set<ElementSet>(want.begin(), want.end()));
    CHECK(got.size() == want.size());
  }
}

TEST_CASE("ideals of Z/n form the divisor lattice") {
  for (unsigned n = 1; n <= 64; ++n) {
    auto r = FiniteRing::integers_mod(n);
    CAPTURE(n);
    CHECK(enumerate_ideals(*r).size() == oracle::divisor_count(n));
  }
}

TEST_CASE("noetherian_witness examples") {
  auto z8 = FiniteRing::integers_mod(8);
  auto report = noetherian_witness(*z8, {ElementSet{0}, ideal_of(z8, "4"), ideal_of(z8, "2")});
  CHECK(report.longest_strict_chain == 3);
  CHECK(report.maximal == std::vector<std::size_t>{2});
  CHECK(report.ideal_count == 4);
  CHECK(report.generators[0].empty());
  CHECK(report.generators[2] == std::vector<Element>{2});
  CHECK(report.holds());

  auto z6 = FiniteRing::integers_mod(6);
  auto two = noetherian_witness(*z6, {ideal_of(z6, "2"), ideal_of(z6, "3")});
  CHECK(two.maximal == std::vector<std::size_t>{0, 1});
  CHECK(two.longest_strict_chain == 1);

  CHECK_THROWS_AS(noetherian_witness(*z6, {}), ValidationError);
  CHECK_THROWS_AS(noetherian_witness(*z6, {ElementSet{0, 1}}), ValidationError);
}

TEST_CASE("direct_sum examples") {
  auto z4 = FiniteRing::integers_mod(4);
  auto z2 = FiniteModule::cyclic(z4, ideal_of(z4, "2"));
  CHECK(z2.size() == 2);
  CHECK(direct_sum(z4, {z2, z2}).module.size() == 4);
  CHECK(direct_sum(z4, {}).module.size() == 1);
  auto sum = direct_sum(z4, {FiniteModule::regular(z4), z2});
  CHECK(sum.module.size() == 8);
  CHECK_NOTHROW(sum.module.validate());
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(is_injective(sum.injections[i]));
    CHECK(is_linear(i == 0 ? FiniteModule::regular(z4) : z2, sum.module, sum.injections[i]));
  }
  Budget small;
  small.max_module_size = 4;
  CHECK_THROWS_AS(direct_sum(z4, {z2, z2, z2}, small), ResourceError);
}

TEST_CASE("direct_sum universal property") {
  std::vector<FiniteRingPtr> rings{FiniteRing::integers_mod(4), FiniteRing::parse("F2[x]/(x^2)"),
                                   FiniteRing::integers_mod(6), FiniteRing::integers_mod(8)};
  for (const auto& r : rings) {
    CAPTURE(r->name());
    std::vector<FiniteModule> small;
    for (const auto& I : enumerate_ideals(*r)) {
      auto m = FiniteModule::cyclic(r, I);
      if (m.size() <= 4) small.push_back(m);
    }
    for (const auto& a : small)
      for (const auto& b : small) {
        auto sum = direct_sum(r, {a, b});
        for (const auto& n : small) {
          auto to_sum = module_homs(sum.module, n);
          for (const auto& f : module_homs(a, n))
            for (const auto& g : module_homs(b, n)) {
              int matches = 0;
              for (const auto& h : to_sum) {
                bool ok = true;
                for (Element x = 0; x < a.size() && ok; ++x) ok = h[sum.injections[0][x]] == f[x];
                for (Element y = 0; y < b.size() && ok; ++y) ok = h[sum.injections[1][y]] == g[y];
                matches += ok;
              }
              CHECK(matches == 1);
            }
        }
      }
  }
}

TEST_CASE("hom_from_ideal examples") {
  auto z4 = FiniteRing::integers_mod(4);
  auto z2 = FiniteModule::cyclic(z4, ideal_of(z4, "2"));
  auto homs = hom_from_ideal(*z4, {2}, z2);
  CHECK(homs.ideal == ElementSet{0, 2});
  CHECK(homs.maps.size() == 2);
  CHECK(hom_from_ideal(*z4, {0}, z2).maps.size() == 1);
  CHECK(hom_from_ideal(*z4, {}, FiniteModule::regular(z4)).maps.size() == 1);
  CHECK(hom_from_ideal(*z4, {1}, z2).maps.size() == 2);
}

TEST_CASE("module_homs agrees with the table oracle") {
  std::vector<FiniteRingPtr> rings{FiniteRing::integers_mod(4), FiniteRing::parse("F2[x]/(x^2)"),
                                   FiniteRing::integers_mod(6)};
  for (const auto& r : rings) {
    std::vector<FiniteModule> mods;
    for (const auto& I : enumerate_ideals(*r)) mods.push_back(FiniteModule::cyclic(r, I));
    for (const auto& a : mods)
      for (const auto& b : mods) {
        auto got = module_homs(a, b);
        auto want = oracle::homs_by_tables(a, b);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
      }
  }
}

TEST_CASE("hom_from_ideal count ignores the choice of generators") {
  auto r = FiniteRing::integers_mod(12);
  FiniteModule reg = FiniteModule::regular(r);
  std::vector<FiniteModule> targets{FiniteModule::cyclic(r, principal(r, 2)),
                                    FiniteModule::cyclic(r, principal(r, 3)),
                                    FiniteModule::cyclic(r, principal(r, 4))};
  for (const auto& I : enumerate_ideals(*r)) {
    std::vector<std::vector<Element>> gen_sets;
    for (Element a : I)
      if (reg.span({a}) == I) gen_sets.push_back({a});
    for (Element a : I)
      for (Element b : I)
        if (reg.span({a, b}) == I) gen_sets.push_back({a, b});
    REQUIRE(!gen_sets.empty());
    for (const auto& m : targets) {
      auto base = hom_from_ideal(*r, gen_sets.front(), m).maps;
      std::sort(base.begin(), base.end());
      for (const auto& gens : gen_sets) {
        auto other = hom_from_ideal(*r, gens, m).maps;
        std::sort(other.begin(), other.end());
        CHECK(other == base);
      }
    }
  }
}

TEST_CASE("module tables are validated") {
  auto z2 = FiniteRing::integers_mod(2);
  CHECK_NOTHROW(FiniteModule::from_tables(z2, {0, 1, 1, 0}, {0, 0, 0, 1}));
  CHECK_THROWS_AS(FiniteModule::from_tables(z2, {0, 1, 1, 0}, {0, 0, 1, 1}), ValidationError);
  CHECK_THROWS_AS(FiniteModule::from_tables(z2, {0, 1, 1, 1}, {0, 0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(FiniteModule::from_tables(z2, {0, 1, 1}, {0, 0, 0, 1}), ValidationError);
  // Z/4 as a module over Z/2 breaks (1+1)m = m + m.
  CHECK_THROWS_AS(FiniteModule::from_tables(z2,
                                            {0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2},
                                            {0, 0, 0, 0, 0, 1, 2, 3}),
                  ValidationError);
}

TEST_CASE("submodules and quotients") {
  auto z4 = FiniteRing::integers_mod(4);
  auto free2 = FiniteModule::free(z4, 2);
  CHECK(free2.size() == 16);
  auto subs = enumerate_submodules(free2);
  CHECK(subs.front() == ElementSet{0});
  CHECK(subs.back().size() == 16);
  for (const auto& s : subs) {
    CHECK(free2.is_submodule(s));
    ModuleMap proj;
    auto q = free2.quotient(s, &proj);
    CHECK(q.size() * s.size() == 16);
    CHECK(is_linear(free2, q, proj));
    CHECK_NOTHROW(q.validate());
    CHECK_NOTHROW(free2.submodule(s).validate());
  }
}
