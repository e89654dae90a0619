#include <algorithm>

#include "doctest.h"
#include "noether/baer.hpp"
#include "noether/error.hpp"
#include "oracles/finite_oracles.hpp"
#include "oracles/injective_oracle.hpp"

using namespace noether;

namespace {

FiniteRingPtr z4() { return FiniteRing::integers_mod(4); }
FiniteRingPtr dual_numbers() { return FiniteRing::parse("F2[x]/(x^2)"); }

FiniteModule z2_over_z4() { return FiniteModule::cyclic(z4(), {0, 2}); }

FiniteModule sum_of(const FiniteRingPtr& r, const std::vector<ElementSet>& ideals) {
  std::vector<FiniteModule> parts;
  for (const auto& i : ideals) parts.push_back(FiniteModule::cyclic(r, i));
  return direct_sum(r, parts).module;
}

}  // namespace

TEST_CASE("baer_test examples") {
  auto r = z4();
  CHECK(baer_test(FiniteModule::regular(r)).injective);
  CHECK(baer_test(FiniteModule::zero(r)).injective);

  auto res = baer_test(z2_over_z4());
  REQUIRE_FALSE(res.injective);
  REQUIRE(res.witness);
  CHECK(res.witness->ideal == ElementSet{0, 2});
  // The witness sends 2 to the nonzero element of Z/2.
  CHECK(res.witness->images == ModuleMap{0, 1});
  CHECK_FALSE(find_extension(z2_over_z4(), *res.witness));
}

TEST_CASE("baer_test agrees with first-principles injectivity up to size 16") {
  for (auto ring : {z4(), dual_numbers()}) {
    CAPTURE(ring->name());
    auto catalog = oracle::cyclic_sum_catalog(ring, 16);
    REQUIRE(catalog.size() >= 9);
    std::size_t injective = 0;
    for (const auto& m : catalog) {
      CAPTURE(m.size());
      bool baer = baer_test(m).injective;
      CHECK(baer == oracle::injective_first_principles(m, catalog));
      injective += baer;
    }
    // Exactly the free modules R^0, R^1, R^2 are injective (both rings are self-injective).
    CHECK(injective == 3);
  }
}

TEST_CASE("baer_step on the zero module over Z/4") {
  auto r = z4();
  auto step = baer_step(FiniteModule::zero(r));
  CHECK(step.ledger.size() == 3);
  CHECK(step.output.size() == 8);
  REQUIRE(step.materialized);
  step.materialized->validate();
  CHECK(is_isomorphic(*step.materialized, sum_of(r, {{0}, {0, 2}})));
  CHECK(step.postcondition);
}

TEST_CASE("baer_step on Z/4 splits off M") {
  auto r = z4();
  auto m = FiniteModule::regular(r);
  auto step = baer_step(m);
  REQUIRE(step.postcondition);
  REQUIRE(step.materialized);
  const auto& m1 = *step.materialized;
  ModuleMap emb(m.size());
  for (Element a = 0; a < m.size(); ++a) emb[a] = step.output.index_of(step.output.embed(a));
  bool retraction = false;
  for (const auto& p : module_homs(m1, m)) {
    bool id = true;
    for (Element a = 0; a < m.size() && id; ++a) id = p[emb[a]] == a;
    retraction = retraction || id;
  }
  CHECK(retraction);
}

TEST_CASE("baer_step postcondition against exhaustive extension search") {
  for (auto ring : {z4(), dual_numbers()}) {
    for (const auto& m : oracle::cyclic_sum_catalog(ring, 4)) {
      CAPTURE(ring->name());
      CAPTURE(m.size());
      auto step = baer_step(m);
      CHECK(step.postcondition);
      REQUIRE(step.materialized);
      step.materialized->validate();
      const auto& m1 = *step.materialized;
      ModuleMap emb(m.size());
      for (Element a = 0; a < m.size(); ++a) emb[a] = step.output.index_of(step.output.embed(a));
      CHECK(is_injective(emb));
      CHECK(is_linear(m, m1, emb));
      for (const auto& ideal : oracle::ideals_by_subsets(*ring)) {
        auto sub = FiniteModule::regular(ring).submodule(ideal);
        for (const auto& f : oracle::homs_by_tables(sub, m)) {
          ModuleMap pushed(f.size());
          for (std::size_t k = 0; k < f.size(); ++k) pushed[k] = emb[f[k]];
          CHECK(oracle::extension_exists(m1, ideal, pushed));
        }
      }
    }
  }
}

TEST_CASE("pushout normal forms") {
  auto r = z4();
  PushoutModule p(z2_over_z4(), {IdealMap{{0, 2}, {2}, {0, 1}}});
  CHECK(p.size() == 4);
  auto e = p.extension_element(0);
  CHECK(p.is_normal(e));
  CHECK(p.scale(2, e) == p.embed(1));
  CHECK(p.add(e, p.neg(e)) == p.zero());
  auto table = p.materialize();
  table.validate();
  CHECK(is_isomorphic(table, FiniteModule::regular(r)));
}

TEST_CASE("baer_chain") {
  auto r = z4();
  SUBCASE("length 0 is vacuous") {
    auto c = baer_chain(z2_over_z4(), 0);
    CHECK(c.stages.size() == 1);
    CHECK(c.holds());
  }
  SUBCASE("injective input") {
    auto c = baer_chain(FiniteModule::regular(r), 1);
    CHECK(c.holds());
    CHECK(baer_test(c.stages.front()).injective);
  }
  SUBCASE("Z/2 over Z/4, two steps") {
    auto c = baer_chain(z2_over_z4(), 2);
    CHECK(c.holds());
    CHECK(c.built_length == 2);
    REQUIRE(c.stages.size() >= 2);
    CHECK(c.stages[1].size() == 32);
    // No finite stage is injective.
    CHECK_FALSE(baer_test(c.stages[1]).injective);

    // Independent check of the second stage: search all of M_2 for extensions.
    REQUIRE(c.last);
    const auto& p = *c.last;
    auto elems = p.elements();
    const auto& m1 = c.stages[1];
    FiniteModule regular = FiniteModule::regular(r);
    for (const auto& ideal : enumerate_ideals(*r)) {
      auto homs = hom_from_ideal(*r, regular.greedy_generators(ideal), m1);
      for (const auto& f : homs.maps) {
        bool found = std::any_of(elems.begin(), elems.end(), [&](const auto& e) {
          for (std::size_t k = 0; k < ideal.size(); ++k)
            if (p.scale(ideal[k], e) != p.embed(f[k])) return false;
          return true;
        });
        CHECK(found);
      }
    }
  }
  SUBCASE("budget stops the chain with a stage marker") {
    Budget tight;
    tight.max_module_size = 16;
    auto c = baer_chain(z2_over_z4(), 3, tight);
    REQUIRE(c.stopped_at);
    CHECK(*c.stopped_at == 1);
    CHECK_FALSE(c.holds());
  }
}

TEST_CASE("injective envelopes") {
  auto r = z4();
  auto env = injective_envelope_bruteforce(z2_over_z4());
  REQUIRE(env.envelope);
  CHECK(is_isomorphic(*env.envelope, FiniteModule::regular(r)));
  CHECK(is_injective(env.embedding));
  CHECK(is_linear(z2_over_z4(), *env.envelope, env.embedding));

  auto self = injective_envelope_bruteforce(FiniteModule::regular(r));
  REQUIRE(self.envelope);
  CHECK(self.envelope->size() == 4);

  auto zero = injective_envelope_bruteforce(FiniteModule::zero(r));
  REQUIRE(zero.envelope);
  CHECK(zero.envelope->size() == 1);

  // Minimality and consistency against the catalog over both rings.
  for (auto ring : {z4(), dual_numbers()}) {
    auto catalog = oracle::cyclic_sum_catalog(ring, 16);
    for (const auto& m : oracle::cyclic_sum_catalog(ring, 8)) {
      CAPTURE(ring->name());
      CAPTURE(m.size());
      auto e = injective_envelope_bruteforce(m, 64);
      REQUIRE(e.envelope);
      CHECK(baer_test(*e.envelope).injective);
      CHECK(is_injective(e.embedding));
      CHECK(is_linear(m, *e.envelope, e.embedding));
      for (const auto& c : catalog)
        if (c.size() < e.envelope->size() && !module_embeddings(m, c, 1).empty())
          CHECK_FALSE(baer_test(c).injective);
    }
  }
}

TEST_CASE("envelope search bound") {
  CHECK_THROWS_AS(injective_envelope_bruteforce(z2_over_z4(), 1000), DomainError);
  auto none = injective_envelope_bruteforce(z2_over_z4(), 2);
  CHECK_FALSE(none.envelope);
}

TEST_CASE("injective resolutions") {
  auto r = z4();
  auto res = injective_resolution(z2_over_z4(), 3);
  REQUIRE(res.terms.size() == 3);
  for (const auto& t : res.terms) CHECK(is_isomorphic(t, FiniteModule::regular(r)));
  CHECK_FALSE(res.terminated);
  // Consecutive maps compose to zero.
  for (std::size_t k = 0; k + 1 < res.maps.size(); ++k)
    for (Element x : res.maps[k]) CHECK(res.maps[k + 1][x] == 0);

  auto done = injective_resolution(FiniteModule::regular(r), 3);
  CHECK(done.terms.size() == 1);
  CHECK(done.terminated);
}
