#pragma once

// Injectivity from first principles: M is injective relative to a catalog of
// modules if every map A -> M from a submodule A ⊆ B extends to B, for every
// B in the catalog. Uses module_homs and enumerate_submodules, which are
// checked against table oracles in test_finite_ring.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "noether/finite_ring.hpp"

namespace noether::oracle {

/// Direct sums of cyclic modules R/I (I proper) of total size <= max_size,
/// one per multiset of ideals. Over Z/4 and F2[x]/(x^2) every finite module
/// is isomorphic to one of these.
inline std::vector<FiniteModule> cyclic_sum_catalog(const FiniteRingPtr& ring,
                                                    std::size_t max_size) {
  std::vector<ElementSet> proper;
  for (const auto& i : enumerate_ideals(*ring))
    if (i.size() < ring->size()) proper.push_back(i);
  std::vector<FiniteModule> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t size) {
    std::vector<FiniteModule> parts;
    for (auto k : chosen) parts.push_back(FiniteModule::cyclic(ring, proper[k]));
    out.push_back(direct_sum(ring, parts).module);
    for (std::size_t k = start; k < proper.size(); ++k) {
      std::size_t q = ring->size() / proper[k].size();
      if (size * q > max_size) continue;
      chosen.push_back(k);
      rec(k, size * q);
      chosen.pop_back();
    }
  };
  rec(0, 1);
  return out;
}

/// Every map from every submodule of `b` into `m` is a restriction of a map b -> m.
inline bool extends_from_all_submodules(const FiniteModule& b, const FiniteModule& m) {
  auto big = module_homs(b, m);
  for (const ElementSet& a : enumerate_submodules(b)) {
    std::set<ModuleMap> restricted;
    for (const auto& h : big) {
      ModuleMap r;
      r.reserve(a.size());
      for (Element x : a) r.push_back(h[x]);
      restricted.insert(std::move(r));
    }
    for (const auto& h : module_homs(b.submodule(a), m))
      if (!restricted.count(h)) return false;
  }
  return true;
}

inline bool injective_first_principles(const FiniteModule& m,
                                       const std::vector<FiniteModule>& catalog) {
  return std::all_of(catalog.begin(), catalog.end(),
                     [&](const FiniteModule& b) { return extends_from_all_submodules(b, m); });
}

/// Exhaustive search of a tabulated module for an element e with r·e = f(r)
/// for all r in the ideal.
inline bool extension_exists(const FiniteModule& m, const ElementSet& ideal, const ModuleMap& f) {
  for (Element e = 0; e < m.size(); ++e) {
    bool ok = true;
    for (std::size_t k = 0; k < ideal.size() && ok; ++k) ok = m.scale(ideal[k], e) == f[k];
    if (ok) return true;
  }
  return false;
}

}  // namespace noether::oracle
