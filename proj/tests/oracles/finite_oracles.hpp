#pragma once

// Brute-force references for the finite-ring layer. Nothing here calls the
// closure or search routines of the library.

#include <cstdint>
#include <vector>

#include "noether/finite_ring.hpp"

namespace noether::oracle {

/// Every subset of R containing 0 that is closed under + and R-scaling.
/// Exponential in |R|; meant for |R| <= 16.
inline std::vector<ElementSet> ideals_by_subsets(const FiniteRing& r) {
  std::vector<ElementSet> out;
  const std::size_t n = r.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); mask += 2) {
    auto in = [&](Element e) { return (mask >> e) & 1; };
    bool closed = true;
    for (Element a = 0; a < n && closed; ++a) {
      if (!in(a)) continue;
      for (Element b = 0; b < n && closed; ++b) {
        if (in(b) && !in(r.add(a, b))) closed = false;
        if (!in(r.mul(b, a))) closed = false;
      }
    }
    if (!closed) continue;
    ElementSet s;
    for (Element a = 0; a < n; ++a)
      if (in(a)) s.push_back(a);
    out.push_back(s);
  }
  return out;
}

/// All additive-and-scalar compatible tables, checked pointwise on every pair.
inline std::vector<ModuleMap> homs_by_tables(const FiniteModule& src, const FiniteModule& dst) {
  std::vector<ModuleMap> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < src.size(); ++i) total *= dst.size();
  ModuleMap f(src.size());
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    for (auto& v : f) {
      v = Element(rest % dst.size());
      rest /= dst.size();
    }
    if (is_linear(src, dst, f)) out.push_back(f);
  }
  return out;
}

inline unsigned divisor_count(unsigned n) {
  unsigned c = 0;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) ++c;
  return c;
}

}  // namespace noether::oracle
