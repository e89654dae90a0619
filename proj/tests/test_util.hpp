#pragma once

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "noether/ring.hpp"

namespace doctest {
template <>
struct StringMaker<std::vector<std::string>> {
  static String convert(const std::vector<std::string>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", \"" : "\"") + v[i] + "\"";
    return (out + "}").c_str();
  }
};
}  // namespace doctest

namespace noether::testing {

inline RingPtr qring(std::vector<std::string> vars, std::vector<std::string> inverted = {},
                     std::vector<std::string> quotient = {}) {
  return PresentedRing::parse(Field::rationals(), std::move(vars), quotient, inverted);
}

inline RingPtr fpring(long p, std::vector<std::string> vars, std::vector<std::string> inverted = {}) {
  return PresentedRing::parse(Field::prime(p), std::move(vars), {}, inverted);
}

inline IdealHandle ideal(const RingPtr& r, std::vector<std::string> gens) {
  return IdealHandle::parse(r, gens);
}

inline std::vector<std::string> fmt(const RingPtr& r, const std::vector<Polynomial>& basis) {
  std::vector<std::string> out;
  for (const auto& p : basis) out.push_back(r->format(p));
  return out;
}

/// Random sparse polynomial with small integer coefficients.
inline Polynomial random_poly(std::mt19937& rng, const PolyRing& ring, int max_degree,
                              int max_terms, int coeff_range = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    Exponents e(ring.nvars(), 0);
    std::uniform_int_distribution<int> deg(0, max_degree);
    int budget = deg(rng);
    for (int step = 0; step < budget; ++step) {
      std::uniform_int_distribution<std::size_t> var(0, ring.nvars() - 1);
      e[var(rng)] += 1;
    }
    terms.push_back({e, Coeff(coeff(rng))});
  }
  return ring.from_terms(std::move(terms));
}

}  // namespace noether::testing
