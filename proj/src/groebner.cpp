#include "noether/groebner.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "noether/error.hpp"

namespace noether {

namespace {

struct PairQueue {
  std::set<std::pair<std::size_t, std::size_t>> pending;

  bool contains(std::size_t i, std::size_t j) const {
    return pending.count({std::min(i, j), std::max(i, j)}) != 0;
  }
};

void sort_basis(const PolyRing& ring, std::vector<Polynomial>& basis) {
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring.order().compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
}

}  // namespace

bool is_unit_basis(const std::vector<Polynomial>& basis) {
  return std::any_of(basis.begin(), basis.end(), [](const Polynomial& p) { return p.is_constant(); });
}

std::vector<Polynomial> reduce_basis(const PolyRing& ring, std::vector<Polynomial> basis) {
  std::erase_if(basis, [](const Polynomial& p) { return p.is_zero(); });
  for (auto& g : basis) g = ring.monic(g);
  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = basis[i].leading_monomial();
      const auto& lj = basis[j].leading_monomial();
      if (monomial_divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  if (is_unit_basis(minimal)) return {ring.one()};
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    // The leading term is irreducible by a minimal basis; reduce the tail only.
    Polynomial tail = ring.sub(minimal[i], ring.monomial(minimal[i].leading_monomial(),
                                                        minimal[i].leading_coeff()));
    Polynomial reduced_tail = ring.normal_form(tail, others);
    minimal[i] = ring.add(ring.monomial(minimal[i].leading_monomial(), minimal[i].leading_coeff()),
                          reduced_tail);
  }
  sort_basis(ring, minimal);
  return minimal;
}

std::vector<Polynomial> buchberger(const PolyRing& ring, std::vector<Polynomial> generators,
                                   const Budget& budget) {
  int degree_limit = budget.max_degree;
  for (const auto& g : generators) degree_limit = std::max(degree_limit, g.total_degree());

  std::vector<Polynomial> basis;
  PairQueue queue;
  auto insert = [&](Polynomial h) {
    h = ring.monic(h);
    const std::size_t k = basis.size();
    basis.push_back(std::move(h));
    for (std::size_t i = 0; i < k; ++i) queue.pending.insert({i, k});
  };

  for (auto& g : generators) {
    Polynomial r = ring.normal_form(g, basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {ring.one()};
    insert(std::move(r));
  }

  std::uint64_t processed = 0;
  while (!queue.pending.empty()) {
    // Normal strategy: smallest lcm first.
    auto best = queue.pending.begin();
    Exponents best_lcm = monomial_lcm(basis[best->first].leading_monomial(),
                                      basis[best->second].leading_monomial());
    for (auto it = std::next(queue.pending.begin()); it != queue.pending.end(); ++it) {
      Exponents l = monomial_lcm(basis[it->first].leading_monomial(),
                                 basis[it->second].leading_monomial());
      if (ring.order().compare(l, best_lcm) < 0) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    queue.pending.erase(best);

    if (++processed > budget.max_pairs) {
      throw ResourceError("max_pairs", "Groebner basis exceeded the S-pair budget of " +
                                           std::to_string(budget.max_pairs) + " pairs");
    }

    const auto& li = basis[i].leading_monomial();
    const auto& lj = basis[j].leading_monomial();
    // Product criterion: coprime leading monomials reduce to zero.
    bool coprime = true;
    for (std::size_t v = 0; v < li.size(); ++v)
      if (li[v] != 0 && lj[v] != 0) coprime = false;
    if (coprime) continue;
    // Chain criterion.
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (monomial_divides(basis[k].leading_monomial(), best_lcm) && !queue.contains(i, k) &&
          !queue.contains(j, k))
        chain = true;
    }
    if (chain) continue;

    Polynomial s = ring.sub(
        ring.mul_term(basis[i], monomial_quotient(best_lcm, li), Coeff(1)),
        ring.mul_term(basis[j], monomial_quotient(best_lcm, lj), Coeff(1)));
    Polynomial r = ring.normal_form(s, basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {ring.one()};
    if (r.total_degree() > degree_limit) {
      throw ResourceError("max_degree", "Groebner basis produced an element of degree " +
                                            std::to_string(r.total_degree()) +
                                            " above the degree budget " +
                                            std::to_string(degree_limit));
    }
    insert(std::move(r));
  }
  return reduce_basis(ring, std::move(basis));
}

std::vector<Polynomial> groebner_basis(const PolyRing& ring, std::vector<Polynomial> generators,
                                       const Budget& budget) {
  if (ring.nvars() == 1) {
    Polynomial g;
    for (const auto& p : generators) g = ring.gcd_univariate(g, p);
    if (g.is_zero()) return {};
    return {g};
  }
  if (ring.nvars() == 0) {
    for (const auto& p : generators)
      if (!p.is_zero()) return {ring.one()};
    return {};
  }
  return buchberger(ring, std::move(generators), budget);
}

std::vector<Polynomial> eliminate(const PolyRing& ring, std::vector<Polynomial> generators,
                                  std::size_t count, const PolyRing& target, const Budget& budget) {
  if (ring.order().kind() != MonomialOrder::Kind::block || ring.order().block_size() != count)
    throw DomainError("elimination requires a block order on the eliminated variables");
  std::vector<Polynomial> basis = buchberger(ring, std::move(generators), budget);
  std::vector<Polynomial> kept;
  for (const auto& g : basis) {
    if (!ring.uses_leading_vars(g, count)) kept.push_back(target.drop_leading_vars(g, count));
  }
  return groebner_basis(target, std::move(kept), budget);
}

}  // namespace noether
