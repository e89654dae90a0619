#include "noether/topology.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "noether/error.hpp"

namespace noether {

DistinguishedOpen DistinguishedOpen::whole(const RingPtr& ring) { return {ring, ring->poly().one()}; }

DistinguishedOpen DistinguishedOpen::parse(const RingPtr& ring, std::string_view text) {
  return {ring, ring->parse_polynomial(text)};
}

bool open_contains(const DistinguishedOpen& a, const DistinguishedOpen& b, const Budget& budget) {
  require_same_ring(a.ring, b.ring, "open_contains");
  return radical_membership(b.f, IdealHandle(a.ring, {a.f}), budget);
}

bool open_equal(const DistinguishedOpen& a, const DistinguishedOpen& b, const Budget& budget) {
  return open_contains(a, b, budget) && open_contains(b, a, budget);
}

bool open_is_empty(const DistinguishedOpen& u, const Budget& budget) {
  return radical_membership(u.f, IdealHandle::zero(u.ring), budget);
}

DistinguishedOpen open_intersect(const DistinguishedOpen& a, const DistinguishedOpen& b) {
  require_same_ring(a.ring, b.ring, "open_intersect");
  return {a.ring, a.ring->poly().mul(a.f, b.f)};
}

bool cover_check(const OpenCover& cover, const Budget& budget) {
  std::vector<Polynomial> gens;
  for (const auto& piece : cover.pieces) {
    require_same_ring(cover.target.ring, piece.ring, "cover_check");
    gens.push_back(piece.f);
  }
  return radical_membership(cover.target.f, IdealHandle(cover.target.ring, gens), budget);
}

RingPtr coordinate_ring(const DistinguishedOpen& u, const Budget& budget) {
  if (open_is_empty(u, budget)) throw DomainError("coordinate ring of the empty open " + u.describe());
  if (is_unit_ideal(IdealHandle(u.ring, {u.f}), budget)) return u.ring;
  return u.ring->localized_at(u.f);
}

bool is_prime_ideal(const FiniteRing& ring, const ElementSet& ideal) {
  if (ideal.size() == ring.size()) return false;
  std::vector<char> in(ring.size(), 0);
  for (Element e : ideal) in[e] = 1;
  for (Element a = 0; a < ring.size(); ++a)
    for (Element b = a; b < ring.size(); ++b)
      if (in[ring.mul(a, b)] && !in[a] && !in[b]) return false;
  return true;
}

std::vector<ElementSet> enumerate_spec(const FiniteRing& ring, const Budget& budget) {
  std::vector<ElementSet> out;
  for (auto& ideal : enumerate_ideals(ring, budget))
    if (is_prime_ideal(ring, ideal)) out.push_back(std::move(ideal));
  return out;
}

// -------------------------------------------------------------- FiniteSpace

FiniteSpace FiniteSpace::from_preorder(
    std::size_t points, const std::vector<std::pair<std::size_t, std::size_t>>& relations) {
  if (points == 0 || points > 32) throw DomainError("finite spaces need 1..32 points");
  FiniteSpace s;
  s.n_ = points;
  s.down_.assign(points, 0);
  for (std::size_t p = 0; p < points; ++p) s.down_[p] = Subset(1) << p;
  for (auto [a, b] : relations) {
    if (a >= points || b >= points) throw ValidationError("preorder relation names a missing point");
    s.down_[b] |= Subset(1) << a;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < points; ++p) {
      Subset closed = s.down_[p];
      for (std::size_t q = 0; q < points; ++q)
        if ((s.down_[p] >> q) & 1) closed |= s.down_[q];
      if (closed != s.down_[p]) {
        s.down_[p] = closed;
        changed = true;
      }
    }
  }
  // Opens are the unions of principal down-sets.
  std::set<Subset> found{0};
  std::vector<Subset> frontier{0};
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset u : frontier)
      for (std::size_t p = 0; p < points; ++p) {
        Subset v = u | s.down_[p];
        if (found.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  s.opens_.assign(found.begin(), found.end());
  std::stable_sort(s.opens_.begin(), s.opens_.end(), [](Subset a, Subset b) {
    return std::popcount(a) < std::popcount(b);
  });
  return s;
}

bool FiniteSpace::is_open(Subset s) const {
  for (std::size_t p = 0; p < n_; ++p)
    if (((s >> p) & 1) && (down_[p] & ~s)) return false;
  return true;
}

bool FiniteSpace::is_connected(Subset s) const {
  if (s == 0) return false;
  Subset reached = s & (~s + 1);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t p = 0; p < n_; ++p) {
      if (!((s >> p) & 1) || ((reached >> p) & 1)) continue;
      for (std::size_t q = 0; q < n_; ++q)
        if (((reached >> q) & 1) && (leq(p, q) || leq(q, p))) {
          reached |= Subset(1) << p;
          grew = true;
          break;
        }
    }
  }
  return reached == s;
}

std::vector<FiniteSpace::Subset> FiniteSpace::connected_opens() const {
  std::vector<Subset> out;
  for (Subset u : opens_)
    if (is_connected(u)) out.push_back(u);
  return out;
}

std::string FiniteSpace::format(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t p = 0; p < n_; ++p)
    if ((s >> p) & 1) {
      out += (first ? "" : ",") + std::to_string(p);
      first = false;
    }
  return out + "}";
}

}  // namespace noether
