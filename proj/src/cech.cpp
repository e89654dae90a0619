#include "noether/cech.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "noether/error.hpp"

namespace noether {

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::size_t dense_rank(const Field& field, std::vector<std::vector<Coeff>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && field.is_zero(m[pivot][c])) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    Coeff inv = field.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (field.is_zero(m[r][c])) continue;
      Coeff factor = field.mul(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k)
        if (!field.is_zero(m[rank][k])) m[r][k] = field.sub(m[r][k], field.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t matrix_rank(const Field& field, const SparseMatrix& m) {
  DisjointSets sets(m.rows + m.cols);
  for (std::size_t c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.columns[c])
      if (!field.is_zero(v)) sets.unite(m.rows + c, r);
  std::unordered_map<std::size_t, std::vector<std::size_t>> block_cols, block_rows;
  for (std::size_t c = 0; c < m.cols; ++c) block_cols[sets.find(m.rows + c)].push_back(c);
  for (std::size_t r = 0; r < m.rows; ++r) block_rows[sets.find(r)].push_back(r);
  std::size_t rank = 0;
  for (const auto& [root, cols] : block_cols) {
    auto it = block_rows.find(root);
    if (it == block_rows.end()) continue;
    const auto& rows = it->second;
    std::unordered_map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < rows.size(); ++i) local[rows[i]] = i;
    std::vector<std::vector<Coeff>> dense(rows.size(), std::vector<Coeff>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : m.columns[cols[j]]) {
        Coeff& cell = dense[local.at(r)][j];
        cell = field.add(cell, v);
      }
    rank += dense_rank(field, std::move(dense));
  }
  return rank;
}

SparseMatrix matrix_product(const Field& field, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw DomainError("matrix_product: shape mismatch");
  SparseMatrix out(a.rows, b.cols);
  for (std::size_t c = 0; c < b.cols; ++c) {
    std::map<std::size_t, Coeff> acc;
    for (const auto& [k, bv] : b.columns[c])
      for (const auto& [r, av] : a.columns[k]) {
        auto& cell = acc[r];
        cell = field.add(cell, field.mul(av, bv));
      }
    for (auto& [r, v] : acc)
      if (!field.is_zero(v)) out.add(r, c, v);
  }
  return out;
}

bool is_zero_matrix(const Field& field, const SparseMatrix& m) {
  for (const auto& col : m.columns) {
    std::map<std::size_t, Coeff> acc;
    for (const auto& [r, v] : col) acc[r] = field.add(acc[r], v);
    for (const auto& [r, v] : acc)
      if (!field.is_zero(v)) return false;
  }
  return true;
}

std::vector<std::size_t> CechComplex::cohomology_dims() const {
  std::vector<std::size_t> ranks(dims.size(), 0);
  for (std::size_t p = 0; p < differentials.size(); ++p) ranks[p] = matrix_rank(field, differentials[p]);
  std::vector<std::size_t> out(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p) {
    std::size_t incoming = p > 0 ? ranks[p - 1] : 0;
    out[p] = dims[p] - ranks[p] - incoming;
  }
  return out;
}

bool CechComplex::squares_to_zero() const {
  for (std::size_t p = 0; p + 1 < differentials.size(); ++p)
    if (!is_zero_matrix(field, matrix_product(field, differentials[p + 1], differentials[p])))
      return false;
  return true;
}

namespace {

/// Subsets of {0..m-1} of each size, as bitmasks in increasing order.
std::vector<std::vector<std::uint32_t>> subsets_by_size(std::size_t m) {
  std::vector<std::vector<std::uint32_t>> out(m + 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask)
    out[std::size_t(__builtin_popcount(mask))].push_back(mask);
  return out;
}

/// Sign of inserting index j into the ordered set `mask`.
int insertion_sign(std::uint32_t mask, std::size_t j) {
  int below = __builtin_popcount(mask & ((std::uint32_t(1) << j) - 1));
  return below % 2 ? -1 : 1;
}

/// Builds an alternating complex over the nonempty subsets of m opens from
/// per-subset dimensions and a restriction map J → J ∪ {j}.
template <typename Restrict>
CechComplex alternating_complex(const Field& field, std::size_t m,
                                const std::vector<std::size_t>& piece_dim, Restrict restrict) {
  auto levels = subsets_by_size(m);
  CechComplex c;
  c.field = field;
  std::vector<std::size_t> offset(std::size_t(1) << m, 0);
  for (std::size_t p = 0; p < m; ++p) {
    std::size_t total = 0;
    for (auto mask : levels[p + 1]) {
      offset[mask] = total;
      total += piece_dim[mask];
    }
    c.dims.push_back(total);
  }
  for (std::size_t p = 0; p + 1 < m; ++p) {
    SparseMatrix d(c.dims[p + 1], c.dims[p]);
    for (auto mask : levels[p + 1])
      for (std::size_t j = 0; j < m; ++j) {
        if ((mask >> j) & 1) continue;
        std::uint32_t bigger = mask | (std::uint32_t(1) << j);
        Coeff sign = field.from_int(insertion_sign(mask, j));
        restrict(mask, j, [&](std::size_t from, std::size_t to, const Coeff& v) {
          d.add(offset[bigger] + to, offset[mask] + from, field.mul(sign, v));
        });
      }
    c.differentials.push_back(std::move(d));
  }
  return c;
}

void enumerate_exponents(int vars, int total, int lower, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  if (int(current.size()) == vars - 1) {
    int last = total;
    for (int e : current) last -= e;
    if (last >= lower) {
      out.push_back(current);
      out.back().push_back(last);
    }
    return;
  }
  int used = 0;
  for (int e : current) used += e;
  int remaining = vars - int(current.size()) - 1;
  for (int e = lower; total - used - e >= lower * remaining; ++e) {
    current.push_back(e);
    enumerate_exponents(vars, total, lower, current, out);
    current.pop_back();
  }
}

}  // namespace

int default_twist_window(int n, int d) { return std::max(1, -d - n); }

TwistResult twisted_cohomology_dims(const TwistData& t, const TwistBounds& bounds) {
  if (t.n < 1 || t.n > bounds.max_n)
    throw ResourceError("twist_n", "projective dimension must lie in 1.." + std::to_string(bounds.max_n));
  if (std::abs(t.d) > bounds.max_abs_d)
    throw ResourceError("twist_d", "|d| must be at most " + std::to_string(bounds.max_abs_d));
  if (t.window < 0) throw DomainError("window must be nonnegative");
  const int vars = t.n + 1;
  const int w = t.window ? t.window : default_twist_window(t.n, t.d);
  std::vector<std::vector<int>> monomials;
  std::vector<int> scratch;
  enumerate_exponents(vars, t.d, -w, scratch, monomials);
  std::vector<std::uint32_t> poles(monomials.size(), 0);
  for (std::size_t k = 0; k < monomials.size(); ++k)
    for (int i = 0; i < vars; ++i)
      if (monomials[k][std::size_t(i)] < 0) poles[k] |= std::uint32_t(1) << i;
  // Sections of O(d) over U_J: the monomials whose poles lie in J.
  const std::size_t subsets = std::size_t(1) << vars;
  std::vector<std::vector<std::size_t>> members(subsets);
  std::vector<std::unordered_map<std::size_t, std::size_t>> position(subsets);
  for (std::uint32_t mask = 1; mask < subsets; ++mask)
    for (std::size_t k = 0; k < monomials.size(); ++k)
      if ((poles[k] & ~mask) == 0) {
        position[mask][k] = members[mask].size();
        members[mask].push_back(k);
      }
  std::vector<std::size_t> piece_dim(subsets, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) piece_dim[mask] = members[mask].size();
  Field field = Field::rationals();
  Coeff one(1);
  TwistResult result;
  result.window = w;
  result.complex = alternating_complex(field, std::size_t(vars), piece_dim,
                                       [&](std::uint32_t mask, std::size_t j, auto emit) {
                                         std::uint32_t bigger = mask | (std::uint32_t(1) << j);
                                         for (std::size_t i = 0; i < members[mask].size(); ++i)
                                           emit(i, position[bigger].at(members[mask][i]), one);
                                       });
  result.complex.window = "Laurent exponents >= -" + std::to_string(w);
  auto h = result.complex.cohomology_dims();
  for (int i = 0; i <= t.n; ++i) result.dims[i] = h[std::size_t(i)];
  return result;
}

CechComplex projective_chart_complex(const Field& field, int n, int d,
                                     const std::vector<Polynomial>& linear_forms, int pole_order,
                                     const Budget& budget) {
  const std::size_t m = linear_forms.size();
  if (m == 0 || m > 12) throw DomainError("projective_chart_complex needs 1..12 charts");
  if (pole_order < 1) throw DomainError("pole order must be positive");
  PolyRing poly(field, std::size_t(n + 1));
  std::vector<Polynomial> forms;
  for (const auto& l : linear_forms) {
    Polynomial f = poly.reorder(l);
    for (const auto& term : f.terms())
      if (monomial_degree(term.exp) != 1) throw DomainError("chart functions must be linear forms");
    forms.push_back(f);
  }
  for (std::size_t v = 0; v <= std::size_t(n); ++v)
    if (!polyideal::radical_contains(poly, forms, poly.variable(v), budget))
      throw ValidationError("the linear forms do not cover projective space");
  // Homogeneous monomials of each needed degree, indexed.
  std::map<int, std::vector<Exponents>> basis;
  std::map<int, std::map<Exponents, std::size_t>> index;
  auto degree_basis = [&](int deg) -> const std::vector<Exponents>& {
    auto it = basis.find(deg);
    if (it != basis.end()) return it->second;
    std::vector<std::vector<int>> raw;
    std::vector<int> scratch;
    if (deg >= 0) enumerate_exponents(n + 1, deg, 0, scratch, raw);
    auto& list = basis[deg];
    for (auto& e : raw) {
      index[deg][Exponents(e.begin(), e.end())] = list.size();
      list.emplace_back(e.begin(), e.end());
    }
    return list;
  };
  std::vector<Polynomial> powers;
  for (const auto& f : forms) powers.push_back(poly.pow(f, unsigned(pole_order)));
  const std::size_t subsets = std::size_t(1) << m;
  std::vector<std::size_t> piece_dim(subsets, 0);
  auto degree_of = [&](std::uint32_t mask) { return d + pole_order * __builtin_popcount(mask); };
  for (std::uint32_t mask = 1; mask < subsets; ++mask) piece_dim[mask] = degree_basis(degree_of(mask)).size();
  CechComplex c = alternating_complex(
      field, m, piece_dim, [&](std::uint32_t mask, std::size_t j, auto emit) {
        int from_deg = degree_of(mask);
        int to_deg = from_deg + pole_order;
        const auto& src = degree_basis(from_deg);
        degree_basis(to_deg);
        const auto& dst = index[to_deg];
        for (std::size_t i = 0; i < src.size(); ++i) {
          Polynomial image = poly.mul_term(powers[j], src[i], Coeff(1));
          for (const auto& term : image.terms()) emit(i, dst.at(term.exp), term.coeff);
        }
      });
  c.window = "pole order " + std::to_string(pole_order) + " along each chart form";
  return c;
}

namespace {

void check_affine_ring(const RingPtr& ring) {
  if (ring->nvars() != 1 || ring->has_quotient())
    throw CapabilityError("affine Čech windows need a univariate base ring without a quotient");
}

}  // namespace

AffineCech cech_complex_affine(const IdealHandle& ideal, const OpenCover& cover,
                               const AffineWindow& window, const Budget& budget) {
  const RingPtr& ring = ideal.ring();
  check_affine_ring(ring);
  require_same_ring(ring, cover.target.ring, "cech_complex_affine");
  if (cover.pieces.empty() || cover.pieces.size() > 12)
    throw DomainError("cover needs between 1 and 12 pieces");
  if (!cover_check(cover, budget))
    throw ValidationError("the pieces do not cover " + cover.target.describe());
  if (window.pole_order < 1 || window.extra_degree < 0)
    throw DomainError("window needs pole order >= 1 and extra degree >= 0");
  const PolyRing& poly = ring->poly();
  const Field& field = ring->field();
  const int K = window.pole_order;
  const int D = window.extra_degree;
  Polynomial big_f = poly.mul(ring->inverted_product(), cover.target.f);
  RingPtr target_ring = ring->localized_at(big_f);
  const std::vector<Polynomial> generated =
      IdealHandle(target_ring, ideal.generators()).canonical_basis(budget);
  AffineCech out;
  if (!generated.empty()) out.generator = generated.front();
  const bool zero = generated.empty();

  const std::size_t m = cover.pieces.size();
  std::vector<Polynomial> g, g_pow;
  for (const auto& piece : cover.pieces) {
    require_same_ring(ring, piece.ring, "cech_complex_affine");
    g.push_back(poly.reorder(piece.f));
    g_pow.push_back(poly.pow(g.back(), unsigned(K)));
  }
  const int deg_f = poly.degree_univariate(big_f);
  auto bound = [&](std::uint32_t mask) {
    int deg = deg_f;
    for (std::size_t j = 0; j < m; ++j)
      if ((mask >> j) & 1) deg += poly.degree_univariate(g[j]);
    return K * deg + D;
  };
  const std::size_t subsets = std::size_t(1) << m;
  std::vector<std::size_t> piece_dim(subsets, 0);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) piece_dim[mask] = zero ? 0 : std::size_t(bound(mask) + 1);
  // a ↦ a·g_j^K on coefficient vectors indexed by degree.
  auto multiply_into = [&](const Polynomial& factor, std::size_t dim, auto emit) {
    for (std::size_t i = 0; i < dim; ++i)
      for (const auto& term : factor.terms()) emit(i, i + std::size_t(term.exp[0]), term.coeff);
  };
  out.complex = alternating_complex(field, m, piece_dim,
                                    [&](std::uint32_t mask, std::size_t j, auto emit) {
                                      multiply_into(g_pow[j], piece_dim[mask], emit);
                                    });
  out.complex.window = "sections h*a/(F*G_J)^" + std::to_string(K) + " with deg a <= " +
                       std::to_string(K) + "*deg(F*G_J) + " + std::to_string(D);
  out.target_dim = zero ? 0 : std::size_t(K * deg_f + D + 1);
  out.augmentation = SparseMatrix(out.complex.dims.empty() ? 0 : out.complex.dims[0], out.target_dim);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < m; ++j) {
    std::uint32_t mask = std::uint32_t(1) << j;
    multiply_into(g_pow[j], out.target_dim, [&](std::size_t from, std::size_t to, const Coeff& v) {
      out.augmentation.add(offset + to, from, v);
    });
    offset += piece_dim[mask];
  }
  auto h = out.complex.cohomology_dims();
  bool higher = std::any_of(h.begin() + 1, h.end(), [](std::size_t v) { return v != 0; });
  if (!h.empty() && (h[0] != out.target_dim || higher))
    out.complex.warnings.push_back(
        "window may be too small: H^0 has dimension " + std::to_string(h[0]) +
        " against " + std::to_string(out.target_dim) + " windowed global sections");
  return out;
}

bool affine_vanishing_check(const IdealHandle& ideal, const OpenCover& cover,
                            const AffineWindow& window, const Budget& budget) {
  AffineCech c = cech_complex_affine(ideal, cover, window, budget);
  auto h = c.complex.cohomology_dims();
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] != 0) return false;
  if (h[0] != c.target_dim) return false;
  // The global window must land injectively in the kernel of d^0.
  if (matrix_rank(c.complex.field, c.augmentation) != c.target_dim) return false;
  if (!c.complex.differentials.empty() &&
      !is_zero_matrix(c.complex.field, matrix_product(c.complex.field, c.complex.differentials[0],
                                                     c.augmentation)))
    return false;
  return true;
}

}  // namespace noether
