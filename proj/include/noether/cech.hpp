#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "noether/ring.hpp"
#include "noether/topology.hpp"

namespace noether {

/// Column-major sparse matrix over a field.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
  void add(std::size_t row, std::size_t col, const Coeff& value) {
    columns[col].push_back({row, value});
  }
  std::size_t nonzeros() const;
};

/// Exact rank; the matrix splits into connected blocks which are
/// eliminated separately.
std::size_t matrix_rank(const Field& field, const SparseMatrix& m);
/// a·b, with duplicate entries summed.
SparseMatrix matrix_product(const Field& field, const SparseMatrix& a, const SparseMatrix& b);
bool is_zero_matrix(const Field& field, const SparseMatrix& m);

/// Alternating Čech cochain complex C^0 → C^1 → … with finite-dimensional
/// windowed pieces.
struct CechComplex {
  Field field = Field::rationals();
  std::vector<std::size_t> dims;
  /// differentials[p] : C^p → C^{p+1}.
  std::vector<SparseMatrix> differentials;
  std::string window;
  std::vector<std::string> warnings;

  std::vector<std::size_t> cohomology_dims() const;
  bool squares_to_zero() const;
};

struct TwistData {
  int n = 1;
  int d = 0;
  /// Laurent exponents are kept ≥ -window; 0 picks max(1, -d-n).
  int window = 0;
};

struct TwistBounds {
  int max_n = 4;
  int max_abs_d = 20;
};

struct TwistResult {
  std::map<int, std::size_t> dims;
  int window = 0;
  CechComplex complex;
};

/// H^i(P^n, O(d)) from the standard (n+1)-chart cover, by rank counting on
/// Laurent monomials of degree d with exponents ≥ -window.
TwistResult twisted_cohomology_dims(const TwistData& t, const TwistBounds& bounds = {});
int default_twist_window(int n, int d);

/// The same cohomology from an arbitrary cover of P^n by D(ℓ) for linear
/// forms ℓ in n+1 variables: sections over U_J are windowed as
/// a/ℓ_J^K with a homogeneous of degree d + K|J|.
CechComplex projective_chart_complex(const Field& field, int n, int d,
                                     const std::vector<Polynomial>& linear_forms, int pole_order,
                                     const Budget& budget = default_budget());

struct AffineWindow {
  /// Sections over U_J are h·a/(F·G_J)^K with deg a ≤ K·deg(F·G_J) + D.
  int pole_order = 2;
  int extra_degree = 4;
};

struct AffineCech {
  CechComplex complex;
  /// Dimension of the window for the global sections of Ĩ over the target.
  std::size_t target_dim = 0;
  /// Window for the target mapped into C^0.
  SparseMatrix augmentation;
  /// Generator of Ĩ over the target (zero polynomial for the zero sheaf).
  Polynomial generator;
};

/// Čech complex of Ĩ on a cover of a distinguished open; univariate base
/// rings without a quotient only.
AffineCech cech_complex_affine(const IdealHandle& ideal, const OpenCover& cover,
                               const AffineWindow& window = {},
                               const Budget& budget = default_budget());
/// H^i = 0 for i > 0 and H^0 equal to the windowed global sections.
bool affine_vanishing_check(const IdealHandle& ideal, const OpenCover& cover,
                            const AffineWindow& window = {},
                            const Budget& budget = default_budget());

}  // namespace noether
