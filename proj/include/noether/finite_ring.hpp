#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "noether/budget.hpp"

namespace noether {

/// Elements of finite rings and modules are indices 0..size-1; 0 is always
/// the additive identity.
using Element = std::uint32_t;
/// Sorted, duplicate-free subset of a finite ring or module.
using ElementSet = std::vector<Element>;

class FiniteRing;
using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

/// Explicit finite commutative ring with unit: Z/n, F_p[x]/(f), or a finite
/// product of those. Operations are table lookups.
class FiniteRing {
public:
  static FiniteRingPtr integers_mod(unsigned n, const Budget& budget = default_budget());
  /// F_p[x]/(f); `modulus` lists coefficients from the constant term up and
  /// must be monic of degree >= 1.
  static FiniteRingPtr poly_quotient(unsigned p, std::vector<unsigned> modulus,
                                     const Budget& budget = default_budget());
  static FiniteRingPtr product(const std::vector<FiniteRingPtr>& factors,
                               const Budget& budget = default_budget());
  /// "Z/8", "F2[x]/(x^2)", "Z/2 x Z/3".
  static FiniteRingPtr parse(const std::string& text, const Budget& budget = default_budget());

  std::size_t size() const noexcept { return size_; }
  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return one_; }
  Element add(Element a, Element b) const { return add_[a * size_ + b]; }
  Element mul(Element a, Element b) const { return mul_[a * size_ + b]; }
  Element neg(Element a) const { return neg_[a]; }
  const std::string& label(Element a) const { return labels_.at(a); }
  /// Element by label; throws ParseError when absent.
  Element element(const std::string& label) const;
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.size_ == b.size_ && a.one_ == b.one_ && a.add_ == b.add_ && a.mul_ == b.mul_;
  }

private:
  FiniteRing() = default;
  void finish();

  std::size_t size_ = 0;
  Element one_ = 0;
  std::vector<Element> add_, mul_, neg_;
  std::vector<std::string> labels_;
  std::string name_;

  struct IdealCache {
    std::mutex mutex;
    std::optional<std::vector<std::vector<Element>>> ideals;
  };
  std::shared_ptr<IdealCache> ideal_cache_ = std::make_shared<IdealCache>();
  friend std::vector<std::vector<Element>> enumerate_ideals(const FiniteRing&, const Budget&);
};

class FiniteModule;

/// R-linear map given by its table of images.
using ModuleMap = std::vector<Element>;

/// Explicit finite module over a finite ring: addition table and scalar
/// action table.
class FiniteModule {
public:
  /// Validates every module axiom on every table entry.
  static FiniteModule from_tables(FiniteRingPtr ring, std::vector<Element> add,
                                  std::vector<Element> action,
                                  std::vector<std::string> labels = {},
                                  const Budget& budget = default_budget());
  static FiniteModule zero(FiniteRingPtr ring);
  /// R as a module over itself.
  static FiniteModule regular(FiniteRingPtr ring);
  /// R/I for an ideal I.
  static FiniteModule cyclic(FiniteRingPtr ring, const ElementSet& ideal);
  /// R^m.
  static FiniteModule free(FiniteRingPtr ring, std::size_t rank,
                           const Budget& budget = default_budget());

  const FiniteRingPtr& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return size_; }
  Element zero_element() const noexcept { return 0; }
  Element add(Element a, Element b) const { return add_[a * size_ + b]; }
  Element scale(Element r, Element a) const { return act_[r * size_ + a]; }
  Element neg(Element a) const { return neg_[a]; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  std::string label(Element a) const;

  /// Smallest submodule containing `generators`.
  ElementSet span(const std::vector<Element>& generators) const;
  bool is_submodule(const ElementSet& subset) const;
  /// Greedy generating set: repeatedly adds the smallest element not yet spanned.
  std::vector<Element> greedy_generators(const ElementSet& submodule) const;
  std::vector<Element> generators() const;

  /// The submodule as a module in its own right; elements keep the order of
  /// `subset` (which must contain 0 first).
  FiniteModule submodule(const ElementSet& subset) const;
  /// M/N; `projection` receives the class of every element.
  FiniteModule quotient(const ElementSet& submodule, ModuleMap* projection = nullptr) const;

  /// Throws ValidationError naming the first failing axiom.
  void validate() const;

private:
  FiniteModule() = default;
  void compute_negatives();

  FiniteRingPtr ring_;
  std::size_t size_ = 0;
  std::vector<Element> add_, act_, neg_;
  std::vector<std::string> labels_;

  friend FiniteModule make_module(FiniteRingPtr, std::size_t, std::vector<Element>,
                                  std::vector<Element>, std::vector<std::string>);
};

/// Builds a module from tables without validation (for constructions that
/// preserve the axioms).
FiniteModule make_module(FiniteRingPtr ring, std::size_t size, std::vector<Element> add,
                         std::vector<Element> action, std::vector<std::string> labels);

/// Every ideal of R as its full element set, ordered by size then content.
std::vector<ElementSet> enumerate_ideals(const FiniteRing& ring,
                                         const Budget& budget = default_budget());
/// Every submodule of M.
std::vector<ElementSet> enumerate_submodules(const FiniteModule& module,
                                             const Budget& budget = default_budget());

struct NoetherianReport {
  /// Greedy generator list for each ideal of the input family.
  std::vector<std::vector<Element>> generators;
  /// Longest strictly increasing chain inside the family.
  std::size_t longest_strict_chain = 0;
  /// Number of ideals of R (the bound for any strict chain).
  std::size_t ideal_count = 0;
  /// Indices (into the family) of the maximal members.
  std::vector<std::size_t> maximal;
  bool holds() const { return longest_strict_chain <= ideal_count && !maximal.empty(); }
};

/// Checks finite generation, the chain bound and existence of maximal
/// elements on a nonempty family of ideals.
NoetherianReport noetherian_witness(const FiniteRing& ring, const std::vector<ElementSet>& family,
                                    const Budget& budget = default_budget());

struct DirectSum {
  FiniteModule module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

/// Componentwise sum with canonical injections; the empty sum is the zero module.
DirectSum direct_sum(const FiniteRingPtr& ring, const std::vector<FiniteModule>& summands,
                     const Budget& budget = default_budget());

/// All R-linear maps from `source` to `target`, found by assigning images to
/// `generators` of the source and checking every induced relation.
std::vector<ModuleMap> module_homs(const FiniteModule& source, const FiniteModule& target,
                                   const std::vector<Element>& generators,
                                   std::uint64_t max_candidates = 1u << 24);
std::vector<ModuleMap> module_homs(const FiniteModule& source, const FiniteModule& target,
                                   std::uint64_t max_candidates = 1u << 24);
bool is_linear(const FiniteModule& source, const FiniteModule& target, const ModuleMap& map);
bool is_injective(const ModuleMap& map);

struct IdealHoms {
  /// Elements of I, in the order the map tables use.
  ElementSet ideal;
  /// Each map as its table of images in M, indexed like `ideal`.
  std::vector<ModuleMap> maps;
};

/// All R-linear maps I -> M for the ideal generated by `generators`.
IdealHoms hom_from_ideal(const FiniteRing& ring, const std::vector<Element>& generators,
                         const FiniteModule& module, const Budget& budget = default_budget());

}  // namespace noether
