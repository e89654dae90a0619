#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noether/finite_ring.hpp"

namespace noether {

/// An R-linear map from an ideal into a module, tabulated on the ideal's
/// elements.
struct IdealMap {
  ElementSet ideal;
  std::vector<Element> generators;
  /// images[k] is the image of ideal[k].
  ModuleMap images;
};

struct BaerTestResult {
  bool injective = false;
  /// Set when some map does not extend.
  std::optional<IdealMap> witness;
  std::size_t ideals_checked = 0;
  std::size_t maps_checked = 0;
};

/// Baer's criterion by exhaustive search: every map I -> M is tested for an
/// extension r -> r·m.
BaerTestResult baer_test(const FiniteModule& module, const Budget& budget = default_budget());

/// Does `map` extend to R -> M? Returns the image of 1 of some extension.
std::optional<Element> find_extension(const FiniteModule& module, const IdealMap& map);

/// (M ⊕ R_1 ⊕ ... ⊕ R_c) / ⟨(φ_i(x), -x_i) : x ∈ I_i⟩ kept in normal form:
/// every class has a unique representative (m, t_1, ..., t_c) with t_i the
/// least element of its coset modulo I_i. Elements are coordinate vectors of
/// length 1 + c; the module need not be tabulated.
class PushoutModule {
public:
  using Vec = std::vector<Element>;

  PushoutModule(FiniteModule base, std::vector<IdealMap> copies);

  const FiniteModule& base() const noexcept { return base_; }
  const FiniteRingPtr& ring() const noexcept { return base_.ring(); }
  std::size_t copy_count() const noexcept { return copies_.size(); }
  const IdealMap& copy(std::size_t i) const { return copies_.at(i).map; }

  /// |M| · Π |R/I_i|; saturates at UINT64_MAX.
  std::uint64_t size() const noexcept { return size_; }

  Vec zero() const { return Vec(1 + copies_.size(), 0); }
  Vec add(const Vec& a, const Vec& b) const;
  Vec scale(Element r, const Vec& a) const;
  Vec neg(const Vec& a) const;
  /// Image of m under M -> M₁.
  Vec embed(Element m) const;
  /// The class of 1 in copy i: an extension R -> M₁ of copy i's map.
  Vec extension_element(std::size_t i) const;
  bool is_normal(const Vec& a) const;
  std::string label(const Vec& a) const;

  /// Every element in a fixed order (base-major, copies in lexicographic order).
  std::vector<Vec> elements(const Budget& budget = default_budget()) const;
  /// Tabulates the module; `index_of` maps elements to indices.
  FiniteModule materialize(const Budget& budget = default_budget()) const;
  Element index_of(const Vec& a) const;

private:
  struct Copy {
    IdealMap map;
    std::vector<char> in_ideal;
    /// least member of r + I, for every r in R.
    std::vector<Element> transversal;
    /// image of r under the map, for r in I.
    std::vector<Element> image;
    std::vector<Element> reps;
  };

  Vec normalize(Element m, Vec raw) const;

  FiniteModule base_;
  std::vector<Copy> copies_;
  std::uint64_t size_ = 1;
};

struct BaerStepResult {
  FiniteModule input;
  PushoutModule output;
  /// Present when |M₁| is within max_module_size.
  std::optional<FiniteModule> materialized;
  /// Ledger entry i is copy i: one per (ideal, map) pair.
  std::vector<IdealMap> ledger;
  /// Every ledger map extends to R -> M₁ via the class of 1 in its copy,
  /// and the embedding is injective and linear.
  bool postcondition = false;
  std::string failure;
};

/// One round of the construction. M₁ is tabulated only when it fits in
/// max_module_size; more (ideal, map) pairs than that bound raise ResourceError.
BaerStepResult baer_step(const FiniteModule& module, const Budget& budget = default_budget());

/// Verifies the postcondition of a step: for each ledger entry, r·e_i equals
/// the embedded image of φ_i(r) for every r in I_i.
bool check_step_extensions(const BaerStepResult& step, std::string* failure = nullptr);

struct BaerChain {
  /// Tabulated stages M_0, ..., M_j.
  std::vector<FiniteModule> stages;
  /// embeddings[k] : M_k -> M_{k+1} for tabulated consecutive stages.
  std::vector<ModuleMap> embeddings;
  /// The last stage when it is too large to tabulate.
  std::optional<PushoutModule> last;
  std::size_t requested_length = 0;
  /// Number of steps built (stages.size() - 1, plus one when `last` is set).
  std::size_t built_length = 0;
  /// stage_extension[k]: every map I -> M_k extends to R -> M_{k+1}.
  std::vector<bool> stage_extension;
  /// Composed embeddings M_0 -> M_k fix M pointwise and stay injective.
  bool monotone = true;
  /// Set when a budget stopped the chain at that stage.
  std::optional<std::size_t> stopped_at;
  std::string stop_reason;

  bool holds() const;
};

BaerChain baer_chain(const FiniteModule& module, std::size_t length,
                     const Budget& budget = default_budget());

/// All injective module maps A -> B (A must be small).
std::vector<ModuleMap> module_embeddings(const FiniteModule& a, const FiniteModule& b,
                                         std::size_t limit = SIZE_MAX);
bool is_isomorphic(const FiniteModule& a, const FiniteModule& b);

struct EnvelopeResult {
  std::optional<FiniteModule> envelope;
  /// M -> E when found.
  ModuleMap embedding;
  /// Generator counts m of R^m that were searched completely.
  std::size_t searched_rank = 0;
  /// Every module with more generators than `searched_rank` is at least this large.
  std::uint64_t unsearched_lower_bound = 0;
  std::size_t candidates = 0;
};

/// Smallest injective E ⊇ M with |E| <= bound among quotients of R^m,
/// m = 0, 1, ...; stops as soon as no module needing more generators can be
/// smaller than the best found, or when |R^m| exceeds 256. The bound must be
/// at most 256.
EnvelopeResult injective_envelope_bruteforce(const FiniteModule& module, std::size_t bound = 256,
                                             const Budget& budget = default_budget());

struct InjectiveResolution {
  /// E_0, E_1, ...
  std::vector<FiniteModule> terms;
  /// M -> E_0, then E_k -> E_{k+1}.
  std::vector<ModuleMap> maps;
  /// True when the last cokernel was zero.
  bool terminated = false;
  /// Set when the envelope search failed at this stage.
  std::optional<std::size_t> missing_at;
};

/// 0 -> M -> E_0 -> E_1 -> ... via envelopes of successive cokernels.
InjectiveResolution injective_resolution(const FiniteModule& module, std::size_t length,
                                         std::size_t bound = 256,
                                         const Budget& budget = default_budget());

}  // namespace noether
