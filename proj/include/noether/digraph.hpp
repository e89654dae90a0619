#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "noether/check.hpp"
#include "noether/finite_ring.hpp"
#include "noether/ring.hpp"
#include "noether/topology.hpp"

namespace noether {

/// A node ⟨D(f), K⟩; K is given by global generators and read in the
/// coordinate ring of D(f).
struct DigraphNode {
  DistinguishedOpen open;
  IdealHandle ideal;
};

struct IdealDigraph {
  RingPtr ring;
  std::vector<DigraphNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t root = 0;

  std::vector<std::size_t> children(std::size_t node) const;
};

/// One entry per invariant: global, functional, decreasing, increasing,
/// structural (in that order).
struct DigraphReport {
  std::vector<InvariantCheck> checks;
  bool valid() const;
  const InvariantCheck& check(const std::string& name) const;
  /// First failing invariant rendered as "name: witness".
  std::string first_failure() const;
};

DigraphReport validate_digraph(const IdealDigraph& d, const Budget& budget = default_budget());
/// Throws ValidationError carrying the first failure.
void require_valid(const IdealDigraph& d, const Budget& budget = default_budget());

/// K read in the coordinate ring of `u`.
IdealHandle localize_to(const IdealHandle& ideal, const DistinguishedOpen& u,
                        const Budget& budget = default_budget());

struct Fraction {
  Polynomial numerator;
  Polynomial denominator;
};

struct FractionalNode {
  DistinguishedOpen open;
  std::vector<Fraction> generators;
};

/// Replaces every fraction by its numerator after checking that the
/// denominator is a unit on the node's open; each node's ideal of R_f is
/// unchanged (verified).
IdealDigraph clear_denominators(const RingPtr& ring, const std::vector<FractionalNode>& nodes,
                                std::vector<std::pair<std::size_t, std::size_t>> edges,
                                std::size_t root, const Budget& budget = default_budget());

/// Whether numerator/denominator lies in the generated sheaf over `u`, by
/// the stalkwise criterion over node subsets.
bool section_membership(const IdealDigraph& d, const DistinguishedOpen& u,
                        const Polynomial& numerator, const Budget& budget = default_budget());
bool section_membership(const IdealDigraph& d, const DistinguishedOpen& u, const Fraction& section,
                        const Budget& budget = default_budget());

/// Exact section ideal over `u` in coordinate_ring(u). Univariate base rings
/// without a quotient only; otherwise CapabilityError.
IdealHandle evaluate_sheaf(const IdealDigraph& d, const DistinguishedOpen& u,
                           const Budget& budget = default_budget());

/// A sheaf of ideals known through queries, with a finite test basis of
/// opens used to look for expansive opens below every node.
class SheafOracle {
public:
  SheafOracle(RingPtr ring, std::vector<DistinguishedOpen> basis, std::string kind)
      : ring_(std::move(ring)), basis_(std::move(basis)), kind_(std::move(kind)) {}
  virtual ~SheafOracle() = default;

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<DistinguishedOpen>& basis() const noexcept { return basis_; }
  const std::string& kind() const noexcept { return kind_; }
  /// Global generators of the section ideal over `u`.
  virtual IdealHandle value(const DistinguishedOpen& u, const Budget& budget) const = 0;

private:
  RingPtr ring_;
  std::vector<DistinguishedOpen> basis_;
  std::string kind_;
};

using OraclePtr = std::shared_ptr<const SheafOracle>;

/// Explicit list of (open, generators); opens outside the table are an
/// oracle error.
OraclePtr make_table_oracle(const RingPtr& ring,
                            std::vector<std::pair<DistinguishedOpen, IdealHandle>> table,
                            std::vector<DistinguishedOpen> basis);
/// The quasi-coherent sheaf Ĩ: U ↦ I·R_U.
OraclePtr make_quasi_coherent_oracle(const IdealHandle& ideal, std::vector<DistinguishedOpen> basis);
/// The sheaf generated by a digraph (univariate base rings).
OraclePtr make_digraph_oracle(IdealDigraph digraph, std::vector<DistinguishedOpen> basis);
OraclePtr make_function_oracle(
    const RingPtr& ring,
    std::function<IdealHandle(const DistinguishedOpen&, const Budget&)> value,
    std::vector<DistinguishedOpen> basis);

/// Builds the digraph generation by generation: the children of a node are
/// the maximal expansive opens among the basis opens intersected with it.
IdealDigraph extract_digraph(const SheafOracle& oracle, const Budget& budget = default_budget());

/// Whether the generated sheaf equals Ĩ (I the root ideal) over every basis
/// open. Requires a valid digraph.
bool is_quasi_coherent(const IdealDigraph& d, const std::vector<DistinguishedOpen>& basis,
                       const Budget& budget = default_budget());

/// Along every edge, the saturated global ideals strictly increase.
bool extraction_certificate(const IdealDigraph& d, const Budget& budget = default_budget());

// ------------------------------------------------------ constant sheaf ℤ

/// n_U for each connected open U, meaning the ideal n_U·ℤ.
struct ZZSheafData {
  FiniteSpace space;
  std::map<FiniteSpace::Subset, std::uint64_t> values;
};

struct ZZNode {
  FiniteSpace::Subset open;
  std::uint64_t n;
};

struct ZZDigraph {
  std::vector<ZZNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t root = 0;
};

bool zz_divides(std::uint64_t a, std::uint64_t b);
std::uint64_t zz_gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t zz_lcm(std::uint64_t a, std::uint64_t b);

/// Restriction law U ⊆ V ⇒ n_U | n_V, and gluing n_U = lcm over p ∈ U of
/// n_{↓p}. Throws ValidationError naming the failing opens.
void validate_zz_sheaf(const ZZSheafData& data);
ZZDigraph extract_zz_digraph(const ZZSheafData& data);
/// Value over a connected open of the sheaf the digraph generates.
std::uint64_t zz_generated_value(const FiniteSpace& space, const ZZDigraph& d,
                                 FiniteSpace::Subset open);

// ------------------------------------------------------ digraph spaces

/// Number of valid digraphs over a finite ring, with nodes drawn from every
/// distinguished open and every ideal of its coordinate ring.
std::uint64_t count_digraph_space(const FiniteRing& ring, const Budget& budget = default_budget(),
                                  std::uint64_t max_configurations = 1u << 22);
/// Same over an explicit vocabulary of opens and ideals of a presented ring.
std::uint64_t count_digraph_space(const RingPtr& ring, const std::vector<DistinguishedOpen>& opens,
                                  const std::vector<IdealHandle>& ideals,
                                  const Budget& budget = default_budget(),
                                  std::uint64_t max_configurations = 1u << 22);

}  // namespace noether
