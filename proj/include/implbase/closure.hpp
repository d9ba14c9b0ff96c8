#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "implbase/attribute_set.hpp"
#include "implbase/basis.hpp"
#include "implbase/metrics.hpp"

namespace implbase {

enum class Algorithm { Classic, Lin, Wild, ClassicDirect, LinDirect, WildDirect, Oracle };

std::string_view algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);
bool is_direct(Algorithm algorithm);

/// Direct algorithms accept only CDUB and D-bases; throws WrongBasisKind.
void require_direct_kind(BasisKind kind, Algorithm algorithm);

struct ClosureResult {
  AttributeSet closure;
  Metrics metrics;
};

/// Read-only structures derived once per basis: the attribute → implication
/// lists shared by the counting algorithms, the lhs sizes used to reset the
/// counters, and for D-bases the Σ₀ reachability table. Safe to share across
/// threads.
class ClosureIndex {
 public:
  explicit ClosureIndex(Basis basis);

  const Basis& basis() const noexcept { return basis_; }
  std::size_t universe_size() const noexcept { return basis_.universe().size(); }

  /// Indices of the implications whose lhs contains `a`, in basis order.
  const std::vector<std::uint32_t>& implications_with(Attribute a) const { return lists_[a]; }
  const std::vector<std::uint32_t>& lhs_sizes() const noexcept { return lhs_sizes_; }

  /// clo₀(X): closure under the binary prefix Σ₀. Throws WrongBasisKind
  /// unless the basis is a D-basis.
  AttributeSet binary_closure(const AttributeSet& x) const;

 private:
  Basis basis_;
  std::vector<std::vector<std::uint32_t>> lists_;
  std::vector<std::uint32_t> lhs_sizes_;
  std::vector<AttributeSet> binary_reach_;
};

/// One pass: X ∪ ⋃{B : A→B, A ⊆ X}, all tests against the original X.
AttributeSet pass(const AttributeSet& x, const Basis& basis);

/// clo₀ for a D-basis; builds the reachability table on each call.
AttributeSet binary_closure(const AttributeSet& x, const Basis& dbasis);

// Classic algorithms: correct for any basis.
ClosureResult closure_classic(const AttributeSet& x, const ClosureIndex& index);
ClosureResult lin_closure(const AttributeSet& x, const ClosureIndex& index);
ClosureResult wild_closure(const AttributeSet& x, const ClosureIndex& index);

/// Whether the direct variants seed a D-basis query with clo₀(X). Skip exists
/// to exhibit the failure mode of an unseeded single sweep.
enum class Seeding { Auto, Skip };

// Direct algorithms: CDUB or D-basis only.
ClosureResult closure_direct(const AttributeSet& x, const ClosureIndex& index);
ClosureResult lin_closure_direct(const AttributeSet& x, const ClosureIndex& index,
                                 Seeding seeding = Seeding::Auto);
ClosureResult wild_closure_direct(const AttributeSet& x, const ClosureIndex& index,
                                  Seeding seeding = Seeding::Auto);

struct OracleResult {
  AttributeSet closure;
  /// Smallest k ≥ 1 with Πᵏ(X) equal to the fixpoint.
  std::size_t passes = 0;
};

/// Iterated pass until a fixpoint; the reference every algorithm is tested
/// against.
OracleResult oracle_closure(const AttributeSet& x, const Basis& basis);

/// Runs `algorithm` after checking its pairing with the basis kind.
ClosureResult compute_closure(Algorithm algorithm, const AttributeSet& x, const ClosureIndex& index);

/// query.rhs ⊆ clo(query.lhs), using a direct algorithm when the kind allows.
bool implies(const ClosureIndex& index, const Implication& query);
bool implies(const Basis& basis, const Implication& query);

}  // namespace implbase
