#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "implbase/attribute_set.hpp"
#include "implbase/basis.hpp"
#include "implbase/closure.hpp"
#include "implbase/context.hpp"

namespace implbase {

/// Throws NotStandardContext unless `ctx` is clarified and reduced.
void require_standard(const Context& ctx);

/// All minimal generators A of m (m ∈ φ(A) \ A, A inclusion-minimal), as
/// unit implications A → {m}, ordered by m and then lectically by A.
std::vector<Implication> minimal_generators(const Context& ctx);

/// Canonical direct unit basis: every proper premise A → m, RHS-merged.
Basis build_cdub(const Context& ctx);

/// D-basis: Σ₀ (binary implications, unit form) followed by the minimal
/// D-generators, tail in lectic order of lhs and RHS-merged.
Basis build_dbasis(const Context& ctx);

/// Duquenne–Guigues basis {P → φ(P) \ P : P pseudo-closed}, enumerated with
/// Next Closure in lectic order.
Basis build_dg(const Context& ctx);

struct PseudoClosedWitness {
  AttributeSet set;
  AttributeSet closure;
};

/// Memoized evaluation of the recursive pseudo-closedness definition w.r.t.
/// the closure operator of one basis. Cost is exponential in |X|.
class PseudoClosedTester {
 public:
  explicit PseudoClosedTester(const Basis& basis);

  bool operator()(const AttributeSet& x);
  std::optional<PseudoClosedWitness> witness(const AttributeSet& x);

 private:
  const AttributeSet& closure_of(const AttributeSet& x);

  ClosureIndex index_;
  std::unordered_map<AttributeSet, AttributeSet, AttributeSetHash> closures_;
  std::unordered_map<AttributeSet, bool, AttributeSetHash> verdicts_;
};

bool is_pseudo_closed(const AttributeSet& x, const Basis& basis);

/// Σ₁⁺ = Σ₂⁺, checked as B ⊆ clo₂(A) for every A→B in Σ₁ and symmetrically.
bool check_equiv(const Basis& first, const Basis& second);

enum class Sweep {
  Auto,     // ordered accumulating sweep for D-bases, pass() otherwise
  Pass,     // pass(X)
  Ordered,  // one in-order sweep accumulating into X
};

struct DirectnessReport {
  bool direct = true;
  std::optional<AttributeSet> witness;  // first X where the sweep misses clo(X)
  std::size_t checked = 0;
  bool exhaustive = true;
};

DirectnessReport check_direct(const Basis& basis, std::size_t exhaustive_limit,
                              Sweep sweep = Sweep::Auto, std::size_t samples = 10000,
                              std::uint64_t seed = 0);

bool verify_direct(const Basis& basis, std::size_t exhaustive_limit, Sweep sweep = Sweep::Auto);

}  // namespace implbase
