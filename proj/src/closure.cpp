#include "implbase/closure.hpp"

#include <chrono>
#include <numeric>

namespace implbase {

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Classic: return "classic";
    case Algorithm::Lin: return "lin";
    case Algorithm::Wild: return "wild";
    case Algorithm::ClassicDirect: return "classic-direct";
    case Algorithm::LinDirect: return "lin-direct";
    case Algorithm::WildDirect: return "wild-direct";
    case Algorithm::Oracle: return "oracle";
  }
  return "classic";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Classic, Algorithm::Lin, Algorithm::Wild, Algorithm::ClassicDirect,
                 Algorithm::LinDirect, Algorithm::WildDirect, Algorithm::Oracle}) {
    if (algorithm_name(a) == name) return a;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

bool is_direct(Algorithm algorithm) {
  return algorithm == Algorithm::ClassicDirect || algorithm == Algorithm::LinDirect ||
         algorithm == Algorithm::WildDirect;
}

void require_direct_kind(BasisKind kind, Algorithm algorithm) {
  if (kind != BasisKind::CDUB && kind != BasisKind::DBasis) {
    throw Error(ErrorKind::WrongBasisKind, std::string(algorithm_name(algorithm)) +
                                               " needs a cdub or dbasis, got " +
                                               std::string(kind_name(kind)));
  }
}

ClosureIndex::ClosureIndex(Basis basis)
    : basis_(std::move(basis)), lists_(basis_.universe().size()) {
  lhs_sizes_.reserve(basis_.size());
  for (std::uint32_t i = 0; i < basis_.size(); ++i) {
    const auto& lhs = basis_[i].lhs();
    lhs_sizes_.push_back(static_cast<std::uint32_t>(lhs.count()));
    lhs.for_each([&](Attribute a) { lists_[a].push_back(i); });
  }
  if (basis_.kind() != BasisKind::DBasis) return;

  const std::size_t n = basis_.universe().size();
  std::vector<AttributeSet> successors(n, AttributeSet(n));
  for (std::size_t i = 0; i < basis_.sigma0_len(); ++i) {
    const auto& imp = basis_[i];
    successors[*imp.lhs().first()] |= imp.rhs();
  }
  binary_reach_.assign(n, AttributeSet(n));
  for (std::size_t a = 0; a < n; ++a) {
    AttributeSet reach = AttributeSet::of(n, {a});
    AttributeSet frontier = reach;
    while (!frontier.empty()) {
      AttributeSet grown(n);
      frontier.for_each([&](Attribute b) { grown |= successors[b]; });
      frontier = grown - reach;
      reach |= grown;
    }
    binary_reach_[a] = std::move(reach);
  }
}

AttributeSet ClosureIndex::binary_closure(const AttributeSet& x) const {
  if (basis_.kind() != BasisKind::DBasis) {
    throw Error(ErrorKind::WrongBasisKind, "clo0 needs a dbasis");
  }
  if (x.universe_size() != universe_size()) {
    throw Error(ErrorKind::UniverseMismatch, "set and basis use different universes");
  }
  AttributeSet out(x.universe_size());
  x.for_each([&](Attribute a) { out |= binary_reach_[a]; });
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

void check_universe(const AttributeSet& x, std::size_t n) {
  if (x.universe_size() != n) {
    throw Error(ErrorKind::UniverseMismatch, "set and basis use different universes");
  }
}

std::uint64_t nanos_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

AttributeSet seed_for(const AttributeSet& x, const ClosureIndex& index, Seeding seeding) {
  if (seeding == Seeding::Auto && index.basis().kind() == BasisKind::DBasis) {
    return index.binary_closure(x);
  }
  return x;
}

}  // namespace

AttributeSet pass(const AttributeSet& x, const Basis& basis) {
  check_universe(x, basis.universe().size());
  AttributeSet result(x.universe_size());
  for (const auto& imp : basis) {
    if (imp.lhs().is_subset_of(x)) result |= imp.rhs();
  }
  return x | result;
}

AttributeSet binary_closure(const AttributeSet& x, const Basis& dbasis) {
  return ClosureIndex(dbasis).binary_closure(x);
}

ClosureResult closure_classic(const AttributeSet& input, const ClosureIndex& index) {
  check_universe(input, index.universe_size());
  const Basis& basis = index.basis();
  ClosureResult r{input, {}};
  const auto start = Clock::now();
  // Working copy of Σ as a list of surviving indices; firing removes the entry.
  std::vector<std::uint32_t> alive(basis.size());
  std::iota(alive.begin(), alive.end(), 0u);
  bool stable = false;
  while (!stable) {
    ++r.metrics.outer_loops;
    stable = true;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < alive.size(); ++k) {
      ++r.metrics.inner_loops;
      const auto& imp = basis[alive[k]];
      ++r.metrics.attribute_ops;
      if (imp.lhs().is_subset_of(r.closure)) {
        ++r.metrics.deps;
        ++r.metrics.attribute_ops;
        r.closure |= imp.rhs();
        stable = false;
      } else {
        alive[kept++] = alive[k];
      }
    }
    alive.resize(kept);
  }
  r.metrics.elapsed_ns = nanos_since(start);
  return r;
}

ClosureResult lin_closure(const AttributeSet& input, const ClosureIndex& index) {
  check_universe(input, index.universe_size());
  const Basis& basis = index.basis();
  ClosureResult r{input, {}};
  const auto start = Clock::now();
  std::vector<std::uint32_t> count = index.lhs_sizes();
  AttributeSet update = input;
  while (auto m = update.first()) {
    ++r.metrics.outer_loops;
    ++r.metrics.attribute_ops;
    update.erase(*m);
    for (std::uint32_t i : index.implications_with(*m)) {
      ++r.metrics.inner_loops;
      if (--count[i] == 0) {
        ++r.metrics.deps;
        const AttributeSet add = basis[i].rhs() - r.closure;
        r.closure |= add;
        update |= add;
        r.metrics.attribute_ops += 3;
      }
    }
  }
  r.metrics.elapsed_ns = nanos_since(start);
  return r;
}

ClosureResult wild_closure(const AttributeSet& input, const ClosureIndex& index) {
  check_universe(input, index.universe_size());
  const Basis& basis = index.basis();
  ClosureResult r{input, {}};
  const auto start = Clock::now();
  std::vector<std::uint32_t> alive(basis.size());
  std::iota(alive.begin(), alive.end(), 0u);
  std::vector<std::uint32_t> mark(basis.size(), 0);
  std::uint32_t stamp = 0;
  bool stable = false;
  while (!stable) {
    ++r.metrics.outer_loops;
    stable = true;
    // Σ₁: implications whose lhs meets U \ X.
    ++stamp;
    ++r.metrics.attribute_ops;
    r.closure.complement().for_each([&](Attribute m) {
      for (std::uint32_t i : index.implications_with(m)) mark[i] = stamp;
    });
    std::size_t kept = 0;
    for (std::size_t k = 0; k < alive.size(); ++k) {
      const std::uint32_t i = alive[k];
      if (mark[i] == stamp) {
        alive[kept++] = i;
        continue;
      }
      ++r.metrics.inner_loops;
      ++r.metrics.deps;
      ++r.metrics.attribute_ops;
      r.closure |= basis[i].rhs();
      stable = false;
    }
    alive.resize(kept);
  }
  r.metrics.elapsed_ns = nanos_since(start);
  return r;
}

ClosureResult closure_direct(const AttributeSet& input, const ClosureIndex& index) {
  require_direct_kind(index.basis().kind(), Algorithm::ClassicDirect);
  check_universe(input, index.universe_size());
  ClosureResult r{input, {}};
  const auto start = Clock::now();
  for (const auto& imp : index.basis()) {
    ++r.metrics.inner_loops;
    ++r.metrics.attribute_ops;
    if (imp.lhs().is_subset_of(r.closure)) {
      ++r.metrics.deps;
      ++r.metrics.attribute_ops;
      r.closure |= imp.rhs();
    }
  }
  r.metrics.elapsed_ns = nanos_since(start);
  return r;
}

ClosureResult lin_closure_direct(const AttributeSet& input, const ClosureIndex& index,
                                 Seeding seeding) {
  require_direct_kind(index.basis().kind(), Algorithm::LinDirect);
  check_universe(input, index.universe_size());
  const Basis& basis = index.basis();
  // clo₀ is precomputed state and stays outside the measured region.
  AttributeSet update = seed_for(input, index, seeding);
  ClosureResult r{input, {}};
  const auto start = Clock::now();
  std::vector<std::uint32_t> count = index.lhs_sizes();
  AttributeSet add(input.universe_size());
  while (auto m = update.first()) {
    ++r.metrics.outer_loops;
    ++r.metrics.attribute_ops;
    update.erase(*m);
    for (std::uint32_t i : index.implications_with(*m)) {
      ++r.metrics.inner_loops;
      if (--count[i] == 0) {
        ++r.metrics.deps;
        ++r.metrics.attribute_ops;
        add |= basis[i].rhs();
      }
    }
  }
  ++r.metrics.attribute_ops;
  r.closure |= add;
  r.metrics.elapsed_ns = nanos_since(start);
  return r;
}

ClosureResult wild_closure_direct(const AttributeSet& input, const ClosureIndex& index,
                                  Seeding seeding) {
  require_direct_kind(index.basis().kind(), Algorithm::WildDirect);
  check_universe(input, index.universe_size());
  const Basis& basis = index.basis();
  ClosureResult r{seed_for(input, index, seeding), {}};
  const auto start = Clock::now();
  // Σ₁ is fixed from the seeded X; growth of X does not revisit the choice.
  std::vector<char> excluded(basis.size(), 0);
  ++r.metrics.attribute_ops;
  r.closure.complement().for_each([&](Attribute m) {
    for (std::uint32_t i : index.implications_with(m)) excluded[i] = 1;
  });
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (excluded[i]) continue;
    ++r.metrics.inner_loops;
    ++r.metrics.deps;
    ++r.metrics.attribute_ops;
    r.closure |= basis[i].rhs();
  }
  r.metrics.elapsed_ns = nanos_since(start);
  return r;
}

OracleResult oracle_closure(const AttributeSet& x, const Basis& basis) {
  OracleResult r{pass(x, basis), 1};
  for (;;) {
    AttributeSet next = pass(r.closure, basis);
    if (next == r.closure) return r;
    r.closure = std::move(next);
    ++r.passes;
  }
}

ClosureResult compute_closure(Algorithm algorithm, const AttributeSet& x, const ClosureIndex& index) {
  if (is_direct(algorithm)) require_direct_kind(index.basis().kind(), algorithm);
  switch (algorithm) {
    case Algorithm::Classic: return closure_classic(x, index);
    case Algorithm::Lin: return lin_closure(x, index);
    case Algorithm::Wild: return wild_closure(x, index);
    case Algorithm::ClassicDirect: return closure_direct(x, index);
    case Algorithm::LinDirect: return lin_closure_direct(x, index);
    case Algorithm::WildDirect: return wild_closure_direct(x, index);
    case Algorithm::Oracle: {
      const auto start = Clock::now();
      ClosureResult r{oracle_closure(x, index.basis()).closure, {}};
      r.metrics.elapsed_ns = nanos_since(start);
      return r;
    }
  }
  return closure_classic(x, index);
}

bool implies(const ClosureIndex& index, const Implication& query) {
  check_universe(query.lhs(), index.universe_size());
  const BasisKind kind = index.basis().kind();
  const bool direct = kind == BasisKind::CDUB || kind == BasisKind::DBasis;
  const auto closure = direct ? wild_closure_direct(query.lhs(), index).closure
                              : lin_closure(query.lhs(), index).closure;
  return query.rhs().is_subset_of(closure);
}

bool implies(const Basis& basis, const Implication& query) {
  return implies(ClosureIndex(basis), query);
}

}  // namespace implbase
