#include "implbase/bases.hpp"

#include <algorithm>
#include <random>

namespace implbase {

void require_standard(const Context& ctx) {
  if (!is_standard(ctx)) {
    throw Error(ErrorKind::NotStandardContext,
                "basis construction needs a clarified and reduced context");
  }
}

namespace {

// Minimal transversals by Berge's incremental method. Inputs are small at
// desk scale; the antichain is re-minimized after every edge.
std::vector<AttributeSet> minimal_transversals(std::vector<AttributeSet> edges, std::size_t n) {
  std::sort(edges.begin(), edges.end(),
            [](const AttributeSet& a, const AttributeSet& b) { return a.count() < b.count(); });
  std::vector<AttributeSet> minimal_edges;
  for (auto& e : edges) {
    const bool dominated = std::any_of(minimal_edges.begin(), minimal_edges.end(),
                                       [&](const AttributeSet& f) { return f.is_subset_of(e); });
    if (!dominated) minimal_edges.push_back(std::move(e));
  }

  std::vector<AttributeSet> transversals{AttributeSet(n)};
  for (const auto& edge : minimal_edges) {
    std::vector<AttributeSet> hit;
    std::vector<AttributeSet> missed;
    for (auto& t : transversals) (t.intersects(edge) ? hit : missed).push_back(std::move(t));
    std::vector<AttributeSet> next = hit;
    for (const auto& t : missed) {
      edge.for_each([&](Attribute e) {
        AttributeSet candidate = t;
        candidate.insert(e);
        // `candidate` is minimal unless it contains an already-hitting set or
        // a previously produced extension.
        const auto covers = [&](const AttributeSet& s) { return s.is_subset_of(candidate); };
        if (std::any_of(hit.begin(), hit.end(), covers)) return;
        if (std::any_of(next.begin() + static_cast<std::ptrdiff_t>(hit.size()), next.end(), covers)) return;
        next.push_back(std::move(candidate));
      });
    }
    // Extensions produced early may be supersets of later ones.
    std::vector<AttributeSet> pruned;
    pruned.reserve(next.size());
    for (std::size_t i = 0; i < next.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = hit.size(); j < next.size() && minimal; ++j) {
        if (j != i && next[j].is_proper_subset_of(next[i])) minimal = false;
      }
      if (minimal) pruned.push_back(std::move(next[i]));
    }
    transversals = std::move(pruned);
  }
  return transversals;
}

bool lectic_then_rhs(const Implication& a, const Implication& b) {
  if (a.lhs() != b.lhs()) return lectic_less(a.lhs(), b.lhs());
  return lectic_less(a.rhs(), b.rhs());
}

}  // namespace

std::vector<Implication> minimal_generators(const Context& ctx) {
  const std::size_t n = ctx.attribute_count();
  const AttributeSet all = AttributeSet::full(n);
  std::vector<Implication> units;
  for (Attribute m = 0; m < n; ++m) {
    // A ∌ m implies m iff A escapes every object lacking m.
    std::vector<AttributeSet> edges;
    bool blocked = false;
    for (const auto& row : ctx.rows()) {
      if (row.contains(m)) continue;
      AttributeSet edge = all - row;
      edge.erase(m);
      if (edge.empty()) {
        blocked = true;
        break;
      }
      edges.push_back(std::move(edge));
    }
    if (blocked) continue;
    auto premises = minimal_transversals(std::move(edges), n);
    std::sort(premises.begin(), premises.end(),
              [](const AttributeSet& a, const AttributeSet& b) { return lectic_less(a, b); });
    for (auto& premise : premises) {
      if (premise.empty()) continue;  // only possible for a full column
      units.emplace_back(std::move(premise), AttributeSet::of(n, {m}));
    }
  }
  return units;
}

Basis build_cdub(const Context& ctx) {
  require_standard(ctx);
  auto units = minimal_generators(ctx);
  std::stable_sort(units.begin(), units.end(), lectic_then_rhs);
  return merge_same_lhs(Basis(ctx.universe(), BasisKind::CDUB, std::move(units)));
}

Basis build_dbasis(const Context& ctx) {
  require_standard(ctx);
  const std::size_t n = ctx.attribute_count();
  const auto units = minimal_generators(ctx);

  std::vector<Implication> binary;
  std::vector<std::vector<AttributeSet>> generators_of(n);
  for (const auto& u : units) {
    const Attribute c = *u.rhs().first();
    generators_of[c].push_back(u.lhs());
    if (u.lhs().count() == 1) binary.push_back(u);
  }
  // Σ₀ by ascending lhs index, then rhs index.
  std::sort(binary.begin(), binary.end(), [](const Implication& a, const Implication& b) {
    return std::pair(*a.lhs().first(), *a.rhs().first()) < std::pair(*b.lhs().first(), *b.rhs().first());
  });

  const std::size_t sigma0_len = binary.size();
  const ClosureIndex sigma0(Basis(ctx.universe(), BasisKind::DBasis, binary, sigma0_len));

  std::vector<Implication> tail;
  for (Attribute c = 0; c < n; ++c) {
    for (const auto& a : generators_of[c]) {
      if (a.count() < 2) continue;
      const AttributeSet reach = sigma0.binary_closure(a);
      if (reach.contains(c)) continue;
      const bool minimal = std::none_of(
          generators_of[c].begin(), generators_of[c].end(),
          [&](const AttributeSet& other) { return other != a && other.is_subset_of(reach); });
      if (minimal) tail.emplace_back(a, AttributeSet::of(n, {c}));
    }
  }
  std::stable_sort(tail.begin(), tail.end(), lectic_then_rhs);

  // Merge the tail only; Σ₀ stays in unit form.
  const Basis merged_tail = merge_same_lhs(Basis(ctx.universe(), BasisKind::DBasis, std::move(tail)));
  std::vector<Implication> out = std::move(binary);
  out.insert(out.end(), merged_tail.begin(), merged_tail.end());
  return Basis(ctx.universe(), BasisKind::DBasis, std::move(out), sigma0_len);
}

namespace {

// Closure under a growing implication list, used by Next Closure.
AttributeSet implication_closure(AttributeSet x, const std::vector<Implication>& implications) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& imp : implications) {
      if (!imp.rhs().is_subset_of(x) && imp.lhs().is_subset_of(x)) {
        x |= imp.rhs();
        changed = true;
      }
    }
  }
  return x;
}

// Lectically next set closed under `implications`, or nullopt after the last.
std::optional<AttributeSet> next_closed(const AttributeSet& current,
                                        const std::vector<Implication>& implications) {
  const std::size_t n = current.universe_size();
  for (std::size_t i = n; i-- > 0;) {
    if (current.contains(i)) continue;
    AttributeSet base = current.prefix(i);
    base.insert(i);
    AttributeSet candidate = implication_closure(std::move(base), implications);
    if ((candidate - current).prefix(i).empty()) return candidate;
  }
  return std::nullopt;
}

}  // namespace

Basis build_dg(const Context& ctx) {
  require_standard(ctx);
  const std::size_t n = ctx.attribute_count();
  std::vector<Implication> full_rhs;  // P → φ(P), drives the L-closure
  std::vector<Implication> basis;     // P → φ(P) \ P
  std::optional<AttributeSet> current = AttributeSet(n);
  while (current) {
    const AttributeSet closed = context_closure(ctx, *current);
    if (closed != *current) {
      full_rhs.emplace_back(*current, closed);
      basis.emplace_back(*current, closed - *current);
    }
    if (current->is_full()) break;
    current = next_closed(*current, full_rhs);
  }
  return Basis(ctx.universe(), BasisKind::DG, std::move(basis));
}

PseudoClosedTester::PseudoClosedTester(const Basis& basis) : index_(basis) {}

const AttributeSet& PseudoClosedTester::closure_of(const AttributeSet& x) {
  auto it = closures_.find(x);
  if (it == closures_.end()) it = closures_.emplace(x, lin_closure(x, index_).closure).first;
  return it->second;
}

bool PseudoClosedTester::operator()(const AttributeSet& x) {
  if (x.universe_size() != index_.universe_size()) {
    throw Error(ErrorKind::UniverseMismatch, "set and basis use different universes");
  }
  if (auto it = verdicts_.find(x); it != verdicts_.end()) return it->second;
  const AttributeSet closed = closure_of(x);
  bool verdict = closed != x;
  if (verdict) {
    const auto members = x.members();
    if (members.size() >= 63) {
      throw Error(ErrorKind::InvalidArgument, "pseudo-closedness test limited to sets below 63 members");
    }
    const std::uint64_t proper = (std::uint64_t{1} << members.size()) - 1;
    for (std::uint64_t mask = 0; mask < proper && verdict; ++mask) {
      AttributeSet y(x.universe_size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        if ((mask >> k) & 1u) y.insert(members[k]);
      }
      if (closure_of(y).is_subset_of(x)) continue;
      if ((*this)(y)) verdict = false;
    }
  }
  verdicts_.emplace(x, verdict);
  return verdict;
}

std::optional<PseudoClosedWitness> PseudoClosedTester::witness(const AttributeSet& x) {
  if (!(*this)(x)) return std::nullopt;
  return PseudoClosedWitness{x, closure_of(x)};
}

bool is_pseudo_closed(const AttributeSet& x, const Basis& basis) {
  return PseudoClosedTester(basis)(x);
}

namespace {

bool entails_all(const Basis& source, const ClosureIndex& target) {
  return std::all_of(source.begin(), source.end(), [&](const Implication& imp) {
    return imp.rhs().is_subset_of(lin_closure(imp.lhs(), target).closure);
  });
}

}  // namespace

bool check_equiv(const Basis& first, const Basis& second) {
  if (first.universe().size() != second.universe().size()) {
    throw Error(ErrorKind::UniverseMismatch, "bases over different universes");
  }
  return entails_all(first, ClosureIndex(second)) && entails_all(second, ClosureIndex(first));
}

DirectnessReport check_direct(const Basis& basis, std::size_t exhaustive_limit, Sweep sweep,
                              std::size_t samples, std::uint64_t seed) {
  const std::size_t n = basis.universe().size();
  if (sweep == Sweep::Auto) sweep = basis.kind() == BasisKind::DBasis ? Sweep::Ordered : Sweep::Pass;

  const auto ordered_sweep = [&](AttributeSet x) {
    for (const auto& imp : basis) {
      if (imp.lhs().is_subset_of(x)) x |= imp.rhs();
    }
    return x;
  };
  DirectnessReport report;
  const auto probe = [&](const AttributeSet& x) {
    ++report.checked;
    const AttributeSet once = sweep == Sweep::Pass ? pass(x, basis) : ordered_sweep(x);
    if (once != oracle_closure(x, basis).closure) {
      report.direct = false;
      report.witness = x;
    }
    return report.direct;
  };

  if (n <= exhaustive_limit && n < 63) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      AttributeSet x(n);
      for (std::size_t a = 0; a < n; ++a) {
        if ((mask >> a) & 1u) x.insert(a);
      }
      if (!probe(x)) break;
    }
    return report;
  }
  report.exhaustive = false;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    AttributeSet x(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (rng() >> 63) x.insert(a);
    }
    if (!probe(x)) break;
  }
  return report;
}

bool verify_direct(const Basis& basis, std::size_t exhaustive_limit, Sweep sweep) {
  return check_direct(basis, exhaustive_limit, sweep).direct;
}

}  // namespace implbase
