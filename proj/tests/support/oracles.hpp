#pragma once

// Brute-force reference computations for the test suites. Everything here
// works from definitions over explicit subset enumeration and shares no code
// path with the library algorithms it is used to check (beyond AttributeSet).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "implbase/attribute_set.hpp"
#include "implbase/basis.hpp"
#include "implbase/context.hpp"

namespace oracle {

using implbase::Attribute;
using implbase::AttributeSet;
using implbase::Context;
using implbase::Implication;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(IMPLBASE_FIXTURE_DIR) / name;
}

inline AttributeSet from_mask(std::size_t n, std::uint64_t mask) {
  AttributeSet s(n);
  for (std::size_t a = 0; a < n; ++a) {
    if ((mask >> a) & 1u) s.insert(a);
  }
  return s;
}

inline std::uint64_t to_mask(const AttributeSet& s) {
  std::uint64_t mask = 0;
  s.for_each([&](Attribute a) { mask |= std::uint64_t{1} << a; });
  return mask;
}

/// m ∈ φ(X) iff every object row containing X also contains m.
inline AttributeSet phi(const Context& ctx, const AttributeSet& x) {
  const std::size_t n = ctx.attribute_count();
  AttributeSet out(n);
  for (Attribute m = 0; m < n; ++m) {
    bool all = true;
    for (const auto& row : ctx.rows()) {
      bool contains_x = true;
      x.for_each([&](Attribute a) { contains_x = contains_x && row.contains(a); });
      if (contains_x && !row.contains(m)) all = false;
    }
    if (all) out.insert(m);
  }
  return out;
}

/// Forward chaining to a fixpoint over an explicit implication list.
inline AttributeSet fixpoint(AttributeSet x, const std::vector<Implication>& implications) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& imp : implications) {
      bool fires = true;
      imp.lhs().for_each([&](Attribute a) { fires = fires && x.contains(a); });
      if (!fires) continue;
      imp.rhs().for_each([&](Attribute b) {
        if (!x.contains(b)) {
          x.insert(b);
          changed = true;
        }
      });
    }
  }
  return x;
}

inline AttributeSet fixpoint(const AttributeSet& x, const implbase::Basis& basis) {
  return fixpoint(x, basis.implications());
}

/// All closed sets of the context, as masks (|M| ≤ 20).
inline std::vector<std::uint64_t> closed_sets(const Context& ctx) {
  const std::size_t n = ctx.attribute_count();
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (to_mask(phi(ctx, from_mask(n, mask))) == mask) out.push_back(mask);
  }
  return out;
}

/// Minimal generators of every attribute, keyed by attribute, by checking all
/// subsets in order of increasing size.
inline std::map<Attribute, std::vector<std::uint64_t>> minimal_generators(const Context& ctx) {
  const std::size_t n = ctx.attribute_count();
  std::vector<std::uint64_t> masks(std::uint64_t{1} << n);
  for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint64_t> closure(std::uint64_t{1} << n);
  for (std::uint64_t m = 0; m < closure.size(); ++m) closure[m] = to_mask(phi(ctx, from_mask(n, m)));
  std::map<Attribute, std::vector<std::uint64_t>> out;
  for (Attribute c = 0; c < n; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::vector<std::uint64_t> found;
    for (std::uint64_t a : masks) {
      if (a == 0 || (a & bit) || !(closure[a] & bit)) continue;
      bool minimal = true;
      for (std::uint64_t f : found) {
        if ((f & a) == f) minimal = false;
      }
      if (minimal) found.push_back(a);
    }
    out[c] = found;
  }
  return out;
}

/// Pseudo-closed sets of φ, bottom-up by cardinality straight from the
/// definition.
inline std::vector<std::uint64_t> pseudo_closed_sets(const Context& ctx) {
  const std::size_t n = ctx.attribute_count();
  std::vector<std::uint64_t> masks(std::uint64_t{1} << n);
  for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint64_t> closure(std::uint64_t{1} << n);
  for (std::uint64_t m = 0; m < closure.size(); ++m) closure[m] = to_mask(phi(ctx, from_mask(n, m)));
  std::vector<std::uint64_t> pseudo;
  for (std::uint64_t x : masks) {
    if (closure[x] == x) continue;
    bool ok = true;
    for (std::uint64_t y : pseudo) {
      if ((y & x) == y && y != x && (closure[y] & ~x) != 0) ok = false;
    }
    if (ok) pseudo.push_back(x);
  }
  return pseudo;
}

/// Unit implications as (lhs mask, rhs attribute) pairs.
inline std::vector<std::pair<std::uint64_t, Attribute>> units(const std::vector<Implication>& imps) {
  std::vector<std::pair<std::uint64_t, Attribute>> out;
  for (const auto& imp : imps) {
    (imp.rhs() - imp.lhs()).for_each([&](Attribute m) { out.emplace_back(to_mask(imp.lhs()), m); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random standard context: raw Bernoulli incidence, clarified and reduced,
/// redrawn until reduction leaves at least `min_attrs` attributes.
inline Context random_standard_context(std::mt19937_64& rng, std::size_t min_attrs, std::size_t max_attrs,
                                       std::size_t min_objects = 4, std::size_t max_objects = 33) {
  std::uniform_int_distribution<std::size_t> attrs(min_attrs, max_attrs);
  std::uniform_int_distribution<std::size_t> objs(min_objects, max_objects);
  std::uniform_real_distribution<double> dens(0.2, 0.6);
  for (;;) {
    try {
      Context ctx = implbase::gen_synthetic(objs(rng), attrs(rng), dens(rng), rng());
      if (ctx.attribute_count() >= min_attrs) return ctx;
    } catch (const implbase::Error& e) {
      if (e.kind() != implbase::ErrorKind::DegenerateContext) throw;
    }
  }
}

/// Kind of the implbase::Error thrown by `fn`, or nullopt if none is thrown.
template <typename Fn>
std::optional<implbase::ErrorKind> error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const implbase::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline AttributeSet random_set(std::mt19937_64& rng, std::size_t n) {
  AttributeSet s(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (rng() & 1u) s.insert(a);
  }
  return s;
}

}  // namespace oracle
