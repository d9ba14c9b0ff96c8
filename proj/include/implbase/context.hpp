#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "implbase/attribute_set.hpp"

namespace implbase {

/// A formal context: one attribute row per object. Immutable once built.
class Context {
 public:
  Context(Universe universe, std::vector<AttributeSet> rows,
          std::vector<std::string> object_names = {});

  const Universe& universe() const noexcept { return universe_; }
  std::size_t object_count() const noexcept { return rows_.size(); }
  std::size_t attribute_count() const noexcept { return universe_.size(); }
  const std::vector<AttributeSet>& rows() const noexcept { return rows_; }
  const std::vector<std::string>& object_names() const noexcept { return object_names_; }

  /// Objects having attribute `m`, as row indices.
  std::vector<std::size_t> extent(Attribute m) const;

  bool operator==(const Context&) const = default;

 private:
  Universe universe_;
  std::vector<AttributeSet> rows_;
  std::vector<std::string> object_names_;
};

/// X'' : intersection of the rows containing X, or the full universe when no
/// row contains X. Throws UniverseMismatch.
AttributeSet context_closure(const Context& ctx, const AttributeSet& x);

bool is_clarified(const Context& ctx);
bool is_reduced(const Context& ctx);
/// Clarified and reduced.
bool is_standard(const Context& ctx);

/// Drops repeated rows and repeated columns, keeping first occurrences.
Context clarify(const Context& ctx);

/// Drops rows and columns equal to the intersection of the strictly larger
/// rows (columns). Throws NotClarified, and DegenerateContext if no attribute
/// survives.
Context reduce(const Context& ctx);

/// Bernoulli(density) incidence from a seeded mt19937_64, then clarify and
/// reduce. Throws DegenerateContext when reduction leaves nothing.
Context gen_synthetic(std::size_t objects, std::size_t attributes, double density,
                      std::uint64_t seed);

// Burmeister .cxt format.
Context parse_cxt(std::istream& in);
Context read_cxt(const std::filesystem::path& path);
void write_cxt(std::ostream& out, const Context& ctx);
void write_cxt(const std::filesystem::path& path, const Context& ctx);

}  // namespace implbase
