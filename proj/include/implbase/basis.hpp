#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "implbase/attribute_set.hpp"

namespace implbase {

/// A dependency lhs → rhs over one universe. The lhs is never empty.
class Implication {
 public:
  Implication(AttributeSet lhs, AttributeSet rhs);

  const AttributeSet& lhs() const noexcept { return lhs_; }
  const AttributeSet& rhs() const noexcept { return rhs_; }
  std::size_t universe_size() const noexcept { return lhs_.universe_size(); }

  bool operator==(const Implication&) const = default;

 private:
  AttributeSet lhs_;
  AttributeSet rhs_;
};

enum class BasisKind { Raw, CDUB, DBasis, DG };

std::string_view kind_name(BasisKind kind);
BasisKind parse_kind(std::string_view name);

/// Ordered implications plus a kind tag. For DBasis, the first sigma0_len
/// implications form the binary part Σ₀ (single-attribute lhs and rhs).
class Basis {
 public:
  Basis(Universe universe, BasisKind kind = BasisKind::Raw);
  Basis(Universe universe, BasisKind kind, std::vector<Implication> implications,
        std::size_t sigma0_len = 0);

  const Universe& universe() const noexcept { return universe_; }
  BasisKind kind() const noexcept { return kind_; }
  std::size_t sigma0_len() const noexcept { return sigma0_len_; }
  const std::vector<Implication>& implications() const noexcept { return implications_; }
  std::size_t size() const noexcept { return implications_.size(); }
  bool empty() const noexcept { return implications_.empty(); }
  const Implication& operator[](std::size_t i) const { return implications_[i]; }

  auto begin() const noexcept { return implications_.begin(); }
  auto end() const noexcept { return implications_.end(); }

  void push_back(Implication implication);

  /// Copy with the same universe and kind but a different implication list.
  Basis with_implications(std::vector<Implication> implications,
                          std::size_t sigma0_len = 0) const;

 private:
  void validate() const;

  Universe universe_;
  BasisKind kind_;
  std::vector<Implication> implications_;
  std::size_t sigma0_len_ = 0;
};

/// Replaces implications sharing a lhs with one implication whose rhs is the
/// union; first-occurrence order is kept. For a DBasis the Σ₀ prefix and the
/// tail are merged separately.
Basis merge_same_lhs(const Basis& basis);

/// Splits every implication into unit implications lhs → {m}, m ∈ rhs \ lhs.
std::vector<Implication> unit_expansion(const Basis& basis);

/// `a b -> c`; names or indices resolved against `universe`.
Implication parse_implication(const std::string& text, const Universe& universe);

std::string format_implication(const Implication& implication, const Universe& universe);

// Text basis format: one implication per line, `#` comments, an optional
// `universe: a b c` line first, and `# kind:` / `# sigma0_len:` header lines.
Basis parse_basis(std::istream& in);
Basis read_basis(const std::filesystem::path& path);
void write_basis(std::ostream& out, const Basis& basis);
void write_basis(const std::filesystem::path& path, const Basis& basis);

}  // namespace implbase
