#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "implbase/error.hpp"

namespace implbase {

struct Metrics;

using Attribute = std::size_t;

/// The finite attribute universe. Names are optional display labels; when
/// absent, attributes are addressed by index.
class Universe {
 public:
  static constexpr std::size_t kMaxSize = 1024;

  explicit Universe(std::size_t size);
  Universe(std::size_t size, std::vector<std::string> names);

  /// Universe with generated labels: a..z for up to 26 attributes, m0..mN
  /// beyond that.
  static Universe with_default_names(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool has_names() const noexcept { return !names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Label of `a`; falls back to the decimal index when unnamed.
  std::string label(Attribute a) const;

  /// Resolves a name, or a decimal index when no name matches.
  std::optional<Attribute> find(const std::string& token) const;

  bool operator==(const Universe&) const = default;

 private:
  std::size_t size_;
  std::vector<std::string> names_;
};

/// A subset of a universe of at most Universe::kMaxSize attributes, stored as
/// a fixed-width bit vector. Only the words covering the universe are touched
/// by the set operations; bits past universe_size() are always clear.
class AttributeSet {
 public:
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kMaxWords = Universe::kMaxSize / kWordBits;

  AttributeSet() : AttributeSet(0) {}
  explicit AttributeSet(std::size_t universe_size);

  static AttributeSet full(std::size_t universe_size);
  static AttributeSet of(std::size_t universe_size,
                         std::initializer_list<Attribute> members);

  std::size_t universe_size() const noexcept { return size_; }

  bool contains(Attribute a) const noexcept {
    return (bits_[a / kWordBits] >> (a % kWordBits)) & 1u;
  }
  void insert(Attribute a);
  void erase(Attribute a);

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  bool is_full() const noexcept { return count() == size_; }

  bool is_subset_of(const AttributeSet& other) const;
  bool is_proper_subset_of(const AttributeSet& other) const {
    return is_subset_of(other) && *this != other;
  }
  bool intersects(const AttributeSet& other) const;

  AttributeSet& operator|=(const AttributeSet& other);
  AttributeSet& operator&=(const AttributeSet& other);
  AttributeSet& operator-=(const AttributeSet& other);

  friend AttributeSet operator|(AttributeSet a, const AttributeSet& b) { return a |= b; }
  friend AttributeSet operator&(AttributeSet a, const AttributeSet& b) { return a &= b; }
  friend AttributeSet operator-(AttributeSet a, const AttributeSet& b) { return a -= b; }

  /// Complement within the universe.
  AttributeSet complement() const;

  bool operator==(const AttributeSet& other) const noexcept;

  /// Smallest member, if any.
  std::optional<Attribute> first() const noexcept;
  /// Smallest member strictly greater than `a`, if any.
  std::optional<Attribute> next_after(Attribute a) const noexcept;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        fn(w * kWordBits + bit);
        word &= word - 1;
      }
    }
  }

  std::vector<Attribute> members() const;

  /// Members restricted to attributes with index < limit.
  AttributeSet prefix(std::size_t limit) const;

  /// Lectic order: the set owning the smallest differing attribute is larger.
  friend bool lectic_less(const AttributeSet& a, const AttributeSet& b);

  std::size_t hash() const noexcept;

 private:
  void check_same_universe(const AttributeSet& other) const;

  std::uint16_t size_ = 0;
  std::uint16_t words_ = 0;
  std::array<std::uint64_t, kMaxWords> bits_{};
};

bool lectic_less(const AttributeSet& a, const AttributeSet& b);

struct AttributeSetHash {
  std::size_t operator()(const AttributeSet& s) const noexcept { return s.hash(); }
};

/// Space-separated labels of the members, in index order.
std::string format_set(const AttributeSet& s, const Universe& universe);

/// Parses whitespace-separated names or indices; throws UnknownAttribute.
AttributeSet parse_set(const std::string& text, const Universe& universe);

enum class SetOp { Union, Intersect, Diff, SubsetTest };

/// Result of set_ops_counted: a set for Union/Intersect/Diff, a truth value
/// for SubsetTest.
struct SetOpResult {
  AttributeSet set;
  bool truth = false;
};

/// One logical set operation; ticks `counter.attribute_ops` exactly once
/// regardless of word count. Throws UniverseMismatch.
SetOpResult set_ops_counted(const AttributeSet& a, const AttributeSet& b,
                            SetOp op, Metrics& counter);

}  // namespace implbase
