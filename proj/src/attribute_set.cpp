#include "implbase/attribute_set.hpp"

#include <charconv>
#include <sstream>
#include <unordered_set>

#include "implbase/metrics.hpp"

namespace implbase {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownAttribute: return "UnknownAttribute";
    case ErrorKind::EmptyLhs: return "EmptyLhs";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::NotClarified: return "NotClarified";
    case ErrorKind::DegenerateContext: return "DegenerateContext";
    case ErrorKind::MalformedCxt: return "MalformedCxt";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NotStandardContext: return "NotStandardContext";
    case ErrorKind::WrongBasisKind: return "WrongBasisKind";
    case ErrorKind::InvalidCombo: return "InvalidCombo";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::string format_metrics(const Metrics& m) {
  std::ostringstream out;
  out << "deps=" << m.deps << " attrib=" << m.attribute_ops
      << " inner=" << m.inner_loops << " outer=" << m.outer_loops
      << " time_ns=" << m.elapsed_ns;
  return out.str();
}

// ---------------------------------------------------------------------------
// Universe

namespace {

void check_universe_size(std::size_t size) {
  if (size < 1 || size > Universe::kMaxSize) {
    throw Error(ErrorKind::InvalidArgument,
                "universe size must be in [1, 1024], got " + std::to_string(size));
  }
}

std::optional<std::size_t> parse_index(const std::string& token) {
  std::size_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || token.empty()) return std::nullopt;
  return value;
}

}  // namespace

Universe::Universe(std::size_t size) : size_(size) { check_universe_size(size); }

Universe::Universe(std::size_t size, std::vector<std::string> names)
    : size_(size), names_(std::move(names)) {
  check_universe_size(size);
  if (names_.empty()) return;
  if (names_.size() != size_) {
    throw Error(ErrorKind::InvalidArgument, "universe names must have exactly " +
                                                std::to_string(size_) + " entries");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty() || !seen.insert(name).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate or empty attribute name '" + name + "'");
    }
  }
}

Universe Universe::with_default_names(std::size_t size) {
  check_universe_size(size);
  std::vector<std::string> names;
  names.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    names.push_back(size <= 26 ? std::string(1, static_cast<char>('a' + i))
                               : "m" + std::to_string(i));
  }
  return Universe(size, std::move(names));
}

std::string Universe::label(Attribute a) const {
  return has_names() ? names_.at(a) : std::to_string(a);
}

std::optional<Attribute> Universe::find(const std::string& token) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == token) return i;
  }
  if (auto index = parse_index(token); index && *index < size_) return *index;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// AttributeSet

AttributeSet::AttributeSet(std::size_t universe_size)
    : size_(static_cast<std::uint16_t>(universe_size)),
      words_(static_cast<std::uint16_t>((universe_size + kWordBits - 1) / kWordBits)) {
  if (universe_size > Universe::kMaxSize) {
    throw Error(ErrorKind::InvalidArgument, "attribute set capacity is 1024");
  }
}

AttributeSet AttributeSet::full(std::size_t universe_size) {
  AttributeSet s(universe_size);
  for (std::size_t w = 0; w < s.words_; ++w) s.bits_[w] = ~std::uint64_t{0};
  if (const auto tail = universe_size % kWordBits; tail != 0) {
    s.bits_[s.words_ - 1] = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

AttributeSet AttributeSet::of(std::size_t universe_size,
                              std::initializer_list<Attribute> members) {
  AttributeSet s(universe_size);
  for (auto a : members) s.insert(a);
  return s;
}

void AttributeSet::insert(Attribute a) {
  if (a >= size_) {
    throw Error(ErrorKind::UnknownAttribute, "attribute " + std::to_string(a) + " out of range");
  }
  bits_[a / kWordBits] |= std::uint64_t{1} << (a % kWordBits);
}

void AttributeSet::erase(Attribute a) {
  if (a >= size_) return;
  bits_[a / kWordBits] &= ~(std::uint64_t{1} << (a % kWordBits));
}

std::size_t AttributeSet::count() const noexcept {
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_; ++w) n += static_cast<std::size_t>(std::popcount(bits_[w]));
  return n;
}

bool AttributeSet::empty() const noexcept {
  for (std::size_t w = 0; w < words_; ++w) {
    if (bits_[w] != 0) return false;
  }
  return true;
}

void AttributeSet::check_same_universe(const AttributeSet& other) const {
  if (size_ != other.size_) {
    throw Error(ErrorKind::UniverseMismatch,
                "attribute sets over universes of size " + std::to_string(size_) + " and " +
                    std::to_string(other.size_));
  }
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_; ++w) {
    if ((bits_[w] & ~other.bits_[w]) != 0) return false;
  }
  return true;
}

bool AttributeSet::intersects(const AttributeSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_; ++w) {
    if ((bits_[w] & other.bits_[w]) != 0) return true;
  }
  return false;
}

AttributeSet& AttributeSet::operator|=(const AttributeSet& other) {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_; ++w) bits_[w] |= other.bits_[w];
  return *this;
}

AttributeSet& AttributeSet::operator&=(const AttributeSet& other) {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_; ++w) bits_[w] &= other.bits_[w];
  return *this;
}

AttributeSet& AttributeSet::operator-=(const AttributeSet& other) {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_; ++w) bits_[w] &= ~other.bits_[w];
  return *this;
}

AttributeSet AttributeSet::complement() const { return full(size_) - *this; }

bool AttributeSet::operator==(const AttributeSet& other) const noexcept {
  if (size_ != other.size_) return false;
  for (std::size_t w = 0; w < words_; ++w) {
    if (bits_[w] != other.bits_[w]) return false;
  }
  return true;
}

std::optional<Attribute> AttributeSet::first() const noexcept {
  for (std::size_t w = 0; w < words_; ++w) {
    if (bits_[w] != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits_[w]));
    }
  }
  return std::nullopt;
}

std::optional<Attribute> AttributeSet::next_after(Attribute a) const noexcept {
  const std::size_t start = a + 1;
  if (start >= size_) return std::nullopt;
  std::size_t w = start / kWordBits;
  std::uint64_t word = bits_[w] & (~std::uint64_t{0} << (start % kWordBits));
  while (true) {
    if (word != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
    if (++w >= words_) return std::nullopt;
    word = bits_[w];
  }
}

std::vector<Attribute> AttributeSet::members() const {
  std::vector<Attribute> out;
  for_each([&](Attribute a) { out.push_back(a); });
  return out;
}

AttributeSet AttributeSet::prefix(std::size_t limit) const {
  AttributeSet out(size_);
  for (std::size_t w = 0; w < words_; ++w) {
    const std::size_t lo = w * kWordBits;
    if (lo >= limit) break;
    const std::size_t keep = limit - lo;
    out.bits_[w] = keep >= kWordBits ? bits_[w]
                                     : bits_[w] & ((std::uint64_t{1} << keep) - 1);
  }
  return out;
}

bool lectic_less(const AttributeSet& a, const AttributeSet& b) {
  a.check_same_universe(b);
  for (std::size_t w = 0; w < a.words_; ++w) {
    const std::uint64_t diff = a.bits_[w] ^ b.bits_[w];
    if (diff != 0) {
      const std::uint64_t lowest = diff & (~diff + 1);
      return (b.bits_[w] & lowest) != 0;
    }
  }
  return false;
}

std::size_t AttributeSet::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
  for (std::size_t w = 0; w < words_; ++w) {
    h ^= bits_[w] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string format_set(const AttributeSet& s, const Universe& universe) {
  std::string out;
  s.for_each([&](Attribute a) {
    if (!out.empty()) out += ' ';
    out += universe.label(a);
  });
  return out;
}

AttributeSet parse_set(const std::string& text, const Universe& universe) {
  AttributeSet s(universe.size());
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    auto a = universe.find(token);
    if (!a) throw Error(ErrorKind::UnknownAttribute, "unknown attribute '" + token + "'");
    s.insert(*a);
  }
  return s;
}

SetOpResult set_ops_counted(const AttributeSet& a, const AttributeSet& b, SetOp op,
                            Metrics& counter) {
  if (a.universe_size() != b.universe_size()) {
    throw Error(ErrorKind::UniverseMismatch, "set operation across universes");
  }
  ++counter.attribute_ops;
  switch (op) {
    case SetOp::Union: return {a | b, false};
    case SetOp::Intersect: return {a & b, false};
    case SetOp::Diff: return {a - b, false};
    case SetOp::SubsetTest: return {AttributeSet(a.universe_size()), a.is_subset_of(b)};
  }
  return {AttributeSet(a.universe_size()), false};
}

}  // namespace implbase
