#include "implbase/basis.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace implbase {

Implication::Implication(AttributeSet lhs, AttributeSet rhs)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (lhs_.universe_size() != rhs_.universe_size()) {
    throw Error(ErrorKind::UniverseMismatch, "implication sides over different universes");
  }
  if (lhs_.empty()) throw Error(ErrorKind::EmptyLhs, "implication with empty left-hand side");
}

std::string_view kind_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::Raw: return "raw";
    case BasisKind::CDUB: return "cdub";
    case BasisKind::DBasis: return "dbasis";
    case BasisKind::DG: return "dg";
  }
  return "raw";
}

BasisKind parse_kind(std::string_view name) {
  if (name == "raw") return BasisKind::Raw;
  if (name == "cdub") return BasisKind::CDUB;
  if (name == "dbasis") return BasisKind::DBasis;
  if (name == "dg") return BasisKind::DG;
  throw Error(ErrorKind::SyntaxError, "unknown basis kind '" + std::string(name) + "'");
}

Basis::Basis(Universe universe, BasisKind kind) : universe_(std::move(universe)), kind_(kind) {}

Basis::Basis(Universe universe, BasisKind kind, std::vector<Implication> implications,
             std::size_t sigma0_len)
    : universe_(std::move(universe)),
      kind_(kind),
      implications_(std::move(implications)),
      sigma0_len_(kind == BasisKind::DBasis ? sigma0_len : 0) {
  validate();
}

void Basis::validate() const {
  if (sigma0_len_ > implications_.size()) {
    throw Error(ErrorKind::InvalidArgument, "sigma0_len exceeds basis size");
  }
  for (std::size_t i = 0; i < implications_.size(); ++i) {
    const auto& imp = implications_[i];
    if (imp.universe_size() != universe_.size()) {
      throw Error(ErrorKind::UniverseMismatch, "implication outside the basis universe");
    }
    if (kind_ != BasisKind::DBasis) continue;
    const std::size_t lhs_size = imp.lhs().count();
    if (i < sigma0_len_ && lhs_size != 1) {
      throw Error(ErrorKind::InvalidArgument, "D-basis binary part needs singleton left-hand sides");
    }
    if (i >= sigma0_len_ && lhs_size < 2) {
      throw Error(ErrorKind::InvalidArgument, "D-basis tail needs left-hand sides of size >= 2");
    }
  }
}

void Basis::push_back(Implication implication) {
  if (implication.universe_size() != universe_.size()) {
    throw Error(ErrorKind::UniverseMismatch, "implication outside the basis universe");
  }
  if (kind_ == BasisKind::DBasis && implication.lhs().count() < 2) {
    throw Error(ErrorKind::InvalidArgument, "D-basis tail needs left-hand sides of size >= 2");
  }
  implications_.push_back(std::move(implication));
}

Basis Basis::with_implications(std::vector<Implication> implications,
                               std::size_t sigma0_len) const {
  return Basis(universe_, kind_, std::move(implications), sigma0_len);
}

namespace {

std::vector<Implication> merge_range(std::vector<Implication>::const_iterator first,
                                     std::vector<Implication>::const_iterator last) {
  std::vector<Implication> merged;
  std::unordered_map<AttributeSet, std::size_t, AttributeSetHash> slot;
  for (auto it = first; it != last; ++it) {
    auto [pos, inserted] = slot.try_emplace(it->lhs(), merged.size());
    if (inserted) {
      merged.push_back(*it);
    } else {
      auto& target = merged[pos->second];
      target = Implication(target.lhs(), target.rhs() | it->rhs());
    }
  }
  return merged;
}

}  // namespace

Basis merge_same_lhs(const Basis& basis) {
  const auto& imps = basis.implications();
  const auto split = imps.begin() + static_cast<std::ptrdiff_t>(basis.sigma0_len());
  auto head = merge_range(imps.begin(), split);
  auto tail = merge_range(split, imps.end());
  const std::size_t sigma0_len = head.size();
  head.insert(head.end(), std::make_move_iterator(tail.begin()),
              std::make_move_iterator(tail.end()));
  return basis.with_implications(std::move(head), sigma0_len);
}

std::vector<Implication> unit_expansion(const Basis& basis) {
  std::vector<Implication> units;
  const std::size_t n = basis.universe().size();
  for (const auto& imp : basis) {
    (imp.rhs() - imp.lhs()).for_each([&](Attribute m) {
      units.emplace_back(imp.lhs(), AttributeSet::of(n, {m}));
    });
  }
  return units;
}

Implication parse_implication(const std::string& text, const Universe& universe) {
  const auto arrow = text.find("->");
  if (arrow == std::string::npos || text.find("->", arrow + 2) != std::string::npos) {
    throw Error(ErrorKind::SyntaxError, "expected 'LHS -> RHS' in '" + text + "'");
  }
  auto lhs = parse_set(text.substr(0, arrow), universe);
  auto rhs = parse_set(text.substr(arrow + 2), universe);
  if (lhs.empty()) throw Error(ErrorKind::EmptyLhs, "empty left-hand side in '" + text + "'");
  return Implication(std::move(lhs), std::move(rhs));
}

std::string format_implication(const Implication& implication, const Universe& universe) {
  return format_set(implication.lhs(), universe) + " -> " +
         format_set(implication.rhs(), universe);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream in(s);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

bool all_indices(const std::vector<std::string>& tokens, std::size_t& max_index) {
  max_index = 0;
  for (const auto& t : tokens) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return false;
    max_index = std::max(max_index, v);
  }
  return true;
}

// Builds a universe from the attribute tokens of the body when the file has
// no `universe:` line: pure indices give an unnamed universe, otherwise names
// are taken in order of first appearance.
Universe infer_universe(const std::vector<std::string>& body) {
  std::vector<std::string> tokens;
  for (const auto& line : body) {
    std::string flat = line;
    if (auto arrow = flat.find("->"); arrow != std::string::npos) flat.replace(arrow, 2, " ");
    for (auto& w : split_words(flat)) tokens.push_back(std::move(w));
  }
  if (tokens.empty()) {
    throw Error(ErrorKind::SyntaxError, "basis file without universe line or implications");
  }
  std::size_t max_index = 0;
  if (all_indices(tokens, max_index)) return Universe(max_index + 1);
  std::vector<std::string> names;
  for (const auto& t : tokens) {
    if (std::find(names.begin(), names.end(), t) == names.end()) names.push_back(t);
  }
  const std::size_t size = names.size();
  return Universe(size, std::move(names));
}

}  // namespace

Basis parse_basis(std::istream& in) {
  BasisKind kind = BasisKind::Raw;
  std::size_t sigma0_len = 0;
  std::optional<Universe> universe;
  std::vector<std::string> body;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string comment = trim(std::string_view(line).substr(1));
      if (comment.rfind("kind:", 0) == 0) {
        kind = parse_kind(trim(std::string_view(comment).substr(5)));
      } else if (comment.rfind("sigma0_len:", 0) == 0) {
        const std::string value = trim(std::string_view(comment).substr(11));
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), sigma0_len);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
          throw Error(ErrorKind::SyntaxError, "bad sigma0_len '" + value + "'");
        }
      }
      continue;
    }
    if (line.rfind("universe:", 0) == 0) {
      if (universe || !body.empty()) {
        throw Error(ErrorKind::SyntaxError, "universe line must precede all implications");
      }
      auto names = split_words(line.substr(9));
      universe.emplace(names.size(), std::move(names));
      continue;
    }
    body.push_back(line);
  }
  if (!universe) universe.emplace(infer_universe(body));
  std::vector<Implication> implications;
  implications.reserve(body.size());
  for (const auto& line : body) implications.push_back(parse_implication(line, *universe));
  return Basis(std::move(*universe), kind, std::move(implications), sigma0_len);
}

Basis read_basis(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return parse_basis(in);
}

void write_basis(std::ostream& out, const Basis& basis) {
  const auto& u = basis.universe();
  out << "# kind: " << kind_name(basis.kind()) << '\n';
  if (basis.kind() == BasisKind::DBasis) out << "# sigma0_len: " << basis.sigma0_len() << '\n';
  out << "universe:";
  for (std::size_t a = 0; a < u.size(); ++a) out << ' ' << u.label(a);
  out << '\n';
  for (const auto& imp : basis) out << format_implication(imp, u) << '\n';
}

void write_basis(const std::filesystem::path& path, const Basis& basis) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write_basis(out, basis);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace implbase
