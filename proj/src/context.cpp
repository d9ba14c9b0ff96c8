#include "implbase/context.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace implbase {

Context::Context(Universe universe, std::vector<AttributeSet> rows,
                 std::vector<std::string> object_names)
    : universe_(std::move(universe)), rows_(std::move(rows)), object_names_(std::move(object_names)) {
  for (const auto& row : rows_) {
    if (row.universe_size() != universe_.size()) {
      throw Error(ErrorKind::UniverseMismatch, "context row outside the context universe");
    }
  }
  if (object_names_.empty()) {
    object_names_.reserve(rows_.size());
    for (std::size_t g = 0; g < rows_.size(); ++g) object_names_.push_back("o" + std::to_string(g + 1));
  } else if (object_names_.size() != rows_.size()) {
    throw Error(ErrorKind::InvalidArgument, "object name count differs from row count");
  }
}

std::vector<std::size_t> Context::extent(Attribute m) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < rows_.size(); ++g) {
    if (rows_[g].contains(m)) out.push_back(g);
  }
  return out;
}

AttributeSet context_closure(const Context& ctx, const AttributeSet& x) {
  if (x.universe_size() != ctx.attribute_count()) {
    throw Error(ErrorKind::UniverseMismatch, "set and context use different universes");
  }
  AttributeSet result = AttributeSet::full(ctx.attribute_count());
  for (const auto& row : ctx.rows()) {
    if (x.is_subset_of(row)) result &= row;
  }
  return result;
}

namespace {

// Object subsets as packed words; objects are not bounded by the attribute
// capacity, so extents get their own representation.
using ObjectSet = std::vector<std::uint64_t>;

std::vector<ObjectSet> column_extents(const Context& ctx) {
  const std::size_t words = (ctx.object_count() + 63) / 64;
  std::vector<ObjectSet> extents(ctx.attribute_count(), ObjectSet(words, 0));
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    ctx.rows()[g].for_each([&](Attribute m) { extents[m][g / 64] |= std::uint64_t{1} << (g % 64); });
  }
  return extents;
}

bool object_subset(const ObjectSet& a, const ObjectSet& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

ObjectSet full_objects(std::size_t n) {
  ObjectSet s((n + 63) / 64, ~std::uint64_t{0});
  if (n % 64 != 0) s.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return s;
}

std::vector<bool> reducible_rows(const Context& ctx) {
  const auto& rows = ctx.rows();
  std::vector<bool> out(rows.size(), false);
  for (std::size_t g = 0; g < rows.size(); ++g) {
    AttributeSet meet = AttributeSet::full(ctx.attribute_count());
    for (std::size_t h = 0; h < rows.size(); ++h) {
      if (rows[g].is_proper_subset_of(rows[h])) meet &= rows[h];
    }
    out[g] = meet == rows[g];
  }
  return out;
}

std::vector<bool> reducible_columns(const Context& ctx) {
  const auto extents = column_extents(ctx);
  std::vector<bool> out(extents.size(), false);
  for (std::size_t m = 0; m < extents.size(); ++m) {
    ObjectSet meet = full_objects(ctx.object_count());
    for (std::size_t n = 0; n < extents.size(); ++n) {
      if (n != m && object_subset(extents[m], extents[n]) && extents[m] != extents[n]) {
        for (std::size_t w = 0; w < meet.size(); ++w) meet[w] &= extents[n][w];
      }
    }
    out[m] = meet == extents[m];
  }
  return out;
}

Context keep(const Context& ctx, const std::vector<bool>& drop_row, const std::vector<bool>& drop_col) {
  std::vector<Attribute> kept_attrs;
  std::vector<std::string> names;
  for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
    if (drop_col[m]) continue;
    kept_attrs.push_back(m);
    names.push_back(ctx.universe().label(m));
  }
  if (kept_attrs.empty()) {
    throw Error(ErrorKind::DegenerateContext, "no attribute survives reduction");
  }
  Universe universe(kept_attrs.size(), std::move(names));
  std::vector<AttributeSet> rows;
  std::vector<std::string> object_names;
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    if (drop_row[g]) continue;
    AttributeSet row(kept_attrs.size());
    for (std::size_t i = 0; i < kept_attrs.size(); ++i) {
      if (ctx.rows()[g].contains(kept_attrs[i])) row.insert(i);
    }
    rows.push_back(std::move(row));
    object_names.push_back(ctx.object_names()[g]);
  }
  return Context(std::move(universe), std::move(rows), std::move(object_names));
}

std::vector<bool> duplicate_rows(const Context& ctx) {
  const auto& rows = ctx.rows();
  std::vector<bool> dup(rows.size(), false);
  for (std::size_t g = 0; g < rows.size(); ++g) {
    for (std::size_t h = 0; h < g && !dup[g]; ++h) dup[g] = !dup[h] && rows[h] == rows[g];
  }
  return dup;
}

std::vector<bool> duplicate_columns(const Context& ctx) {
  const auto extents = column_extents(ctx);
  std::vector<bool> dup(extents.size(), false);
  for (std::size_t m = 0; m < extents.size(); ++m) {
    for (std::size_t n = 0; n < m && !dup[m]; ++n) dup[m] = !dup[n] && extents[n] == extents[m];
  }
  return dup;
}

bool any(const std::vector<bool>& v) {
  for (bool b : v) {
    if (b) return true;
  }
  return false;
}

}  // namespace

bool is_clarified(const Context& ctx) {
  return !any(duplicate_rows(ctx)) && !any(duplicate_columns(ctx));
}

bool is_reduced(const Context& ctx) {
  return !any(reducible_rows(ctx)) && !any(reducible_columns(ctx));
}

bool is_standard(const Context& ctx) { return is_clarified(ctx) && is_reduced(ctx); }

Context clarify(const Context& ctx) { return keep(ctx, duplicate_rows(ctx), duplicate_columns(ctx)); }

Context reduce(const Context& ctx) {
  if (!is_clarified(ctx)) throw Error(ErrorKind::NotClarified, "reduce() needs a clarified context");
  // Rows first, then columns of the row-reduced context; both steps keep the
  // concept lattice, so one round of each suffices.
  const std::vector<bool> no_cols(ctx.attribute_count(), false);
  Context rows_done = keep(ctx, reducible_rows(ctx), no_cols);
  const std::vector<bool> no_rows(rows_done.object_count(), false);
  return keep(rows_done, no_rows, reducible_columns(rows_done));
}

Context gen_synthetic(std::size_t objects, std::size_t attributes, double density,
                      std::uint64_t seed) {
  if (objects < 1) throw Error(ErrorKind::InvalidArgument, "need at least one object");
  if (attributes < 1 || attributes > Universe::kMaxSize) {
    throw Error(ErrorKind::InvalidArgument, "attributes must be in [1, 1024]");
  }
  if (!(density > 0.0 && density < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "density must lie strictly between 0 and 1");
  }
  // Raw 64-bit draws mapped to [0,1) by hand: std distributions are not
  // specified bit-for-bit across standard libraries.
  std::mt19937_64 rng(seed);
  const Universe universe = Universe::with_default_names(attributes);
  std::vector<AttributeSet> rows;
  rows.reserve(objects);
  for (std::size_t g = 0; g < objects; ++g) {
    AttributeSet row(attributes);
    for (std::size_t m = 0; m < attributes; ++m) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) row.insert(m);
    }
    rows.push_back(std::move(row));
  }
  Context reduced = reduce(clarify(Context(universe, std::move(rows))));
  if (reduced.object_count() == 0) {
    throw Error(ErrorKind::DegenerateContext, "every object was removed by reduction");
  }
  return reduced;
}

// ---------------------------------------------------------------------------
// .cxt I/O

namespace {

std::string strip_line_end(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

std::size_t parse_count(const std::string& line, const char* what) {
  std::size_t value = 0;
  const std::string s = strip_line_end(line);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::MalformedCxt, std::string("bad ") + what + " count '" + s + "'");
  }
  return value;
}

}  // namespace

Context parse_cxt(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(strip_line_end(line));
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= lines.size()) {
      throw Error(ErrorKind::MalformedCxt, std::string("unexpected end of file reading ") + what);
    }
    return lines[pos++];
  };
  if (next("header") != "B") throw Error(ErrorKind::MalformedCxt, "first line must be 'B'");
  next("context name");
  const std::size_t n_objects = parse_count(next("object count"), "object");
  const std::size_t n_attributes = parse_count(next("attribute count"), "attribute");
  if (n_objects == 0) throw Error(ErrorKind::MalformedCxt, "context declares 0 objects");
  if (n_attributes == 0 || n_attributes > Universe::kMaxSize) {
    throw Error(ErrorKind::MalformedCxt, "attribute count must be in [1, 1024]");
  }
  if (pos < lines.size() && lines[pos].empty()) ++pos;

  std::vector<std::string> object_names;
  for (std::size_t g = 0; g < n_objects; ++g) object_names.push_back(next("object name"));
  std::vector<std::string> attribute_names;
  for (std::size_t m = 0; m < n_attributes; ++m) attribute_names.push_back(next("attribute name"));

  std::vector<AttributeSet> rows;
  for (std::size_t g = 0; g < n_objects; ++g) {
    const std::string& line = next("incidence row");
    if (line.size() != n_attributes) {
      throw Error(ErrorKind::MalformedCxt, "incidence row " + std::to_string(g + 1) + " has length " +
                                               std::to_string(line.size()) + ", expected " +
                                               std::to_string(n_attributes));
    }
    AttributeSet row(n_attributes);
    for (std::size_t m = 0; m < n_attributes; ++m) {
      if (line[m] == 'X' || line[m] == 'x') {
        row.insert(m);
      } else if (line[m] != '.') {
        throw Error(ErrorKind::MalformedCxt, std::string("bad incidence character '") + line[m] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  for (; pos < lines.size(); ++pos) {
    if (!lines[pos].empty()) throw Error(ErrorKind::MalformedCxt, "trailing content after incidence rows");
  }
  try {
    return Context(Universe(n_attributes, std::move(attribute_names)), std::move(rows),
                   std::move(object_names));
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedCxt, e.what());
  }
}

Context read_cxt(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return parse_cxt(in);
}

void write_cxt(std::ostream& out, const Context& ctx) {
  out << "B\n\n" << ctx.object_count() << '\n' << ctx.attribute_count() << "\n\n";
  for (const auto& name : ctx.object_names()) out << name << '\n';
  for (std::size_t m = 0; m < ctx.attribute_count(); ++m) out << ctx.universe().label(m) << '\n';
  for (const auto& row : ctx.rows()) {
    std::string line(ctx.attribute_count(), '.');
    row.for_each([&](Attribute m) { line[m] = 'X'; });
    out << line << '\n';
  }
}

void write_cxt(const std::filesystem::path& path, const Context& ctx) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write_cxt(out, ctx);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace implbase
