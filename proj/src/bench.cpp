#include "implbase/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "implbase/bases.hpp"

namespace implbase {

std::string combo_name(const Combo& combo) {
  return std::string(kind_name(combo.kind)) + "/" + std::string(algorithm_name(combo.algorithm));
}

std::vector<Combo> standard_combos() {
  std::vector<Combo> combos;
  for (auto kind : {BasisKind::CDUB, BasisKind::DBasis}) {
    for (auto algo : {Algorithm::ClassicDirect, Algorithm::LinDirect, Algorithm::WildDirect}) {
      combos.push_back({kind, algo});
    }
  }
  for (auto algo : {Algorithm::Classic, Algorithm::Lin, Algorithm::Wild}) {
    combos.push_back({BasisKind::DG, algo});
  }
  return combos;
}

bool is_valid_combo(const Combo& combo) {
  const auto combos = standard_combos();
  return std::find(combos.begin(), combos.end(), combo) != combos.end();
}

BasisSet BasisSet::build(const Context& ctx) {
  return BasisSet{build_cdub(ctx), merge_same_lhs(build_dbasis(ctx)), build_dg(ctx)};
}

const Basis& BasisSet::get(BasisKind kind) const {
  switch (kind) {
    case BasisKind::CDUB: return cdub;
    case BasisKind::DBasis: return dbasis;
    case BasisKind::DG: return dg;
    case BasisKind::Raw: break;
  }
  throw Error(ErrorKind::InvalidCombo, "no raw basis in a benchmark basis set");
}

std::vector<AttributeSet> draw_queries(std::size_t universe_size, std::size_t count, double density,
                                       std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "query density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<AttributeSet> queries;
  queries.reserve(count);
  for (std::size_t q = 0; q < count; ++q) {
    AttributeSet x(universe_size);
    for (std::size_t a = 0; a < universe_size; ++a) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) x.insert(a);
    }
    queries.push_back(std::move(x));
  }
  return queries;
}

std::uint64_t hash_query(std::uint64_t state, const AttributeSet& query) {
  std::uint64_t h = state ^ 0x9e3779b97f4a7c15ull;
  h ^= static_cast<std::uint64_t>(query.hash()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdull;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

struct PreparedDataset {
  std::string id;
  std::size_t universe_size = 0;
  std::vector<std::pair<BasisKind, ClosureIndex>> indices;
  std::vector<AttributeSet> queries;

  const ClosureIndex& index(BasisKind kind) const {
    for (const auto& [k, idx] : indices) {
      if (k == kind) return idx;
    }
    throw Error(ErrorKind::InvalidCombo, "basis kind not prepared");
  }
};

void validate(const WorkloadSpec& spec) {
  if (spec.queries < 1) throw Error(ErrorKind::InvalidArgument, "queries must be >= 1");
  if (spec.repetitions < 1) throw Error(ErrorKind::InvalidArgument, "repetitions must be >= 1");
  for (const auto& combo : spec.combos) {
    if (!is_valid_combo(combo)) {
      throw Error(ErrorKind::InvalidCombo, "combo " + combo_name(combo) + " is not a benchmarked pairing");
    }
  }
}

PreparedDataset prepare(const std::string& id, const BasisSet& bases, const WorkloadSpec& spec) {
  PreparedDataset d;
  d.id = id;
  d.universe_size = bases.cdub.universe().size();
  for (auto kind : {BasisKind::CDUB, BasisKind::DBasis, BasisKind::DG}) {
    d.indices.emplace_back(kind, ClosureIndex(bases.get(kind)));
  }
  d.queries = draw_queries(d.universe_size, spec.queries, spec.query_density, spec.seed);
  return d;
}

ComboReport run_combo(const PreparedDataset& d, const Combo& combo, const WorkloadSpec& spec) {
  const ClosureIndex& index = d.index(combo.kind);
  ComboReport report;
  report.dataset_id = d.id;
  report.universe_size = d.universe_size;
  report.basis_kind = combo.kind;
  report.basis_size = index.basis().size();
  report.algorithm = combo.algorithm;
  report.queries = d.queries.size();
  report.repetitions = spec.repetitions;

  std::uint64_t elapsed_sum = 0;
  for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
    Metrics sum;
    std::uint64_t hash = 0;
    for (const auto& x : d.queries) {
      hash = hash_query(hash, x);
      sum += compute_closure(combo.algorithm, x, index).metrics;
    }
    if (rep == 0) {
      report.totals = sum;
      report.query_hash = hash;
    } else if (!sum.same_counters(report.totals) || hash != report.query_hash) {
      throw std::logic_error("counters drifted between repetitions of " + combo_name(combo));
    }
    elapsed_sum += sum.elapsed_ns;
  }
  report.totals.elapsed_ns = elapsed_sum / spec.repetitions;
  return report;
}

}  // namespace

std::vector<ComboReport> run_workload(const std::string& dataset_id, const BasisSet& bases,
                                      const WorkloadSpec& spec) {
  validate(spec);
  const PreparedDataset d = prepare(dataset_id, bases, spec);
  std::vector<ComboReport> reports(spec.combos.size());
  parallel_for(spec.combos.size(), spec.threads,
               [&](std::size_t i) { reports[i] = run_combo(d, spec.combos[i], spec); });
  return reports;
}

std::vector<ComboReport> run_corpus(const std::vector<std::pair<std::string, Context>>& datasets,
                                    const WorkloadSpec& spec) {
  validate(spec);
  std::vector<std::optional<PreparedDataset>> prepared(datasets.size());
  parallel_for(datasets.size(), spec.threads, [&](std::size_t i) {
    const auto& [id, ctx] = datasets[i];
    prepared[i] = prepare(id, BasisSet::build(ctx), spec);
  });
  const std::size_t per = spec.combos.size();
  std::vector<ComboReport> reports(datasets.size() * per);
  parallel_for(reports.size(), spec.threads, [&](std::size_t i) {
    reports[i] = run_combo(*prepared[i / per], spec.combos[i % per], spec);
  });
  return reports;
}

// ---------------------------------------------------------------------------
// CSV

const char* const kCsvHeader =
    "dataset,universe,basis_kind,basis_size,algorithm,queries,reps,deps,attrib_ops,inner,outer,time_ms";

void write_csv(std::ostream& out, const std::vector<ComboReport>& reports) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    if (r.dataset_id.find_first_of(",\n") != std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "dataset id '" + r.dataset_id + "' contains a separator");
    }
    char time_ms[64];
    std::snprintf(time_ms, sizeof time_ms, "%.6f", static_cast<double>(r.totals.elapsed_ns) / 1e6);
    out << r.dataset_id << ',' << r.universe_size << ',' << kind_name(r.basis_kind) << ','
        << r.basis_size << ',' << algorithm_name(r.algorithm) << ',' << r.queries << ','
        << r.repetitions << ',' << r.totals.deps << ',' << r.totals.attribute_ops << ','
        << r.totals.inner_loops << ',' << r.totals.outer_loops << ',' << time_ms << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::SyntaxError, "bad number '" + s + "' on CSV line " + std::to_string(line_no));
  }
  return value;
}

}  // namespace

std::vector<ComboReport> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::SyntaxError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw Error(ErrorKind::SyntaxError, "unexpected CSV header '" + line + "'");
  std::vector<ComboReport> reports;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) {
      throw Error(ErrorKind::SyntaxError, "CSV line " + std::to_string(line_no) + " needs 12 fields");
    }
    ComboReport r;
    r.dataset_id = f[0];
    r.universe_size = parse_number<std::size_t>(f[1], line_no);
    r.basis_kind = parse_kind(f[2]);
    r.basis_size = parse_number<std::size_t>(f[3], line_no);
    r.algorithm = parse_algorithm(f[4]);
    r.queries = parse_number<std::size_t>(f[5], line_no);
    r.repetitions = parse_number<std::size_t>(f[6], line_no);
    r.totals.deps = parse_number<std::uint64_t>(f[7], line_no);
    r.totals.attribute_ops = parse_number<std::uint64_t>(f[8], line_no);
    r.totals.inner_loops = parse_number<std::uint64_t>(f[9], line_no);
    r.totals.outer_loops = parse_number<std::uint64_t>(f[10], line_no);
    const double ms = parse_number<double>(f[11], line_no);
    r.totals.elapsed_ns = static_cast<std::uint64_t>(ms * 1e6 + 0.5);
    reports.push_back(std::move(r));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Aggregation

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Deps: return "deps";
    case Metric::AttribOps: return "attrib_ops";
    case Metric::Inner: return "inner";
    case Metric::Outer: return "outer";
    case Metric::TimeMs: return "time_ms";
  }
  return "deps";
}

std::vector<Metric> all_metrics() {
  return {Metric::Deps, Metric::AttribOps, Metric::Inner, Metric::Outer, Metric::TimeMs};
}

double metric_value(const ComboReport& r, Metric metric) {
  switch (metric) {
    case Metric::Deps: return static_cast<double>(r.totals.deps);
    case Metric::AttribOps: return static_cast<double>(r.totals.attribute_ops);
    case Metric::Inner: return static_cast<double>(r.totals.inner_loops);
    case Metric::Outer: return static_cast<double>(r.totals.outer_loops);
    case Metric::TimeMs: return static_cast<double>(r.totals.elapsed_ns) / 1e6;
  }
  return 0.0;
}

std::vector<double> normalize(const std::vector<double>& values) {
  if (values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double span = *hi - *lo;
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(span > 0.0 ? 100.0 * (v - min) / span : 0.0);
  return out;
}

namespace {

// Reports grouped by dataset, preserving first-appearance order.
std::vector<std::vector<const ComboReport*>> by_dataset(const std::vector<ComboReport>& reports) {
  std::vector<std::vector<const ComboReport*>> groups;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : reports) {
    auto [it, inserted] = slot.try_emplace(r.dataset_id, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&r);
  }
  return groups;
}

std::vector<Combo> combos_in_order(const std::vector<ComboReport>& reports) {
  std::vector<Combo> combos;
  for (const auto& r : reports) {
    if (std::find(combos.begin(), combos.end(), r.combo()) == combos.end()) combos.push_back(r.combo());
  }
  return combos;
}

const ComboReport* find_combo(const std::vector<const ComboReport*>& group, const Combo& combo) {
  for (const auto* r : group) {
    if (r->combo() == combo) return r;
  }
  return nullptr;
}

}  // namespace

RankingTable ranking(const std::vector<ComboReport>& reports, const std::vector<Metric>& metrics) {
  RankingTable table;
  table.metrics = metrics;
  table.combos = combos_in_order(reports);
  table.wins.assign(metrics.size(), std::vector<std::size_t>(table.combos.size(), 0));
  const auto groups = by_dataset(reports);
  table.datasets = groups.size();
  for (const auto& group : groups) {
    std::vector<const ComboReport*> row;
    for (const auto& combo : table.combos) {
      const auto* r = find_combo(group, combo);
      if (r == nullptr) {
        throw Error(ErrorKind::InvalidArgument,
                    "dataset " + group.front()->dataset_id + " lacks combo " + combo_name(combo));
      }
      row.push_back(r);
    }
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      double best = metric_value(*row.front(), metrics[m]);
      for (const auto* r : row) best = std::min(best, metric_value(*r, metrics[m]));
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (metric_value(*row[c], metrics[m]) == best) ++table.wins[m][c];
      }
    }
  }
  return table;
}

std::size_t ratio_bucket(std::size_t cdub_size, std::size_t dg_size) {
  if (dg_size == 0) {
    if (cdub_size == 0) return 10;
    throw Error(ErrorKind::InvalidArgument, "empty DG basis with a non-empty CDUB");
  }
  return (10 * cdub_size + dg_size - 1) / dg_size;
}

RatioTable size_ratio_report(const std::vector<ComboReport>& reports,
                             const std::vector<Combo>& head_to_head, Metric metric) {
  RatioTable table;
  table.combos = head_to_head;
  std::map<std::size_t, RatioBucket> buckets;
  std::map<std::size_t, std::vector<std::size_t>> wins;
  for (const auto& group : by_dataset(reports)) {
    std::optional<std::size_t> cdub_size;
    std::optional<std::size_t> dg_size;
    for (const auto* r : group) {
      if (r->basis_kind == BasisKind::CDUB) cdub_size = r->basis_size;
      if (r->basis_kind == BasisKind::DG) dg_size = r->basis_size;
    }
    if (!cdub_size || !dg_size) {
      throw Error(ErrorKind::InvalidArgument, "dataset " + group.front()->dataset_id +
                                                  " lacks CDUB or DG basis sizes");
    }
    std::vector<double> values;
    for (const auto& combo : head_to_head) {
      const auto* r = find_combo(group, combo);
      if (r == nullptr) {
        throw Error(ErrorKind::InvalidArgument,
                    "dataset " + group.front()->dataset_id + " lacks combo " + combo_name(combo));
      }
      values.push_back(metric_value(*r, metric));
    }
    const std::size_t tenths = ratio_bucket(*cdub_size, *dg_size);
    auto& bucket = buckets[tenths];
    bucket.tenths = tenths;
    ++bucket.datasets;
    auto& counts = wins[tenths];
    counts.resize(head_to_head.size(), 0);
    const double best = *std::min_element(values.begin(), values.end());
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (values[c] == best) ++counts[c];
    }
  }
  for (auto& [tenths, bucket] : buckets) {
    for (std::size_t w : wins[tenths]) {
      bucket.share.push_back(static_cast<double>(w) / static_cast<double>(bucket.datasets));
    }
    table.buckets.push_back(std::move(bucket));
  }
  return table;
}

std::vector<TotalsRow> grand_totals(const std::vector<ComboReport>& reports, bool normalized) {
  std::vector<TotalsRow> rows;
  const auto combos = combos_in_order(reports);
  for (const auto& combo : combos) {
    TotalsRow row{combo, {}};
    std::size_t n = 0;
    for (const auto& r : reports) {
      if (r.combo() != combo) continue;
      ++n;
      for (auto m : all_metrics()) row.values[m] += metric_value(r, m);
    }
    for (auto& [m, v] : row.values) v /= static_cast<double>(n);
    rows.push_back(std::move(row));
  }
  if (normalized && !rows.empty()) {
    for (auto m : all_metrics()) {
      std::vector<double> column;
      for (const auto& row : rows) column.push_back(row.values.at(m));
      const auto scaled = normalize(column);
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].values[m] = scaled[i];
    }
  }
  return rows;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void write_totals(std::ostream& out, const std::vector<TotalsRow>& rows) {
  out << "combo";
  for (auto m : all_metrics()) out << ',' << metric_name(m);
  out << '\n';
  for (const auto& row : rows) {
    out << combo_name(row.combo);
    for (auto m : all_metrics()) out << ',' << fixed(row.values.at(m), 3);
    out << '\n';
  }
}

void write_ranking(std::ostream& out, const RankingTable& table) {
  out << "metric";
  for (const auto& c : table.combos) out << ',' << combo_name(c);
  out << '\n';
  for (std::size_t m = 0; m < table.metrics.size(); ++m) {
    out << metric_name(table.metrics[m]);
    for (std::size_t w : table.wins[m]) out << ',' << w;
    out << '\n';
  }
}

void write_ratio(std::ostream& out, const RatioTable& table) {
  out << "ratio,datasets";
  for (const auto& c : table.combos) out << ',' << combo_name(c);
  out << '\n';
  for (const auto& b : table.buckets) {
    out << fixed(static_cast<double>(b.tenths) / 10.0, 1) << ',' << b.datasets;
    for (double s : b.share) out << ',' << fixed(s, 4);
    out << '\n';
  }
}

}  // namespace implbase
