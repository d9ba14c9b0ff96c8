#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "implbase/attribute_set.hpp"
#include "implbase/basis.hpp"
#include "implbase/closure.hpp"
#include "implbase/context.hpp"

namespace implbase {

/// A (basis kind, algorithm) pairing.
struct Combo {
  BasisKind kind;
  Algorithm algorithm;
  auto operator<=>(const Combo&) const = default;
};

/// "dg/classic", "cdub/wild-direct", ...
std::string combo_name(const Combo& combo);

/// The nine pairings benchmarked: direct algorithms on CDUB and D-basis,
/// classic algorithms on the DG basis.
std::vector<Combo> standard_combos();
bool is_valid_combo(const Combo& combo);

struct WorkloadSpec {
  std::size_t queries = 50000;
  std::size_t repetitions = 3;
  std::uint64_t seed = 0;
  double query_density = 0.5;
  std::vector<Combo> combos = standard_combos();
  std::size_t threads = 1;
};

/// The three bases of one context, built once before any measurement. The
/// D-basis is RHS-merged in Σ₀ as well, so all three sizes count distinct
/// left-hand sides.
struct BasisSet {
  Basis cdub;
  Basis dbasis;
  Basis dg;

  static BasisSet build(const Context& ctx);
  const Basis& get(BasisKind kind) const;
};

struct ComboReport {
  std::string dataset_id;
  std::size_t universe_size = 0;
  BasisKind basis_kind = BasisKind::Raw;
  std::size_t basis_size = 0;
  Algorithm algorithm = Algorithm::Classic;
  std::size_t queries = 0;
  std::size_t repetitions = 0;
  /// Counters summed over the queries of one repetition; identical for every
  /// repetition. elapsed_ns is the mean over repetitions.
  Metrics totals;
  std::uint64_t query_hash = 0;

  Combo combo() const { return {basis_kind, algorithm}; }
};

/// Each attribute included independently with probability `density`.
std::vector<AttributeSet> draw_queries(std::size_t universe_size, std::size_t count, double density,
                                       std::uint64_t seed);
std::uint64_t hash_query(std::uint64_t state, const AttributeSet& query);

/// Replays one query sequence through every combo of `spec`. Throws
/// InvalidCombo for pairings outside standard_combos().
std::vector<ComboReport> run_workload(const std::string& dataset_id, const BasisSet& bases,
                                      const WorkloadSpec& spec);

/// Builds bases and runs the workload for every dataset; output ordered by
/// dataset (input order) then combo (spec order) regardless of thread count.
std::vector<ComboReport> run_corpus(const std::vector<std::pair<std::string, Context>>& datasets,
                                    const WorkloadSpec& spec);

// CSV: dataset,universe,basis_kind,basis_size,algorithm,queries,reps,deps,attrib_ops,inner,outer,time_ms
extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<ComboReport>& reports);
std::vector<ComboReport> read_csv(std::istream& in);

enum class Metric { Deps, AttribOps, Inner, Outer, TimeMs };
std::string_view metric_name(Metric metric);
std::vector<Metric> all_metrics();
double metric_value(const ComboReport& report, Metric metric);

/// Affine map onto [0,100], min → 0 and max → 100; constant input maps to 0.
std::vector<double> normalize(const std::vector<double>& values);

struct RankingTable {
  std::vector<Metric> metrics;  // rows
  std::vector<Combo> combos;    // columns
  std::vector<std::vector<std::size_t>> wins;
  std::size_t datasets = 0;
};

/// Per dataset and metric, every combo attaining the minimum scores a win.
RankingTable ranking(const std::vector<ComboReport>& reports,
                     const std::vector<Metric>& metrics = all_metrics());

struct RatioBucket {
  std::size_t tenths = 0;  // bucket upper bound ×10: ratio ∈ ((t-1)/10, t/10]
  std::size_t datasets = 0;
  std::vector<double> share;  // per head-to-head combo, fraction of wins
};

struct RatioTable {
  std::vector<Combo> combos;
  std::vector<RatioBucket> buckets;
};

/// Buckets datasets by |CDUB|/|DG| in steps of 0.1 and reports, per bucket,
/// how often each head-to-head combo wins on `metric` (ties credit all).
RatioTable size_ratio_report(const std::vector<ComboReport>& reports,
                             const std::vector<Combo>& head_to_head =
                                 {{BasisKind::DG, Algorithm::Classic},
                                  {BasisKind::CDUB, Algorithm::WildDirect}},
                             Metric metric = Metric::TimeMs);

/// Ratio bucket of one dataset, as tenths: ceil(10·cdub/dg).
std::size_t ratio_bucket(std::size_t cdub_size, std::size_t dg_size);

struct TotalsRow {
  Combo combo;
  std::map<Metric, double> values;
};

/// Per combo, each metric averaged over datasets; optionally normalized per
/// metric across combos.
std::vector<TotalsRow> grand_totals(const std::vector<ComboReport>& reports, bool normalized);

void write_totals(std::ostream& out, const std::vector<TotalsRow>& rows);
void write_ranking(std::ostream& out, const RankingTable& table);
void write_ratio(std::ostream& out, const RatioTable& table);

}  // namespace implbase
