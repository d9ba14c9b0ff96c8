// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "implbase/bases.hpp"
#include "implbase/bench.hpp"
#include "implbase/closure.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace implbase;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::vector<Algorithm> valid_algorithms(BasisKind kind) {
  if (kind == BasisKind::DG) return {Algorithm::Classic, Algorithm::Lin, Algorithm::Wild};
  return {Algorithm::ClassicDirect, Algorithm::LinDirect, Algorithm::WildDirect};
}

std::string show(const AttributeSet& s, const Universe& u) { return "{" + format_set(s, u) + "}"; }

// 1. Every valid algorithm equals the oracle on 10,000 (context, kind, X)
// triples. Contexts are drawn once per 20 triples so basis construction does
// not dominate the run.
Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  const BasisKind kinds[] = {BasisKind::CDUB, BasisKind::DBasis, BasisKind::DG};
  std::size_t triples = 0;
  while (triples < 10000) {
    const Context ctx = oracle::random_standard_context(rng, 5, 20);
    const BasisSet bases{build_cdub(ctx), build_dbasis(ctx), build_dg(ctx)};
    const std::size_t n = ctx.attribute_count();
    const ClosureIndex indices[] = {ClosureIndex(bases.cdub), ClosureIndex(bases.dbasis),
                                    ClosureIndex(bases.dg)};
    for (int q = 0; q < 20 && triples < 10000; ++q, ++triples) {
      const std::size_t k = rng() % 3;
      const Basis& basis = bases.get(kinds[k]);
      const AttributeSet x = oracle::random_set(rng, n);
      const AttributeSet want = oracle_closure(x, basis).closure;
      if (want != context_closure(ctx, x)) o.fail("oracle disagrees with the context closure");
      for (Algorithm alg : valid_algorithms(kinds[k])) {
        const AttributeSet got = compute_closure(alg, x, indices[k]).closure;
        if (got != want) {
          o.fail(std::string(algorithm_name(alg)) + " on " + std::string(kind_name(kinds[k])) + " gave " +
                 show(got, ctx.universe()) + " for " + show(x, ctx.universe()));
        }
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 60.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(triples) + " triples in " + std::to_string(secs) + " s";
  return o;
}

// 2. The four-object example.
Outcome example_reproduction() {
  Outcome o;
  const auto start = Clock::now();
  const Context ctx = read_cxt(oracle::fixture("ex51.cxt"));
  const Universe& u = ctx.universe();
  const Basis d = build_dbasis(ctx);

  std::vector<std::pair<std::uint64_t, Attribute>> expected;
  for (const char* text : {"d -> c", "b c -> a", "a d -> b", "a b -> c", "b c -> d", "a b -> d"}) {
    const Implication i = parse_implication(text, u);
    expected.emplace_back(oracle::to_mask(i.lhs()), *i.rhs().first());
  }
  std::sort(expected.begin(), expected.end());
  if (oracle::units(d.implications()) != expected) o.fail("D-basis differs from the listed implications");
  if (d.sigma0_len() != 1) o.fail("sigma0_len is " + std::to_string(d.sigma0_len()));

  const AttributeSet bd = parse_set("b d", u);
  if (pass(bd, d) != parse_set("b c d", u)) o.fail("pass({b,d}) = " + show(pass(bd, d), u));

  const Basis cdub = build_cdub(ctx);
  const ClosureIndex d_index(d);
  const ClosureIndex cdub_index(cdub);
  for (const ClosureIndex* index : {&d_index, &cdub_index}) {
    for (Algorithm alg : valid_algorithms(index->basis().kind())) {
      const AttributeSet got = compute_closure(alg, bd, *index).closure;
      if (!got.is_full()) {
        o.fail(std::string(algorithm_name(alg)) + " on " + std::string(kind_name(index->basis().kind())) +
               " gave " + show(got, u));
      }
    }
  }
  const AttributeSet bypassed = lin_closure_direct(bd, d_index, Seeding::Skip).closure;
  if (bypassed != parse_set("b c d", u)) o.fail("unseeded lin-direct gave " + show(bypassed, u));

  const double secs = seconds_since(start);
  if (secs >= 1.0) o.fail("took " + std::to_string(secs) + " s");
  return o;
}

// 3. Single-pass laws, exhaustive over every subset.
Outcome directness_laws() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(3);
  for (int c = 0; c < 200; ++c) {
    const Context ctx = oracle::random_standard_context(rng, 1, 12);
    const std::size_t n = ctx.attribute_count();
    const Basis cdub = build_cdub(ctx);
    const Basis d = build_dbasis(ctx);
    const ClosureIndex d_index(d);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const AttributeSet x = oracle::from_mask(n, mask);
      const AttributeSet clo = context_closure(ctx, x);
      if (pass(x, cdub) != clo || oracle_closure(x, cdub).closure != clo) {
        o.fail("CDUB single pass misses the closure of " + show(x, ctx.universe()));
      }
      if (pass(d_index.binary_closure(x), d) != clo || oracle_closure(x, d).closure != clo) {
        o.fail("D-basis pass after clo0 misses the closure of " + show(x, ctx.universe()));
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 120.0) o.fail("took " + std::to_string(secs) + " s");
  return o;
}

// 4. Size ordering, subset relation and pairwise equivalence.
Outcome basis_relations() {
  Outcome o;
  std::vector<std::pair<std::string, Context>> contexts;
  for (const char* f : {"ex51.cxt", "contranominal4.cxt", "chain3.cxt"}) {
    contexts.emplace_back(f, read_cxt(oracle::fixture(f)));
  }
  std::mt19937_64 rng(4);
  for (int c = 0; c < 150; ++c) {
    contexts.emplace_back("synthetic" + std::to_string(c), oracle::random_standard_context(rng, 5, 16));
  }
  for (const auto& [name, ctx] : contexts) {
    const BasisSet b = BasisSet::build(ctx);
    if (!(b.dg.size() <= b.dbasis.size() && b.dbasis.size() <= b.cdub.size())) {
      o.fail(name + ": sizes dg=" + std::to_string(b.dg.size()) + " dbasis=" + std::to_string(b.dbasis.size()) +
             " cdub=" + std::to_string(b.cdub.size()));
    }
    const auto cdub_units = unit_expansion(b.cdub);
    for (const auto& unit : unit_expansion(b.dbasis)) {
      if (std::find(cdub_units.begin(), cdub_units.end(), unit) == cdub_units.end()) {
        o.fail(name + ": D-basis unit " + format_implication(unit, ctx.universe()) + " not in the CDUB");
      }
    }
    if (!check_equiv(b.cdub, b.dbasis) || !check_equiv(b.cdub, b.dg) || !check_equiv(b.dbasis, b.dg)) {
      o.fail(name + ": bases are not pairwise equivalent");
    }
  }
  if (o.pass) o.detail = std::to_string(contexts.size()) + " contexts";
  return o;
}

// 5. Dropping any DG implication loses equivalence with the CDUB.
Outcome dg_minimality() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(5);
  std::size_t removals = 0;
  for (int c = 0; c < 50; ++c) {
    const Context ctx = oracle::random_standard_context(rng, 3, 10);
    const Basis dg = build_dg(ctx);
    const Basis cdub = build_cdub(ctx);
    for (std::size_t skip = 0; skip < dg.size(); ++skip) {
      std::vector<Implication> rest = dg.implications();
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(skip));
      ++removals;
      if (check_equiv(dg.with_implications(rest), cdub)) {
        o.fail("DG implication " + format_implication(dg[skip], ctx.universe()) + " is redundant");
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 60.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(removals) + " removals checked";
  return o;
}

std::uint64_t deps_of(const std::vector<ComboReport>& reports, const std::string& id, Combo combo) {
  for (const auto& r : reports) {
    if (r.dataset_id == id && r.combo() == combo) return r.totals.deps;
  }
  throw std::logic_error("missing combo " + combo_name(combo));
}

// 6. Counter laws over a fixed workload.
Outcome counter_laws() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::vector<std::pair<std::string, Context>> corpus;
  corpus.emplace_back("ex51", read_cxt(oracle::fixture("ex51.cxt")));
  for (int c = 0; c < 12; ++c) {
    corpus.emplace_back("g" + std::to_string(c), oracle::random_standard_context(rng, 5, 16));
  }
  WorkloadSpec spec;
  spec.queries = 2000;
  spec.repetitions = 3;  // run_combo rejects any drift between repetitions
  spec.seed = 6;
  spec.threads = 1;
  std::vector<ComboReport> serial;
  try {
    serial = run_corpus(corpus, spec);
  } catch (const std::logic_error& e) {
    o.fail(e.what());
    return o;
  }
  spec.threads = 4;
  const auto parallel = run_corpus(corpus, spec);
  for (const auto& [id, ctx] : corpus) {
    const auto dg = [&](Algorithm a) { return deps_of(serial, id, {BasisKind::DG, a}); };
    if (dg(Algorithm::Classic) != dg(Algorithm::Lin) || dg(Algorithm::Lin) != dg(Algorithm::Wild)) {
      o.fail(id + ": classic trio deps differ on the DG basis");
    }
    for (BasisKind k : {BasisKind::CDUB, BasisKind::DBasis}) {
      if (deps_of(serial, id, {k, Algorithm::LinDirect}) != deps_of(serial, id, {k, Algorithm::WildDirect})) {
        o.fail(id + ": lin-direct and wild-direct deps differ on " + std::string(kind_name(k)));
      }
    }
  }
  if (serial.size() != parallel.size()) o.fail("serial and parallel report counts differ");
  for (std::size_t i = 0; i < serial.size() && i < parallel.size(); ++i) {
    if (serial[i].dataset_id != parallel[i].dataset_id || serial[i].combo() != parallel[i].combo() ||
        !serial[i].totals.same_counters(parallel[i].totals) || serial[i].query_hash != parallel[i].query_hash) {
      o.fail("serial and parallel counters differ at row " + std::to_string(i));
    }
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& args) {
  const std::string cmd = std::string("'") + IMPLBASE_CLI_PATH + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 7. Two CLI bench runs with one seed agree byte for byte outside time_ms.
Outcome bench_determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("implbase_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir / "corpus");
  for (int s = 0; s < 4; ++s) {
    const fs::path out = dir / "corpus" / ("gen" + std::to_string(s) + ".cxt");
    if (shell("--seed " + std::to_string(100 + s) + " gen --objects 15 --attributes 10 -o '" + out.string() + "'") != 0) {
      o.fail("gen failed");
    }
  }
  const std::string bench = "--seed 42 bench --in '" + (dir / "corpus").string() + "' --queries 1000 --reps 2";
  if (shell(bench + " --threads 1 --out '" + (dir / "a.csv").string() + "'") != 0) o.fail("first bench failed");
  if (shell(bench + " --threads 4 --out '" + (dir / "b.csv").string() + "'") != 0) o.fail("second bench failed");
  const std::string a = slurp(dir / "a.csv");
  const std::string b = slurp(dir / "b.csv");
  const std::regex time_field(",[0-9]+\\.[0-9]{6}\n");
  const std::string header =
      "dataset,universe,basis_kind,basis_size,algorithm,queries,reps,deps,attrib_ops,inner,outer,time_ms";
  if (a.substr(0, a.find('\n')) != header) o.fail("header mismatch: " + a.substr(0, a.find('\n')));
  if (std::regex_replace(a, time_field, ",*\n") != std::regex_replace(b, time_field, ",*\n")) {
    o.fail("CSVs differ outside time_ms");
  }
  if (std::count(a.begin(), a.end(), '\n') != 1 + 4 * 9) o.fail("unexpected row count");
  fs::remove_all(dir);
  return o;
}

// 8. On corpora with |CDUB|/|DG| >= 2, (DG, classic) wins deps in most
// datasets.
Outcome trend_demo() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::vector<std::pair<std::string, Context>> corpus;
  std::size_t drawn = 0;
  while (corpus.size() < 40 && drawn < 4000) {
    ++drawn;
    Context ctx = oracle::random_standard_context(rng, 8, 18, 8, 33);
    const std::size_t cdub = build_cdub(ctx).size();
    const std::size_t dg = build_dg(ctx).size();
    if (dg > 0 && cdub >= 2 * dg) corpus.emplace_back("r" + std::to_string(corpus.size()), std::move(ctx));
  }
  if (corpus.size() < 10) {
    o.fail("only " + std::to_string(corpus.size()) + " contexts with ratio >= 2");
    return o;
  }
  WorkloadSpec spec;
  spec.queries = 2000;
  spec.repetitions = 1;
  spec.seed = 8;
  spec.threads = 4;
  const auto reports = run_corpus(corpus, spec);
  const RankingTable table = ranking(reports, {Metric::Deps});
  const auto col = std::find(table.combos.begin(), table.combos.end(), Combo{BasisKind::DG, Algorithm::Classic});
  const std::size_t wins = table.wins[0][static_cast<std::size_t>(col - table.combos.begin())];
  o.detail = "(DG, classic) wins deps in " + std::to_string(wins) + "/" + std::to_string(table.datasets) +
             " datasets";
  if (2 * wins <= table.datasets) o.fail(o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"example reproduction", example_reproduction},
      {"directness laws", directness_laws},
      {"basis relations", basis_relations},
      {"DG minimality", dg_minimality},
      {"counter laws", counter_laws},
      {"benchmark determinism and schema", bench_determinism},
      {"qualitative trend", trend_demo},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
