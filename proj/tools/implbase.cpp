// implbase: build implication bases from formal contexts, compute closures,
// and run the closure benchmark.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "implbase/bases.hpp"
#include "implbase/bench.hpp"
#include "implbase/closure.hpp"
#include "implbase/context.hpp"

namespace fs = std::filesystem;
using namespace implbase;

namespace {

struct Options {
  std::uint64_t seed = 0;
  bool verbose = false;

  // gen
  std::size_t objects = 0;
  std::size_t attributes = 0;
  double density = 0.3;
  std::string out;

  // bases / check / bench / report
  std::string in;
  std::string kind = "all";
  std::size_t exhaustive_limit = 20;

  // closure
  std::string basis;
  std::string algo;
  std::string set;
  bool metrics = false;

  // bench
  std::size_t queries = 50000;
  std::size_t reps = 3;
  double query_density = 0.5;
  std::size_t threads = 0;

  // report
  std::string report_kind = "totals";
  bool normalize = false;
};

void log(const Options& opt, const std::string& msg) {
  if (opt.verbose) std::cerr << "[implbase] " << msg << '\n';
}

int cmd_gen(const Options& opt) {
  const Context ctx = gen_synthetic(opt.objects, opt.attributes, opt.density, opt.seed);
  log(opt, "generated " + std::to_string(ctx.object_count()) + "x" +
               std::to_string(ctx.attribute_count()) + " standard context");
  if (opt.out.empty()) {
    write_cxt(std::cout, ctx);
  } else {
    write_cxt(fs::path(opt.out), ctx);
  }
  return 0;
}

Basis build(const Context& ctx, BasisKind kind) {
  switch (kind) {
    case BasisKind::CDUB: return build_cdub(ctx);
    case BasisKind::DBasis: return build_dbasis(ctx);
    case BasisKind::DG: return build_dg(ctx);
    case BasisKind::Raw: break;
  }
  throw Error(ErrorKind::InvalidArgument, "cannot build a raw basis");
}

int cmd_bases(const Options& opt) {
  const Context ctx = read_cxt(opt.in);
  std::vector<BasisKind> kinds;
  if (opt.kind == "all") {
    kinds = {BasisKind::CDUB, BasisKind::DBasis, BasisKind::DG};
  } else {
    kinds = {parse_kind(opt.kind)};
  }
  for (auto kind : kinds) {
    const Basis basis = build(ctx, kind);
    log(opt, std::string(kind_name(kind)) + ": " + std::to_string(basis.size()) + " implications");
    if (opt.out.empty()) {
      write_basis(std::cout, basis);
    } else if (kinds.size() == 1) {
      write_basis(fs::path(opt.out), basis);
    } else {
      // out.imp -> out.cdub.imp, out.dbasis.imp, out.dg.imp
      fs::path path(opt.out);
      path.replace_extension("." + std::string(kind_name(kind)) + path.extension().string());
      write_basis(path, basis);
    }
  }
  return 0;
}

int cmd_closure(const Options& opt) {
  const Basis basis = read_basis(opt.basis);
  const Algorithm algorithm = parse_algorithm(opt.algo);
  if (is_direct(algorithm) && basis.kind() != BasisKind::CDUB && basis.kind() != BasisKind::DBasis) {
    throw Error(ErrorKind::InvalidCombo, std::string(algorithm_name(algorithm)) +
                                             " cannot run on a " + std::string(kind_name(basis.kind())) +
                                             " basis");
  }
  const AttributeSet x = parse_set(opt.set, basis.universe());
  const ClosureResult r = compute_closure(algorithm, x, ClosureIndex(basis));
  std::cout << format_set(r.closure, basis.universe()) << '\n';
  if (opt.metrics) std::cout << format_metrics(r.metrics) << '\n';
  return 0;
}

int cmd_check(const Options& opt) {
  const Context ctx = read_cxt(opt.in);
  require_standard(ctx);
  const BasisSet bases = BasisSet::build(ctx);
  const auto& u = ctx.universe();
  std::cout << "sizes: cdub=" << bases.cdub.size() << " dbasis=" << bases.dbasis.size()
            << " dg=" << bases.dg.size() << '\n';
  const auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "equivalent: cdub~dbasis " << yes_no(check_equiv(bases.cdub, bases.dbasis))
            << "; cdub~dg " << yes_no(check_equiv(bases.cdub, bases.dg)) << "; dbasis~dg "
            << yes_no(check_equiv(bases.dbasis, bases.dg)) << '\n';

  const auto verdict = [&](const DirectnessReport& r) {
    std::string s = yes_no(r.direct);
    if (r.witness) s += " (witness: {" + format_set(*r.witness, u) + "})";
    if (!r.exhaustive) s += " [sampled " + std::to_string(r.checked) + " sets]";
    return s;
  };
  std::cout << "CDUB direct: " << verdict(check_direct(bases.cdub, opt.exhaustive_limit, Sweep::Pass))
            << '\n';
  std::cout << "D-basis ordered-direct: "
            << verdict(check_direct(bases.dbasis, opt.exhaustive_limit, Sweep::Ordered)) << '\n';
  std::cout << "D-basis pass-direct: "
            << verdict(check_direct(bases.dbasis, opt.exhaustive_limit, Sweep::Pass)) << '\n';
  std::cout << "DG direct: " << verdict(check_direct(bases.dg, opt.exhaustive_limit, Sweep::Pass))
            << '\n';
  return 0;
}

int cmd_bench(const Options& opt) {
  std::vector<fs::path> files;
  if (fs::is_directory(opt.in)) {
    for (const auto& entry : fs::directory_iterator(opt.in)) {
      if (entry.is_regular_file() && entry.path().extension() == ".cxt") files.push_back(entry.path());
    }
  } else if (fs::is_regular_file(opt.in)) {
    files.push_back(opt.in);
  } else {
    throw Error(ErrorKind::IoError, "no such file or directory: " + opt.in);
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, Context>> datasets;
  for (const auto& f : files) {
    Context ctx = read_cxt(f);
    require_standard(ctx);
    datasets.emplace_back(f.stem().string(), std::move(ctx));
  }
  WorkloadSpec spec;
  spec.queries = opt.queries;
  spec.repetitions = opt.reps;
  spec.seed = opt.seed;
  spec.query_density = opt.query_density;
  spec.threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  log(opt, "benchmarking " + std::to_string(datasets.size()) + " datasets on " +
               std::to_string(spec.threads) + " threads");
  const auto reports = run_corpus(datasets, spec);
  if (opt.out.empty()) {
    write_csv(std::cout, reports);
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + opt.out);
    write_csv(out, reports);
  }
  return 0;
}

int cmd_report(const Options& opt) {
  std::ifstream in(opt.in);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + opt.in);
  const auto reports = read_csv(in);
  if (opt.report_kind == "totals") {
    write_totals(std::cout, grand_totals(reports, opt.normalize));
  } else if (opt.report_kind == "ranking") {
    write_ranking(std::cout, ranking(reports));
  } else {
    write_ratio(std::cout, size_ratio_report(reports));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implication bases, closure algorithms and their benchmark"};
  app.set_version_flag("--version", std::string("implbase ") + IMPLBASE_VERSION + " (" +
                                        IMPLBASE_BUILD_HASH + ")");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "Seed for generation and query workloads");
  app.add_flag("--verbose", opt.verbose, "Progress messages on stderr");

  auto* gen = app.add_subcommand("gen", "Generate a random standard context (.cxt)");
  gen->add_option("--objects", opt.objects)->required()->check(CLI::PositiveNumber);
  gen->add_option("--attributes", opt.attributes)->required()->check(CLI::Range(1, 1024));
  gen->add_option("--density", opt.density)->capture_default_str();
  gen->add_option("-o,--out", opt.out, "Output .cxt (stdout if omitted)");

  auto* bases = app.add_subcommand("bases", "Build implication bases from a context");
  bases->add_option("--in", opt.in)->required();
  bases->add_option("--kind", opt.kind)->check(CLI::IsMember({"cdub", "dbasis", "dg", "all"}))
      ->capture_default_str();
  bases->add_option("-o,--out", opt.out, "Output basis file; with --kind all, one file per kind");

  auto* closure = app.add_subcommand("closure", "Compute the closure of a set w.r.t. a basis");
  closure->add_option("--basis", opt.basis)->required();
  closure->add_option("--algo", opt.algo)
      ->required()
      ->check(CLI::IsMember({"classic", "lin", "wild", "classic-direct", "lin-direct", "wild-direct", "oracle"}));
  closure->add_option("--set", opt.set)->required();
  closure->add_flag("--metrics", opt.metrics);

  auto* check = app.add_subcommand("check", "Build all bases and verify their relations");
  check->add_option("--in", opt.in)->required();
  check->add_option("--exhaustive-limit", opt.exhaustive_limit)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Run the closure workload over a corpus of contexts");
  bench->add_option("--in", opt.in, "Directory of .cxt files, or a single file")->required();
  bench->add_option("--queries", opt.queries)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--reps", opt.reps)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--query-density", opt.query_density)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  bench->add_option("--threads", opt.threads, "Worker threads (0: hardware concurrency)");
  bench->add_option("--out", opt.out, "CSV output (stdout if omitted)");

  auto* report = app.add_subcommand("report", "Aggregate a benchmark CSV");
  report->add_option("--in", opt.in)->required();
  report->add_option("--kind", opt.report_kind)->check(CLI::IsMember({"totals", "ranking", "ratio"}))
      ->capture_default_str();
  report->add_flag("--normalize", opt.normalize);

  try {
    app.parse(argc, argv);
    if (opt.normalize && opt.report_kind != "totals") {
      throw CLI::ValidationError("--normalize", "only applies to --kind totals");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(opt);
    if (bases->parsed()) return cmd_bases(opt);
    if (closure->parsed()) return cmd_closure(opt);
    if (check->parsed()) return cmd_check(opt);
    if (bench->parsed()) return cmd_bench(opt);
    if (report->parsed()) return cmd_report(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
