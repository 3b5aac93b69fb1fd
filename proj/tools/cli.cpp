#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driesz/driesz.hpp"
#include "driesz/io.hpp"

namespace driesz::cli {
namespace {

struct Options {
  unsigned threads = 0;
  std::string out;

  // op
  std::string kind;
  double alpha = 0.5;
  bool fast = false;
  std::string window;
  std::string in;

  // norm
  std::string family;
  double p = 2;
  std::optional<double> q;
  std::string weight;
  std::string vweight;

  // weight
  std::optional<double> beta;
  std::vector<Index> caps;
  std::string format = "csv";

  // whitney
  int ray_depth = 0;

  // verify
  std::string tag;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> families;
  std::vector<double> betas;
  bool force = false;
  std::string csv;

  // bench
  std::vector<Index> sizes;
  int reps = 3;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    io::write_text(o.out, text);
  }
}

EvalWindow parse_window(const std::string& s) {
  auto colon = s.find(':', s.empty() ? 0 : 1);
  Index lo = 0, hi = 0;
  if (colon == std::string::npos || !io::detail::parse_full(s.substr(0, colon), lo) ||
      !io::detail::parse_full(s.substr(colon + 1), hi)) {
    throw DomainError("window must look like lo:hi");
  }
  if (lo > hi) throw DomainError("window needs lo<=hi");
  return EvalWindow(lo, hi);
}

std::optional<Weight> load_weight(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::read_weight(path);
}

int run_op(const Options& o, std::ostream& out) {
  FiniteSequence x = io::read_sequence(o.in);
  EvalWindow w = parse_window(o.window);
  unsigned threads = resolve_threads(o.threads);
  FiniteSequence y;
  if (o.kind == "maximal") {
    y = fractional_maximal(x, o.alpha, w, threads);
  } else if (o.kind == "riesz") {
    y = o.fast ? riesz_fast(x, o.alpha, w) : riesz_naive(x, o.alpha, w, threads);
  } else {
    throw DomainError("--kind must be maximal or riesz");
  }
  emit(o, out, io::format_sequence(y, io::is_csv_path(o.out)));
  return 0;
}

int run_norm(const Options& o, std::ostream& out) {
  NormSpec spec;
  if (o.family == "lp") {
    spec.family = NormFamily::Lp;
  } else if (o.family == "weak") {
    spec.family = NormFamily::WeakLp;
  } else if (o.family == "morrey") {
    spec.family = NormFamily::Morrey;
  } else if (o.family == "wmorrey") {
    spec.family = NormFamily::WeightedMorrey;
  } else {
    throw DomainError("--family must be lp, weak, morrey or wmorrey");
  }
  spec.p = o.p;
  spec.q = o.q;
  spec.weight = load_weight(o.weight);
  spec.size_weight = load_weight(o.vweight);
  if (spec.size_weight && spec.family != NormFamily::WeightedMorrey) {
    throw DomainError("--vweight only applies to wmorrey");
  }
  FiniteSequence x = io::read_sequence(o.in);
  emit(o, out, io::dump(io::norm_to_json(evaluate_norm(spec, x)), -1));
  return 0;
}

Weight weight_choice(const Options& o) {
  if (!o.weight.empty() && o.beta) throw DomainError("give either --weight or --beta, not both");
  if (o.beta) return Weight::power(*o.beta);
  if (!o.weight.empty()) return io::read_weight(o.weight);
  throw DomainError("weight needs --weight or --beta");
}

int run_weight(const Options& o, std::ostream& out) {
  Weight w = weight_choice(o);
  if (o.caps.empty()) throw DomainError("weight needs --caps");
  if (!(o.p >= 1)) throw DomainError("weight needs p>=1");
  if (o.q && !(o.p > 1 && *o.q > 1)) throw DomainError("A(p,q) constant needs p>1 and q>1");
  GrowthProfile g = constant_growth_profile(w, MuckenhouptSpec{o.p, o.q}, o.caps);
  if (o.format == "json") {
    emit(o, out, io::dump(io::growth_profile_to_json(g)));
  } else if (o.format == "csv") {
    emit(o, out, io::growth_profile_csv(g));
  } else {
    throw DomainError("--format must be csv or json");
  }
  return 0;
}

int run_whitney(const Options& o, std::ostream& out) {
  IntegerSet set = io::integer_set_from_json(io::parse_json(io::read_text(o.in), o.in));
  Decomposition d = decompose(set, o.ray_depth);
  io::Json arr = io::Json::array();
  for (const auto& s : d.parts) arr.push_back(io::interval_to_json(s));
  emit(o, out, io::dump(arr, -1));
  return 0;
}

verify::FamilyKind family_kind(const std::string& name) {
  using verify::FamilyKind;
  for (auto k : {FamilyKind::Deltas, FamilyKind::Blocks, FamilyKind::RandomSigned, FamilyKind::PowerDecay,
                 FamilyKind::AdversarialExtremal}) {
    if (name == verify::to_string(k)) return k;
  }
  throw DomainError("unknown family '" + name + "'");
}

int run_verify(const Options& o, std::ostream& out) {
  verify::ExperimentTag tag = verify::parse_tag(o.tag);
  std::vector<Index> caps = o.caps;
  if (tag == verify::ExperimentTag::MembershipScan) {
    if (caps.empty()) caps = {64, 128, 256, 512, 1024, 2048, 4096};
    std::vector<double> betas = o.betas;
    if (o.beta) betas = {*o.beta};
    if (betas.empty()) betas = {-0.4, -0.2, 0.0, 0.2, 0.4, 0.8, 1.2};
    if (o.q) make_profile(ProfileKind::SobolevScale, o.alpha, o.p, o.q);
    auto rep = verify::membership_scan(o.alpha, o.p, betas, caps, resolve_threads(o.threads));
    if (!o.csv.empty()) io::write_text(o.csv, io::membership_csv(rep));
    emit(o, out, io::dump(io::membership_to_json(rep)));
    return 0;
  }
  if (caps.empty()) caps = {256, 512, 1024, 2048};
  verify::ExperimentSetup s;
  s.tag = tag;
  s.alpha = o.alpha;
  s.p = o.p;
  s.q = o.q;
  if (o.beta || !o.weight.empty()) s.weight = weight_choice(o);
  s.caps = caps;
  s.force = o.force;
  s.threads = resolve_threads(o.threads);
  auto all = verify::standard_families(o.p, o.seed);
  if (o.families.empty()) {
    s.families = all;
  } else {
    for (const auto& name : o.families) {
      auto k = family_kind(name);
      for (const auto& f : all) {
        if (f.kind == k) s.families.push_back(f);
      }
    }
  }
  auto rep = verify::run_experiment(s);
  if (!o.csv.empty()) io::write_text(o.csv, io::report_cases_csv(rep));
  emit(o, out, io::dump(io::report_to_json(rep)));
  return 0;
}

template <class F>
double median_ms(int reps, F&& f) {
  std::vector<double> t;
  for (int r = 0; r < std::max(1, reps); ++r) {
    auto start = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

int run_bench(const Options& o, std::ostream& out, std::ostream& err) {
  constexpr Index kNaiveLimit = Index{1} << 15;
  std::string csv = "n,naive_ms,fast_ms,speedup,max_rel_error\n";
  for (Index n : o.sizes) {
    if (n < 1) throw DomainError("bench sizes must be positive");
    CounterRng g = CounterRng(o.seed).split(static_cast<std::uint64_t>(n));
    std::vector<double> v(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.uniform_at(i);
    FiniteSequence x(0, std::move(v));
    EvalWindow w(0, n - 1);
    std::vector<double> fast, naive;
    double fast_ms = 0;
    try {
      fast_ms = median_ms(o.reps, [&] { fast = riesz_fast_values(x, o.alpha, w); });
    } catch (const CapacityError& e) {
      err << "n=" << n << ": " << e.what() << "\n";
      csv += std::to_string(n) + ",skip,capacity,n/a,n/a\n";
      continue;
    }
    std::string row = std::to_string(n) + ",";
    if (n <= kNaiveLimit) {
      double naive_ms = median_ms(1, [&] { naive = riesz_naive_values(x, o.alpha, w, resolve_threads(o.threads)); });
      double worst = 0;
      for (std::size_t i = 0; i < naive.size(); ++i) {
        if (std::fabs(naive[i]) > 1e-300) worst = std::max(worst, std::fabs(fast[i] - naive[i]) / std::fabs(naive[i]));
      }
      row += io::format_number(naive_ms) + "," + io::format_number(fast_ms) + "," +
             io::format_number(naive_ms / fast_ms) + "," + io::format_number(worst);
    } else {
      row += "skip," + io::format_number(fast_ms) + ",n/a,n/a";
    }
    csv += row + "\n";
  }
  emit(o, out, csv);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete fractional maximal operators, Riesz potentials, weighted norms and Whitney decompositions"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (default: DRIESZ_THREADS or hardware count)");

  auto* op = app.add_subcommand("op", "Evaluate an operator on a window");
  op->add_option("--kind", o.kind, "maximal or riesz")->required()->check(CLI::IsMember({"maximal", "riesz"}));
  op->add_option("--alpha", o.alpha, "Order alpha")->required();
  op->add_flag("--fast", o.fast, "Use transform convolution for riesz");
  op->add_option("--window", o.window, "Evaluation range lo:hi")->required();
  op->add_option("--in", o.in, "Input sequence (.json or .csv)")->required();
  op->add_option("--out", o.out, "Output sequence path (stdout if absent)");
  op->add_option("--threads", o.threads, "Worker threads");

  auto* norm = app.add_subcommand("norm", "Compute a sequence norm");
  norm->add_option("--family", o.family, "lp, weak, morrey or wmorrey")->required();
  norm->add_option("--p", o.p, "Exponent p")->required();
  norm->add_option("--q", o.q, "Exponent q (morrey families)");
  norm->add_option("--weight", o.weight, "Weight JSON");
  norm->add_option("--vweight", o.vweight, "Size weight JSON (wmorrey)");
  norm->add_option("--in", o.in, "Input sequence")->required();
  norm->add_option("--out", o.out, "Output path");

  auto* weight = app.add_subcommand("weight", "Muckenhoupt constants across growing caps");
  weight->add_option("--weight", o.weight, "Weight JSON");
  weight->add_option("--beta", o.beta, "Power weight exponent");
  weight->add_option("--p", o.p, "Exponent p (1 gives the A_1 constant)")->required();
  weight->add_option("--q", o.q, "Exponent q for the A(p,q) constant");
  weight->add_option("--caps", o.caps, "Increasing caps, comma separated")->required()->delimiter(',');
  weight->add_option("--format", o.format, "csv or json");
  weight->add_option("--out", o.out, "Output path");

  auto* whitney = app.add_subcommand("whitney", "Decompose an integer set into symmetric intervals");
  whitney->add_option("--in", o.in, "Set JSON {runs, leftRay, rightRay}")->required();
  whitney->add_option("--ray-depth", o.ray_depth, "Intervals emitted per ray");
  whitney->add_option("--out", o.out, "Output path");

  auto* ver = app.add_subcommand("verify", "Estimate the constant of an inequality over test families");
  ver->add_option("--tag", o.tag, "t3.7, t3.7ii, t3.1, t3.8, c3.5, c3.5ii, t1.1, l3.12, l3.16, t3.10, t3.11 or m2.13")
      ->required();
  ver->add_option("--alpha", o.alpha, "Order alpha")->required();
  ver->add_option("--p", o.p, "Exponent p");
  ver->add_option("--q", o.q, "Exponent q");
  ver->add_option("--beta", o.beta, "Power weight exponent");
  ver->add_option("--betas", o.betas, "Exponent grid for m2.13")->delimiter(',');
  ver->add_option("--weight", o.weight, "Weight JSON");
  ver->add_option("--caps", o.caps, "Increasing support sizes")->delimiter(',');
  ver->add_option("--seed", o.seed, "Seed for random families");
  ver->add_option("--families", o.families, "Subset of deltas,blocks,randomSigned,powerDecay,adversarialExtremal")
      ->delimiter(',');
  ver->add_flag("--force", o.force, "Run weights outside the hypotheses");
  ver->add_option("--out", o.out, "Report JSON path");
  ver->add_option("--csv", o.csv, "Per-case CSV path");
  ver->add_option("--threads", o.threads, "Worker threads");

  auto* bench = app.add_subcommand("bench", "Time naive and transform Riesz evaluation");
  bench->add_option("--sizes", o.sizes, "Support sizes")->delimiter(',');
  bench->add_option("--alpha", o.alpha, "Order alpha");
  bench->add_option("--reps", o.reps, "Repetitions per size (median reported)");
  bench->add_option("--seed", o.seed, "Seed for the input");
  bench->add_option("--out", o.out, "CSV path");
  bench->add_option("--threads", o.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (op->parsed()) return run_op(o, out);
    if (norm->parsed()) return run_norm(o, out);
    if (weight->parsed()) return run_weight(o, out);
    if (whitney->parsed()) return run_whitney(o, out);
    if (ver->parsed()) return run_verify(o, out);
    if (bench->parsed()) return run_bench(o, out, err);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace driesz::cli
