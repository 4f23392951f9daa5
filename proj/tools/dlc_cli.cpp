#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlc/dlc.hpp"

namespace {

using namespace dlc;

/// Failing checks, as opposed to bad input (exit 2).
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  unsigned workers = 1;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 100000;
  std::string output;

  ExactMode exact() const { return {workers, EnumerationLimits::from_env()}; }
  MonteCarloMode mc() const { return {samples, RandomSource(seed), workers}; }
};

void add_common(CLI::App& app, Common& c, bool sampling) {
  app.add_option("--workers", c.workers, "worker threads (output does not depend on it)")->check(CLI::Range(1u, 256u));
  app.add_option("-o,--output", c.output, "output file (default: stdout)");
  if (sampling) {
    app.add_option("--seed", c.seed, "random seed")->capture_default_str();
    app.add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::PositiveNumber)->capture_default_str();
  }
}

/// Writes to the named file, or stdout when the name is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

DecisionList load_list(const std::string& path) {
  if (path == "-") return read_decision_list(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_decision_list(in);
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  Common common;
  unsigned terms = 2, width = 2, n = 4, w = 2, alphabet = 2;
  std::size_t m = 8;
  std::string v, table;
};

void register_gen(CLI::App& app, GenArgs& g) {
  auto* gen = app.add_subcommand("gen", "generate a decision list as JSON");
  gen->require_subcommand(1);
  add_common(*gen, g.common, false);

  auto* tribes = gen->add_subcommand("tribes", "read-once DNF of disjoint positive terms");
  tribes->add_option("--terms", g.terms, "number of terms")->required();
  tribes->add_option("--width", g.width, "term width")->required();

  auto* threshold = gen->add_subcommand("threshold", "all monotone width-w terms: [popcount(x) >= w]");
  threshold->add_option("--n", g.n)->required();
  threshold->add_option("--w", g.w)->required();

  auto* lv = gen->add_subcommand("lv", "threshold terms with labels taken from a bit string");
  lv->add_option("--n", g.n)->required();
  lv->add_option("--w", g.w)->required();
  lv->add_option("--v", g.v, "0/1 string of length C(n, w)")->required();

  auto* table = gen->add_subcommand("table", "one full-width term per truth-table row");
  table->add_option("--table", g.table, "labels, one character per row, x1 least significant")->required();

  auto* random = gen->add_subcommand("random", "random list");
  random->add_option("--n", g.n)->required();
  random->add_option("--w", g.w)->required();
  random->add_option("--m", g.m, "rule count including the default")->required()->check(CLI::PositiveNumber);
  random->add_option("--alphabet", g.alphabet, "number of distinct labels")->capture_default_str();
  random->add_option("--seed", g.common.seed)->capture_default_str();

  for (auto* sub : {tribes, threshold, lv, table, random}) sub->fallthrough();
}

int run_gen(const CLI::App& gen, const GenArgs& g) {
  const auto* sub = gen.get_subcommands().front();
  const std::string which = sub->get_name();
  std::optional<DecisionList> list;
  if (which == "tribes") {
    list = gen_tribes(g.terms, g.width);
  } else if (which == "threshold") {
    list = gen_threshold_dnf(g.n, g.w);
  } else if (which == "lv") {
    std::vector<bool> bits;
    for (char c : g.v) {
      if (c != '0' && c != '1') throw std::invalid_argument("--v must be a 0/1 string");
      bits.push_back(c == '1');
    }
    list = gen_lv(g.n, g.w, bits);
  } else if (which == "table") {
    list = gen_from_truth_table(std::string_view(g.table));
  } else {
    RandomSource rng(g.common.seed);
    list = gen_random_list(g.n, g.w, g.m, g.alphabet, rng);
  }
  Sink sink(g.common.output);
  sink.get() << serialize(*list) << '\n';
  return 0;
}

// ---- compress -------------------------------------------------------------

struct CompressArgs {
  Common common;
  std::string input;
  std::optional<double> epsilon;
  std::optional<std::size_t> t;
  std::string mode = "exact";
  std::string sublist;
};

void register_compress(CLI::App& app, CompressArgs& a) {
  auto* cmd = app.add_subcommand("compress", "keep the highest-mass rules of a list");
  cmd->add_option("input", a.input, "list file, or - for stdin")->required();
  auto* eps = cmd->add_option("--epsilon", a.epsilon, "target dropped mass")->check(CLI::Range(0.0, 1.0));
  auto* t = cmd->add_option("--t", a.t, "number of top-ranked rules to keep")->check(CLI::PositiveNumber);
  eps->excludes(t);
  cmd->add_option("--mode", a.mode)->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  cmd->add_option("--sublist", a.sublist, "write the compressed list to this file");
  add_common(*cmd, a.common, true);
}

int run_compress(const CompressArgs& a) {
  if (!a.epsilon && !a.t) throw CLI::ValidationError("compress", "one of --epsilon or --t is required");
  const auto list = load_list(a.input);
  const EvalMode mode = a.mode == "mc" ? EvalMode(a.common.mc()) : EvalMode(a.common.exact());
  const auto result = a.epsilon ? min_size_for_error(list, *a.epsilon, mode)
                                : take_top(list, *a.t, hit_distribution(list, mode), mode);

  std::cout << "rules kept:    " << result.kept.size() << " of " << list.size() << " (t = " << result.t << ")\n"
            << "dropped mass:  " << format_number(result.dropped_mass) << '\n'
            << "distance:      " << format_number(result.distance.value);
  if (!result.distance.exact) std::cout << " +/- " << format_number(result.distance.half_width);
  std::cout << " [" << mode_name(mode) << "]\n"
            << "junta size:    " << result.junta_size << '\n';
  if (a.epsilon && *a.epsilon > 0.0 && *a.epsilon < 1.0 && list.width() >= 1) {
    const auto bound = theorem_size_bound(list.width(), *a.epsilon);
    std::cout << "size bound:    " << (bound.saturated ? std::string(">= 2^64") : std::to_string(bound.t))
              << " (w = " << bound.w << ", beta = " << format_number(bound.beta) << ")\n";
  }
  if (!a.common.output.empty()) {
    Sink sink(a.common.output);
    sink.get() << to_json(result, mode_name(mode)).dump(2) << '\n';
  }
  if (!a.sublist.empty()) {
    Sink sink(a.sublist);
    sink.get() << serialize(result.sublist) << '\n';
  }
  return 0;
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  Common common;
  std::string input;
  bool mc = false;
  std::string format = "text";
};

void register_stats(CLI::App& app, StatsArgs& a) {
  auto* cmd = app.add_subcommand("stats", "size, width, usefulness and hit probabilities of a list");
  cmd->add_option("input", a.input, "list file, or - for stdin")->required();
  cmd->add_flag("--mc", a.mc, "estimate hit probabilities by sampling");
  cmd->add_option("--format", a.format)->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
  add_common(*cmd, a.common, true);
}

int run_stats(const StatsArgs& a) {
  const auto list = load_list(a.input);
  const EvalMode mode = a.mc ? EvalMode(a.common.mc()) : EvalMode(a.common.exact());
  const auto useful = useful_indices(list);
  const auto p = hit_distribution(list, mode);
  const unsigned junta = static_cast<unsigned>(std::popcount(list.support()));

  Sink sink(a.common.output);
  auto& out = sink.get();
  if (a.format == "json") {
    nlohmann::json j{{"n", list.n()},          {"m", list.size()}, {"w", list.width()}, {"usenum", useful.size()},
                     {"useful", useful},        {"junta_size", junta}, {"hit", to_json(p)}};
    out << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    write_csv(out, p);
  } else {
    out << "n:       " << list.n() << "\nm:       " << list.size() << "\nw:       " << list.width()
        << "\nusenum:  " << useful.size() << "\njunta:   " << junta << "\nmode:    " << mode_name(mode)
        << "\n\nindex  p";
    if (!p.exact) out << "  ci_half_width";
    out << '\n';
    for (RuleIndex i = 1; i <= list.size(); ++i) {
      out << i << "  " << (p.rationals.empty() ? format_number(p[i]) : to_string(p.rationals[i - 1]));
      if (!p.exact) out << "  " << format_number(p.half_width[i - 1]);
      out << '\n';
    }
  }
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string suite;
  std::string family = "random";
  std::string input;
  unsigned n = 6, w = 3, terms = 2, width = 2;
  std::size_t m = 10, lists = 20;
  std::vector<double> alpha{0.5};
  std::vector<double> beta{0.5};
  std::vector<double> beta_fix{0.5};
  bool exhaustive = false;
  std::string format = "csv";
};

void register_verify(CLI::App& app, VerifyArgs& a) {
  auto* cmd = app.add_subcommand("verify", "check an invariant over a corpus; exit status 0 iff all checks pass");
  cmd->add_option("suite", a.suite)
      ->required()
      ->check(CLI::IsMember({"roundtrip", "usenum", "bridging", "hyper", "dnf-useful", "claims"}));
  cmd->add_option("--family", a.family)->check(CLI::IsMember({"random", "tribes", "threshold"}))->capture_default_str();
  cmd->add_option("--input", a.input, "check a single list file instead of a generated corpus");
  cmd->add_option("--n", a.n, "variables (maximum for random corpora)")->capture_default_str();
  cmd->add_option("--w", a.w, "width (maximum for random corpora)")->capture_default_str();
  cmd->add_option("--m", a.m, "maximum rule count for random corpora")->capture_default_str();
  cmd->add_option("--lists", a.lists, "random corpus size")->capture_default_str();
  cmd->add_option("--terms", a.terms, "tribes term count")->capture_default_str();
  cmd->add_option("--width", a.width, "tribes term width")->capture_default_str();
  cmd->add_option("--alpha", a.alpha, "star probabilities")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--beta", a.beta, "noise correlations")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--beta-fix", a.beta_fix, "fixing probabilities")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_flag("--exhaustive", a.exhaustive, "enumerate every restriction instead of sampling");
  cmd->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_common(*cmd, a.common, true);
}

std::vector<DecisionList> verify_corpus(const VerifyArgs& a) {
  if (!a.input.empty()) return {load_list(a.input)};
  if (a.family == "tribes") return {gen_tribes(a.terms, a.width)};
  if (a.family == "threshold") return {gen_threshold_dnf(a.n, a.w)};
  CorpusSpec spec;
  spec.max_n = a.n;
  spec.max_w = a.w;
  spec.max_m = a.m;
  spec.count = a.lists;
  spec.seed = a.common.seed;
  return random_corpus(spec);
}

/// Collects per-instance rows and remembers the first failing list.
struct Outcome {
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  std::size_t failures = 0;
  std::optional<DecisionList> counterexample;
  std::string detail;

  void fail(const DecisionList& l, std::string why) {
    if (failures++ == 0) {
      counterexample = l;
      detail = std::move(why);
    }
  }
};

void verify_roundtrip(const VerifyArgs& a, const std::vector<DecisionList>& corpus, Outcome& o) {
  const auto limits = EnumerationLimits::from_env();
  o.csv << kAuditCsvHeader << '\n';
  RandomSource root(a.common.seed);
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& l = corpus[c];
    for (unsigned k = 0; k <= l.n(); ++k) {
      const AuditMode mode = a.exhaustive ? AuditMode(ExhaustiveAudit{})
                                          : AuditMode(SampledAudit{a.common.samples, root.split(c).split(k)});
      const auto audit = roundtrip_audit(l, k, mode, limits);
      const auto counting = counting_bound(l, k, limits);
      write_csv_row(o.csv, c, audit, counting);
      auto row = to_json(audit, &counting);
      row["instance"] = c;
      o.rows.push_back(std::move(row));
      const bool sizes_agree = !audit.exhaustive || counting.u_size == audit.u_size;
      if (!audit.pass() || !counting.pass() || !sizes_agree) {
        o.fail(l, "k=" + std::to_string(k) +
                      (audit.counterexamples.empty() ? std::string(" counting bound violated")
                                                     : ": " + audit.counterexamples.front()));
      }
    }
  }
}

void verify_usenum(const VerifyArgs& a, const std::vector<DecisionList>& corpus, Outcome& o) {
  const auto exact = a.common.exact();
  o.csv << "instance,n,w,alpha,expected_usenum,bound,sum_q,deviation,pass\n";
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& l = corpus[c];
    for (double alpha : a.alpha) {
      const auto e = expected_usenum(l, UniformStars{alpha}, exact);
      const double sum_q = useful_distribution(l, UniformStars{alpha}, exact).sum();
      const double bound = std::pow(4.0 / (1.0 - alpha), static_cast<double>(l.width()));
      const double deviation = std::abs(e.value - sum_q);
      const bool pass = e.value <= bound * (1 + kDefaultTolerance) && deviation <= 1e-12 * std::max(1.0, e.value);
      o.csv << c << ',' << l.n() << ',' << l.width() << ',' << format_number(alpha) << ',' << format_number(e.value)
            << ',' << format_number(bound) << ',' << format_number(sum_q) << ',' << format_number(deviation) << ','
            << (pass ? "true" : "false") << '\n';
      o.rows.push_back({{"instance", c}, {"n", l.n()}, {"w", l.width()}, {"alpha", alpha},
                        {"expected_usenum", e.value}, {"bound", bound}, {"sum_q", sum_q},
                        {"deviation", deviation}, {"pass", pass}});
      if (!pass) o.fail(l, "alpha=" + format_number(alpha));
    }
  }
}

void record_inequalities(InequalityReport report, std::size_t instance, const DecisionList& l, const char* mode,
                         const std::string& label, Outcome& o) {
  for (auto& r : report.records) r.instance = instance;
  write_csv(o.csv, report, mode, false);
  for (const auto& r : report.records) o.rows.push_back(to_json(r));
  if (!report.pass()) {
    const auto bad = std::find_if(report.records.begin(), report.records.end(), [](const auto& r) { return !r.pass; });
    o.fail(l, label + " index " + std::to_string(bad->index) + " min slack " + format_number(report.min_slack()));
  }
}

void verify_inequality(const VerifyArgs& a, const std::vector<DecisionList>& corpus, Outcome& o) {
  const auto exact = a.common.exact();
  o.csv << kIndexCsvHeader << '\n';
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& l = corpus[c];
    if (a.suite == "bridging") {
      for (double beta : a.beta) {
        record_inequalities(bridging_check(l, beta, exact), c, l, "exact", "beta=" + format_number(beta), o);
      }
    } else if (a.suite == "hyper") {
      for (double beta : a.beta) {
        for (RuleIndex i = 1; i <= l.size(); ++i) {
          record_inequalities(hypercontractivity_check(l, i, beta), c, l, "exact", "beta=" + format_number(beta), o);
        }
      }
    } else {
      if (!is_dnf_shaped(l)) throw std::invalid_argument("dnf-useful needs DNF-shaped lists (tribes, threshold)");
      for (double beta_fix : a.beta_fix) {
        record_inequalities(dnf_useful_terms_check(l, beta_fix), c, l, "exact",
                            "beta_fix=" + format_number(beta_fix), o);
      }
    }
  }
}

void verify_claims(const VerifyArgs& a, const std::vector<DecisionList>& corpus, Outcome& o) {
  const auto exact = a.common.exact();
  o.csv << "instance,claim,parameter,lhs,rhs,pass\n";
  auto row = [&](std::size_t c, const DecisionList& l, const char* claim, const std::string& param,
                 const std::string& lhs, const std::string& rhs, bool pass) {
    o.csv << c << ',' << claim << ',' << param << ',' << lhs << ',' << rhs << ',' << (pass ? "true" : "false") << '\n';
    o.rows.push_back({{"instance", c}, {"claim", claim}, {"parameter", param}, {"lhs", lhs}, {"rhs", rhs},
                      {"pass", pass}});
    if (!pass) o.fail(l, std::string(claim) + " " + param);
  };
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto& l = corpus[c];
    const auto p = hit_distribution(l, exact);
    const Rational total = p.exact_sum();
    row(c, l, "hit_sum", "", to_string(total), "1", total == 1);

    for (double alpha : a.alpha) {
      const double e = expected_usenum(l, UniformStars{alpha}, exact).value;
      const double sum_q = useful_distribution(l, UniformStars{alpha}, exact).sum();
      row(c, l, "usenum_sum", "alpha=" + format_number(alpha), format_number(e), format_number(sum_q),
          std::abs(e - sum_q) <= 1e-12 * std::max(1.0, e));
    }
    for (std::size_t t = 1; t <= l.size(); ++t) {
      const auto r = take_top(l, t, p, exact);
      row(c, l, "distance_le_dropped", "t=" + std::to_string(t), to_string(*r.distance.rational),
          to_string(*r.dropped_exact), *r.distance.rational <= *r.dropped_exact);
    }
  }
}

int run_verify(const VerifyArgs& a) {
  const auto corpus = verify_corpus(a);
  Outcome o;
  if (a.suite == "roundtrip") {
    verify_roundtrip(a, corpus, o);
  } else if (a.suite == "usenum") {
    verify_usenum(a, corpus, o);
  } else if (a.suite == "claims") {
    verify_claims(a, corpus, o);
  } else {
    verify_inequality(a, corpus, o);
  }

  Sink sink(a.common.output);
  if (a.format == "json") {
    sink.get() << nlohmann::json{{"suite", a.suite},
                                 {"instances", corpus.size()},
                                 {"failures", o.failures},
                                 {"pass", o.failures == 0},
                                 {"rows", o.rows}}
                      .dump(2)
               << '\n';
  } else {
    sink.get() << o.csv.str();
  }

  std::cerr << a.suite << ": " << corpus.size() << " list(s), " << o.failures << " failing check(s)\n";
  if (o.failures == 0) return 0;
  std::cerr << "first failure: " << o.detail << "\ncounterexample:\n" << serialize(*o.counterexample) << '\n';
  return kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-list restriction, usefulness and compression toolkit"};
  app.require_subcommand(1);
  GenArgs gen;
  CompressArgs compress;
  StatsArgs stats;
  VerifyArgs verify;
  register_gen(app, gen);
  register_compress(app, compress);
  register_stats(app, stats);
  register_verify(app, verify);
  CLI11_PARSE(app, argc, argv);

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "gen") return run_gen(*sub, gen);
    if (name == "compress") return run_compress(compress);
    if (name == "stats") return run_stats(stats);
    return run_verify(verify);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
