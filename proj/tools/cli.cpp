#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "verify.hpp"
#include "wgcalc/asymptotics.hpp"
#include "wgcalc/moments.hpp"
#include "wgcalc/weingarten.hpp"

namespace wgcalc::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return 3;
    case ErrorKind::GroundSetMismatch: return 4;
    case ErrorKind::DimensionTooSmall: return 5;
    case ErrorKind::EnumerationTooLarge: return 6;
    case ErrorKind::OracleTooLarge: return 7;
    case ErrorKind::Pole: return 8;
    case ErrorKind::RecursionPole: return 9;
    case ErrorKind::Config: return 10;
  }
  return kExitInternal;
}

namespace {

const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0   success\n"
    "  1   a verification check or a_k route comparison failed\n"
    "  2   usage error (unknown flag, missing value)\n"
    "  3   invalid argument\n"
    "  4   ground set mismatch (partitions of different k)\n"
    "  5   dimension too small (N < k)\n"
    "  6   enumeration too large (bell_cap or symbolic_k_cap exceeded)\n"
    "  7   oracle too large (N > oracle_cap)\n"
    "  8   pole (evaluation at a root of a denominator)\n"
    "  9   recursion pole (a_k recursion needs N > k - 1)\n"
    "  10  configuration error\n"
    "  70  internal error\n"
    "\n"
    "Configuration: --config FILE with key = value lines (bell_cap, oracle_cap,\n"
    "symbolic_k_cap, output). Environment variables WGCALC_BELL_CAP,\n"
    "WGCALC_ORACLE_CAP, WGCALC_SYMBOLIC_K_CAP and WGCALC_OUTPUT override the file;\n"
    "--output overrides both.\n";

struct DimensionArgs {
  std::optional<long> n;
  bool symbolic = false;

  void attach(CLI::App* cmd) {
    auto* on = cmd->add_option("--N", n, "Dimension N (exact evaluation at this N)");
    auto* os = cmd->add_flag("--symbolic", symbolic, "Evaluate as a rational function of N");
    on->excludes(os);
  }

  Dimension resolve() const {
    if (symbolic) return Dimension::symbolic();
    if (!n) throw Error(ErrorKind::InvalidArgument, "one of --N or --symbolic is required");
    return Dimension::numeric(*n);
  }
};

Cell value_cell(const Value& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return *q;
  return std::get<RationalFunction>(v);
}

Cell opt_cell(const std::optional<Rational>& q) { return q ? Cell(*q) : Cell(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SpecArgs {
  std::string file;
  std::string inline_text;
  std::optional<long> n;

  void attach(CLI::App* cmd) {
    cmd->add_option("spec", file, "JSON spec file: {\"N\": n, \"factors\": [{\"i\", \"j\", \"centered\"}]}");
    cmd->add_option("--inline", inline_text, "Inline factors, e.g. \"c:1,1 c:1,1 c:1,2\" (c: = centered)");
    cmd->add_option("--N", n, "Dimension for --inline specs");
  }

  MomentSpec resolve() const {
    if (!file.empty() && !inline_text.empty()) {
      throw Error(ErrorKind::InvalidArgument, "give either a spec file or --inline, not both");
    }
    if (!file.empty()) {
      if (n) throw Error(ErrorKind::InvalidArgument, "--N applies to --inline specs; the spec file carries N");
      return MomentSpec::from_json(read_file(file));
    }
    if (inline_text.empty()) throw Error(ErrorKind::InvalidArgument, "a spec file or --inline is required");
    if (!n) throw Error(ErrorKind::InvalidArgument, "--inline needs --N");
    return MomentSpec::parse_inline(inline_text, *n);
  }
};

void check_symbolic_cap(int k, const Dimension& d, const Config& cfg) {
  if (d.is_symbolic() && k > cfg.symbolic_k_cap) {
    throw Error(ErrorKind::EnumerationTooLarge, "symbolic evaluation capped at k=" +
                                                    std::to_string(cfg.symbolic_k_cap) + " (symbolic_k_cap)");
  }
}

std::vector<std::pair<SetPartition, SetPartition>> pairs_for(int k, const std::string& sigma, const std::string& tau,
                                                            const Config& cfg) {
  if (sigma.empty() != tau.empty()) throw Error(ErrorKind::InvalidArgument, "--sigma and --tau go together");
  if (!sigma.empty()) return {{SetPartition::parse(sigma, k), SetPartition::parse(tau, k)}};
  const auto parts = enumerate_partitions(k, cfg.bell_cap);
  std::vector<std::pair<SetPartition, SetPartition>> out;
  for (const auto& s : parts) {
    for (const auto& t : parts) out.emplace_back(s, t);
  }
  return out;
}

// ------------------------------------------------------------------ wg

struct WgArgs {
  int k = 0;
  std::string sigma;
  std::string tau;
  bool centered = false;
  std::string formula;
  DimensionArgs dim;
};

Report cmd_wg(const WgArgs& a, const Config& cfg) {
  WgFormula formula = a.centered ? WgFormula::ReformulatedCentered : WgFormula::Closed;
  if (!a.formula.empty()) formula = parse_wg_formula(a.formula);
  if (formula == WgFormula::Closed && a.centered) {
    throw Error(ErrorKind::InvalidArgument, "--formula closed computes plain coefficients; drop --centered");
  }
  if (a.k < 1 || a.k > SetPartition::kMaxGround) {
    throw Error(ErrorKind::InvalidArgument, "--k must lie in 1.." + std::to_string(SetPartition::kMaxGround));
  }
  const Dimension d = a.dim.resolve();
  check_symbolic_cap(a.k, d, cfg);
  const bool centered = formula != WgFormula::Closed;
  if (!d.is_symbolic()) require_dimension(a.k, d.value());

  Table t{"wg",
          {"k", "sigma", "tau", "centered", "formula", "value", "leading.coeff", "leading.exponent"}};
  for (const auto& [s, tau] : pairs_for(a.k, a.sigma, a.tau, cfg)) {
    const WgEntry e = weingarten_entry(s, tau, d, formula);
    std::optional<LeadingTerm> lead;
    if (d.is_symbolic()) {
      const auto& f = std::get<RationalFunction>(e.value);
      if (!f.is_zero()) lead = leading_term(f);
    } else if (!centered) {
      lead = wg_leading(s, tau);
    } else if (a.k >= 2) {
      const CenteredLeading c = centered_wg_leading(s, tau);
      if (!c.degenerate) lead = c.term;
    }
    t.add({static_cast<long long>(a.k), s.to_string(), tau.to_string(), centered, to_string(formula),
           value_cell(e.value), lead ? Cell(lead->coeff) : Cell(),
           lead ? Cell(static_cast<long long>(lead->exponent)) : Cell()});
  }
  return {t};
}

// ------------------------------------------------------------------ ak

struct AkArgs {
  int kmax = 0;
  std::string route = "all";
  DimensionArgs dim;
};

Report cmd_ak(const AkArgs& a, bool& disagreement) {
  if (a.kmax < 0 || a.kmax > 200) throw Error(ErrorKind::InvalidArgument, "--kmax must lie in 0..200");
  const Dimension d = a.dim.resolve();
  const bool all = a.route == "all";
  if (!all && a.route != "explicit" && a.route != "recursive" && a.route != "kummer") {
    throw Error(ErrorKind::InvalidArgument, "unknown route '" + a.route + "' (explicit|recursive|kummer|all)");
  }
  if (d.is_symbolic() && a.route == "kummer") {
    throw Error(ErrorKind::InvalidArgument, "the Kummer route is numeric only; give --N");
  }
  if (!d.is_symbolic()) require_dimension(a.kmax, d.value());

  std::vector<std::string> cols = {"k", "value"};
  if (all) {
    cols.insert(cols.end(), {"explicit", "recursive", "kummer", "agree"});
  } else {
    cols.push_back("route");
  }
  cols.insert(cols.end(), {"epsilon", "epsilon_bound", "within_bound"});
  Table t{"ak", cols};

  std::vector<Value> recursive;
  if (all || a.route == "recursive") {
    if (d.is_symbolic()) {
      for (auto& f : a_recursive_prefix(a.kmax, SymbolicN{})) recursive.emplace_back(std::move(f));
    } else {
      for (auto& q : a_recursive_prefix(a.kmax, NumericN{d.value()})) recursive.emplace_back(std::move(q));
    }
  }
  for (int k = 0; k <= a.kmax; ++k) {
    std::vector<Cell> row = {static_cast<long long>(k)};
    Value value;
    if (all) {
      const Value ex = a_k_explicit(k, d).value;
      const Value& rec = recursive[static_cast<std::size_t>(k)];
      std::optional<Value> ku;
      if (!d.is_symbolic()) ku = a_k_kummer(k, d.value()).value;
      const bool agree = ex == rec && (!ku || *ku == ex);
      disagreement = disagreement || !agree;
      value = ex;
      row.insert(row.end(), {value_cell(ex), value_cell(ex), value_cell(rec), ku ? value_cell(*ku) : Cell(), agree});
    } else {
      if (a.route == "explicit") value = a_k_explicit(k, d).value;
      if (a.route == "recursive") value = recursive[static_cast<std::size_t>(k)];
      if (a.route == "kummer") value = a_k_kummer(k, d.value()).value;
      row.insert(row.end(), {value_cell(value), a.route});
    }
    const long cube = 2L * k * k * k;
    if (!d.is_symbolic() && k >= 1 && d.value() > cube) {
      const EpsilonReport rep = epsilon_check(k, d.value());
      row.insert(row.end(), {rep.epsilon, rep.bound, rep.within_bound});
    } else {
      row.insert(row.end(), {Cell(), Cell(), Cell()});
    }
    t.add(std::move(row));
  }
  return {t};
}

// -------------------------------------------------------------- moment

struct MomentArgs {
  SpecArgs spec;
  std::string method = "auto";
  bool no_symbolic = false;
};

Report cmd_moment(const MomentArgs& a, const Config& cfg) {
  const MomentSpec spec = a.spec.resolve();
  MomentOptions opts;
  opts.method = parse_moment_method(a.method);
  opts.symbolic_k_cap = cfg.symbolic_k_cap;
  opts.oracle_cap = cfg.oracle_cap;
  opts.symbolic = !a.no_symbolic;
  const MomentResult r = evaluate_moment(spec, opts);
  Table t{"moment",
          {"spec", "N", "method", "value", "symbolic", "expansion", "leading.coeff", "leading.exponent"}};
  t.record = true;
  std::optional<std::string> expansion;
  if (r.symbolic) expansion = r.symbolic->to_laurent_string();
  t.add({spec.to_inline(), static_cast<long long>(spec.dimension()), to_string(r.method), r.value,
         r.symbolic ? Cell(*r.symbolic) : Cell(), expansion ? Cell(*expansion) : Cell(),
         r.leading ? Cell(r.leading->coeff) : Cell(),
         r.leading ? Cell(static_cast<long long>(r.leading->exponent)) : Cell()});
  return {t};
}

// -------------------------------------------------------------- reduce

Report cmd_reduce(const SpecArgs& a, const Config& cfg) {
  const MomentSpec spec = a.resolve();
  const ReducedSpec reduced = reduce(spec);
  Table blocks{"blocks", {"block", "pair", "multiplicity", "positions", "alpha", "beta"}};
  for (std::size_t s = 0; s < reduced.blocks.size(); ++s) {
    const auto& b = reduced.blocks[s];
    std::string pos;
    for (int p : b.positions) pos += (pos.empty() ? "" : " ") + std::to_string(p);
    blocks.add({static_cast<long long>(s + 1), std::to_string(b.pair.row) + "," + std::to_string(b.pair.col),
                static_cast<long long>(b.multiplicity), pos, b.alpha, b.beta});
  }
  ZetaSumStats stats;
  Table terms{"terms", {"subset", "weight", "integral", "contribution"}};
  Rational total(0);
  for (const auto& term : reduction_terms(reduced, &stats)) {
    std::string subset;
    for (int s : term.subset) subset += (subset.empty() ? "" : " ") + std::to_string(s);
    const Rational contribution = term.weight * term.integral;
    total += contribution;
    terms.add({subset.empty() ? std::string("{}") : "{" + subset + "}", term.weight, term.integral, contribution});
  }
  std::optional<RationalFunction> symbolic;
  if (reduced.residual.size() <= cfg.symbolic_k_cap) symbolic = evaluate_reduced_symbolic(reduced);
  Table summary{"summary",
                {"spec", "N", "residual", "value", "symbolic", "entries_read", "nontrivial_meet_reads"}};
  summary.record = true;
  summary.add({spec.to_inline(), static_cast<long long>(spec.dimension()), reduced.residual.to_inline(), total,
               symbolic ? Cell(*symbolic) : Cell(), static_cast<long long>(stats.entries),
               static_cast<long long>(stats.nontrivial_meet)});
  return {blocks, terms, summary};
}

// -------------------------------------------------------------- asympt

struct AsymptArgs {
  int k = 0;
  std::string sigma;
  std::string tau;
  std::string kind = "both";
  int min_exp = 4;
  int max_exp = 12;
};

Report cmd_asympt(const AsymptArgs& a, const Config& cfg) {
  if (a.k < 1 || a.k > SetPartition::kMaxGround) {
    throw Error(ErrorKind::InvalidArgument, "--k must lie in 1.." + std::to_string(SetPartition::kMaxGround));
  }
  if (a.kind != "plain" && a.kind != "centered" && a.kind != "both") {
    throw Error(ErrorKind::InvalidArgument, "--kind must be plain, centered or both");
  }
  if (a.min_exp < 1 || a.max_exp > 40 || a.min_exp > a.max_exp) {
    throw Error(ErrorKind::InvalidArgument, "ladder exponents must satisfy 1 <= min <= max <= 40");
  }
  if ((1L << a.min_exp) < a.k) require_dimension(a.k, 1L << a.min_exp);
  Table t{"asympt", {"k", "sigma", "tau", "kind", "case", "coeff", "exponent", "N", "exact_value", "ratio", "c_fit"}};
  for (const auto& [s, tau] : pairs_for(a.k, a.sigma, a.tau, cfg)) {
    for (const bool centered : {false, true}) {
      if (centered ? a.kind == "plain" : a.kind == "centered") continue;
      std::string which = "plain";
      std::optional<LeadingTerm> lead;
      if (!centered) {
        lead = wg_leading(s, tau);
      } else if (a.k == 1) {
        which = "zero";
      } else {
        const CenteredLeading c = centered_wg_leading(s, tau);
        which = std::to_string(static_cast<int>(c.which));
        if (c.degenerate) {
          which += "-degenerate";
        } else {
          lead = c.term;
        }
      }
      for (int e = a.min_exp; e <= a.max_exp; ++e) {
        const long n = 1L << e;
        const Rational v = centered ? centered_value(s, tau, NumericN{n}) : wg_value(s, tau, NumericN{n});
        std::optional<Rational> ratio;
        std::optional<Rational> fit;
        if (lead) {
          ratio = leading_ratio(v, *lead, n);
          fit = (*ratio - Rational(1)).abs() * Rational(n);
        }
        t.add({static_cast<long long>(a.k), s.to_string(), tau.to_string(), centered ? "centered" : "plain", which,
               lead ? Cell(lead->coeff) : Cell(), lead ? Cell(static_cast<long long>(lead->exponent)) : Cell(),
               static_cast<long long>(n), v, opt_cell(ratio), opt_cell(fit)});
      }
    }
  }
  return {t};
}

// -------------------------------------------------------------- verify

Report cmd_verify(const std::string& suite, const Config& cfg, bool& failed) {
  const auto results = run_suite(suite, cfg);
  Table checks{"checks", {"suite", "check", "cases", "failures", "status"}};
  Table counter{"counterexamples", {"suite", "check", "invocation"}};
  Table notes{"notes", {"suite", "check", "note"}};
  for (const auto& r : results) {
    checks.add({r.suite, r.check, static_cast<long long>(r.cases), static_cast<long long>(r.failures),
                std::string(r.failures == 0 ? "PASS" : "FAIL")});
    for (const auto& c : r.counterexamples) counter.add({r.suite, r.check, c});
    for (const auto& n : r.notes) notes.add({r.suite, r.check, n});
    failed = failed || r.failures != 0;
  }
  return {checks, counter, notes};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Exact Weingarten calculus for random and centered random permutation matrices", "wgcalc"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string output;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--output", output, "Output format: json, csv or pretty");

  WgArgs wg_args;
  auto* wg_cmd = app.add_subcommand("wg", "Weingarten coefficients: one entry or the full (sigma, tau) table");
  wg_cmd->add_option("--k", wg_args.k, "Ground set size")->required();
  wg_cmd->add_option("--sigma", wg_args.sigma, "Partition, e.g. \"1,3|2\" or 0_k / 1_k");
  wg_cmd->add_option("--tau", wg_args.tau, "Partition, e.g. \"1|2,3\"");
  wg_cmd->add_flag("--centered", wg_args.centered, "Centered coefficients");
  wg_cmd->add_option("--formula", wg_args.formula, "closed | signed | reform");
  wg_args.dim.attach(wg_cmd);

  AkArgs ak_args;
  auto* ak_cmd = app.add_subcommand("ak", "Centered diagonal moments a_0..a_kmax");
  ak_cmd->add_option("--kmax", ak_args.kmax, "Largest k")->required();
  ak_cmd->add_option("--route", ak_args.route, "explicit | recursive | kummer | all");
  ak_args.dim.attach(ak_cmd);

  MomentArgs moment_args;
  auto* moment_cmd = app.add_subcommand("moment", "Exact moment of a product of (centered) entries");
  moment_args.spec.attach(moment_cmd);
  moment_cmd->add_option("--method", moment_args.method, "auto | direct | weingarten | reduce | oracle");
  moment_cmd->add_flag("--no-symbolic", moment_args.no_symbolic, "Skip the rational-function evaluation");

  SpecArgs reduce_args;
  auto* reduce_cmd = app.add_subcommand("reduce", "Trace of the repeated-entry reduction of a centered spec");
  reduce_args.attach(reduce_cmd);

  AsymptArgs asympt_args;
  auto* asympt_cmd = app.add_subcommand("asympt", "Leading terms against exact values on the ladder N = 2^e");
  asympt_cmd->add_option("--k", asympt_args.k, "Ground set size")->required();
  asympt_cmd->add_option("--sigma", asympt_args.sigma, "Partition (omit with --tau for all pairs)");
  asympt_cmd->add_option("--tau", asympt_args.tau, "Partition");
  asympt_cmd->add_option("--kind", asympt_args.kind, "plain | centered | both");
  asympt_cmd->add_option("--min-exp", asympt_args.min_exp, "Smallest ladder exponent (default 4)");
  asympt_cmd->add_option("--max-exp", asympt_args.max_exp, "Largest ladder exponent (default 12)");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Self-verification suites");
  verify_cmd->add_option("--suite", suite, "mobius | equivalence | sign | oracle | epsilon | binomial | all");

  std::vector<std::string> argv_store = {"wgcalc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    apply_environment(cfg, env);
    if (!output.empty()) set_config_key(cfg, "output", output, "--output");

    Report report;
    int status = kExitOk;
    if (wg_cmd->parsed()) {
      report = cmd_wg(wg_args, cfg);
    } else if (ak_cmd->parsed()) {
      bool disagreement = false;
      report = cmd_ak(ak_args, disagreement);
      if (disagreement) {
        status = kExitCheckFailed;
        err << "error: a_k routes disagree\n";
      }
    } else if (moment_cmd->parsed()) {
      report = cmd_moment(moment_args, cfg);
    } else if (reduce_cmd->parsed()) {
      report = cmd_reduce(reduce_args, cfg);
    } else if (asympt_cmd->parsed()) {
      report = cmd_asympt(asympt_args, cfg);
    } else if (verify_cmd->parsed()) {
      bool failed = false;
      report = cmd_verify(suite, cfg, failed);
      if (failed) status = kExitCheckFailed;
    }
    emit(report, cfg.output, out);
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_cli(args, out, err, [](const char* name) { return std::getenv(name); });
}

}  // namespace wgcalc::cli
