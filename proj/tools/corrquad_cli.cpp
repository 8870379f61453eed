// corrquad command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 evaluation/convergence failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corrquad/corrquad.hpp"

namespace {

using namespace corrquad;
// Keys keep insertion order so output reads in a fixed, logical order.
using json = nlohmann::ordered_json;

enum class Format { Table, Csv, Json };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}
std::string fmt15(double v) { return num(v, 15); }
std::string fmt17(double v) { return num(v, 17); }

// json serialises doubles with round-trip precision already; NaN becomes null.
json jnum(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

struct Common {
  std::string f;
  std::string df;
  double a = 0.0;
  double b = 1.0;
  int n = 8;
  Format format = Format::Table;
};

Expression parse_flag(const std::string& text, const char* flag) {
  try {
    return Expression::parse(text);
  } catch (const SyntaxError& e) {
    throw UsageError(std::string(flag) + ": " + e.what() + " in \"" + text + "\"");
  }
}

Integrand build_integrand(const Common& c) {
  const auto f = parse_flag(c.f, "--f");
  if (c.df.empty()) return make_integrand(f);
  return make_integrand(f, parse_flag(c.df, "--df"));
}

// Normalised orientation: lo < hi and sign = ±1, or degenerate when a == b.
struct Orientation {
  double lo, hi, sign;
  bool degenerate;
};

Orientation orient(double a, double b) {
  if (!std::isfinite(a)) throw UsageError("-a: endpoint must be finite");
  if (!std::isfinite(b)) throw UsageError("-b: endpoint must be finite");
  if (a == b) return {a, b, 1.0, true};
  if (a < b) return {a, b, 1.0, false};
  return {b, a, -1.0, false};
}

void add_common(CLI::App* cmd, Common& c, bool needs_f = true) {
  auto* opt = cmd->add_option("--f", c.f, "integrand expression in x");
  if (needs_f) opt->required();
  cmd->add_option("-a", c.a, "lower limit")->capture_default_str();
  cmd->add_option("-b", c.b, "upper limit")->capture_default_str();
}

void add_format(CLI::App* cmd, Format& fmt) {
  cmd->add_option_function<std::string>(
         "--format",
         [&fmt](std::string name) {
           for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
           fmt = name == "csv" ? Format::Csv : name == "json" ? Format::Json : Format::Table;
         },
         "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}, CLI::ignore_case));
}

void print_rows(std::ostream& os, Format fmt,
                const std::vector<std::pair<std::string, json>>& rows) {
  auto cell = [](const json& v, bool full) -> std::string {
    if (v.is_null()) return full ? "" : "n/a";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return full ? fmt17(v.get<double>()) : fmt15(v.get<double>());
  };
  switch (fmt) {
    case Format::Table:
      for (const auto& [k, v] : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-24s", k.c_str());
        os << buf << cell(v, false) << '\n';
      }
      break;
    case Format::Csv: {
      std::string head, body;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        head += (i ? "," : "") + rows[i].first;
        body += (i ? "," : "") + cell(rows[i].second, true);
      }
      os << head << '\n' << body << '\n';
      break;
    }
    case Format::Json: {
      json j = json::object();
      for (const auto& [k, v] : rows) j[k] = v;
      os << j.dump(2) << '\n';
      break;
    }
  }
}

// ---- integrate -------------------------------------------------------------

struct IntegrateArgs {
  Common c;
  std::string rule = "msimpson";
  bool reference = false;
  double tol = 1e-13;
};

void run_integrate(const IntegrateArgs& args) {
  const auto rule = parse_rule(args.rule);
  if (!rule) throw UsageError("--rule: unknown rule '" + args.rule + "'");
  if (args.c.n < 1) throw UsageError("-n: pair count must be >= 1");
  const auto o = orient(args.c.a, args.c.b);
  const auto f = build_integrand(args.c);

  double value = 0.0;
  std::optional<double> estimate;
  std::optional<double> ref;
  if (o.degenerate) {
    if (*rule == RuleId::ModifiedSimpson) estimate = 0.0;
    if (args.reference) ref = 0.0;
  } else {
    const UniformGrid grid(Interval(o.lo, o.hi), args.c.n);
    const auto r = integrate(*rule, f, grid);
    value = o.sign * r.value;
    if (r.leading_error_estimate) estimate = o.sign * *r.leading_error_estimate;
    if (args.reference) ref = o.sign * reference_integral(f, grid.interval(), args.tol).value;
  }

  std::vector<std::pair<std::string, json>> rows{
      {"rule", std::string(rule_name(*rule))},
      {"a", args.c.a},
      {"b", args.c.b},
      {"n", args.c.n},
      {"value", value},
      {"leading_error_estimate", jnum(estimate)}};
  if (args.reference) {
    rows.emplace_back("reference", *ref);
    rows.emplace_back("error", *ref - value);
  }
  print_rows(std::cout, args.c.format, rows);
}

// ---- bounds ----------------------------------------------------------------

struct BoundsArgs {
  Common c;
  int k = 4;
  std::optional<double> gamma;
  std::optional<double> Gamma;
  int samples = 64;
  double safety = 1.05;
  bool reference = false;
  double tol = 1e-13;
};

void run_bounds(const BoundsArgs& args) {
  if (args.c.n < 1) throw UsageError("-n: pair count must be >= 1");
  if (args.gamma.has_value() != args.Gamma.has_value())
    throw UsageError("--gamma and --Gamma must be given together");
  const auto o = orient(args.c.a, args.c.b);
  const auto f = build_integrand(args.c);
  const int k = args.k;

  std::optional<DerivativeRange> range;
  BoundReport report{k, 0, 0, 0, 0, 0, true};
  std::optional<double> k6;
  double h = 0.0;
  std::optional<double> true_error;
  if (!o.degenerate) {
    const Interval iv(o.lo, o.hi);
    const UniformGrid grid(iv, args.c.n);
    h = grid.h();
    if (args.gamma) {
      try {
        range.emplace(k, *args.gamma, *args.Gamma, RangeProvenance::UserSupplied);
      } catch (const InvalidArgument& e) {
        throw UsageError(std::string("--gamma/--Gamma: ") + e.what());
      }
    } else {
      range = estimate_derivative_range(f, k, iv, {args.samples, args.safety});
    }
    if (k == 6) {
      k6 = composite_bound_k6(range->sup_norm(), h, iv.length());
      report.peano_classic = report.best = *k6;
      report.rigorous = range->rigorous();
    } else {
      try {
        report = composite_bounds(k, *range, secant_slope(f, k - 1, iv), h, iv.length());
      } catch (const InconsistentRange& e) {
        throw UsageError(std::string("--gamma/--Gamma: ") + e.what());
      }
    }
    if (args.reference) {
      const double ref = reference_integral(f, iv, args.tol).value;
      true_error = ref - composite_modified_simpson(f, grid).value;
    }
  } else if (args.gamma) {
    range.emplace(k, *args.gamma, *args.Gamma, RangeProvenance::UserSupplied);
  }

  // The a12/a13/a14 families stop at k = 5; k = 6 reports the sup-norm bound only.
  auto family = [&](double v) { return k == 6 ? json(nullptr) : json(v); };
  std::vector<std::pair<std::string, json>> rows{
      {"k", k},
      {"n", args.c.n},
      {"h", h},
      {"gamma", range ? json(range->gamma) : json(nullptr)},
      {"Gamma", range ? json(range->Gamma) : json(nullptr)},
      {"range_provenance",
       !range || range->provenance == RangeProvenance::UserSupplied ? "user" : "sampled"}};
  rows.emplace_back("bound_a12", family(report.bound_a12));
  rows.emplace_back("bound_a13", family(report.bound_a13));
  rows.emplace_back("bound_a14", family(report.bound_a14));
  rows.emplace_back("peano_classic", report.peano_classic);
  rows.emplace_back("best", report.best);
  rows.emplace_back("rigorous", report.rigorous);
  if (args.reference) rows.emplace_back("true_error", true_error ? json(*true_error) : json(0.0));
  print_rows(std::cout, args.c.format, rows);
}

// ---- kernel ----------------------------------------------------------------

struct KernelArgs {
  std::optional<int> k;
  int samples = 21;
  Format format = Format::Csv;
};

void run_kernel(const KernelArgs& args) {
  if (args.samples < 2) throw UsageError("--samples: need at least 2 points");
  std::vector<int> ks;
  if (args.k) {
    ks.push_back(*args.k);
  } else {
    for (int k = 2; k <= 6; ++k) ks.push_back(k);
  }

  std::vector<double> xs;
  for (int i = 0; i < args.samples; ++i)
    xs.push_back(i == args.samples - 1 ? 1.0 : static_cast<double>(i) / (args.samples - 1));

  if (args.format == Format::Json) {
    json out = json::object();
    out["x"] = xs;
    for (int k : ks) {
      json col = json::array();
      for (double x : xs) col.push_back(kernel_eval(k, x));
      out["T_" + std::to_string(k)] = col;
    }
    json consts = json::object();
    for (int k : ks) {
      const auto c = scaled_constants(k);
      consts[std::to_string(k)] = {{"C", c.C()}, {"D", c.D()},
                                   {"B", jnum(c.B())},
                                   {"E", jnum(c.E())}};
    }
    out["constants"] = consts;
    std::cout << out.dump(2) << '\n';
    return;
  }

  const bool csv = args.format == Format::Csv;
  auto cell = [&](double v) {
    if (csv) return fmt17(v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%23s", fmt15(v).c_str());
    return std::string(buf);
  };
  std::cout << (csv ? "x" : "                      x");
  for (int k : ks) std::cout << (csv ? ",T_" : "                    T_") << k;
  std::cout << '\n';
  for (double x : xs) {
    std::cout << cell(x);
    for (int k : ks) std::cout << (csv ? "," : "") << cell(kernel_eval(k, x));
    std::cout << '\n';
  }
  if (!csv) {
    std::cout << '\n';
    for (int k : ks) {
      const auto c = scaled_constants(k);
      std::cout << "k=" << k << "  C=" << fmt15(c.C()) << "  D=" << fmt15(c.D());
      if (k < 6) std::cout << "  B=" << fmt15(*c.B()) << "  E=" << fmt15(*c.E());
      std::cout << '\n';
    }
  }
}

// ---- converge / compare ----------------------------------------------------

struct StudyArgs {
  Common c;
  std::string rule = "msimpson";
  std::vector<int> n_list{2, 4, 8, 16, 32, 64};
  double tol = 1e-13;
};

Interval study_interval(const Orientation& o) {
  if (o.degenerate) throw UsageError("-a/-b: convergence studies need a != b");
  return Interval(o.lo, o.hi);
}

ConvergenceTable oriented(ConvergenceTable t, double sign) {
  t.reference *= sign;
  for (auto& r : t.rows) r.approx *= sign;
  return t;
}

void print_table(std::ostream& os, Format fmt, const ConvergenceTable& t) {
  if (fmt == Format::Csv) {
    write_csv(os, t);
    return;
  }
  if (fmt == Format::Json) {
    json rows = json::array();
    for (const auto& r : t.rows)
      rows.push_back({{"n", r.n_pairs}, {"h", r.h}, {"approx", r.approx}, {"abs_error", r.abs_error}});
    json j{{"rule", std::string(rule_name(t.rule))},
           {"reference", t.reference},
           {"rows", rows},
           {"fit_window", t.fit_window},
           {"fitted_order", jnum(t.fitted_order)}};
    os << j.dump(2) << '\n';
    return;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%6s %23s %23s %23s\n", "n", "h", "approx", "abs_error");
  os << buf;
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%6d %23s %23s %23s\n", r.n_pairs, fmt15(r.h).c_str(),
                  fmt15(r.approx).c_str(), fmt15(r.abs_error).c_str());
    os << buf;
  }
  os << "reference      " << fmt15(t.reference) << '\n';
  os << "fitted_order   " << (t.fitted_order ? fmt15(*t.fitted_order) : "n/a") << '\n';
}

void run_converge(const StudyArgs& args) {
  const auto rule = parse_rule(args.rule);
  if (!rule || (*rule != RuleId::Simpson && *rule != RuleId::ModifiedSimpson))
    throw UsageError("--rule: converge supports simpson and msimpson");
  const auto o = orient(args.c.a, args.c.b);
  const auto f = build_integrand(args.c);
  ConvergenceOptions opts;
  opts.reference_tol = args.tol;
  const auto t = convergence_study(*rule, f, study_interval(o), args.n_list, opts);
  print_table(std::cout, args.c.format, oriented(t, o.sign));
}

void run_compare(const StudyArgs& args) {
  const auto o = orient(args.c.a, args.c.b);
  const auto f = build_integrand(args.c);
  ConvergenceOptions opts;
  opts.reference_tol = args.tol;
  auto cmp = compare_rules(f, study_interval(o), args.n_list, opts);
  cmp.simpson = oriented(cmp.simpson, o.sign);
  cmp.modified = oriented(cmp.modified, o.sign);

  if (args.c.format == Format::Csv) {
    write_csv(std::cout, cmp);
  } else if (args.c.format == Format::Json) {
    json rows = json::array();
    for (std::size_t i = 0; i < cmp.error_ratio.size(); ++i)
      rows.push_back({{"n", cmp.simpson.rows[i].n_pairs},
                      {"h", cmp.simpson.rows[i].h},
                      {"simpson_abs_error", cmp.simpson.rows[i].abs_error},
                      {"msimpson_abs_error", cmp.modified.rows[i].abs_error},
                      {"ratio", jnum(cmp.error_ratio[i])}});
    json j{{"reference", cmp.modified.reference},
           {"rows", rows},
           {"fitted_order_simpson", jnum(cmp.simpson.fitted_order)},
           {"fitted_order_msimpson", jnum(cmp.modified.fitted_order)}};
    std::cout << j.dump(2) << '\n';
  } else {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%6s %23s %23s %23s %23s\n", "n", "h", "simpson_abs_error",
                  "msimpson_abs_error", "ratio");
    std::cout << buf;
    for (std::size_t i = 0; i < cmp.error_ratio.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%6d %23s %23s %23s %23s\n", cmp.simpson.rows[i].n_pairs,
                    fmt15(cmp.simpson.rows[i].h).c_str(),
                    fmt15(cmp.simpson.rows[i].abs_error).c_str(),
                    fmt15(cmp.modified.rows[i].abs_error).c_str(),
                    fmt15(cmp.error_ratio[i]).c_str());
      std::cout << buf;
    }
    auto order = [](const ConvergenceTable& t) {
      return t.fitted_order ? fmt15(*t.fitted_order) : std::string("n/a");
    };
    std::cout << "fitted_order_simpson   " << order(cmp.simpson) << '\n';
    std::cout << "fitted_order_msimpson  " << order(cmp.modified) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corrected Simpson quadrature with Peano-kernel error bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "corrquad 1.0");

  IntegrateArgs ia;
  auto* integrate_cmd = app.add_subcommand("integrate", "integrate f over [a, b]");
  add_common(integrate_cmd, ia.c);
  integrate_cmd->add_option("--df", ia.c.df, "expression for f' (overrides automatic differentiation)");
  integrate_cmd->add_option("-n", ia.c.n, "number of subinterval pairs")->capture_default_str();
  integrate_cmd->add_option("--rule", ia.rule, "midpoint | cmidpoint | simpson | msimpson")
      ->capture_default_str();
  integrate_cmd->add_flag("--reference", ia.reference, "also report the adaptive reference value");
  integrate_cmd->add_option("--tol", ia.tol, "reference tolerance (>= 1e-14)")->capture_default_str();
  add_format(integrate_cmd, ia.c.format);

  BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand("bounds", "composite error bounds of order k");
  add_common(bounds_cmd, ba.c);
  bounds_cmd->add_option("--df", ba.c.df, "expression for f'");
  bounds_cmd->add_option("-n", ba.c.n, "number of subinterval pairs")->capture_default_str();
  bounds_cmd->add_option("-k", ba.k, "derivative order 2..6")
      ->check(CLI::Range(2, 6))
      ->capture_default_str();
  bounds_cmd->add_option("--gamma", ba.gamma, "lower bound of f^(k) on [a, b]");
  bounds_cmd->add_option("--Gamma", ba.Gamma, "upper bound of f^(k) on [a, b]");
  bounds_cmd->add_option("--samples", ba.samples, "sample count for the range estimate")
      ->check(CLI::Range(8, 1 << 20))
      ->capture_default_str();
  bounds_cmd->add_option("--safety", ba.safety, "range inflation factor")
      ->check(CLI::Range(1.0, 1e6))
      ->capture_default_str();
  bounds_cmd->add_flag("--reference", ba.reference, "also report the true modified-Simpson error");
  bounds_cmd->add_option("--tol", ba.tol, "reference tolerance (>= 1e-14)")->capture_default_str();
  add_format(bounds_cmd, ba.c.format);

  KernelArgs ka;
  auto* kernel_cmd = app.add_subcommand("kernel", "sample the Peano kernels T_k on [0, 1]");
  kernel_cmd->add_option("-k", ka.k, "kernel order 2..6 (default: all)")->check(CLI::Range(2, 6));
  kernel_cmd->add_option("--samples", ka.samples, "number of equispaced points")->capture_default_str();
  add_format(kernel_cmd, ka.format);

  StudyArgs ca;
  auto* converge_cmd = app.add_subcommand("converge", "convergence table against the reference");
  add_common(converge_cmd, ca.c);
  converge_cmd->add_option("--df", ca.c.df, "expression for f'");
  converge_cmd->add_option("--rule", ca.rule, "simpson | msimpson")->capture_default_str();
  converge_cmd->add_option("--n-list", ca.n_list, "increasing pair counts")
      ->delimiter(',')
      ->capture_default_str();
  converge_cmd->add_option("--tol", ca.tol, "reference tolerance (>= 1e-14)")->capture_default_str();
  ca.c.format = Format::Csv;
  add_format(converge_cmd, ca.c.format);

  StudyArgs cm;
  auto* compare_cmd = app.add_subcommand("compare", "Simpson vs modified Simpson on shared grids");
  add_common(compare_cmd, cm.c);
  compare_cmd->add_option("--df", cm.c.df, "expression for f'");
  compare_cmd->add_option("--n-list", cm.n_list, "increasing pair counts")
      ->delimiter(',')
      ->capture_default_str();
  compare_cmd->add_option("--tol", cm.tol, "reference tolerance (>= 1e-14)")->capture_default_str();
  cm.c.format = Format::Csv;
  add_format(compare_cmd, cm.c.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*integrate_cmd) run_integrate(ia);
    else if (*bounds_cmd) run_bounds(ba);
    else if (*kernel_cmd) run_kernel(ka);
    else if (*converge_cmd) run_converge(ca);
    else if (*compare_cmd) run_compare(cm);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (best value " << fmt17(e.best_value())
              << ", estimated error " << fmt17(e.best_error()) << ")\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    // InvalidArgument, CapabilityError, InconsistentRange: bad flag values.
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
