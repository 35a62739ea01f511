#pragma once

// Command-line front end. run() parses argv, resolves every selector before
// computing, and writes one JSON document or one CSV table.
//
// Exit codes: 0 success, 1 computational error, 2 usage error.

#include "summa/summa.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace summa::cli {

using nlohmann::json;

/// A bad selector or flag value detected before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Report {
  json config = json::object();
  json result = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

namespace detail {

inline Cutoff cutoff_arg(const std::string& text) {
  try {
    return parse_cutoff(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(e.what()) + " (expected bump, sharp or poly:p)");
  }
}

inline SeriesOracle series_arg(const std::string& key) {
  try {
    return series_from_key(key);
  } catch (const std::exception& e) {
    throw UsageError(std::string(e.what()) + " (expected S0, S1, grandi, zero, monomial:s, alt-zeta:s, geometric:r)");
  }
}

inline Rational rational_arg(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

template <class T>
std::vector<T> list_arg(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError(flag + ": empty list entry in '" + text + "'");
    try {
      std::size_t used = 0;
      if constexpr (std::is_same_v<T, double>) {
        out.push_back(std::stod(item, &used));
      } else {
        out.push_back(static_cast<T>(std::stoll(item, &used)));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

inline std::vector<std::string> row(std::initializer_list<std::string> cells) { return cells; }

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace detail

struct Command {
  CLI::App* app = nullptr;
  std::function<Report()> handler;
};

inline void write_report(std::ostream& out, const std::string& name, const Report& r, const std::string& format) {
  if (format == "csv") {
    out << "# command=" << name << '\n';
    for (const auto& [key, value] : r.config.items()) {
      out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    for (std::size_t i = 0; i < r.csv_header.size(); ++i) out << (i ? "," : "") << r.csv_header[i];
    out << '\n';
    for (const auto& cells : r.csv_rows) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    }
    return;
  }
  json doc;
  doc["command"] = name;
  doc["config"] = r.config;
  doc["result"] = r.result;
  out << doc.dump(2) << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using detail::bool_str;
  using detail::row;
  CLI::App app{"summa: summability methods, smoothed sums, Euler-Maclaurin and Casimir energies"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::string output_path;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("-o,--output", output_path, "write to this file instead of standard output");

  std::map<std::string, Command> commands;
  auto add = [&](const std::string& name, const std::string& help) -> CLI::App* {
    CLI::App* sub = app.add_subcommand(name, help);
    commands[name].app = sub;
    return sub;
  };

  // bernoulli
  unsigned bern_k = 0;
  bool bern_all = false;
  {
    auto* sub = add("bernoulli", "exact Bernoulli number B_k (B_1 = +1/2)");
    sub->add_option("--k", bern_k, "index")->required();
    sub->add_flag("--all", bern_all, "list B_0 .. B_k");
    commands["bernoulli"].handler = [&] {
      Report r;
      r.config = {{"k", bern_k}, {"all", bern_all}};
      const auto values = bernoulli_numbers(bern_k);
      const auto genfun = genfun_coefficients(bern_k);
      bool agrees = true;
      for (unsigned j = 0; j <= bern_k; ++j) agrees &= values[j] / Rational(factorial(j)) == genfun[j];
      r.result["k"] = bern_k;
      r.result["value"] = values.back().str();
      r.result["genfun_agrees"] = agrees;
      r.csv_header = {"k", "value"};
      if (bern_all) {
        json list = json::array();
        for (unsigned j = 0; j <= bern_k; ++j) {
          list.push_back(values[j].str());
          r.csv_rows.push_back(row({std::to_string(j), values[j].str()}));
        }
        r.result["values"] = list;
      } else {
        r.csv_rows.push_back(row({std::to_string(bern_k), values.back().str()}));
      }
      return r;
    };
  }

  // faulhaber
  unsigned faul_s = 1;
  long long faul_N = 10;
  {
    auto* sub = add("faulhaber", "sum_{n=1}^N n^s from the closed polynomial");
    sub->add_option("--s", faul_s, "exponent")->required();
    sub->add_option("--N", faul_N, "upper limit")->required();
    commands["faulhaber"].handler = [&] {
      Report r;
      r.config = {{"s", faul_s}, {"N", faul_N}};
      const Rational value = faulhaber(faul_s, faul_N);
      r.result["s"] = faul_s;
      r.result["N"] = faul_N;
      r.result["value"] = value.str();
      if (faul_N <= 100000) {
        Rational brute;
        for (long long n = 1; n <= faul_N; ++n) brute = brute + pow(Rational(n), faul_s);
        r.result["brute_force_agrees"] = brute == value;
      }
      r.csv_header = {"s", "N", "value"};
      r.csv_rows.push_back(row({std::to_string(faul_s), std::to_string(faul_N), value.str()}));
      return r;
    };
  }

  // sum
  std::string sum_method = "abel";
  std::string sum_series;
  long long sum_n = 10000;
  double sum_tol = 1e-3;
  {
    auto* sub = add("sum", "assign a value to a catalog series");
    sub->add_option("--method", sum_method, "summation method")
        ->check(CLI::IsMember({"partial", "cesaro", "abel", "euler", "ramanujan", "zeta-eta"}))
        ->capture_default_str();
    sub->add_option("--series", sum_series, "series key: S0, S1, grandi, zero, monomial:s, alt-zeta:s, geometric:r")
        ->required();
    sub->add_option("--n", sum_n, "partial-sum length for partial and cesaro")->capture_default_str();
    sub->add_option("--tol", sum_tol, "Cesaro stabilization tolerance")->capture_default_str();
    commands["sum"].handler = [&] {
      const SeriesOracle series = detail::series_arg(sum_series);
      Report r;
      r.config = {{"method", sum_method}, {"series", series.key}, {"n", sum_n}, {"tol", sum_tol}};
      SummationOutcome o;
      if (sum_method == "partial") {
        o.method = Method::partial;
        o.verdict = Verdict::finite;
        o.exact = partial_sum(series, sum_n);
        o.value = o.exact->to_double();
        o.terms_used = sum_n;
      } else if (sum_method == "cesaro") {
        o = cesaro_sum(series, sum_n, {sum_tol});
      } else if (sum_method == "abel" || sum_method == "euler") {
        o = abel_sum(series);
      } else if (sum_method == "ramanujan") {
        o = ramanujan_sum(series);
      } else {
        o = zeta_eta_sum(series);
      }
      r.result["series"] = series.key;
      r.result["label"] = series.label;
      r.result["method"] = to_string(o.method);
      r.result["verdict"] = to_string(o.verdict);
      r.result["value"] = o.finite() ? number_or_null(o.value) : json(nullptr);
      r.result["exact"] = o.exact ? json(o.exact->str()) : json(nullptr);
      r.result["error_estimate"] = o.finite() ? number_or_null(o.error_estimate) : json(nullptr);
      r.result["terms_used"] = o.terms_used;
      r.result["note"] = o.note;
      r.csv_header = {"method", "series", "verdict", "value", "exact", "error_estimate"};
      r.csv_rows.push_back(row({to_string(o.method), series.key, to_string(o.verdict),
                                o.finite() ? format_double(o.value) : "", o.exact ? o.exact->str() : "",
                                o.finite() ? format_double(o.error_estimate) : ""}));
      return r;
    };
  }

  // ledger
  {
    add("ledger", "term-algebra versus position-aware values at s = -1");
    commands["ledger"].handler = [&] {
      Report r;
      json rows = json::array();
      int clashes = 0;
      r.csv_header = {"identity", "rule_a", "rule_b", "clash"};
      for (const auto& entry : term_algebra_ledger()) {
        rows.push_back({{"identity", entry.identity},
                        {"rule_a", entry.rule_a ? json(entry.rule_a->str()) : json(nullptr)},
                        {"rule_b", entry.rule_b ? json(entry.rule_b->str()) : json(nullptr)},
                        {"clash", entry.clash}});
        clashes += entry.clash ? 1 : 0;
        r.csv_rows.push_back(row({entry.identity, entry.rule_a ? entry.rule_a->str() : "",
                                  entry.rule_b ? entry.rule_b->str() : "", bool_str(entry.clash)}));
      }
      r.result["rows"] = rows;
      r.result["clash_count"] = clashes;
      return r;
    };
  }

  // smoothed
  unsigned sm_s = 0;
  std::string sm_cutoff = "bump";
  double sm_N = 100;
  {
    auto* sub = add("smoothed", "smoothed sum sum_n eta(n/N) n^s");
    sub->add_option("--s", sm_s, "exponent")->capture_default_str();
    sub->add_option("--cutoff", sm_cutoff, "bump, sharp or poly:p")->capture_default_str();
    sub->add_option("--N", sm_N, "smoothing scale")->capture_default_str();
    commands["smoothed"].handler = [&] {
      const Cutoff cutoff = detail::cutoff_arg(sm_cutoff);
      Report r;
      r.config = {{"s", sm_s}, {"cutoff", cutoff.label()}, {"N", sm_N}};
      const quad value = smoothed_sum<quad>(sm_s, cutoff, sm_N);
      const quad C = mellin<quad>(cutoff, sm_s, quad("1e-31"));
      const quad divergent = C * summa::detail::ipow(quad(sm_N), sm_s + 1);
      r.result["value"] = static_cast<double>(value);
      r.result["mellin_constant"] = static_cast<double>(C);
      r.result["divergent_part"] = static_cast<double>(divergent);
      r.result["constant_part"] = static_cast<double>(value - divergent);
      r.result["ramanujan"] = ramanujan_monomial(sm_s).str();
      r.csv_header = {"s", "N", "value", "constant_part"};
      r.csv_rows.push_back(row({std::to_string(sm_s), format_double(sm_N), format_double(static_cast<double>(value)),
                                format_double(static_cast<double>(value - divergent))}));
      return r;
    };
  }

  // extract
  unsigned ex_s = 0;
  std::string ex_cutoff = "bump";
  std::string ex_grid;
  {
    auto* sub = add("extract", "regularized constant of sum n^s from smoothed sums");
    sub->add_option("--s", ex_s, "exponent")->capture_default_str();
    sub->add_option("--cutoff", ex_cutoff, "bump or poly:p")->capture_default_str();
    sub->add_option("--grid", ex_grid, "comma-separated increasing N values (default doubling to 1600, or 3200 for s >= 4)");
    commands["extract"].handler = [&] {
      const Cutoff cutoff = detail::cutoff_arg(ex_cutoff);
      std::vector<double> grid;
      if (ex_grid.empty()) {
        const double start = ex_s >= 4 ? 200 : 100;
        for (double N = start; N <= 16 * start; N *= 2) grid.push_back(N);
      } else {
        grid = detail::list_arg<double>(ex_grid, "--grid");
      }
      Report r;
      r.config = {{"s", ex_s}, {"cutoff", cutoff.label()}, {"grid", grid}};
      const auto fit = constant_extraction(ex_s, cutoff, grid);
      const Rational target = ramanujan_monomial(ex_s);
      r.result["constant"] = fit.constant;
      r.result["error_estimate"] = fit.error_estimate;
      r.result["growth_coefficient"] = fit.growth_coefficient;
      r.result["rate_exponent"] = fit.rate_exponent;
      r.result["grid"] = fit.grid;
      r.result["residuals"] = fit.residuals;
      r.result["target"] = target.str();
      r.result["relative_error"] = std::fabs(fit.constant - target.to_double()) / std::max(std::fabs(target.to_double()), 1e-300);
      r.csv_header = {"N", "residual"};
      for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
        r.csv_rows.push_back(row({format_double(fit.grid[i]), format_double(fit.residuals[i])}));
      }
      return r;
    };
  }

  // grandi
  std::string gr_cutoff = "bump";
  double gr_N = 10000;
  {
    auto* sub = add("grandi", "smoothed Grandi series sum eta(n/N) (-1)^(n-1)");
    sub->add_option("--cutoff", gr_cutoff, "bump, sharp or poly:p")->capture_default_str();
    sub->add_option("--N", gr_N, "smoothing scale")->capture_default_str();
    commands["grandi"].handler = [&] {
      const Cutoff cutoff = detail::cutoff_arg(gr_cutoff);
      Report r;
      r.config = {{"cutoff", cutoff.label()}, {"N", gr_N}};
      const double v = grandi_smoothed(cutoff, gr_N);
      r.result["value"] = v;
      r.result["deviation"] = std::fabs(v - 0.5);
      r.csv_header = {"N", "value"};
      r.csv_rows.push_back(row({format_double(gr_N), format_double(v)}));
      return r;
    };
  }

  // scaling-demo
  std::string sc_cutoff = "bump";
  double sc_N = 100;
  {
    auto* sub = add("scaling-demo", "smoothed 2+4+6+... against twice the smoothed 1+2+3+...");
    sub->add_option("--cutoff", sc_cutoff, "bump, sharp or poly:p")->capture_default_str();
    sub->add_option("--N", sc_N, "smoothing scale")->capture_default_str();
    commands["scaling-demo"].handler = [&] {
      const Cutoff cutoff = detail::cutoff_arg(sc_cutoff);
      Report r;
      r.config = {{"cutoff", cutoff.label()}, {"N", sc_N}};
      const auto cmp = scaling_counterexample(cutoff, sc_N);
      r.result = {{"lhs", cmp.lhs}, {"rhs", cmp.rhs}, {"differ", cmp.differ}};
      r.csv_header = {"N", "lhs", "rhs", "differ"};
      r.csv_rows.push_back(row({format_double(sc_N), format_double(cmp.lhs), format_double(cmp.rhs), bool_str(cmp.differ)}));
      return r;
    };
  }

  // delta-seq
  std::string ds_j = "25,50,100,200";
  std::string ds_test = "bump";
  double ds_center = 0;
  double ds_radius = 1.0;
  double ds_tol = 1e-12;
  {
    auto* sub = add("delta-seq", "Dirichlet-kernel pairings (1/2pi) integral D_j phi");
    sub->add_option("--j", ds_j, "comma-separated kernel orders")->capture_default_str();
    sub->add_option("--test", ds_test, "test function")->check(CLI::IsMember({"bump", "constant"}))->capture_default_str();
    sub->add_option("--center", ds_center, "bump center")->capture_default_str();
    sub->add_option("--radius", ds_radius, "bump radius")->capture_default_str();
    sub->add_option("--tol", ds_tol, "quadrature tolerance")->capture_default_str();
    commands["delta-seq"].handler = [&] {
      const auto js = detail::list_arg<int>(ds_j, "--j");
      Report r;
      r.config = {{"j", js}, {"test", ds_test}, {"tol", ds_tol}};
      if (ds_test == "bump") {
        r.config["center"] = ds_center;
        r.config["radius"] = ds_radius;
      }
      const TestFunction phi =
          ds_test == "bump" ? bump_test_function(ds_center, ds_radius) : constant_test_function(1.0);
      const double phi0 = phi.value(0.0);
      json rows = json::array();
      r.csv_header = {"j", "pairing", "phi0", "error"};
      double prev = INFINITY;
      bool monotone = true;
      for (int j : js) {
        const double v = delta_pairing(j, phi, ds_tol);
        const double e = std::fabs(v - phi0);
        monotone &= e < prev;
        prev = e;
        rows.push_back({{"j", j}, {"pairing", v}, {"error", e}});
        r.csv_rows.push_back(row({std::to_string(j), format_double(v), format_double(phi0), format_double(e)}));
      }
      r.result["phi0"] = phi0;
      r.result["rows"] = rows;
      r.result["monotone"] = monotone;
      return r;
    };
  }

  // em-tail
  unsigned et_s = 1;
  long long et_N = 100;
  std::string et_function = "monomial";
  std::string et_cutoff = "bump";
  double et_tol = 1e-10;
  {
    auto* sub = add("em-tail", "both sides of the Euler-Maclaurin tail identity");
    sub->add_option("--s", et_s, "order s >= 1")->capture_default_str();
    sub->add_option("--N", et_N, "integer support end")->capture_default_str();
    sub->add_option("--function", et_function, "monomial (x^s eta(x/N)) or falling:p ((1-x/N)^p)")->capture_default_str();
    sub->add_option("--cutoff", et_cutoff, "cutoff for the monomial family")->capture_default_str();
    sub->add_option("--tol", et_tol, "quadrature tolerance")->capture_default_str();
    commands["em-tail"].handler = [&] {
      SmoothFunctionSpec f;
      std::optional<Cutoff> cutoff;
      if (et_function == "monomial") {
        cutoff = detail::cutoff_arg(et_cutoff);
        f = monomial_times_cutoff(et_s, *cutoff, static_cast<double>(et_N));
      } else if (et_function.starts_with("falling:")) {
        const auto p = detail::list_arg<int>(et_function.substr(8), "--function");
        if (p.size() != 1) throw UsageError("--function: expected falling:p");
        f = falling_power(p[0], static_cast<double>(et_N));
      } else {
        throw UsageError("--function: expected monomial or falling:p, got '" + et_function + "'");
      }
      Report r;
      r.config = {{"s", et_s}, {"N", et_N}, {"function", f.label}, {"tol", et_tol}};
      const auto t = em_tail(f, et_N, et_s, et_tol);
      r.result = {{"lhs", t.lhs},           {"integral", t.integral}, {"series", t.series},
                  {"residual", t.residual}, {"c_norm", t.c_norm},     {"bound", t.bound}};
      if (cutoff) {
        r.result["mellin_integral"] =
            mellin<double>(*cutoff, et_s, 1e-14) * std::pow(static_cast<double>(et_N), et_s + 1.0);
      }
      r.csv_header = {"lhs", "integral", "series", "residual", "bound"};
      r.csv_rows.push_back(row({format_double(t.lhs), format_double(t.integral), format_double(t.series),
                                format_double(t.residual), format_double(t.bound)}));
      return r;
    };
  }

  // stirling
  std::string st_n = "2-50";
  unsigned st_terms = 4;
  {
    auto* sub = add("stirling", "g(n) against the Stirling series and its remainder bound");
    sub->add_option("--n", st_n, "range a-b or comma-separated list")->capture_default_str();
    sub->add_option("--terms", st_terms, "largest number of series terms")->capture_default_str();
    commands["stirling"].handler = [&] {
      std::vector<long long> ns;
      if (const auto dash = st_n.find('-'); dash != std::string::npos && dash > 0) {
        const auto lo = detail::list_arg<long long>(st_n.substr(0, dash), "--n");
        const auto hi = detail::list_arg<long long>(st_n.substr(dash + 1), "--n");
        if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw UsageError("--n: bad range '" + st_n + "'");
        for (long long n = lo[0]; n <= hi[0]; ++n) ns.push_back(n);
      } else {
        ns = detail::list_arg<long long>(st_n, "--n");
      }
      for (long long n : ns) {
        if (n < 1) throw UsageError("--n: entries must be >= 1");
      }
      if (st_terms < 1) throw UsageError("--terms must be >= 1");
      Report r;
      r.config = {{"n", ns}, {"terms", st_terms}};
      json rows = json::array();
      bool all_hold = true;
      r.csv_header = {"n", "terms", "g", "value", "bound", "holds"};
      for (long long n : ns) {
        const double g = stirling_g(static_cast<unsigned long long>(n));
        for (unsigned t = 1; t <= st_terms; ++t) {
          const auto s = stirling_series(static_cast<unsigned long long>(n), t);
          const bool holds = stirling_bound_holds(static_cast<unsigned long long>(n), t);
          all_hold &= holds;
          rows.push_back({{"n", n}, {"terms", t}, {"g", g}, {"value", s.value}, {"bound", s.bound}, {"holds", holds}});
          r.csv_rows.push_back(row({std::to_string(n), std::to_string(t), format_double(g), format_double(s.value),
                                    format_double(s.bound), bool_str(holds)}));
        }
      }
      r.result["rows"] = rows;
      r.result["all_hold"] = all_hold;
      return r;
    };
  }

  // em-diverge
  unsigned long long dv_n = 1;
  unsigned dv_terms = 60;
  {
    auto* sub = add("em-diverge", "onset of growth in the Stirling series terms at fixed n");
    sub->add_option("--n", dv_n, "argument n")->capture_default_str();
    sub->add_option("--max-terms", dv_terms, "number of terms to scan")->capture_default_str();
    commands["em-diverge"].handler = [&] {
      Report r;
      r.config = {{"n", dv_n}, {"max_terms", dv_terms}};
      const auto demo = em_divergence_demo(dv_n, dv_terms);
      r.result["growth_index"] = demo.growth_index ? json(*demo.growth_index) : json(nullptr);
      r.result["note"] = demo.growth_index ? "" : "no growth within max_terms; increase --max-terms";
      json terms = json::array();
      r.csv_header = {"m", "term", "magnitude"};
      for (std::size_t i = 0; i < demo.terms.size(); ++i) {
        terms.push_back({{"m", i + 1}, {"term", demo.terms[i].str()}, {"magnitude", demo.magnitudes[i]}});
        r.csv_rows.push_back(row({std::to_string(i + 1), demo.terms[i].str(), format_double(demo.magnitudes[i])}));
      }
      r.result["terms"] = terms;
      return r;
    };
  }

  // casimir and casimir-force share the configuration flags.
  CasimirConfig cas;
  std::string cas_cutoff = "bump";
  auto casimir_flags = [&](CLI::App* sub) {
    sub->add_option("--d", cas.d, "plate separation [m]")->capture_default_str();
    sub->add_option("--N", cas.N, "smoothing scale")->capture_default_str();
    sub->add_option("--cutoff", cas_cutoff, "bump or poly:p (sharp for contrast runs)")->capture_default_str();
    sub->add_option("--lambda", cas.lambda, "dimensionless cutoff scale")->capture_default_str();
    sub->add_option("--quad-tol", cas.quad_tol, "quadrature tolerance relative to (N/lambda)^3")->capture_default_str();
    sub->add_option("--hbar", cas.hbar, "reduced Planck constant [J s]")->capture_default_str();
    sub->add_option("--c", cas.c, "speed of light [m/s]")->capture_default_str();
  };
  auto casimir_config_json = [&] {
    return json{{"d", cas.d},       {"N", cas.N},       {"cutoff", cas.cutoff.label()}, {"lambda", cas.lambda},
                {"quad_tol", cas.quad_tol}, {"hbar", cas.hbar}, {"c", cas.c}};
  };
  {
    auto* sub = add("casimir", "Casimir energy per unit area from smoothed mode sums");
    casimir_flags(sub);
    commands["casimir"].handler = [&] {
      cas.cutoff = detail::cutoff_arg(cas_cutoff);
      Report r;
      r.config = casimir_config_json();
      const auto u = u_t_dimensionless(cas);
      const double energy = energy_prefactor(cas.d, cas.hbar, cas.c) * u.value;
      const double closed = closed_form_energy(cas.d, cas.hbar, cas.c);
      r.result["limit"] = energy;
      r.result["closed_form"] = closed;
      r.result["relative_error"] = std::fabs(energy - closed) / std::fabs(closed);
      r.result["u_t"] = u.value;
      r.result["u_t_error_estimate"] = u.error_estimate;
      r.result["u_t_limit"] = "-1/360";
      r.csv_header = {"N", "value", "error_estimate"};
      for (double scale : {0.125, 0.25, 0.5, 1.0}) {
        CasimirConfig c = cas;
        c.N = cas.N * scale;
        const quad full = mode_sum_residual(c);
        CasimirConfig h = c;
        h.N = c.N / 2;
        const quad half = mode_sum_residual(h);
        r.csv_rows.push_back(row({format_double(c.N), format_double(static_cast<double>(full)),
                                  format_double(static_cast<double>(abs(full - half)))}));
      }
      return r;
    };
  }
  {
    auto* sub = add("casimir-force", "Casimir pressure by central difference of the energy");
    casimir_flags(sub);
    commands["casimir-force"].handler = [&] {
      cas.cutoff = detail::cutoff_arg(cas_cutoff);
      Report r;
      r.config = casimir_config_json();
      const double force = casimir_force(cas.d, cas);
      const double closed = closed_form_force(cas.d, cas.hbar, cas.c);
      r.result["force"] = force;
      r.result["closed_form"] = closed;
      r.result["relative_error"] = std::fabs(force - closed) / std::fabs(closed);
      r.result["attractive"] = force < 0;
      r.csv_header = {"d", "force", "closed_form"};
      r.csv_rows.push_back(row({format_double(cas.d), format_double(force), format_double(closed)}));
      return r;
    };
  }

  // truncate
  std::string tr_alpha = "1/137";
  {
    auto* sub = add("truncate", "optimal truncation order of N! alpha^N");
    sub->add_option("--alpha", tr_alpha, "alpha in (0, 1), as p/q or decimal")->capture_default_str();
    commands["truncate"].handler = [&] {
      const Rational alpha = detail::rational_arg(tr_alpha, "--alpha");
      Report r;
      r.config = {{"alpha", alpha.str()}};
      const auto scan = optimal_truncation(alpha);
      r.result["N_star"] = scan.N_star;
      r.result["inverse_alpha"] = 1 / alpha.to_double();
      r.result["convex_at_minimum"] = scan.convex_at_minimum;
      r.csv_header = {"N", "log10_value"};
      for (std::size_t i = 0; i < scan.N.size(); ++i) {
        r.csv_rows.push_back(row({std::to_string(scan.N[i]), format_double(scan.log10_value[i])}));
      }
      return r;
    };
  }

  // borel
  std::string bo_series = "euler";
  double bo_x = 0.1;
  double bo_tol = 1e-10;
  {
    auto* sub = add("borel", "Borel sum (1/x) integral e^{-z/x} B(z) dz");
    sub->add_option("--series", bo_series, "euler, zero or geometric:r")->capture_default_str();
    sub->add_option("--x", bo_x, "argument x > 0")->capture_default_str();
    sub->add_option("--tol", bo_tol, "absolute tolerance")->capture_default_str();
    commands["borel"].handler = [&] {
      CoefficientOracle coeffs;
      std::optional<double> direct;
      if (bo_series == "euler") {
        coeffs = euler_series_coefficients();
      } else if (bo_series == "zero") {
        coeffs = zero_coefficients();
        direct = 0.0;
      } else if (bo_series.starts_with("geometric:")) {
        const double ratio = detail::rational_arg(bo_series.substr(10), "--series").to_double();
        coeffs = geometric_coefficients(ratio);
        if (std::fabs(ratio * bo_x) < 1) direct = 1 / (1 - ratio * bo_x);
      } else {
        throw UsageError("--series: expected euler, zero or geometric:r, got '" + bo_series + "'");
      }
      Report r;
      r.config = {{"series", bo_series}, {"x", bo_x}, {"tol", bo_tol}};
      const auto b = borel_sum(coeffs, bo_x, {bo_tol});
      r.result["value"] = b.value;
      r.result["error_estimate"] = b.error_estimate;
      r.result["z_max"] = b.z_max;
      r.result["direct_sum"] = direct ? json(*direct) : json(nullptr);
      r.csv_header = {"x", "value", "error_estimate"};
      r.csv_rows.push_back(row({format_double(bo_x), format_double(b.value), format_double(b.error_estimate)}));
      return r;
    };
  }

  // gyro
  std::string gy_alpha = "1/137.036";
  int gy_order = 2;
  {
    auto* sub = add("gyro", "two-term partial sums of the electron anomaly");
    sub->add_option("--alpha", gy_alpha, "fine-structure constant, as p/q or decimal")->capture_default_str();
    sub->add_option("--order", gy_order, "1 or 2")->capture_default_str();
    commands["gyro"].handler = [&] {
      double alpha = 0;
      if (const auto slash = gy_alpha.find('/'); slash != std::string::npos) {
        const auto num = detail::list_arg<double>(gy_alpha.substr(0, slash), "--alpha");
        const auto den = detail::list_arg<double>(gy_alpha.substr(slash + 1), "--alpha");
        if (num.size() != 1 || den.size() != 1 || den[0] == 0) throw UsageError("--alpha: bad value");
        alpha = num[0] / den[0];
      } else {
        const auto v = detail::list_arg<double>(gy_alpha, "--alpha");
        if (v.size() != 1) throw UsageError("--alpha: bad value");
        alpha = v[0];
      }
      Report r;
      r.config = {{"alpha", alpha}, {"order", gy_order}};
      const double v = gyro_partial(alpha, gy_order);
      r.result["value"] = v;
      r.csv_header = {"alpha", "order", "value"};
      r.csv_rows.push_back(row({format_double(alpha), std::to_string(gy_order), format_double(v)}));
      return r;
    };
  }

  // flat-check
  double fc_beta = 0.5;
  unsigned fc_n = 1;
  std::string fc_grid = "1e-2,1e-3,1e-4,1e-5,1e-6";
  {
    auto* sub = add("flat-check", "the flat function exp(-z^-beta) and its vanishing right derivatives");
    sub->add_option("--beta", fc_beta, "exponent in (0, 1)")->capture_default_str();
    sub->add_option("--n", fc_n, "derivative order to probe")->capture_default_str();
    sub->add_option("--z-grid", fc_grid, "comma-separated step sizes")->capture_default_str();
    commands["flat-check"].handler = [&] {
      const auto grid = detail::list_arg<double>(fc_grid, "--z-grid");
      Report r;
      r.config = {{"beta", fc_beta}, {"n", fc_n}, {"z_grid", grid}};
      const auto probe = flat_derivative_probe(fc_beta, fc_n, grid);
      const auto coeffs = exp_taylor_coefficients();
      const std::vector<double> battery = {1e-1, 1e-2, 1e-3, 1e-4};
      const double beta = fc_beta;
      const bool plain = verify_asymptotic([](quad x) { return exp(x); }, coeffs, 0, 3, battery).pass;
      const bool perturbed =
          verify_asymptotic([beta](quad x) { return exp(x) + flat_function<quad>(beta, x); }, coeffs, 0, 3, battery).pass;
      r.result["flat_at_0.1"] = flat_function(fc_beta, 0.1);
      r.result["probe"] = probe;
      r.result["exp_passes"] = plain;
      r.result["exp_plus_flat_passes"] = perturbed;
      r.csv_header = {"z", "probe"};
      for (std::size_t i = 0; i < grid.size(); ++i) {
        r.csv_rows.push_back(row({format_double(grid[i]), format_double(probe[i])}));
      }
      return r;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::string name;
  for (auto& [key, cmd] : commands) {
    if (cmd.app->parsed()) name = key;
  }

  Report report;
  try {
    report = commands.at(name).handler();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << commands.at(name).app->help();
    return 2;
  } catch (const summa::domain_error& e) {
    // Precondition violations on flag values are usage errors.
    err << "error: " << name << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << name << ": " << e.what() << '\n';
    return 1;
  }

  std::ostringstream buffer;
  write_report(buffer, name, report, format);
  if (output_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << output_path << " for writing\n";
      return 1;
    }
    file << buffer.str();
  }
  return 0;
}

}  // namespace summa::cli
