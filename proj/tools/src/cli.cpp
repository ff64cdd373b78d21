#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracsum/calculus.hpp"
#include "fracsum/continuations.hpp"
#include "fracsum/error.hpp"
#include "fracsum/extensions.hpp"
#include "fracsum/frac_sum.hpp"
#include "fracsum/special.hpp"

namespace fracsum::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { text, json, csv };

struct CliConfig {
  std::string command;
  std::string expression;
  std::string limit;  // number, "auto", or empty when not given
  double y = 1.0;
  double x = 0.0;
  double tol = 1e-10;
  std::size_t max_terms = 1'000'000;
  Format format = Format::text;
  std::string output_path;
  std::string hint = "unknown";

  std::string wrt = "upper";
  bool product = false;
  std::size_t order = 12;
  std::optional<double> at;
  double a = 0.0;
  std::string grid;
  std::string antiderivative;
  std::string route = "upper";
  std::string coeffs;
  std::size_t taylor_order = 20;
  double center = 0.0;
  std::size_t n_max = 50;
  std::string property;
  double split = 0.0;
};

// --- number formatting ------------------------------------------------------

std::string fmt(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string text_number(double v) { return fmt(v, 15); }
std::string csv_number(double v) { return fmt(v, 17); }

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// --- argument helpers -------------------------------------------------------

double parse_real(const std::string& s, const char* what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw UsageError(std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

std::optional<double> parse_limit(const CliConfig& cfg) {
  if (cfg.limit.empty()) {
    throw UsageError("--limit is required: give the limit of f(k) at infinity or 'auto'");
  }
  if (cfg.limit == "auto") return std::nullopt;
  return parse_real(cfg.limit, "--limit");
}

Monotonicity parse_hint(const std::string& s) {
  if (s == "increasing") return Monotonicity::increasing;
  if (s == "decreasing") return Monotonicity::decreasing;
  if (s == "unknown") return Monotonicity::unknown;
  throw UsageError("--hint must be increasing, decreasing or unknown");
}

void require_expression(const CliConfig& cfg) {
  if (cfg.expression.empty()) throw UsageError("--f <expression> is required");
}

SummandSpec summand(const CliConfig& cfg) {
  require_expression(cfg);
  return make_summand(cfg.expression, parse_limit(cfg), parse_hint(cfg.hint));
}

FracSumRequest request(const CliConfig& cfg) {
  FracSumRequest req;
  req.summand = summand(cfg);
  req.lower_y = cfg.y;
  req.upper_x = cfg.x;
  req.tol = cfg.tol;
  req.max_terms = cfg.max_terms;
  return req;
}

struct Grid {
  double min, max, step;
};

Grid parse_grid(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos) {
    throw UsageError("--grid must look like min:max:step");
  }
  Grid g{parse_real(s.substr(0, c1), "grid minimum"),
         parse_real(s.substr(c1 + 1, c2 - c1 - 1), "grid maximum"),
         parse_real(s.substr(c2 + 1), "grid step")};
  if (!(g.step > 0.0)) throw UsageError("grid step must be positive");
  return g;
}

std::vector<double> parse_coefficients(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    out.push_back(parse_real(s.substr(start, end - start), "coefficient"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// --- emitters ---------------------------------------------------------------

int verdict_code(const EvalResult& r, std::ostream& err) {
  if (r.verdict == Verdict::diverged) return kEvalFailure;
  if (r.verdict == Verdict::budget_exhausted) {
    err << "warning: tolerance not reached (budget exhausted); error estimate "
        << text_number(r.abs_error_estimate) << "\n";
  }
  return kOk;
}

int emit_scalar(const EvalResult& r, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.format) {
    case Format::text:
      out << text_number(r.value) << "\n";
      break;
    case Format::json: {
      Json j;
      j["value"] = json_number(r.value);
      j["abs_error_estimate"] = json_number(r.abs_error_estimate);
      j["terms_used"] = r.terms_used;
      j["verdict"] = std::string(to_string(r.verdict));
      out << j.dump() << "\n";
      break;
    }
    case Format::csv:
      out << "value,abs_error_estimate,terms_used,verdict\n"
          << csv_number(r.value) << "," << csv_number(r.abs_error_estimate) << ","
          << r.terms_used << "," << to_string(r.verdict) << "\n";
      break;
  }
  return verdict_code(r, err);
}

/// Rows of named numeric columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_errors;  // optional, same length as rows
};

void emit_table(const Table& t, const CliConfig& cfg, std::ostream& out) {
  switch (cfg.format) {
    case Format::csv:
    case Format::text: {
      const bool csv = cfg.format == Format::csv;
      const char* sep = csv ? "," : " ";
      for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? sep : "") << t.columns[c];
      out << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << (c ? sep : "") << (csv ? csv_number(row[c]) : text_number(row[c]));
        }
        out << "\n";
      }
      break;
    }
    case Format::json: {
      Json arr = Json::array();
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Json obj;
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
          obj[t.columns[c]] = json_number(t.rows[r][c]);
        }
        if (r < t.row_errors.size() && !t.row_errors[r].empty()) obj["error"] = t.row_errors[r];
        arr.push_back(std::move(obj));
      }
      out << arr.dump() << "\n";
      break;
    }
  }
}

// --- commands ---------------------------------------------------------------

int cmd_sum(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return emit_scalar(frac_sum(request(cfg)), cfg, out, err);
}

int cmd_prod(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return emit_scalar(frac_prod(request(cfg)), cfg, out, err);
}

int cmd_deriv(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Bound wrt = parse_bound(cfg.wrt);
  const auto req = request(cfg);
  EvalResult r;
  if (cfg.product) {
    r = d_prod(req, wrt);
  } else {
    r = wrt == Bound::upper ? d_upper(req) : d_lower(req);
  }
  return emit_scalar(r, cfg, out, err);
}

int cmd_taylor(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Bound wrt = parse_bound(cfg.wrt);
  const auto f = summand(cfg);
  const TaylorExpansion t = wrt == Bound::upper ? taylor_upper(f, cfg.y, cfg.order)
                                                : taylor_lower(f, cfg.x, cfg.order);
  if (cfg.at) {
    if (!t.within_radius(*cfg.at)) {
      err << "warning: " << text_number(*cfg.at) << " is at distance >= 1 from the center "
          << text_number(t.center) << "; the expansion may not converge there\n";
    }
    const double u = *cfg.at - t.center;
    EvalResult r{t.evaluate(*cfg.at), std::fabs(t.coefficients.back() * std::pow(u, t.order)),
                 t.order + 1, Verdict::converged};
    return emit_scalar(r, cfg, out, err);
  }
  if (cfg.format == Format::json) {
    Json j;
    j["center"] = t.center;
    j["wrt"] = std::string(to_string(t.wrt));
    j["order"] = t.order;
    Json coeffs = Json::array();
    for (const double c : t.coefficients) coeffs.push_back(json_number(c));
    j["coefficients"] = std::move(coeffs);
    out << j.dump() << "\n";
    return kOk;
  }
  Table table{{"power", "coefficient"}, {}, {}};
  for (std::size_t j = 0; j < t.coefficients.size(); ++j) {
    table.rows.push_back({static_cast<double>(j), t.coefficients[j]});
  }
  emit_table(table, cfg, out);
  return kOk;
}

int cmd_integrate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Bound wrt = parse_bound(cfg.wrt);
  const auto f = summand(cfg);
  const EvalResult r = wrt == Bound::upper ? integrate_upper(f, cfg.y, cfg.a, cfg.x, cfg.tol)
                                           : integrate_lower(f, cfg.x, cfg.a, cfg.y, cfg.tol);
  return emit_scalar(r, cfg, out, err);
}

int cmd_approx(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = summand(cfg);
  if (cfg.at) {
    const double v = em_approximation(f, *cfg.at, std::min(cfg.tol, 1e-12));
    return emit_scalar({v, 0.0, 0, Verdict::converged}, cfg, out, err);
  }
  if (cfg.grid.empty()) throw UsageError("approx needs --grid min:max:step or --at x");
  const Grid g = parse_grid(cfg.grid);
  const auto samples = em_approx_curve(f, g.min, g.max, g.step, std::min(cfg.tol, 1e-12));
  Table table{{"x", "f_true", "f_approx", "abs_err"}, {}, {}};
  int code = kOk;
  for (const auto& s : samples) {
    table.rows.push_back({s.x, s.f_true, s.f_approx, s.abs_err});
    table.row_errors.push_back(s.error);
    if (!s.error.empty()) {
      err << "x = " << text_number(s.x) << ": " << s.error << "\n";
      code = kEvalFailure;
    }
  }
  emit_table(table, cfg, out);
  return code;
}

int cmd_antisum(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.antiderivative.empty()) throw UsageError("--F <antiderivative> is required");
  const auto f = summand(cfg);
  const auto F = make_summand(cfg.antiderivative, std::nullopt);
  EvalResult r;
  if (cfg.route == "upper") {
    r = sum_antiderivative(f, F, cfg.y, cfg.x, cfg.tol);
  } else if (cfg.route == "lower") {
    r = sum_antiderivative_lower(f, F, cfg.y, cfg.x, cfg.tol);
  } else {
    throw UsageError("--route must be upper or lower");
  }
  return emit_scalar(r, cfg, out, err);
}

int cmd_faulhaber(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  PowerSeriesSpec series;
  if (!cfg.coeffs.empty()) {
    if (!cfg.expression.empty()) throw UsageError("give either --coeffs or --f, not both");
    series.center_a = cfg.center;
    series.coefficients = parse_coefficients(cfg.coeffs);
    series.truncation_J = series.coefficients.size() - 1;
  } else {
    require_expression(cfg);
    series = taylor_series(expr::parse(cfg.expression), cfg.center, cfg.taylor_order);
  }
  return emit_scalar(faulhaber_sum(series, cfg.y, cfg.x, std::min(cfg.tol, 1e-12)), cfg, out,
                     err);
}

int cmd_roots(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n_max < 1) throw UsageError("--n-max must be at least 1");
  const double offset = alt_harmonic_root_offset();
  Table table{{"n", "location", "residual", "offset_error"}, {}, {}};
  int code = kOk;
  for (const auto& root : alt_harmonic_roots(cfg.n_max)) {
    const double n = static_cast<double>(root.index_n);
    table.rows.push_back({n, root.location, root.residual, root.location + n + offset});
    table.row_errors.push_back(root.found ? "" : "no sign change bracketed");
    if (!root.found) {
      err << "n = " << root.index_n << ": no sign change bracketed\n";
      code = kEvalFailure;
    }
  }
  emit_table(table, cfg, out);
  return code;
}

int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.property.empty()) throw UsageError("--property <id> is required");
  const auto req = request(cfg);
  double residual = 0.0;
  bool is_pde = true;
  PdeKind kind{};
  try {
    kind = parse_pde_kind(cfg.property);
  } catch (const InvalidArgument&) {
    is_pde = false;
  }
  if (is_pde) {
    residual = pde_residual(kind, req.summand, cfg.x, cfg.y, std::min(cfg.tol, 1e-13));
  } else {
    residual = check_property(parse_property(cfg.property), req, PropertyParams{cfg.split});
  }
  return emit_scalar({residual, 0.0, 0, Verdict::converged}, cfg, out, err);
}

int cmd_constants(const CliConfig& cfg, std::ostream& out) {
  struct Row {
    const char* name;
    double value;
    const char* source;
  };
  const Row rows[] = {
      {"euler_gamma", special::euler_gamma(), "stored constant"},
      {"ln2", std::log(2.0), "std::log(2)"},
      {"zeta2", special::riemann_zeta(2.0), "Hurwitz zeta at (2, 1), Euler-Maclaurin"},
      {"zeta3", special::riemann_zeta(3.0), "Hurwitz zeta at (3, 1), Euler-Maclaurin"},
      {"harmonic_half", harmonic(0.5), "sum x/(k(k+x)) at x = 1/2 (= 2 - 2 ln 2)"},
      {"alt_harmonic_root_offset", alt_harmonic_root_offset(), "(1/pi) atan(pi / ln 2)"},
  };
  switch (cfg.format) {
    case Format::json: {
      Json arr = Json::array();
      for (const auto& r : rows) {
        Json obj;
        obj["name"] = r.name;
        obj["value"] = r.value;
        obj["source"] = r.source;
        arr.push_back(std::move(obj));
      }
      out << arr.dump() << "\n";
      break;
    }
    case Format::csv:
      out << "name,value,source\n";
      for (const auto& r : rows) {
        out << r.name << "," << csv_number(r.value) << ",\"" << r.source << "\"\n";
      }
      break;
    case Format::text:
      for (const auto& r : rows) {
        out << r.name << " " << text_number(r.value) << "  # " << r.source << "\n";
      }
      break;
  }
  return kOk;
}

// --- error reporting ----------------------------------------------------------

int report(const CliConfig& cfg, std::ostream& out, std::ostream& err, int code,
           std::string_view kind, const std::string& message,
           std::optional<std::size_t> position = std::nullopt) {
  if (cfg.format == Format::json) {
    Json e;
    e["code"] = std::string(kind);
    e["message"] = message;
    if (position) e["position"] = *position;
    Json j;
    j["error"] = std::move(e);
    out << j.dump() << "\n";
  } else {
    err << "error: " << message << "\n";
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Sums and products with real-valued bounds", "fracsum"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::map<std::string, Format> formats{
      {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

  auto add_common = [&](CLI::App* sub, bool summand_options) {
    sub->add_option("--format", cfg.format, "Output format: text, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("-o,--output", cfg.output_path, "Write results to this file");
    if (!summand_options) return;
    sub->add_option("--f", cfg.expression, "Summand f(k), e.g. \"1/k\"");
    sub->add_option("--limit", cfg.limit, "Limit of f(k) as k -> infinity, or 'auto'");
    sub->add_option("--from", cfg.y, "Lower bound y")->capture_default_str();
    sub->add_option("--to", cfg.x, "Upper bound x")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Absolute tolerance")->capture_default_str();
    sub->add_option("--max-terms", cfg.max_terms, "Series term budget")->capture_default_str();
    sub->add_option("--hint", cfg.hint, "Monotonicity of f: increasing, decreasing or unknown");
  };

  struct Command {
    CLI::App* app;
    std::function<int()> handler;
  };
  std::vector<Command> commands;
  auto command = [&](const char* name, const char* description, bool summand_options,
                     std::function<int()> handler) {
    CLI::App* sub = app.add_subcommand(name, description);
    add_common(sub, summand_options);
    commands.push_back({sub, std::move(handler)});
    return sub;
  };

  command("sum", "Evaluate sum_{k=y}^{x} f(k)", true, [&] { return cmd_sum(cfg, out, err); });
  command("prod", "Evaluate prod_{k=y}^{x} f(k)", true, [&] { return cmd_prod(cfg, out, err); });
  auto* deriv = command("deriv", "Derivative of the sum (or product) in one bound", true,
                        [&] { return cmd_deriv(cfg, out, err); });
  deriv->add_option("--wrt", cfg.wrt, "upper or lower")->capture_default_str();
  deriv->add_flag("--prod", cfg.product, "Differentiate the product instead of the sum");
  auto* taylor = command("taylor", "Taylor coefficients in one bound", true,
                         [&] { return cmd_taylor(cfg, out, err); });
  taylor->add_option("--wrt", cfg.wrt, "upper (about x = y-1) or lower (about y = x+1)")
      ->capture_default_str();
  taylor->add_option("--order", cfg.order, "Highest power")->capture_default_str();
  taylor->add_option("--at", cfg.at, "Evaluate the polynomial here instead of listing it");
  auto* integ = command("integrate", "Integral of the sum over one bound from a", true,
                        [&] { return cmd_integrate(cfg, out, err); });
  integ->add_option("--wrt", cfg.wrt, "upper or lower")->capture_default_str();
  integ->add_option("--a", cfg.a, "Start of the integration range")->capture_default_str();
  auto* approx = command("approx", "Approximate f from its derivative series", true,
                         [&] { return cmd_approx(cfg, out, err); });
  approx->add_option("--grid", cfg.grid, "Sample grid min:max:step");
  approx->add_option("--at", cfg.at, "Single point");
  auto* antisum = command("antisum", "Sum an antiderivative F of f", true,
                          [&] { return cmd_antisum(cfg, out, err); });
  antisum->add_option("--F", cfg.antiderivative, "Antiderivative F(k) with F' = f");
  antisum->add_option("--route", cfg.route, "upper or lower")->capture_default_str();
  auto* faul = command("faulhaber", "Sum a power series through Faulhaber's formula", true,
                       [&] { return cmd_faulhaber(cfg, out, err); });
  faul->add_option("--coeffs", cfg.coeffs, "Comma-separated c_0,c_1,...");
  faul->add_option("--taylor-order", cfg.taylor_order, "Truncation J when expanding --f")
      ->capture_default_str();
  faul->add_option("--center", cfg.center, "Center a of the power series")->capture_default_str();
  auto* roots = command("roots", "Roots of the alternating harmonic function", false,
                        [&] { return cmd_roots(cfg, out, err); });
  roots->add_option("--n-max", cfg.n_max, "Number of roots")->capture_default_str();
  auto* check = command("check", "Residual of a summation law or bound PDE", true,
                        [&] { return cmd_check(cfg, out, err); });
  check->add_option("--property", cfg.property,
                    "empty-sum, empty-prod, recurrence-low, recurrence-high, split, reflection, "
                    "prod-recurrence-low, prod-recurrence-high, prod-split, prod-reflection, "
                    "sum-transport, sum-mixed-zero, prod-transport, prod-mixed");
  check->add_option("--split", cfg.split, "Split point c for the split laws")
      ->capture_default_str();
  command("constants", "Print reference constants", false,
          [&] { return cmd_constants(cfg, out); });

  // CLI11's vector overload consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'fracsum --help' for usage\n";
    return kUsage;
  }

  if (!(cfg.tol > 0.0)) return report(cfg, out, err, kUsage, "usage_error", "--tol must be positive");
  if (cfg.max_terms < 1000) {
    return report(cfg, out, err, kUsage, "usage_error", "--max-terms must be at least 1000");
  }

  // Handlers write to `out`; --output swaps its buffer for the run.
  std::ostringstream buffer;
  std::streambuf* saved = nullptr;
  if (!cfg.output_path.empty()) saved = out.rdbuf(buffer.rdbuf());

  int code = kOk;
  try {
    for (const auto& c : commands) {
      if (c.app->parsed()) code = c.handler();
    }
  } catch (const UsageError& e) {
    code = report(cfg, out, err, kUsage, "usage_error", e.what());
  } catch (const ParseError& e) {
    code = report(cfg, out, err, kUsage, "parse_error", e.what(), e.position());
  } catch (const InvalidArgument& e) {
    code = report(cfg, out, err, kUsage, "invalid_argument", e.what());
  } catch (const DomainError& e) {
    code = report(cfg, out, err, kEvalFailure, "domain_error", e.what());
  } catch (const ConvergenceError& e) {
    code = report(cfg, out, err, kEvalFailure, "convergence_error", e.what());
  } catch (const std::exception& e) {
    code = report(cfg, out, err, kEvalFailure, "internal_error", e.what());
  }

  if (saved) {
    out.rdbuf(saved);
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << cfg.output_path << "' for writing\n";
      return kEvalFailure;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace fracsum::cli
