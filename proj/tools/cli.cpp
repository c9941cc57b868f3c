#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "report_io.hpp"
#include "selberg/coefficients.hpp"
#include "selberg/dirichlet_poly.hpp"
#include "selberg/exponents.hpp"
#include "selberg/identities.hpp"
#include "selberg/spec_file.hpp"
#include "selberg/statistics.hpp"
#include "selberg/table_io.hpp"

namespace selberg::cli {

using nlohmann::json;

const char* to_string(Command command) {
  switch (command) {
    case Command::sieve:
      return "sieve";
    case Command::signs:
      return "signs";
    case Command::window:
      return "window";
    case Command::exponents:
      return "exponents";
    case Command::moment:
      return "moment";
    case Command::profile:
      return "profile";
    case Command::perron:
      return "perron";
    case Command::verify:
      return "verify";
    case Command::theorem_check:
      return "theorem-check";
  }
  return "unknown";
}

namespace {

struct Flags {
  bool spec = false, x = false, H = false, M = false, T = false;
  bool theta = false, kappa = false, epsilon = false, degree = false;
  bool format = false;
};

void add_flags(CLI::App& sub, RunConfig& c, const Flags& f) {
  if (f.spec) sub.add_option("--spec", c.spec_path, "L-function spec file");
  if (f.x) sub.add_option("--x", c.X, "X (or window start x)");
  if (f.H) sub.add_option("--H", c.H, "window length H");
  if (f.M) sub.add_option("--M", c.M, "dyadic block parameter M");
  if (f.T) sub.add_option("--T", c.T, "height T");
  if (f.theta) sub.add_option("--theta", c.theta, "subconvexity exponent theta");
  if (f.kappa) sub.add_option("--kappa", c.kappa, "non-vanishing exponent kappa");
  if (f.epsilon) sub.add_option("--epsilon", c.epsilon, "epsilon (default 1e-3)");
  if (f.degree) sub.add_option("--degree", c.degree, "degree d (theta defaults to d/4)");
  if (f.format)
    sub.add_option("--format", c.format, "json or csv")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
  sub.add_option("--output,-o", c.output, "report path (default stdout)");
}

void require(bool present, const RunConfig& c, const char* flag) {
  if (!present) throw UsageError(std::string(to_string(c.command)) + ": missing required " + flag);
}

void validate(const RunConfig& c) {
  using enum Command;
  if (c.X && c.H && *c.H >= *c.X) throw UsageError("need H < X (got H = " + std::to_string(*c.H) + ", X = " +
                                                  std::to_string(*c.X) + ")");
  if (c.X && *c.X == 0) throw UsageError("--x must be positive");
  if (c.H && *c.H == 0) throw UsageError("--H must be positive");
  if (c.M && *c.M == 0) throw UsageError("--M must be positive");
  if (c.T && !(*c.T > 0.0)) throw UsageError("--T must be positive");
  if (!(c.epsilon >= 0.0)) throw UsageError("--epsilon must be >= 0");
  if (c.command != exponents && c.spec_path.empty())
    throw UsageError(std::string(to_string(c.command)) + ": missing required --spec");
  switch (c.command) {
    case sieve:
    case signs:
    case theorem_check:
      require(c.X.has_value(), c, "--x");
      break;
    case window:
      require(c.X.has_value(), c, "--x");
      require(c.H.has_value(), c, "--H");
      require(c.M.has_value(), c, "--M");
      break;
    case exponents:
      if (!c.theta && !c.degree) throw UsageError("exponents: give --theta or --degree");
      break;
    case moment:
      require(c.M.has_value(), c, "--M");
      require(c.T.has_value(), c, "--T");
      if (c.poly == PolyChoice::K) require(c.X.has_value(), c, "--x");
      break;
    case profile:
      require(c.X.has_value(), c, "--x");
      require(c.M.has_value(), c, "--M");
      require(c.T.has_value(), c, "--T");
      break;
    case perron:
      require(c.X.has_value(), c, "--x");
      require(c.H.has_value(), c, "--H");
      require(c.M.has_value(), c, "--M");
      require(c.T.has_value(), c, "--T");
      break;
    case verify:
      if (c.verify_target != "identities") throw UsageError("verify: unknown target '" + c.verify_target + "'");
      break;
  }
}

// ---- report helpers ----

json spec_json(const LFunctionSpec& spec) {
  json j{{"name", spec.name}, {"family", to_string(spec.family)}, {"degree", spec.degree},
         {"theta", spec.effective_theta()}, {"epsilon", spec.epsilon}, {"pole_at_one", spec.pole_at_one}};
  j["kappa"] = spec.kappa ? json(*spec.kappa) : json(nullptr);
  if (spec.family == Family::dirichlet_char) j["discriminant"] = spec.discriminant;
  if (spec.family == Family::sato_tate) j["seed"] = spec.seed;
  return j;
}

json header(const RunConfig& c) { return json{{"schema_version", kSchemaVersion}, {"command", to_string(c.command)}}; }

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json exponent_json(const ExponentReport& r) {
  json j{{"theta", r.theta},
         {"kappa", r.kappa},
         {"epsilon", r.epsilon},
         {"admissible", r.admissible},
         {"kappa_threshold", r.kappa_threshold},
         {"kappa_threshold_high", r.kappa_threshold_high},
         {"kappa_threshold_low", r.kappa_threshold_low},
         {"delta", r.delta},
         {"signchange_exponent", r.signchange_exponent},
         {"exponent_high", r.exponent_high},
         {"exponent_low", r.exponent_low},
         {"branch", to_string(r.branch)},
         {"boundary", r.boundary},
         {"h_exponent",
          {{"value", r.h_exponent.value},
           {"lower", r.h_exponent.lower},
           {"upper", r.h_exponent.upper},
           {"within_constraint", r.h_exponent.within_constraint}}}};
  j["delta_max"] = r.delta_max ? json(*r.delta_max) : json(nullptr);
  return j;
}

json window_json(const WindowReport& w) {
  return json{{"x", w.x},   {"H", w.H},   {"M", w.M},
              {"S1", w.S1}, {"S2", w.S2}, {"detected", w.detected}, {"pairs", w.pairs}};
}

json sweep_json(const WindowSweep& s) {
  return json{{"X", s.X},
              {"H", s.H},
              {"M", s.M},
              {"stride", s.stride},
              {"windows", s.windows},
              {"detected", s.detected},
              {"fraction", s.fraction},
              {"implied_sign_changes", s.implied_sign_changes}};
}

json series_json(const TruncatedSeries& s) {
  return json{{"value", complex_json(s.value)}, {"tail_bound", s.tail_bound}, {"N_trunc", s.N_trunc}};
}

struct Output {
  std::string text;
  int code = kExitOk;
};

CoefficientTable table_for(const LFunctionSpec& spec, std::uint64_t need) { return sieve(spec, need); }

// ---- commands ----

Output cmd_sieve(const RunConfig& c, const LFunctionSpec& spec) {
  const CoefficientTable table = table_for(spec, *c.X);
  if (!c.cache.empty()) {
    std::ostringstream bin;
    write_binary(table, bin);
    write_atomic(c.cache, bin.str());
  }
  if (c.format == Format::csv) {
    std::ostringstream csv;
    write_csv(table, csv);
    return {csv.str()};
  }
  const auto& d = table.diagnostics();
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["x_max"] = table.x_max();
  doc["values"] = std::vector<double>(table.values().begin(), table.values().end());
  doc["diagnostics"] = {{"magnitude_violations", d.magnitude_violations},
                        {"magnitude_examples", d.magnitude_examples},
                        {"profile_violations", d.profile_violations}};
  return {to_json_text(doc)};
}

Output cmd_signs(const RunConfig& c, const LFunctionSpec& spec) {
  const CoefficientTable table = table_for(spec, *c.X);
  const SignChangeSummary s = count_sign_changes(table, *c.X, c.positions || c.format == Format::csv);
  if (c.format == Format::csv) {
    std::string csv = "position\n";
    for (auto m : s.change_positions) csv += std::to_string(m) + "\n";
    return {csv};
  }
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["x_max"] = s.x_max;
  doc["change_count"] = s.change_count;
  doc["zero_policy"] = "skip_zeros";
  if (c.positions) doc["change_positions"] = s.change_positions;
  return {to_json_text(doc)};
}

Output cmd_window(const RunConfig& c, const LFunctionSpec& spec) {
  const std::uint64_t X = *c.X, H = *c.H, M = *c.M;
  if (!c.sweep) {
    const CoefficientTable table = table_for(spec, X + H);
    const WindowReport w = window_sums(table, X, H, M);
    if (c.format == Format::csv)
      return {"x,H,M,S1,S2,detected,pairs\n" + std::to_string(w.x) + "," + std::to_string(H) + "," +
              std::to_string(M) + "," + format_double(w.S1) + "," + format_double(w.S2) + "," +
              (w.detected ? "1" : "0") + "," + std::to_string(w.pairs) + "\n"};
    json doc = header(c);
    doc["spec"] = spec_json(spec);
    doc["window"] = window_json(w);
    return {to_json_text(doc)};
  }
  const CoefficientTable table = table_for(spec, 2 * X + H);
  const WindowSweep sweep = sign_change_windows(table, X, H, M, kDetectionTolerance, c.stride, true);
  if (c.format == Format::csv) {
    std::string csv = "x,S1,S2,detected,pairs\n";
    for (const auto& w : sweep.reports)
      csv += std::to_string(w.x) + "," + format_double(w.S1) + "," + format_double(w.S2) + "," +
             (w.detected ? "1" : "0") + "," + std::to_string(w.pairs) + "\n";
    return {csv};
  }
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["sweep"] = sweep_json(sweep);
  json windows = json::array();
  for (const auto& w : sweep.reports) windows.push_back(window_json(w));
  doc["sweep"]["reports"] = std::move(windows);
  return {to_json_text(doc)};
}

std::string exponent_table(const ExponentReport& r) {
  std::ostringstream t;
  auto row = [&](const char* key, const std::string& value) {
    t << std::left;
    t.width(24);
    t << key << value << "\n";
  };
  row("theta", format_double(r.theta));
  row("kappa", format_double(r.kappa));
  row("epsilon", format_double(r.epsilon));
  row("kappa threshold", format_double(r.kappa_threshold));
  row("  high-theta branch", format_double(r.kappa_threshold_high));
  row("  low-theta branch", format_double(r.kappa_threshold_low));
  row("admissible", r.admissible ? "yes" : "no");
  row("delta", format_double(r.delta));
  row("delta max", r.delta_max ? format_double(*r.delta_max) : "-");
  row("H exponent", format_double(r.h_exponent.value));
  row("  allowed range", "[" + format_double(r.h_exponent.lower) + ", " + format_double(r.h_exponent.upper) + "]");
  row("sign-change exponent", format_double(r.signchange_exponent));
  row("branch", std::string(to_string(r.branch)) + (r.boundary ? " (boundary)" : ""));
  return t.str();
}

Output cmd_exponents(const RunConfig& c) {
  ExponentInputs in;
  in.theta = c.theta;
  in.degree = c.degree;
  in.kappa = c.kappa.value_or(1.0);
  in.epsilon = c.epsilon;
  const ExponentReport r = exponent_report(in);
  if (c.table) return {exponent_table(r)};
  if (c.format == Format::csv) {
    std::string csv = "key,value\n";
    for (auto& [key, value] : exponent_json(r).items())
      if (value.is_number()) csv += key + "," + format_double(value.get<double>()) + "\n";
    return {csv};
  }
  json doc = header(c);
  doc["report"] = exponent_json(r);
  if (c.degree) doc["degree"] = *c.degree;
  return {to_json_text(doc)};
}

Output cmd_moment(const RunConfig& c, const LFunctionSpec& spec) {
  const std::uint64_t M = *c.M;
  const bool use_K = c.poly == PolyChoice::K;
  const std::uint64_t need = use_K ? 3 * *c.X / M : 2 * M;
  const CoefficientTable table = table_for(spec, std::max<std::uint64_t>(need, 1));
  const DirichletPolynomial poly = use_K ? build_K(table, *c.X, M) : build_M(table, M);
  const SecondMoment sm = second_moment(poly, *c.T, c.step);
  const MvtRatio mvt = mvt_ratio(poly, *c.T, sm.step);
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["polynomial"] = {{"kind", use_K ? "K" : "M"}, {"n_lo", poly.n_lo}, {"n_hi", poly.n_hi()}};
  doc["T"] = *c.T;
  doc["second_moment"] = {
      {"value", sm.value}, {"error_estimate", sm.error_estimate}, {"step", sm.step}, {"nodes", sm.nodes}};
  doc["mvt"] = {{"ratio", mvt.ratio}, {"denominator", mvt.denominator}};
  return {to_json_text(doc)};
}

Output cmd_profile(const RunConfig& c, const LFunctionSpec& spec) {
  const std::uint64_t X = *c.X, M = *c.M;
  const CoefficientTable table = table_for(spec, std::max<std::uint64_t>(3 * X / M, 1));
  const double theta = c.theta.value_or(spec.effective_theta());
  const SubconvexityProfile p = k_subconvexity_profile(table, X, M, *c.T, theta, c.epsilon, c.step,
                                                       c.format == Format::csv);
  if (c.format == Format::csv) {
    std::string csv = "t,abs_K\n";
    for (std::size_t i = 0; i < p.profile->t_grid.size(); ++i)
      csv += format_double(p.profile->t_grid[i]) + "," + format_double(std::abs(p.profile->values[i])) + "\n";
    return {csv};
  }
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["profile"] = {{"X", p.X},       {"M", p.M},           {"T", p.T},
                    {"theta", p.theta}, {"eps_check", p.eps_check}, {"sup", p.sup},
                    {"t_at_sup", p.t_at_sup}, {"envelope", p.envelope}, {"ratio", p.ratio},
                    {"grid_points", p.grid_points}};
  return {to_json_text(doc)};
}

Output cmd_perron(const RunConfig& c, const LFunctionSpec& spec) {
  const std::uint64_t x = *c.X, H = *c.H, M = *c.M;
  const std::uint64_t need = std::max({x + H, 3 * x / M, 2 * M});
  const CoefficientTable table = table_for(spec, need);
  const PerronWindow p = perron_window(table, x, H, M, *c.T);
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["window"] = {{"x", x}, {"H", H}, {"M", M}};
  doc["perron"] = {{"contour_value", p.contour_value}, {"direct_value", p.direct_value},
                   {"abs_error", p.abs_error},         {"c", p.c},
                   {"T_cut", p.T_cut},                 {"step", p.step},
                   {"nodes", p.nodes}};
  return {to_json_text(doc)};
}

Output cmd_verify(const RunConfig& c, const LFunctionSpec& spec) {
  const CongruenceSuite suite = verify_congruence_identity(spec, c.dmax, {c.s, 0.0}, c.trunc);
  json doc = header(c);
  doc["target"] = c.verify_target;
  doc["spec"] = spec_json(spec);
  doc["s"] = complex_json(suite.s);
  doc["N_trunc"] = suite.N_trunc;
  doc["d_max"] = suite.d_max;
  doc["growth_constant"] = suite.growth_constant;
  json checks = json::array();
  for (const auto& k : suite.checks)
    checks.push_back({{"d", k.d},
                      {"lhs", series_json(k.lhs)},
                      {"rhs", series_json(k.rhs)},
                      {"abs_diff", k.abs_diff},
                      {"budget", k.budget},
                      {"pass", k.pass}});
  doc["checks"] = std::move(checks);
  doc["all_pass"] = suite.all_pass;
  return {to_json_text(doc), suite.all_pass ? kExitOk : kExitVerificationFailed};
}

// H and M default to the scales of the argument: H ~ X^{2/5}, M ~ X^{1/10}.
std::uint64_t default_H(std::uint64_t X) {
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(X), 0.4))));
}
std::uint64_t default_M(std::uint64_t X) {
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(X), 0.1))));
}

Output cmd_theorem_check(const RunConfig& c, const LFunctionSpec& spec) {
  const std::uint64_t X = *c.X;
  const std::uint64_t H = c.H.value_or(default_H(X));
  const std::uint64_t M = c.M.value_or(default_M(X));
  if (H >= X) throw UsageError("theorem-check: need H < X");
  if (M >= X) throw UsageError("theorem-check: need M < X");
  const CoefficientTable table = table_for(spec, 2 * X + H);
  ConsistencyOptions options;
  options.theta = c.theta;
  options.kappa = c.kappa;
  options.epsilon = c.epsilon;
  const ConsistencyReport r = theorem_consistency(table, spec, X, H, M, options);
  json doc = header(c);
  doc["spec"] = spec_json(spec);
  doc["X"] = r.X;
  doc["H"] = r.H;
  doc["M"] = r.M;
  doc["theta"] = r.theta;
  doc["kappa"] = r.kappa;
  doc["kappa_estimated"] = r.kappa_estimated;
  doc["epsilon"] = r.epsilon;
  doc["predicted_exponent"] = r.exponent;
  doc["predicted_count"] = std::pow(static_cast<double>(X), r.exponent);
  doc["admissible"] = r.admissible;
  doc["observed_sign_changes"] = r.observed;
  doc["log_ratio"] = r.log_ratio;
  doc["verdict"] = to_string(r.verdict);
  doc["caveats"] = r.caveats;
  if (r.windows) doc["windows"] = sweep_json(*r.windows);
  return {to_json_text(doc), r.verdict == Verdict::fail ? kExitVerificationFailed : kExitOk};
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Sign changes of Dirichlet coefficients of L-functions", "selberg-signs"};
  app.require_subcommand(1);

  auto* sieve_cmd = app.add_subcommand("sieve", "coefficient table A(1..X)");
  add_flags(*sieve_cmd, c, {.spec = true, .x = true, .format = true});
  sieve_cmd->add_option("--cache", c.cache, "also write the binary table cache here");

  auto* signs_cmd = app.add_subcommand("signs", "count sign changes up to X");
  add_flags(*signs_cmd, c, {.spec = true, .x = true, .format = true});
  signs_cmd->add_flag("--positions", c.positions, "list the change positions");

  auto* window_cmd = app.add_subcommand("window", "short-interval sums S1, S2");
  add_flags(*window_cmd, c, {.spec = true, .x = true, .H = true, .M = true, .format = true});
  window_cmd->add_flag("--sweep", c.sweep, "sweep windows over [X, 2X]");
  window_cmd->add_option("--stride", c.stride, "sweep stride (default H)");

  auto* exp_cmd = app.add_subcommand("exponents", "exponent calculus");
  add_flags(*exp_cmd, c, {.theta = true, .kappa = true, .epsilon = true, .degree = true, .format = true});
  exp_cmd->add_flag("--table", c.table, "human-readable table");

  auto* moment_cmd = app.add_subcommand("moment", "second moment on the critical line");
  add_flags(*moment_cmd, c, {.spec = true, .x = true, .M = true, .T = true});
  moment_cmd->add_option("--poly", c.poly, "M (default) or K")
      ->transform(CLI::CheckedTransformer(std::map<std::string, PolyChoice>{{"M", PolyChoice::M}, {"K", PolyChoice::K}}));
  moment_cmd->add_option("--step", c.step, "grid step");

  auto* profile_cmd = app.add_subcommand("profile", "sup |K(1/2 + it)| against the envelope");
  add_flags(*profile_cmd, c, {.spec = true, .x = true, .M = true, .T = true, .theta = true, .epsilon = true, .format = true});
  profile_cmd->add_option("--step", c.step, "grid step");

  auto* perron_cmd = app.add_subcommand("perron", "Perron integral against the direct window sum");
  add_flags(*perron_cmd, c, {.spec = true, .x = true, .H = true, .M = true, .T = true});

  auto* verify_cmd = app.add_subcommand("verify", "identity verification suites");
  verify_cmd->add_option("target", c.verify_target, "identities")->required();
  add_flags(*verify_cmd, c, {.spec = true});
  verify_cmd->add_option("--dmax", c.dmax, "largest squarefree d");
  verify_cmd->add_option("--s", c.s, "real point s > 1");
  verify_cmd->add_option("--trunc", c.trunc, "truncation N");

  auto* check_cmd = app.add_subcommand("theorem-check", "observed sign changes against X^e");
  add_flags(*check_cmd, c, {.spec = true, .x = true, .H = true, .M = true, .theta = true, .kappa = true, .epsilon = true});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::pair<CLI::App*, Command> table[] = {
      {sieve_cmd, Command::sieve},     {signs_cmd, Command::signs},     {window_cmd, Command::window},
      {exp_cmd, Command::exponents},   {moment_cmd, Command::moment},   {profile_cmd, Command::profile},
      {perron_cmd, Command::perron},   {verify_cmd, Command::verify},   {check_cmd, Command::theorem_check}};
  for (const auto& [sub, command] : table)
    if (sub->parsed()) c.command = command;
  validate(c);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Output result;
  try {
    if (config.command == Command::exponents) {
      result = cmd_exponents(config);
    } else {
      const LFunctionSpec spec = load_spec(config.spec_path);
      switch (config.command) {
        case Command::sieve:
          result = cmd_sieve(config, spec);
          break;
        case Command::signs:
          result = cmd_signs(config, spec);
          break;
        case Command::window:
          result = cmd_window(config, spec);
          break;
        case Command::moment:
          result = cmd_moment(config, spec);
          break;
        case Command::profile:
          result = cmd_profile(config, spec);
          break;
        case Command::perron:
          result = cmd_perron(config, spec);
          break;
        case Command::verify:
          result = cmd_verify(config, spec);
          break;
        case Command::theorem_check:
          result = cmd_theorem_check(config, spec);
          break;
        case Command::exponents:
          break;
      }
    }
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SpecFormatError& e) {
    err << "spec error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range and domain_error from the library.
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (config.output.empty()) {
      out << result.text;
      out.flush();
      if (!out) throw std::system_error(errno, std::generic_category(), "write to stdout failed");
    } else {
      write_atomic(config.output, result.text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return result.code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace selberg::cli
