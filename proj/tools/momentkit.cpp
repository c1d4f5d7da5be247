// Command-line front end: moment checks, slit-plane evaluation, polylogs,
// Hadamard products, claim verification, and plot-ready magnitude sweeps.
//
// Exit codes: 0 pass, 1 claim violation, 2 usage / numeric / gate failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "momentkit/momentkit.hpp"

using namespace momentkit;

namespace {

double parse_double_token(const std::string& token, const char* what) {
  try {
    std::size_t pos = 0;
    double value = std::stod(token, &pos);
    if (pos != token.size())
      throw FormatError(std::string("trailing characters in ") + what + " '" +
                        token + "'");
    return value;
  } catch (const std::invalid_argument&) {
    throw FormatError(std::string("cannot parse ") + what + " '" + token + "'");
  } catch (const std::out_of_range&) {
    throw FormatError(std::string("out-of-range ") + what + " '" + token + "'");
  }
}

Complex parse_complex(const std::string& token) {
  std::size_t comma = token.find(',');
  if (comma == std::string::npos)
    throw FormatError("complex values are RE,IM pairs, got '" + token + "'");
  return Complex(parse_double_token(token.substr(0, comma), "real part"),
                 parse_double_token(token.substr(comma + 1), "imaginary part"));
}

// uniform | power:<p> | log_power:<alpha> | tabulated:<csv-path>
DensitySpec parse_density(const std::string& token) {
  if (token == "uniform") return DensitySpec::uniform();
  if (token.rfind("power:", 0) == 0)
    return DensitySpec::power(
        parse_double_token(token.substr(6), "power exponent"));
  if (token.rfind("log_power:", 0) == 0)
    return DensitySpec::log_power(
        parse_double_token(token.substr(10), "log_power order"));
  if (token.rfind("tabulated:", 0) == 0)
    return DensitySpec::tabulated(Measure::read_samples_csv(token.substr(10)));
  throw FormatError("unknown density '" + token +
                    "' (uniform | power:<p> | log_power:<alpha> | "
                    "tabulated:<csv-path>)");
}

StieltjesFunction load_function(const std::string& path) {
  return StieltjesFunction(Measure::read_file(path));
}

GridSpec parse_grid(const std::vector<std::string>& tokens) {
  std::vector<AxisSpec> axes;
  axes.reserve(tokens.size());
  for (const auto& token : tokens) axes.push_back(AxisSpec::parse(token));
  return GridSpec(axes);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open output file '" + path + "'");
  return out;
}

int run_check_cm(const std::string& file, int order, double tolerance,
                 bool tolerance_given) {
  std::ifstream in(file);
  if (!in) throw FormatError("cannot open sequence file '" + file + "'");
  MomentSequence seq = MomentSequence::read(in);
  double tol = tolerance_given
                   ? tolerance
                   : (seq.exact() ? 0.0 : verification_tolerance(1e-10));
  CMReport report = is_completely_monotone(seq, order, tol);
  std::cout << "check-cm: " << (report.passed ? "pass" : "FAIL")
            << ", mode=" << (seq.exact() ? "exact" : "float")
            << ", terms=" << seq.size() << ", max_order=" << report.max_order
            << ", tolerance=" << fmt17(report.base_tolerance)
            << ", min_difference=" << fmt17(report.min_difference);
  if (report.first_violation)
    std::cout << ", first_violation=(n=" << report.first_violation->order
              << ", k=" << report.first_violation->index
              << ", value=" << fmt17(report.first_violation->value) << ")";
  std::cout << "\n";
  return report.passed ? 0 : 1;
}

int run_moments(const std::string& measure_path, int count,
                const std::string& out_path) {
  Measure mu = Measure::read_file(measure_path);
  MomentSequence seq = moments_of(mu, count);
  if (out_path.empty()) {
    seq.write(std::cout);
  } else {
    auto out = open_output(out_path);
    seq.write(out);
  }
  return 0;
}

int run_eval(const std::string& measure_path, const std::string& z_token) {
  StieltjesFunction f = load_function(measure_path);
  SlitPoint z(parse_complex(z_token));
  EvalResult result = eval_with_error(f, z);
  std::cout << "value: " << fmt_complex(result.value) << "\n"
            << "abs_error: " << fmt17(result.abs_error) << "\n";
  return 0;
}

int run_polylog(double alpha, const std::string& z_token) {
  SlitPoint z(parse_complex(z_token));
  Complex value = li(alpha, z);
  double bound;
  if (alpha == 0.0) {
    bound = 4.5e-16 * std::abs(value);  // closed form, a few ulp
  } else {
    // independent quadrature route; bound folds in any branch deviation
    EvalResult g = eval_with_error(g_alpha(alpha), z, 1e-13);
    bound = std::abs(z.value()) * g.abs_error +
            std::abs(z.value() * g.value - value);
  }
  std::cout << "value: " << fmt_complex(value) << "\n"
            << "error_bound: " << fmt17(bound) << "\n";
  return 0;
}

int run_hadamard(const std::string& f_path, const std::string& g_path,
                 const std::string& z_token) {
  StieltjesFunction f = load_function(f_path);
  StieltjesFunction g = load_function(g_path);
  SlitPoint z(parse_complex(z_token));
  EvalResult result = hadamard_eval_with_error(f, g, z);
  std::cout << "value: " << fmt_complex(result.value) << "\n"
            << "abs_error: " << fmt17(result.abs_error) << "\n";
  return 0;
}

int run_counterexample(double eps) {
  double value = counterexample_value(eps);
  std::cout << fmt17(value) << "\n"
            << "violation of Eq.(1) at gamma=" << fmt17(1.0 + eps) << ": "
            << (value < 1.0 ? "yes" : "no") << "\n";
  return value < 1.0 ? 0 : 1;
}

int run_sweep(const std::string& measure_path, double gamma,
              const std::vector<std::string>& grid_tokens,
              const std::string& csv_path) {
  StieltjesFunction f = load_function(measure_path);
  GridSpec grid = parse_grid(grid_tokens);
  AxisSpec axis = grid.find("y") ? *grid.find("y") : default_y_axis();
  std::ofstream file;
  if (!csv_path.empty()) file = open_output(csv_path);
  std::ostream& os = csv_path.empty() ? std::cout : file;
  os << "y,abs_f,arg_f\n";
  for (double y : axis.points()) {
    Complex value = eval(f, SlitPoint(gamma, y));
    os << fmt17(y) << "," << fmt17(std::abs(value)) << ","
       << fmt17(std::arg(value)) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string claim;
  std::string f_path;
  std::string g_path;
  std::string sigma_token = "uniform";
  std::vector<double> gammas;
  std::vector<std::string> grid_tokens;
  std::string csv_path;
  double x = 0.5;
  int order = 8;
  double alpha = 1.0;
  double beta = 2.0;
  std::vector<double> eps_values;
};

int run_verify(const VerifyArgs& args) {
  GridSpec grid = parse_grid(args.grid_tokens);
  auto f_or_default = [&](const std::string& path) {
    return path.empty() ? g_alpha(1.0) : load_function(path);
  };
  VerificationReport report;
  if (args.claim == "thm1") {
    report = verify_theorem1(
        f_or_default(args.f_path),
        args.gammas.empty() ? default_gammas() : args.gammas, grid);
  } else if (args.claim == "cor1") {
    report = verify_corollary1(f_or_default(args.f_path),
                               args.gammas.empty() ? 0.0 : args.gammas.front(),
                               grid);
  } else if (args.claim == "thm2") {
    report = verify_theorem2(f_or_default(args.f_path),
                             f_or_default(args.g_path), grid);
  } else if (args.claim == "thm3") {
    report = verify_theorem3(parse_density(args.sigma_token), grid);
  } else if (args.claim == "thm4") {
    report = verify_theorem4(parse_density(args.sigma_token), args.x,
                             args.order);
  } else if (args.claim == "liquot") {
    report = verify_polylog_quotient(args.alpha, args.beta, args.order);
  } else if (args.claim == "counterexample") {
    report = args.eps_values.empty() ? verify_counterexample()
                                     : verify_counterexample(args.eps_values);
  } else {
    throw FormatError("unknown claim '" + args.claim + "'");
  }
  std::cout << report.summary() << "\n";
  if (!args.csv_path.empty()) {
    auto out = open_output(args.csv_path);
    report.write_csv(out);
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Hausdorff moment sequences, slit-plane generating functions, "
      "polylogarithms, and numerical verification of their inequalities"};
  app.require_subcommand(1);
  int exit_code = 0;

  // check-cm
  auto* check_cm = app.add_subcommand(
      "check-cm", "Check a sequence file for complete monotonicity");
  std::string cm_file;
  int cm_order = 8;
  double cm_tolerance = 0.0;
  check_cm->add_option("--file", cm_file, "sequence file, one scalar per line")
      ->required();
  check_cm->add_option("--order", cm_order, "highest difference order");
  auto* cm_tol_opt = check_cm->add_option(
      "--tolerance", cm_tolerance,
      "base tolerance (float sequences; exact sequences take 0)");
  check_cm->callback([&] {
    exit_code = run_check_cm(cm_file, cm_order, cm_tolerance,
                             cm_tol_opt->count() > 0);
  });

  // moments
  auto* moments = app.add_subcommand(
      "moments", "Moments of a measure file, written as a sequence file");
  std::string mo_measure, mo_out;
  int mo_count = 8;
  moments->add_option("--measure", mo_measure, "measure file")->required();
  moments->add_option("--count", mo_count, "number of moments");
  moments->add_option("--out", mo_out, "output path (default stdout)");
  moments->callback([&] { exit_code = run_moments(mo_measure, mo_count, mo_out); });

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate a measure's generating function on the slit plane");
  std::string ev_measure, ev_z;
  eval_cmd->add_option("--measure", ev_measure, "measure file")->required();
  eval_cmd->add_option("--z", ev_z, "evaluation point RE,IM")->required();
  eval_cmd->callback([&] { exit_code = run_eval(ev_measure, ev_z); });

  // polylog
  auto* polylog = app.add_subcommand("polylog", "Evaluate Li_alpha(z)");
  double pl_alpha = 1.0;
  std::string pl_z;
  polylog->add_option("--alpha", pl_alpha, "order in [0,50]")->required();
  polylog->add_option("--z", pl_z, "evaluation point RE,IM")->required();
  polylog->callback([&] { exit_code = run_polylog(pl_alpha, pl_z); });

  // hadamard
  auto* hadamard_cmd = app.add_subcommand(
      "hadamard", "Evaluate the Hadamard product of two measure files");
  std::string ha_f, ha_g, ha_z;
  hadamard_cmd->add_option("--f", ha_f, "first measure file")->required();
  hadamard_cmd->add_option("--g", ha_g, "second measure file")->required();
  hadamard_cmd->add_option("--z", ha_z, "evaluation point RE,IM")->required();
  hadamard_cmd->callback([&] { exit_code = run_hadamard(ha_f, ha_g, ha_z); });

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a claim over a grid");
  VerifyArgs va;
  verify
      ->add_option("claim", va.claim,
                   "thm1 | cor1 | thm2 | thm3 | thm4 | liquot | counterexample")
      ->required()
      ->check(CLI::IsMember({"thm1", "cor1", "thm2", "thm3", "thm4", "liquot",
                             "counterexample"}));
  verify->add_option("--f", va.f_path, "measure file (default: polylog g_1)");
  verify->add_option("--g", va.g_path,
                     "second measure file for thm2 (default: polylog g_1)");
  verify->add_option("--sigma", va.sigma_token,
                     "density for thm3/thm4: uniform | power:<p> | "
                     "log_power:<alpha> | tabulated:<csv-path>");
  verify->add_option("--gamma", va.gammas,
                     "horizontal offset(s); repeatable (thm1, cor1)");
  verify->add_option("--grid", va.grid_tokens,
                     "axis token name=lo:hi:count[:lin|:geom]; repeatable");
  verify->add_option("--csv", va.csv_path, "write violation rows as CSV");
  verify->add_option("--x", va.x, "scale factor for thm4, in (0,1]");
  verify->add_option("--order", va.order, "Taylor order for thm4/liquot");
  verify->add_option("--alpha", va.alpha, "liquot numerator order");
  verify->add_option("--beta", va.beta, "liquot denominator order");
  verify->add_option("--eps", va.eps_values,
                     "counterexample offsets; repeatable");
  verify->callback([&] { exit_code = run_verify(va); });

  // counterexample
  auto* counter = app.add_subcommand(
      "counterexample",
      "The two-atom ratio that beats Eq.(1) beyond gamma = 1");
  double ce_eps = 0.5;
  counter->add_option("--eps", ce_eps, "offset > 0; gamma = 1 + eps")
      ->required();
  counter->callback([&] { exit_code = run_counterexample(ce_eps); });

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "CSV of (y, |f(gamma+iy)|, arg f) along a vertical line");
  std::string sw_measure, sw_csv;
  double sw_gamma = 0.0;
  std::vector<std::string> sw_grid;
  sweep->add_option("--measure", sw_measure, "measure file")->required();
  sweep->add_option("--gamma", sw_gamma, "horizontal offset");
  sweep->add_option("--grid", sw_grid, "y-axis token; repeatable");
  sweep->add_option("--csv", sw_csv, "output path (default stdout)");
  sweep->callback(
      [&] { exit_code = run_sweep(sw_measure, sw_gamma, sw_grid, sw_csv); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const HypothesisViolationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
