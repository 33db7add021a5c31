#include "tvd/cli.hpp"

#include "tvd/bernoulli.hpp"
#include "tvd/bounds.hpp"
#include "tvd/distance_one.hpp"
#include "tvd/equivalence.hpp"
#include "tvd/gadgets.hpp"
#include "tvd/lmc_format.hpp"
#include "tvd/simulator.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tvd {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw InputError(std::string(flag) + ": expected a rational p/q, got '" + text + "'");
  }
}

// Accepts p/q as well as decimal notation such as 1e-9.
double real_arg(const std::string& text, const char* flag) {
  try {
    return to_double(parse_rational(text));
  } catch (const std::invalid_argument&) {
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InputError(std::string(flag) + ": expected a number, got '" + text + "'");
  }
  return value;
}

std::string float_string(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

struct ApproxArgs {
  std::string file;
  std::string eps;
  std::size_t max_depth = ApproxOptions{}.max_depth;
  bool history = false;
  bool strict = false;
  bool show_float = false;
  std::string threshold;
  std::string csv;
  unsigned jobs = 1;
};

int run_approx(const ApproxArgs& a, std::ostream& out) {
  const Rational eps = rational_arg(a.eps, "--eps");
  if (sgn(eps) <= 0) throw InputError("--eps must be positive");
  std::optional<Rational> threshold;
  if (!a.threshold.empty()) threshold = rational_arg(a.threshold, "--threshold");

  const auto instance = read_lmc_file(a.file);
  const auto report = approximate(instance, eps, ApproxOptions{a.max_depth, a.jobs});

  out << "lower=" << to_string(report.bracket.lower) << " upper=" << to_string(report.bracket.upper)
      << " status=" << to_string(report.status) << "\n";
  if (a.show_float) {
    out << "lower≈" << float_string(to_double(report.bracket.lower)) << " upper≈"
        << float_string(to_double(report.bracket.upper)) << "\n";
  }
  if (a.history) {
    for (const auto& b : report.history) {
      out << "depth=" << b.depth << " lower=" << to_string(b.lower) << " upper=" << to_string(b.upper) << "\n";
    }
  }
  if (threshold) {
    const char* verdict = "undecided";
    if (report.bracket.lower > *threshold) {
      verdict = "above";
    } else if (report.bracket.upper < *threshold) {
      verdict = "below";
    }
    out << "threshold=" << to_string(*threshold) << " " << verdict << "\n";
  }
  if (!a.csv.empty()) {
    auto csv = open_output(a.csv);
    csv << "depth,lower,upper\n";
    for (const auto& b : report.history) {
      csv << b.depth << "," << to_string(b.lower) << "," << to_string(b.upper) << "\n";
    }
    if (report.history.empty()) {
      csv << report.bracket.depth << "," << to_string(report.bracket.lower) << ","
          << to_string(report.bracket.upper) << "\n";
    }
  }
  if (a.strict && report.status == ApproxStatus::DepthCapped) return kExitRefused;
  return kExitOk;
}

struct GadgetArgs {
  std::string family;
  std::vector<std::string> xs;
  std::string theta;
  std::vector<unsigned long> s;
  unsigned long t = 1;
  std::string output;
};

gadgets::GadgetSpec gadget_spec(const GadgetArgs& a) {
  const auto single_x = [&]() {
    if (a.xs.size() != 1) throw InputError(a.family + " takes exactly one --x");
    return rational_arg(a.xs.front(), "--x");
  };
  if (a.family == "example1") return gadgets::Example1{};
  if (a.family == "two-state") return gadgets::TwoState{};
  if (a.family == "irrational") return gadgets::Irrational{single_x()};
  if (a.family == "parallel") {
    if (a.xs.empty()) throw InputError("parallel needs at least one --x");
    gadgets::Parallel p;
    for (const auto& x : a.xs) p.xs.push_back(rational_arg(x, "--x"));
    return p;
  }
  if (a.family == "bernoulli") {
    if (a.theta.empty()) throw InputError("bernoulli needs --theta");
    return gadgets::BernoulliChain{rational_arg(a.theta, "--theta"), single_x()};
  }
  if (a.family == "sqrt-sum") {
    if (a.s.empty()) throw InputError("sqrt-sum needs at least one --s");
    return gadgets::SqrtSum{a.s, a.t};
  }
  throw InputError("unknown gadget family '" + a.family + "'");
}

int run_gadget(const GadgetArgs& a, std::ostream& out) {
  const auto spec = gadget_spec(a);
  const auto generated = gadgets::generate(spec);
  write_lmc_file(a.output, generated.instance);
  out << "wrote " << a.output << "\n";
  if (!std::holds_alternative<gadgets::BernoulliChain>(spec)) {
    const SurdSum d = gadgets::closed_form(spec);
    out << "distance=" << d.to_string() << " ≈" << float_string(d.to_double()) << "\n";
  }
  if (generated.threshold) out << "tau=" << to_string(*generated.threshold) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Total variation distance between labelled Markov chains", "tvd"};
  app.require_subcommand(1);

  std::string file;

  auto* equiv = app.add_subcommand("equiv", "Decide whether init1 and init2 are equivalent");
  equiv->add_option("FILE", file, ".lmc instance")->required();

  auto* dist1 = app.add_subcommand("dist1", "Decide whether the distance is 1");
  dist1->add_option("FILE", file, ".lmc instance")->required();

  ApproxArgs approx_args;
  auto* approx = app.add_subcommand("approx", "Bracket the distance within eps");
  approx->add_option("FILE", approx_args.file, ".lmc instance")->required();
  approx->add_option("--eps", approx_args.eps, "Target bracket width (rational)")->required();
  approx->add_option("--max-depth", approx_args.max_depth, "Deepest word length explored")
      ->capture_default_str();
  approx->add_flag("--history", approx_args.history, "Print the bracket at every depth");
  approx->add_flag("--strict", approx_args.strict, "Exit with 1 if the depth cap is hit");
  approx->add_flag("--float", approx_args.show_float, "Also print decimal approximations");
  approx->add_option("--threshold", approx_args.threshold, "Compare the distance against this rational");
  approx->add_option("--csv", approx_args.csv, "Write depth,lower,upper rows");
  approx->add_option("--jobs", approx_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string theta_text, x_text, tol_text;
  std::size_t grid = bernoulli::kDefaultGridPoints;
  std::string bernoulli_csv;
  auto* bern = app.add_subcommand("bernoulli", "Solve for f and evaluate d_theta(x)");
  bern->add_option("--theta", theta_text, "theta > 1")->required();
  bern->add_option("--x", x_text, "Point in [-1/2, 1/2]")->required();
  bern->add_option("--grid", grid, "Odd number of grid points")->capture_default_str();
  bern->add_option("--tol", tol_text, "Fixed-point tolerance");
  bern->add_option("--csv", bernoulli_csv, "Write x,f,d rows");

  GadgetArgs gadget_args;
  auto* gadget = app.add_subcommand("gadget", "Write a gadget instance and print its distance");
  gadget
      ->add_option("FAMILY", gadget_args.family,
                   "example1 | two-state | irrational | parallel | bernoulli | sqrt-sum")
      ->required();
  gadget->add_option("--x", gadget_args.xs, "Parameter x (repeat or comma-separate for parallel)")
      ->delimiter(',');
  gadget->add_option("--theta", gadget_args.theta, "theta for bernoulli");
  gadget->add_option("--s", gadget_args.s, "Integers s_i for sqrt-sum")->delimiter(',');
  gadget->add_option("--t", gadget_args.t, "Integer t for sqrt-sum");
  gadget->add_option("-o,--output", gadget_args.output, "Output .lmc path")->required();

  McOptions mc;
  std::size_t trajectories = 0;
  std::string sample_csv;
  auto* sample = app.add_subcommand("sample", "Monte-Carlo estimate of the distance");
  sample->add_option("FILE", file, ".lmc instance")->required();
  sample->add_option("--len", mc.run_length, "Run length")->required()->check(CLI::PositiveNumber);
  sample->add_option("--samples", mc.samples, "Runs per side")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", mc.seed, "64-bit seed")->required();
  sample->add_option("--jobs", mc.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--csv", sample_csv, "Write side,run,i,L rows for a few runs");
  sample->add_option("--trajectories", trajectories, "Runs per side in the CSV")->default_val(10);

  std::vector<std::string> argv_storage{"tvd"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*equiv) {
      const auto instance = read_lmc_file(file);
      out << (distance_zero(instance) ? "equivalent" : "not-equivalent") << "\n";
      return kExitOk;
    }
    if (*dist1) {
      const auto instance = read_lmc_file(file);
      out << (distance_one(instance) ? "distance=1" : "distance<1") << "\n";
      return kExitOk;
    }
    if (*approx) return run_approx(approx_args, out);
    if (*bern) {
      const double theta = real_arg(theta_text, "--theta");
      const double x = real_arg(x_text, "--x");
      const double tol = tol_text.empty() ? bernoulli::kDefaultTolerance : real_arg(tol_text, "--tol");
      if (!(theta > 1.0)) throw InputError("--theta must exceed 1");
      if (!(x >= -0.5 && x <= 0.5)) throw InputError("--x must lie in [-1/2, 1/2]");
      if (!(tol > 0.0)) throw InputError("--tol must be positive");
      const auto solution = bernoulli::solve_f(theta, grid, tol);
      out << "d_theta=" << float_string(bernoulli::d_theta(solution.f, x)) << "\n";
      if (!bernoulli_csv.empty()) {
        auto csv = open_output(bernoulli_csv);
        bernoulli::write_csv(csv, solution.f);
      }
      return kExitOk;
    }
    if (*gadget) return run_gadget(gadget_args, out);
    if (*sample) {
      const auto instance = read_lmc_file(file);
      const auto est = estimate_distance_mc(instance, mc);
      out << "estimate=" << float_string(est.estimate) << " stderr=" << float_string(est.std_error) << "\n";
      out << "p1=" << float_string(est.p1) << " p2=" << float_string(est.p2) << "\n";
      out << "mean_L=" << float_string(est.mean_ratio_pi1) << " mean_L_stderr=" << float_string(est.mean_ratio_std_error)
          << "\n";
      if (!sample_csv.empty()) {
        auto csv = open_output(sample_csv);
        write_trajectories_csv(csv, instance, mc.run_length, trajectories, mc.seed);
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace tvd
