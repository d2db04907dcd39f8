// Command-line front end: spectra, classification, the verification suite and
// the extremal enumeration, written as JSON or CSV.
#include "cosk/bochner.hpp"
#include "cosk/cone.hpp"
#include "cosk/extremal.hpp"
#include "cosk/io.hpp"
#include "cosk/models.hpp"
#include "cosk/second_kind.hpp"
#include "cosk/tensor.hpp"
#include "cosk/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kSuiteFailure = 1, kParseError = 2, kSymmetryDefect = 3, kNotApplicable = 4 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string model;
  int n = 4;
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> tol;
  std::optional<double> theta;
  double alpha = 2.0;
  double epsilon = 0.05;
  std::string out;
  std::string format = "json";
  std::vector<int> dims{4, 5, 8, 9, 10};
  int restarts = 200;
  int grid = 2001;
  std::optional<double> beta;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("COSK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw cosk::ParseError(std::string("COSK_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

cosk::CurvatureTensord load_source(const RunConfig& cfg, double tol) {
  if (!cfg.input.empty()) return cosk::CurvatureTensord::from_table(cosk::load_tensor(cfg.input), tol);
  if (cfg.model.empty()) throw std::invalid_argument("one of --input or --model is required");
  return cosk::make_model({cfg.model, cfg.n, cfg.seed, cfg.epsilon});
}

std::optional<double> cone_theta(const RunConfig& cfg, int n) {
  if (cfg.theta) return cfg.theta;
  if (cosk::theta_defined(n)) return cosk::to_double(cosk::theta_of_n(n));
  return std::nullopt;
}

int cmd_spectrum(const RunConfig& cfg) {
  const auto r = load_source(cfg, cfg.tol.value_or(cosk::kDefaultTol));
  const cosk::Spectrumd spec = cosk::second_kind_spectrum(r);
  if (cfg.format == "csv") {
    std::string text = "index,value\n";
    for (int j = 0; j < spec.size(); ++j) text += std::to_string(j) + "," + num(spec.values(j)) + "\n";
    emit(cfg, text);
    return kOk;
  }
  nlohmann::json j = cosk::to_json(spec);
  if (const auto theta = cone_theta(cfg, r.dim()); theta && spec.size() > 1) {
    const cosk::ConeParams params(cfg.alpha, *theta);
    nlohmann::json cone = cosk::to_json(cosk::cone_membership(spec, params));
    cone["alpha"] = cfg.alpha;
    cone["theta"] = *theta;
    j["cone"] = cone;
  }
  emit(cfg, dump(j));
  return kOk;
}

int cmd_classify(const RunConfig& cfg) {
  const auto r = load_source(cfg, cfg.tol.value_or(cosk::kDefaultTol));
  cosk::ClassifyOptions opt;
  opt.theta = cfg.theta;
  const cosk::Classification c = cosk::classify_einstein(r, opt);
  if (cfg.format == "csv") {
    std::string text = "field,value\nverdict," + std::string(cosk::to_string(c.verdict)) + "\n";
    if (c.report) {
      const auto& rep = *c.report;
      text += "n," + std::to_string(rep.n) + "\ntheta," + num(rep.theta) + "\nlambda_bar," + num(rep.lambda_bar) +
              "\ndelta_r_inner," + num(rep.delta_r_inner) + "\nf_lower," + num(rep.f_lower) + "\ncone_status," +
              std::string(cosk::to_string(rep.cone.status)) + "\ncone_margin," + num(rep.cone.margin) + "\n";
    }
    emit(cfg, text);
  } else {
    emit(cfg, dump(cosk::to_json(c)));
  }
  return c.verdict == cosk::Verdict::not_applicable ? kNotApplicable : kOk;
}

cosk::CheckResult check_input(const cosk::CurvatureTensord& r, double tol) {
  cosk::CheckResult c{"input_tensor", r.dim(), true, 0, 1, ""};
  const cosk::SymmetryDefect d = cosk::symmetry_check(r.table());
  c.max_defect = d.max();
  c.passed = c.max_defect <= tol;
  const cosk::Classification cls = cosk::classify_einstein(r);
  c.note = "verdict " + std::string(cosk::to_string(cls.verdict));
  if (cls.report && cls.report->cone.status != cosk::ConeStatus::violated) {
    const double delta = cls.report->delta_r_inner;
    c.note += ", <Delta R, R> = " + num(delta);
    if (delta < -1e-8) c.passed = false;
  }
  return c;
}

int cmd_verify(const RunConfig& cfg) {
  cosk::VerifyConfig vc;
  vc.dims = cfg.dims;
  vc.trials = cfg.trials;
  vc.seed = cfg.seed;
  vc.tol = cfg.tol.value_or(1e-9);
  vc.restarts = cfg.restarts;
  vc.grid = cfg.grid;

  std::optional<cosk::CurvatureTensord> input;
  if (!cfg.input.empty() || !cfg.model.empty()) input = load_source(cfg, cosk::kDefaultTol);

  cosk::VerifyReport rep = cosk::run_verify(vc);
  if (input) rep.checks.insert(rep.checks.begin(), check_input(*input, cosk::kDefaultTol));

  if (cfg.format == "csv") {
    std::string text = "name,n,passed,max_defect,count\n";
    for (const auto& c : rep.checks) {
      text += c.name + "," + std::to_string(c.n) + "," + (c.passed ? "true" : "false") + "," + num(c.max_defect) +
              "," + std::to_string(c.count) + "\n";
    }
    emit(cfg, text);
  } else {
    emit(cfg, dump(cosk::to_json(rep)));
  }
  if (const auto failure = rep.first_failure()) {
    std::cerr << "verify: check failed: " << *failure << "\n";
    return kSuiteFailure;
  }
  return kOk;
}

int cmd_extremal(const RunConfig& cfg) {
  const int big_n = cosk::traceless_dim(cfg.n);
  double beta = 0;
  if (cfg.beta) {
    beta = *cfg.beta;
  } else if (const auto theta = cone_theta(cfg, cfg.n)) {
    beta = 1.0 + *theta;
  } else {
    throw cosk::NotApplicable("theta(n) is not available for n = " + std::to_string(cfg.n) +
                              "; pass --theta or --beta");
  }
  cosk::EnumerateOptions opt;
  opt.grid = cfg.grid;
  opt.restarts = cfg.restarts;
  opt.seed = cfg.seed;
  const cosk::ExtremalReport rep = cosk::enumerate_minimum(big_n, beta, opt);
  if (cfg.format == "csv") {
    std::string text = "minimizer,index,value\n";
    for (std::size_t m = 0; m < rep.minimizers.size(); ++m) {
      for (Eigen::Index i = 0; i < rep.minimizers[m].size(); ++i) {
        text += std::to_string(m) + "," + std::to_string(i) + "," + num(rep.minimizers[m](i)) + "\n";
      }
    }
    emit(cfg, text);
  } else {
    emit(cfg, dump(cosk::to_json(rep)));
  }
  return kOk;
}

int cmd_export(const RunConfig& cfg) {
  const auto r = load_source(cfg, cfg.tol.value_or(cosk::kDefaultTol));
  emit(cfg, dump(cosk::tensor_to_json(r)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature operators of the second kind on Einstein tensors"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_source = [&cfg](CLI::App* sub) {
    auto* in = sub->add_option("--input", cfg.input, "Tensor JSON file");
    sub->add_option("--model", cfg.model, "Built-in model: sphere, flat, near_sphere, fubini_study")
        ->excludes(in)
        ->check(CLI::IsMember({"sphere", "flat", "near_sphere", "fubini_study"}));
    sub->add_option("--n", cfg.n, "Dimension for built-in models")->check(CLI::Range(2, 64));
    sub->add_option("--epsilon", cfg.epsilon, "Weyl perturbation size for near_sphere");
  };
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed (default: $COSK_SEED or 0)");
    sub->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the curvature operator of the second kind");
  add_source(spectrum);
  add_common(spectrum);
  spectrum->add_option("--theta", cfg.theta, "Cone parameter theta");
  spectrum->add_option("--alpha", cfg.alpha, "Cone parameter alpha");

  auto* classify = app.add_subcommand("classify", "Classify an Einstein tensor");
  add_source(classify);
  add_common(classify);
  classify->add_option("--theta", cfg.theta, "Override theta(n)");

  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  add_source(verify);
  add_common(verify);
  verify->add_option("--trials", cfg.trials, "Random instances per check")->check(CLI::PositiveNumber);
  verify->add_option("--dims", cfg.dims, "Dimensions to check")->check(CLI::Range(3, 64));
  verify->add_option("--restarts", cfg.restarts, "Descent restarts")->check(CLI::PositiveNumber);
  verify->add_option("--grid", cfg.grid, "Boundary a-grid size")->check(CLI::Range(2, 1000000));

  auto* extremal = app.add_subcommand("extremal", "Enumerate the minimum of F on the feasible set");
  add_common(extremal);
  extremal->add_option("--n", cfg.n, "Dimension (N = dim S^2_0)")->check(CLI::Range(3, 64));
  extremal->add_option("--theta", cfg.theta, "Use beta = 1 + theta");
  extremal->add_option("--beta", cfg.beta, "Use this beta directly");
  extremal->add_option("--restarts", cfg.restarts, "Descent restarts")->check(CLI::PositiveNumber);
  extremal->add_option("--grid", cfg.grid, "Boundary a-grid size")->check(CLI::Range(2, 1000000));

  auto* exporter = app.add_subcommand("export", "Write a tensor in the canonical file format");
  add_source(exporter);
  add_common(exporter);

  try {
    cfg.seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  } catch (const cosk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (extremal->parsed()) return cmd_extremal(cfg);
    return cmd_export(cfg);
  } catch (const cosk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const cosk::SymmetryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSymmetryDefect;
  } catch (const cosk::NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kNotApplicable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
}
