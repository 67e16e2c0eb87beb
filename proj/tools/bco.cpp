// Command-line runner for bandit convex optimization experiments.
//
//   bco run --config exp.ini [--out dir] [--seeds 1,2,3 | --trials k --base-seed s] [--reshape]
//   bco params --algo bgd-general --n 10000 --d 2 --r 1 --R 1 --C 1 [--L 2]
//   bco validate --config exp.ini

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bco/bco.hpp"

namespace {

// Exit codes, one per failure class.
enum Exit : int {
  kPassed = 0,
  kBoundExceeded = 1,
  kConfigError = 2,
  kHorizonGuard = 3,
  kContractViolation = 4,
  kValidationFailed = 5,
  kOtherError = 6,
};

std::string format_vector(const bco::Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    bco::detail::append_number(out, v[i]);
  }
  return out + ")";
}

int run_command(const std::string& config_path, const std::optional<std::string>& out_dir,
                const std::vector<std::uint64_t>& seeds, std::optional<std::uint64_t> trials,
                std::uint64_t base_seed, bool reshape) {
  bco::ExperimentConfig config = bco::load_config(config_path);
  if (!seeds.empty()) config.seeds = seeds;
  if (trials) config.seeds = bco::detail::seed_range(base_seed, *trials);
  if (reshape) config.reshape = true;
  if (out_dir) config.output_dir = *out_dir;

  const bco::ExperimentReport report = bco::run_experiment(config);
  if (config.output_dir) bco::write_outputs(report, *config.output_dir);

  std::printf("algorithm   %s\n", bco::to_string(config.algorithm));
  std::printf("body        %s\n", report.body_description.c_str());
  std::printf("adversary   %s\n", report.adversary_name.c_str());
  std::printf("trials      %zu, horizon %zu\n", report.trials.size(), config.horizon);
  if (report.rounding) std::printf("kappa       %.6g\n", report.rounding->kappa);
  std::printf("optimum     %.10g at %s\n", report.optimum.total,
              format_vector(report.optimum.x + report.origin_shift).c_str());
  if (report.optimum.disagreement) {
    std::printf("warning     oracle disagreement: descent %.10g, grid %.10g\n", report.optimum.descent_total,
                report.optimum.grid_total.value_or(0.0));
  }
  std::printf("regret      %.6g +- %.3g (SE)\n", report.regret.mean, report.regret.standard_error);
  std::printf("bound       %.6g (%s)\n", report.bound, bco::to_string(report.kind));
  std::printf("result      %s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? kPassed : kBoundExceeded;
}

int params_command(const std::string& algo, std::size_t n, Eigen::Index d, double r, double R, double C,
                   std::optional<double> L) {
  const bco::Algorithm algorithm = bco::parse_algorithm(algo);
  bco::BgdParams p;
  bco::BoundInputs inputs{n, d, r, R, C, L};
  bco::BoundKind kind = bco::BoundKind::General;
  switch (algorithm) {
    case bco::Algorithm::BgdGeneral:
    case bco::Algorithm::SpallBgd:
      p = bco::params_general(n, d, r, R, C);
      break;
    case bco::Algorithm::BgdLipschitz:
      if (!L) throw bco::ConfigError("--L is required for the Lipschitz schedule");
      p = bco::params_lipschitz(n, d, r, R, C, *L);
      kind = bco::BoundKind::Lipschitz;
      break;
    case bco::Algorithm::OgdFullInfo:
      if (!L) throw bco::ConfigError("--L (the gradient bound G) is required for ogd-full-info");
      std::printf("eta    %.10g\n", R / (*L * std::sqrt(static_cast<double>(n))));
      inputs.D = R;
      inputs.G = *L;
      std::printf("bound  %.10g\n", bco::bound_value(bco::BoundKind::FullInformation, inputs));
      return kPassed;
  }
  std::printf("schedule  %s\n", bco::to_string(p.schedule));
  std::printf("nu        %.10g\n", p.nu);
  std::printf("delta     %.10g\n", p.delta);
  std::printf("alpha     %.10g\n", p.alpha);
  std::printf("eta       %.10g\n", p.eta());
  std::printf("G         %.10g\n", p.gradient_bound());
  std::printf("bound     %.10g\n", bco::bound_value(kind, inputs));
  return kPassed;
}

int validate_command(const std::string& config_path) {
  const bco::ExperimentConfig config = bco::load_config(config_path);
  const bco::ConvexBody body = bco::build_body(config.body);
  const bco::CostSequence costs = bco::build_costs(config.adversary, body, config.horizon);

  auto check = [&](const bco::CostSequence& seq, const char* label) {
    bco::RandomStream stream(config.adversary.seed, 0x7a11);
    const bco::ValidationReport v = bco::validate(seq, stream, config.validation_samples);
    std::printf("%-10s C = %.6g, L = %s, %zu checks: ", label, seq.bound(),
                seq.lipschitz() ? std::to_string(*seq.lipschitz()).c_str() : "none", v.checks);
    if (v.passed) {
      std::printf("ok\n");
      return true;
    }
    std::printf("%s violated at round %zu, x = %s", v.violation.c_str(), v.round + 1,
                format_vector(*v.witness).c_str());
    if (v.witness_other) std::printf(", y = %s", format_vector(*v.witness_other).c_str());
    std::printf(" (%.10g > %.10g)\n", v.observed, v.limit);
    return false;
  };

  bool ok = check(costs, "original");
  if (config.reshape) {
    bco::RandomStream stream(config.reshape_seed, 0x7e5a);
    const bco::IsotropicRounding rounding = bco::isotropic_transform(body, stream, config.reshape_samples);
    ok = check(bco::transform_costs(costs, rounding), "reshaped") && ok;
  }
  return ok ? kPassed : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bandit convex optimization experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment and compare regret with its guarantee");
  std::string run_config;
  std::optional<std::string> out_dir;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> trials;
  std::uint64_t base_seed = 0;
  bool reshape = false;
  run->add_option("--config", run_config, "Experiment config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory for trials.csv, trajectory.csv, summary.json");
  auto* seeds_opt = run->add_option("--seeds", seeds, "Comma-separated seed list")->delimiter(',');
  auto* trials_opt = run->add_option("--trials", trials, "Number of trials, seeded base-seed, base-seed+1, ...");
  auto* base_opt = run->add_option("--base-seed", base_seed, "First seed when using --trials");
  seeds_opt->excludes(trials_opt);
  base_opt->needs(trials_opt);
  run->add_flag("--reshape", reshape, "Put the body in near-isotropic position first");

  auto* params = app.add_subcommand("params", "Print the parameter schedule and bound");
  std::string algo;
  std::size_t n = 0;
  Eigen::Index d = 0;
  double r = 0.0, R = 0.0, C = 0.0;
  std::optional<double> L;
  params->add_option("--algo", algo, "bgd-general | bgd-lipschitz | spall-bgd | ogd-full-info")->required();
  params->add_option("--n", n, "Horizon")->required();
  params->add_option("--d", d, "Dimension")->required();
  params->add_option("--r", r, "Inner radius")->required();
  params->add_option("--R", R, "Outer radius")->required();
  params->add_option("--C", C, "Cost bound")->required();
  params->add_option("--L", L, "Lipschitz constant");

  auto* validate = app.add_subcommand("validate", "Check an adversary's declared constants and convexity");
  std::string validate_config;
  validate->add_option("--config", validate_config, "Experiment config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPassed : kConfigError;
  }

  try {
    if (*run) return run_command(run_config, out_dir, seeds, trials, base_seed, reshape);
    if (*params) return params_command(algo, n, d, r, R, C, L);
    if (*validate) return validate_command(validate_config);
  } catch (const bco::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const bco::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfigError;
  } catch (const bco::HorizonTooSmall& e) {
    std::cerr << "horizon guard: " << e.what() << '\n';
    return kHorizonGuard;
  } catch (const bco::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOtherError;
  }
  return kOtherError;
}
