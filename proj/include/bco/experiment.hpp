#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "bco/adversary.hpp"
#include "bco/bgd.hpp"
#include "bco/bounds.hpp"
#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/descent.hpp"
#include "bco/oracle.hpp"
#include "bco/random_stream.hpp"
#include "bco/reshape.hpp"
#include "bco/statistics.hpp"

namespace bco {

enum class Algorithm { BgdGeneral, BgdLipschitz, OgdFullInfo, SpallBgd };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::BgdGeneral: return "bgd-general";
    case Algorithm::BgdLipschitz: return "bgd-lipschitz";
    case Algorithm::OgdFullInfo: return "ogd-full-info";
    case Algorithm::SpallBgd: return "spall-bgd";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "bgd-general" || name == "general") return Algorithm::BgdGeneral;
  if (name == "bgd-lipschitz" || name == "lipschitz") return Algorithm::BgdLipschitz;
  if (name == "ogd-full-info") return Algorithm::OgdFullInfo;
  if (name == "spall-bgd") return Algorithm::SpallBgd;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

struct BodySpec {
  std::string shape = "ball";
  Eigen::Index dimension = 2;
  double radius = 1.0;
  /// Box half-widths; empty means `half_width` on every axis.
  Vector half_widths;
  double half_width = 1.0;
  /// Ellipsoid matrix, row-major.
  std::vector<double> matrix;
  /// Optional linear map applied to the shape: diagonal `stretch` or full `transform` (row-major).
  std::vector<double> stretch;
  std::vector<double> transform;
};

struct AdversarySpec {
  std::string name = "fixed-quadratic";
  /// Points are in the coordinates the body was described in.
  std::vector<double> target;
  std::vector<double> early;
  std::vector<double> late;
  std::optional<std::size_t> switch_round;
  std::optional<double> scale;
  /// Alternative to `scale`: choose the scale so the declared C equals this.
  std::optional<double> cost_bound;
  std::string schedule = "constant";
  std::vector<double> direction;
  double magnitude = 1.0;
  double period = 1000.0;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  BodySpec body;
  AdversarySpec adversary;
  Algorithm algorithm = Algorithm::BgdGeneral;
  std::size_t horizon = 1000;
  std::vector<std::uint64_t> seeds;
  bool reshape = false;
  std::size_t reshape_samples = 100000;
  std::uint64_t reshape_seed = 2024;
  std::optional<std::string> output_dir;
  /// Worker threads for trials; 0 uses the hardware concurrency.
  unsigned workers = 0;
  /// Samples for the `validate` subcommand.
  std::size_t validation_samples = 10000;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw ConfigError("key '" + key + "': '" + item + "' is not a decimal number");
    }
    out.push_back(v);
  }
  return out;
}

inline double parse_number(const std::string& text, const std::string& key) {
  const auto v = parse_list(text, key);
  if (v.size() != 1) throw ConfigError("key '" + key + "' expects a single number");
  return v.front();
}

inline std::uint64_t parse_integer(const std::string& text, const std::string& key) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a non-negative integer");
  }
  return v;
}

inline bool parse_switch(const std::string& text, const std::string& key) {
  if (text == "on" || text == "true" || text == "yes" || text == "1") return true;
  if (text == "off" || text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("key '" + key + "' expects on|off");
}

inline std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_integer(item, "seeds"));
  }
  return out;
}

inline std::vector<std::uint64_t> seed_range(std::uint64_t base, std::uint64_t count) {
  std::vector<std::uint64_t> out(count);
  std::iota(out.begin(), out.end(), base);
  return out;
}

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Matrix to_matrix(const std::vector<double>& v, Eigen::Index d, const char* key) {
  if (static_cast<Eigen::Index>(v.size()) != d * d) {
    throw ConfigError(std::string("key '") + key + "' needs d*d = " + std::to_string(d * d) + " entries");
  }
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v[static_cast<std::size_t>(i * d + j)];
  }
  return m;
}

}  // namespace detail

/// Parses the INI-style experiment grammar (see README for every key).
inline ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  static const std::vector<std::pair<std::string, std::vector<std::string>>> known = {
      {"experiment", {"algorithm", "horizon", "seeds", "trials", "base_seed", "reshape", "reshape_samples",
                      "reshape_seed", "workers", "validation_samples"}},
      {"body", {"shape", "dimension", "radius", "half_width", "half_widths", "matrix", "stretch", "transform"}},
      {"adversary", {"name", "target", "early", "late", "switch_round", "scale", "cost_bound", "schedule",
                     "direction", "magnitude", "period", "seed"}},
      {"output", {"dir"}},
  };
  for (const auto& [section, body] : tree) {
    auto it = std::find_if(known.begin(), known.end(), [&](const auto& k) { return k.first == section; });
    if (it == known.end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      }
    }
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
    return std::nullopt;
  };

  ExperimentConfig c;
  if (auto v = get("experiment.algorithm")) c.algorithm = parse_algorithm(*v);
  if (auto v = get("experiment.horizon")) c.horizon = detail::parse_integer(*v, "horizon");
  if (auto v = get("experiment.seeds")) c.seeds = detail::parse_seed_list(*v);
  if (auto v = get("experiment.trials")) {
    if (!c.seeds.empty()) throw ConfigError("give either 'seeds' or 'trials', not both");
    const auto base = get("experiment.base_seed");
    c.seeds = detail::seed_range(base ? detail::parse_integer(*base, "base_seed") : 0,
                                 detail::parse_integer(*v, "trials"));
  }
  if (auto v = get("experiment.reshape")) c.reshape = detail::parse_switch(*v, "reshape");
  if (auto v = get("experiment.reshape_samples")) c.reshape_samples = detail::parse_integer(*v, "reshape_samples");
  if (auto v = get("experiment.reshape_seed")) c.reshape_seed = detail::parse_integer(*v, "reshape_seed");
  if (auto v = get("experiment.workers")) c.workers = static_cast<unsigned>(detail::parse_integer(*v, "workers"));
  if (auto v = get("experiment.validation_samples")) {
    c.validation_samples = detail::parse_integer(*v, "validation_samples");
  }

  if (auto v = get("body.shape")) c.body.shape = *v;
  if (auto v = get("body.dimension")) c.body.dimension = static_cast<Eigen::Index>(detail::parse_integer(*v, "dimension"));
  if (auto v = get("body.radius")) c.body.radius = detail::parse_number(*v, "radius");
  if (auto v = get("body.half_width")) c.body.half_width = detail::parse_number(*v, "half_width");
  if (auto v = get("body.half_widths")) {
    c.body.half_widths = detail::to_vector(detail::parse_list(*v, "half_widths"));
    if (!get("body.dimension")) c.body.dimension = c.body.half_widths.size();
  }
  if (auto v = get("body.matrix")) c.body.matrix = detail::parse_list(*v, "matrix");
  if (auto v = get("body.stretch")) c.body.stretch = detail::parse_list(*v, "stretch");
  if (auto v = get("body.transform")) c.body.transform = detail::parse_list(*v, "transform");

  auto& a = c.adversary;
  if (auto v = get("adversary.name")) a.name = *v;
  if (auto v = get("adversary.target")) a.target = detail::parse_list(*v, "target");
  if (auto v = get("adversary.early")) a.early = detail::parse_list(*v, "early");
  if (auto v = get("adversary.late")) a.late = detail::parse_list(*v, "late");
  if (auto v = get("adversary.switch_round")) a.switch_round = detail::parse_integer(*v, "switch_round");
  if (auto v = get("adversary.scale")) a.scale = detail::parse_number(*v, "scale");
  if (auto v = get("adversary.cost_bound")) a.cost_bound = detail::parse_number(*v, "cost_bound");
  if (auto v = get("adversary.schedule")) a.schedule = *v;
  if (auto v = get("adversary.direction")) a.direction = detail::parse_list(*v, "direction");
  if (auto v = get("adversary.magnitude")) a.magnitude = detail::parse_number(*v, "magnitude");
  if (auto v = get("adversary.period")) a.period = detail::parse_number(*v, "period");
  if (auto v = get("adversary.seed")) a.seed = detail::parse_integer(*v, "seed");

  if (auto v = get("output.dir")) c.output_dir = *v;

  if (c.horizon < 1) throw ConfigError("horizon must be positive");
  if (c.body.dimension < 1) throw ConfigError("dimension must be positive");
  if (a.scale && a.cost_bound) throw ConfigError("give either 'scale' or 'cost_bound', not both");
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

/// Refuses configurations that cannot run: no trials, reshaping a
/// full-information run.
inline void check_runnable(const ExperimentConfig& c) {
  if (c.seeds.empty()) throw ConfigError("no trials requested (give 'seeds' or a positive 'trials')");
  if (c.reshape && c.algorithm == Algorithm::OgdFullInfo) {
    throw ConfigError("reshaping applies to the bandit algorithms only");
  }
}

inline ConvexBody build_body(const BodySpec& spec) {
  const Eigen::Index d = spec.dimension;
  ConvexBody body = [&] {
    if (spec.shape == "ball") return ConvexBody::ball(d, spec.radius);
    if (spec.shape == "box") {
      if (spec.half_widths.size() == 0) return ConvexBody::cube(d, spec.half_width);
      if (spec.half_widths.size() != d) throw ConfigError("half_widths must have 'dimension' entries");
      return ConvexBody::box(spec.half_widths);
    }
    if (spec.shape == "simplex") return ConvexBody::simplex(d);
    if (spec.shape == "ellipsoid") return ConvexBody::ellipsoid(detail::to_matrix(spec.matrix, d, "matrix"));
    throw ConfigError("unknown body shape '" + spec.shape + "'");
  }();
  if (!spec.stretch.empty() && !spec.transform.empty()) throw ConfigError("give either 'stretch' or 'transform'");
  if (!spec.stretch.empty()) {
    if (static_cast<Eigen::Index>(spec.stretch.size()) != d) throw ConfigError("stretch needs 'dimension' entries");
    body = ConvexBody::affine_image(detail::to_vector(spec.stretch).asDiagonal(), Vector::Zero(d), body);
  }
  if (!spec.transform.empty()) {
    body = ConvexBody::affine_image(detail::to_matrix(spec.transform, d, "transform"), Vector::Zero(d), body);
  }
  return body;
}

inline CostSequence build_costs(const AdversarySpec& spec, const ConvexBody& body, std::size_t horizon) {
  const Eigen::Index d = body.dimension();
  const Vector shift = body.origin_shift();
  auto point = [&](const std::vector<double>& v, const char* key) -> Vector {
    if (v.empty()) return Vector::Zero(d);
    if (static_cast<Eigen::Index>(v.size()) != d) throw ConfigError(std::string(key) + " needs 'dimension' entries");
    return detail::to_vector(v) - shift;
  };
  auto resolve_scale = [&](const Vector& farthest) {
    if (spec.cost_bound) return quadratic_scale_for_bound(body, farthest, *spec.cost_bound);
    return spec.scale.value_or(1.0);
  };

  if (spec.name == "fixed-quadratic") {
    const Vector target = point(spec.target, "target");
    return make_fixed_quadratic(body, horizon, target, resolve_scale(target));
  }
  if (spec.name == "abrupt-switch") {
    const Vector early = point(spec.early, "early");
    const Vector late = point(spec.late, "late");
    const Vector& farthest = early.norm() >= late.norm() ? early : late;
    return make_abrupt_switch(body, horizon, early, late, spec.switch_round.value_or(horizon / 2),
                              resolve_scale(farthest));
  }
  if (spec.name == "drifting-linear") {
    Vector w = Vector::Unit(d, 0);
    if (!spec.direction.empty()) {
      if (static_cast<Eigen::Index>(spec.direction.size()) != d) throw ConfigError("direction needs 'dimension' entries");
      w = detail::to_vector(spec.direction);
      if (!(w.norm() > 0.0)) throw ConfigError("direction must be nonzero");
    }
    std::vector<Vector> directions;
    if (spec.schedule == "constant") directions = constant_directions(w, horizon);
    else if (spec.schedule == "alternating") directions = alternating_directions(w, horizon);
    else if (spec.schedule == "rotating") directions = rotating_directions(d, horizon, spec.period);
    else if (spec.schedule == "random") directions = random_directions(d, horizon, spec.seed);
    else throw ConfigError("unknown direction schedule '" + spec.schedule + "'");
    const double magnitude = spec.cost_bound ? *spec.cost_bound / body.radii().outer : spec.magnitude;
    return make_drifting_linear(body, directions, magnitude);
  }
  throw ConfigError("unknown adversary '" + spec.name + "'");
}

/// One trial: per-round charged costs and the points they were charged at,
/// in the coordinates the body was described in.
struct TrialReport {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<Vector> points;
  std::vector<double> costs;
  std::vector<double> cumulative;
  double total = 0.0;
  /// Sum of c_t(y_t) at the centers; diagnostic for the bandit algorithms.
  double center_total = 0.0;
  double optimal_total = 0.0;
  double regret = 0.0;
  double wall_seconds = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string body_description;
  std::string adversary_name;
  /// Added to internal points to express them in the described coordinates.
  Vector origin_shift;
  std::vector<TrialReport> trials;
  OptimumReport optimum;
  MeanEstimate regret{};
  double bound = 0.0;
  BoundKind kind = BoundKind::General;
  std::optional<BgdParams> params;
  std::optional<DescentConfig> descent;
  std::optional<IsotropicRounding> rounding;
  /// Bound compliance: mean <= bound + 2 SE for bandit algorithms; every
  /// trial within bound plus oracle slack for full information.
  bool passed = false;
};

struct RunOptions {
  /// Order in which trial indices are handed to workers; empty means 0..k-1.
  std::vector<std::size_t> execution_order;
  /// Overrides config.workers when set.
  std::optional<unsigned> workers;
  OracleOptions oracle;
};

/// Runs every trial of an experiment and compares the mean regret with the
/// matching guarantee. Trials are independent and may run on several threads;
/// results are merged by trial index, so the report does not depend on
/// scheduling.
inline ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {}) {
  check_runnable(config);
  ExperimentReport report;
  report.config = config;

  const ConvexBody body = build_body(config.body);
  const CostSequence costs = build_costs(config.adversary, body, config.horizon);
  report.body_description = body.describe();
  report.adversary_name = costs.name();
  report.optimum = offline_optimum(costs, options.oracle);

  const std::size_t n = costs.horizon();
  const Eigen::Index d = costs.dimension();
  const Radii radii = body.radii();

  // The sequence the learner actually plays, and the map back to the user's coordinates.
  CostSequence played = costs;
  std::optional<AffineTransform> to_played;
  if (config.reshape) {
    RandomStream stream(config.reshape_seed, 0x7e5a);
    report.rounding = isotropic_transform(body, stream, config.reshape_samples);
    played = transform_costs(costs, *report.rounding);
    to_played = report.rounding->transform;
  }

  BoundInputs inputs{n, d, radii.inner, radii.outer, costs.bound(), costs.lipschitz()};
  if (config.reshape) inputs.kappa = report.rounding->kappa;
  const Radii played_radii = played.body().radii();

  switch (config.algorithm) {
    case Algorithm::BgdGeneral:
    case Algorithm::SpallBgd:
      report.params = params_general(n, d, played_radii.inner, played_radii.outer, played.bound());
      report.kind = config.reshape ? BoundKind::CorollaryGeneral : BoundKind::General;
      break;
    case Algorithm::BgdLipschitz:
      if (!played.lipschitz()) throw ConfigError("bgd-lipschitz needs an adversary with a declared L");
      report.params = params_lipschitz(n, d, played_radii.inner, played_radii.outer, played.bound(), *played.lipschitz());
      report.kind = config.reshape ? BoundKind::CorollaryLipschitz : BoundKind::Lipschitz;
      break;
    case Algorithm::OgdFullInfo: {
      if (!costs.lipschitz()) throw ConfigError("ogd-full-info needs an adversary with a declared L");
      // |grad c_t| <= L on S for differentiable L-Lipschitz costs.
      report.descent = DescentConfig::with_default_step(body, *costs.lipschitz(), n);
      report.kind = BoundKind::FullInformation;
      // R in place of D, matching the x_1 = 0 start.
      inputs.D = radii.outer;
      inputs.G = *costs.lipschitz();
      break;
    }
  }
  report.bound = bound_value(report.kind, inputs);

  const Vector shift = body.origin_shift();
  report.origin_shift = shift;
  const std::size_t k = config.seeds.size();
  report.trials.resize(k);

  auto run_trial = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    TrialReport trial;
    trial.trial = i;
    trial.seed = config.seeds[i];
    if (config.algorithm == Algorithm::OgdFullInfo) {
      const DescentRun run = run_full_information(costs, *report.descent);
      trial.points = run.iterates;
      trial.costs = run.costs;
      trial.total = run.total;
      trial.center_total = run.total;
    } else {
      RandomStream stream(trial.seed, i);
      const Perturbation p = config.algorithm == Algorithm::SpallBgd ? Perturbation::CubeVertex : Perturbation::Sphere;
      BanditRun run = run_bgd(played, *report.params, stream, p);
      trial.points = std::move(run.queries);
      if (to_played) {
        for (auto& x : trial.points) x = to_played->pull_back(x);
      }
      trial.costs = std::move(run.costs);
      trial.total = run.total;
      trial.center_total = run.center_total;
    }
    for (auto& x : trial.points) x += shift;
    trial.cumulative.resize(trial.costs.size());
    std::partial_sum(trial.costs.begin(), trial.costs.end(), trial.cumulative.begin());
    trial.optimal_total = report.optimum.total;
    trial.regret = trial.total - trial.optimal_total;
    trial.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.trials[i] = std::move(trial);
  };

  std::vector<std::size_t> order = options.execution_order;
  if (order.empty()) {
    order.resize(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  if (order.size() != k) throw InputError("execution order must list every trial once");

  unsigned workers = options.workers.value_or(config.workers);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, k));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto worker = [&](unsigned w) {
    try {
      for (std::size_t j = next++; j < k; j = next++) run_trial(order[j]);
    } catch (...) {
      errors[w] = std::current_exception();
      next = k;
    }
  };
  if (workers <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> regrets;
  regrets.reserve(k);
  for (const auto& t : report.trials) regrets.push_back(t.regret);
  report.regret = summarize(regrets);

  if (config.algorithm == Algorithm::OgdFullInfo) {
    const double slack = report.optimum.disagreement_threshold;
    report.passed = std::all_of(report.trials.begin(), report.trials.end(),
                                [&](const TrialReport& t) { return t.regret <= report.bound + slack; });
  } else {
    report.passed = report.regret.mean <= report.bound + 2.0 * report.regret.standard_error;
  }
  return report;
}

namespace detail {

inline void append_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

inline nlohmann::json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

inline nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

}  // namespace detail

/// `trial,seed,round,cost,cum_cost`, one row per round, trials in index order.
/// Numbers use the shortest round-trip representation.
inline void write_trials_csv(const ExperimentReport& report, std::ostream& out) {
  std::string line;
  out << "trial,seed,round,cost,cum_cost\n";
  for (const auto& t : report.trials) {
    for (std::size_t r = 0; r < t.costs.size(); ++r) {
      line.clear();
      line += std::to_string(t.trial);
      line += ',';
      line += std::to_string(t.seed);
      line += ',';
      line += std::to_string(r + 1);
      line += ',';
      detail::append_number(line, t.costs[r]);
      line += ',';
      detail::append_number(line, t.cumulative[r]);
      line += '\n';
      out << line;
    }
  }
}

/// `trial,seed,round,x1..xd`, the charged points.
inline void write_trajectory_csv(const ExperimentReport& report, std::ostream& out) {
  const Eigen::Index d = report.config.body.dimension;
  out << "trial,seed,round";
  for (Eigen::Index i = 0; i < d; ++i) out << ",x" << (i + 1);
  out << '\n';
  std::string line;
  for (const auto& t : report.trials) {
    for (std::size_t r = 0; r < t.points.size(); ++r) {
      line = std::to_string(t.trial) + ',' + std::to_string(t.seed) + ',' + std::to_string(r + 1);
      for (Eigen::Index i = 0; i < d; ++i) {
        line += ',';
        detail::append_number(line, t.points[r][i]);
      }
      line += '\n';
      out << line;
    }
  }
}

inline nlohmann::json summary_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["mean_regret"] = report.regret.mean;
  j["se"] = report.regret.standard_error;
  j["bound"] = report.bound;
  j["kind"] = to_string(report.kind);
  j["passed"] = report.passed;
  j["algorithm"] = to_string(report.config.algorithm);
  j["adversary"] = report.adversary_name;
  j["body"] = report.body_description;
  j["horizon"] = report.config.horizon;

  nlohmann::json params;
  if (report.params) {
    const BgdParams& p = *report.params;
    params = {{"schedule", to_string(p.schedule)},
              {"nu", p.nu},
              {"delta", p.delta},
              {"alpha", p.alpha},
              {"eta", p.eta()},
              {"G", p.gradient_bound()},
              {"n", p.horizon},
              {"d", p.dimension},
              {"r", p.inner_radius},
              {"R", p.outer_radius},
              {"C", p.cost_bound}};
    params["L"] = p.lipschitz ? nlohmann::json(*p.lipschitz) : nlohmann::json(nullptr);
  } else if (report.descent) {
    params = {{"eta", report.descent->eta},
              {"G", report.descent->gradient_bound},
              {"n", report.descent->horizon},
              {"R", report.descent->body.radii().outer}};
  }
  j["params"] = params;

  if (report.rounding) {
    j["kappa"] = report.rounding->kappa;
    j["transform"] = {{"matrix", detail::to_json(report.rounding->transform.matrix())},
                      {"offset", detail::to_json(report.rounding->transform.offset())},
                      {"inner_radius", report.rounding->inner_radius},
                      {"outer_radius", report.rounding->outer_radius},
                      {"condition_number", report.rounding->transform.condition_number()}};
  } else {
    j["kappa"] = nullptr;
  }

  nlohmann::json optimum = {{"x", detail::to_json(Vector(report.optimum.x + report.origin_shift))},
                            {"total", report.optimum.total},
                            {"descent_total", report.optimum.descent_total},
                            {"grid_points", report.optimum.grid_size},
                            {"disagreement", report.optimum.disagreement}};
  optimum["grid_total"] = report.optimum.grid_total ? nlohmann::json(*report.optimum.grid_total) : nlohmann::json(nullptr);
  j["optimum"] = optimum;

  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : report.trials) {
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"total", t.total},
                      {"center_total", t.center_total},
                      {"optimal_total", t.optimal_total},
                      {"regret", t.regret},
                      {"wall_seconds", t.wall_seconds}});
  }
  j["trials"] = trials;
  return j;
}

/// Writes trials.csv, trajectory.csv and summary.json into `dir`.
inline void write_outputs(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write '" + (dir / name).string() + "'");
    return out;
  };
  {
    auto out = open("trials.csv");
    write_trials_csv(report, out);
  }
  {
    auto out = open("trajectory.csv");
    write_trajectory_csv(report, out);
  }
  {
    auto out = open("summary.json");
    out << summary_json(report).dump(2) << '\n';
  }
}

}  // namespace bco
