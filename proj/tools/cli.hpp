#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/version.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frechet/frechet.hpp"
#include "frechet/io.hpp"
#include "frechet/svg.hpp"

namespace frechet::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kUsage = 1, kViolation = 2 };

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string out = ".";
  std::string config;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  double tol = kDefaultRelTol;
  unsigned workers = 0;

  // verify
  std::string structure;
  std::string space = "tripod";
  std::size_t dim = 3;
  std::size_t edges = 8;
  std::uint64_t tree_seed = 3;
  double alpha = 0.5;
  double diam = 0.0;
  std::string psi = "squared_norm";
  double box_lo = -1.0, box_hi = 1.0;
  std::string lemma;

  // counterexample
  double r = 1.0, eps = 1e-3;
  std::string which_case = "a";

  // mean
  std::string samples;
  std::string cost = "squared_distance";
  double two_alpha = 2.0;
  std::string method = "auto";

  // rates
  std::string statistic = "median";
  std::size_t tail_n = 0;
  double zeta = 2.0, gamma_minus = 1.0;

  // entropy
  double beta = 0.5, gamma = 2.0, alpha_ent = 0.5, radius = 1.0, spacing = 0.0, r_min = 0.05;
  std::size_t n = 100;
  std::optional<double> kappa;

  // report
  std::string csv, svg_out = "report.svg";

  // replay
  std::string manifest;
};

inline void write_manifest(const Options& o, const std::string& sub, const std::vector<std::string>& args) {
  json m;
  m["tool"] = "frechet";
  m["version"] = kVersion;
  m["subcommand"] = sub;
  m["argv"] = args;
  std::string hashed;
  for (const auto& a : args) hashed += a + '\n';
  if (!o.config.empty()) hashed += slurp(o.config);
  m["config_hash"] = hex(fnv1a(hashed));
  m["config"] = o.config;
  m["seed"] = o.seed;
  m["versions"] = {{"compiler", __VERSION__},
                   {"boost", BOOST_LIB_VERSION},
                   {"cli11", CLI11_VERSION},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  io::write_text((fs::path(o.out) / "manifest.json").string(), m.dump(2) + "\n");
}

// ----------------------------------------------------------------------------- verify

struct VerifySetup {
  MetricSpace space = Euclidean{1};
  QuadrupleStructure structure;
  Box box;
  std::string space_label;
};

inline MetricSpace named_space(const Options& o, Box& box, std::string& label) {
  box = {o.box_lo, o.box_hi};
  label = o.space;
  if (o.space == "tripod") return MetricTree::tripod(1.0);
  if (o.space == "random_tree") return MetricTree::random(o.edges, o.tree_seed);
  if (o.space == "euclidean") return euclidean(o.dim);
  if (o.space == "unit_square") {
    box = {0.0, 1.0};
    return euclidean(2);
  }
  if (o.space == "weighted") {
    std::vector<double> w;
    for (std::size_t k = 1; k <= o.dim; ++k) w.push_back(1.0 / static_cast<double>(k * k));
    return weighted_sequence(w);
  }
  if (o.space == "plane_disc") return PlaneWithHole(DiscHole{VectorPoint{0.0, 0.0}, 1.0});
  fail(ErrorKind::InvalidArgument, "unknown space '" + o.space + "'");
}

inline QuadrupleStructure named_structure(const Options& o, const MetricSpace& s, const Box& box) {
  if (o.structure == "nice") return {structure::Nice{}};
  if (o.structure == "power") return {structure::Power{o.alpha}};
  if (o.structure == "inner_product") return {structure::InnerProduct{}};
  if (o.structure == "weighted_ip") {
    if (const auto* w = std::get_if<WeightedSequence>(&s)) return {structure::WeightedIP{w->weights}};
    return {structure::WeightedIP{std::vector<double>(vector_dim(s), 1.0)}};
  }
  if (o.structure == "bregman") return {structure::Bregman{io::parse_psi(json{{"psi", o.psi}})}};
  if (o.structure == "bounded_lipschitz") {
    const double d = o.diam > 0.0 ? o.diam : (box.hi - box.lo) * std::sqrt(static_cast<double>(vector_dim(s)));
    return {structure::BoundedLipschitz{d}};
  }
  fail(ErrorKind::InvalidArgument, "unknown structure '" + o.structure + "'");
}

inline std::string violation_row(const std::string& st, const std::string& sp, std::uint64_t seed, const Witness& w) {
  std::string row = st + "," + sp + "," + std::to_string(seed) + "," + std::to_string(w.trial) + "," + io::num(w.residual);
  if (!w.points.empty()) {
    for (std::size_t i = 0; i < 4; ++i) row += "," + (i < w.points.size() ? io::point_field(w.points[i]) : "");
  } else {
    std::string scalars;
    for (double x : w.scalars) scalars += (scalars.empty() ? "" : ";") + io::num(x);
    row += "," + scalars + ",,,";
  }
  return row;
}

inline json report_json(const ViolationReport& r) {
  json j{{"trials", r.trials}, {"violations", r.violations}, {"rejected", r.rejected}};
  j["worst_residual"] = std::isfinite(r.worst_residual) ? json(r.worst_residual) : json(nullptr);
  return j;
}

inline int run_verify(const Options& o) {
  std::vector<std::string> rows;
  json summary = json::object();
  bool violated = false;
  if (!o.structure.empty() || !o.config.empty()) {
    VerifySetup v;
    if (!o.config.empty()) {
      const auto j = io::read_json_file(o.config);
      v.space = io::parse_space(j.at("space"));
      v.structure = io::parse_structure(j.at("structure"));
      v.space_label = io::kind_of(j.at("space"), "space");
      v.box = {o.box_lo, o.box_hi};
      if (j.contains("box")) v.box = {j["box"].at(0).get<double>(), j["box"].at(1).get<double>()};
    } else {
      v.space = named_space(o, v.box, v.space_label);
      v.structure = named_structure(o, v.space, v.box);
    }
    const auto rep = sweep_structure(v.space, v.structure, o.trials, o.seed, o.tol, {v.box, o.workers});
    const auto name = structure_name(v.structure);
    std::cout << name << " on " << space_name(v.space) << ": " << rep.violations << " violations in " << rep.trials
              << " trials (worst residual " << io::num(rep.worst_residual) << ")\n";
    summary["structure"] = report_json(rep);
    summary["structure"]["name"] = name;
    summary["structure"]["space"] = space_name(v.space);
    if (rep.witness) rows.push_back(violation_row(name, v.space_label, o.seed, *rep.witness));
    violated = violated || !rep.ok();
  }
  if (!o.lemma.empty()) {
    std::vector<LemmaId> ids;
    if (o.lemma == "all")
      ids.assign(kAllLemmas.begin(), kAllLemmas.end());
    else
      ids.push_back(parse_lemma(o.lemma));
    for (auto id : ids) {
      const auto rep = lemma_battery(id, o.trials, o.seed, o.tol, o.workers);
      const std::string name(lemma_name(id));
      std::cout << "lemma " << name << ": " << rep.violations << " violations in " << rep.trials << " trials\n";
      summary["lemmas"][name] = report_json(rep);
      if (rep.witness) rows.push_back(violation_row(name, "scalar", o.seed, *rep.witness));
      violated = violated || !rep.ok();
    }
  }
  if (summary.empty()) fail(ErrorKind::InvalidArgument, "verify needs --structure, --config or --lemma");
  std::string csv = "structure,space,seed,trial,residual,y,z,q,p\n";
  for (const auto& r : rows) csv += r + "\n";
  io::write_text((fs::path(o.out) / "violations.csv").string(), csv);
  io::write_text((fs::path(o.out) / "verify.json").string(), summary.dump(2) + "\n");
  return violated ? kViolation : kOk;
}

// ----------------------------------------------------------------------------- counterexample

inline int run_tripod(const Options& o) {
  const auto t = tripod_strong_counterexample(o.r, o.eps);
  std::cout << "tripod r=" << io::num(o.r) << " eps=" << io::num(o.eps) << ": left side " << io::num(t.left_side)
            << " (2 eps = " << io::num(2 * o.eps) << "), required K " << io::num(t.required_k) << ", closed form "
            << io::num(t.formula_k) << "\n";
  json j{{"r", o.r},           {"eps", o.eps},         {"left_side", t.left_side}, {"a_over_k", t.a_over_k},
         {"required_k", t.required_k}, {"formula_k", t.formula_k}, {"left_matches", t.left_matches}};
  io::write_text((fs::path(o.out) / "tripod.json").string(), j.dump(2) + "\n");
  return kOk;
}

inline int run_optimality(const Options& o) {
  OptimalityCase c;
  if (o.which_case == "a") c = OptimalityCase::A;
  else if (o.which_case == "b") c = OptimalityCase::B;
  else if (o.which_case == "c") c = OptimalityCase::C;
  else fail(ErrorKind::InvalidArgument, "case must be a, b or c");
  const double ratio = optimality_case(c, o.alpha, o.eps);
  std::cout << "optimality case " << o.which_case << " alpha=" << io::num(o.alpha) << " eps=" << io::num(o.eps)
            << ": ratio " << io::num(ratio) << ", constant 8a2^(-2a) = " << io::num(power_constant(o.alpha)) << "\n";
  json j{{"case", o.which_case}, {"alpha", o.alpha}, {"eps", o.eps}, {"ratio", ratio}, {"constant", power_constant(o.alpha)}};
  io::write_text((fs::path(o.out) / "optimality.json").string(), j.dump(2) + "\n");
  return kOk;
}

// ----------------------------------------------------------------------------- mean

inline int run_mean(const Options& o) {
  MetricSpace s = Euclidean{1};
  CostDescriptor c = cost::SquaredDistance{};
  EstimatorConfig ec;
  if (!o.config.empty()) {
    const auto j = io::read_json_file(o.config);
    s = io::parse_space(j.at("space"));
    if (j.contains("cost")) c = io::parse_cost(j["cost"]);
    if (j.contains("estimator")) ec = io::parse_estimator(j["estimator"]);
  } else {
    Box box;
    std::string label;
    s = named_space(o, box, label);
    if (o.cost == "power") c = cost::Power{o.two_alpha};
    else if (o.cost != "squared_distance") fail(ErrorKind::InvalidArgument, "unknown cost '" + o.cost + "'");
    ec.method = parse_method(o.method);
  }
  const std::string text = slurp(o.samples);
  if (std::holds_alternative<Euclidean>(s) && o.config.empty()) {
    // Dimension follows the first numeric row of the file.
    std::istringstream probe(text);
    std::string line;
    std::size_t dim = 0;
    while (dim == 0 && std::getline(probe, line)) {
      if (line.empty()) continue;
      const auto f = io::split(line, ',');
      try {
        for (const auto& x : f) io::to_double(x);
        dim = f.size();
      } catch (const Error&) {
      }
    }
    if (dim == 0) fail(ErrorKind::EmptySample, "no samples in '" + o.samples + "'");
    s = euclidean(dim);
  }
  std::istringstream in(text);
  const auto pts = io::parse_samples_csv(in, s);
  const auto r = frechet_mean(c, s, pts, ec);
  std::cout << "mean " << format_point(r.point) << " objective " << io::num(r.objective) << " status "
            << status_name(r.status) << " iterations " << r.iterations << "\n";
  json j{{"point", io::point_json(r.point)}, {"objective", r.objective}, {"status", status_name(r.status)},
         {"iterations", r.iterations}, {"samples", pts.size()}};
  io::write_text((fs::path(o.out) / "mean.json").string(), j.dump(2) + "\n");
  return kOk;
}

// ----------------------------------------------------------------------------- rates

inline std::vector<svg::Series> statistic_series(const LossTable& t) {
  std::vector<svg::Series> out;
  for (const auto& st : {Statistic{Statistic::Mean, 0.5}, Statistic{Statistic::Median, 0.5}}) {
    svg::Series s{statistic_name(st), {}};
    for (const auto& p : aggregate(t, st)) s.points.emplace_back(static_cast<double>(p.n), p.value);
    out.push_back(std::move(s));
  }
  return out;
}

inline int run_rates(const Options& o) {
  if (o.config.empty()) fail(ErrorKind::InvalidArgument, "rates needs --config");
  const auto j = io::read_json_file(o.config);
  auto cfg = io::parse_experiment(j);
  cfg.workers = o.workers;
  const auto table = run_experiment(cfg);
  io::write_text((fs::path(o.out) / "losses.csv").string(), io::loss_table_csv(table));
  const auto st = io::parse_statistic(o.statistic);
  json out;
  const auto fit = fit_rate(table, st);
  out["fit"] = io::rate_fit_json(fit);
  out["statistic"] = statistic_name(st);
  std::cout << "rate fit (" << statistic_name(st) << "): slope " << io::num(fit.slope) << " +- "
            << io::num(fit.stderr_slope) << ", r2 " << io::num(fit.r_squared) << "\n";
  if (o.tail_n > 0) {
    const auto tf = tail_check(table, o.tail_n, 1.0, o.zeta, o.gamma_minus);
    out["tail"] = {{"n", o.tail_n}, {"fitted_slope", tf.fitted_slope}, {"theoretical_slope", tf.theoretical_slope}};
    std::cout << "tail slope at n=" << o.tail_n << ": " << io::num(tf.fitted_slope) << " (bound "
              << io::num(tf.theoretical_slope) << ")\n";
  }
  io::write_text((fs::path(o.out) / "fit.json").string(), out.dump(2) + "\n");
  io::write_text((fs::path(o.out) / "rates.svg").string(),
                 svg::line_plot(statistic_series(table), "loss vs n", "n", "loss"));
  return kOk;
}

// ----------------------------------------------------------------------------- entropy

inline int run_entropy(const Options& o, const std::string& what) {
  json out;
  if (what == "eta") {
    out["eta"] = eta(o.beta, o.n);
    std::cout << "eta(" << io::num(o.beta) << ", " << o.n << ") = " << io::num(out["eta"].get<double>()) << "\n";
  } else if (what == "covering" || what == "entrn") {
    const double spacing = o.spacing > 0.0 ? o.spacing : o.r_min / 4.0;
    const auto region = ball_region(o.dim, o.radius, spacing);
    if (what == "covering") {
      const auto N = covering_number(region, o.r);
      out = {{"N", N}, {"pollard_bound", std::pow(3.0 * o.radius / o.r, static_cast<double>(o.dim))}};
      std::cout << "N(B_" << io::num(o.radius) << " in R^" << o.dim << ", r=" << io::num(o.r) << ") <= " << N << "\n";
    } else {
      const auto e = entrn_detail(region, o.n, o.r_min);
      out = {{"entrn", e.value}, {"epsilon", e.epsilon}, {"integral_from_zero", e.integral_from_zero}};
      std::cout << "entrn = " << io::num(e.value) << " at eps = " << io::num(e.epsilon) << "\n";
    }
  } else if (what == "fit") {
    if (o.config.empty()) fail(ErrorKind::InvalidArgument, "entropy fit needs --config");
    const auto j = io::read_json_file(o.config).at("entropy");
    const auto deltas = j.at("delta_grid").get<std::vector<double>>();
    const auto rs = j.at("r_grid").get<std::vector<double>>();
    const auto model = parse_model(io::get_or<std::string>(j, "model", "power"));
    const auto dim = io::get_or<std::size_t>(j, "dim", 2);
    double rmin = *std::min_element(rs.begin(), rs.end());
    const auto cells = covering_table([&](double d) { return ball_region(dim, d, rmin / 4.0); }, deltas, rs);
    const auto f = entropy_fit(cells, model);
    out = {{"model", model_name(f.model)}, {"c_e", f.c_e_hat}, {"beta", f.beta_hat}, {"max_residual", f.max_residual}};
    std::cout << "entropy fit (" << model_name(f.model) << "): c_e " << io::num(f.c_e_hat) << ", beta "
              << io::num(f.beta_hat) << "\n";
  } else if (what == "predict") {
    RateMode mode = EntropyRate{};
    if (o.kappa) mode = LogSchedule{*o.kappa};
    const auto p = rate_prediction(o.gamma, o.alpha_ent, o.beta, o.n, mode);
    out = {{"eta", p.eta_value}, {"loss_exponent", p.loss_exponent}, {"predicted_rate", p.predicted_rate}};
    if (p.schedule) out["schedule"] = {{"R_n", p.schedule->R_n}, {"xi_n", p.schedule->xi_n}};
    std::cout << "predicted rate " << io::num(p.predicted_rate) << " (exponent " << io::num(p.loss_exponent) << ")\n";
  } else {
    fail(ErrorKind::InvalidArgument, "entropy action must be eta, covering, entrn, fit or predict");
  }
  io::write_text((fs::path(o.out) / ("entropy_" + what + ".json")).string(), out.dump(2) + "\n");
  return kOk;
}

// ----------------------------------------------------------------------------- report

inline int run_report(const Options& o) {
  std::ifstream in(o.csv);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + o.csv + "'");
  const auto table = io::parse_loss_table_csv(in);
  const auto path = fs::path(o.svg_out).is_absolute() ? fs::path(o.svg_out) : fs::path(o.out) / o.svg_out;
  io::write_text(path.string(), svg::line_plot(statistic_series(table), "loss vs n", "n", "loss"));
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

// ----------------------------------------------------------------------------- entry

int cli_run(const std::vector<std::string>& args);

inline int run_replay(const Options& o) {
  const auto m = io::read_json_file(o.manifest);
  auto args = m.at("argv").get<std::vector<std::string>>();
  // Replays write next to the manifest unless --out is given.
  if (o.out != ".") {
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
      if (args[i] == "--out") args[i + 1] = o.out;
  }
  return cli_run(args);
}

inline int cli_run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Frechet mean toolkit: inequality sweeps, estimators, rate experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "output directory")->capture_default_str();
    s->add_option("--config", o.config, "JSON config");
    s->add_option("--seed", o.seed, "random seed")->capture_default_str();
    s->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  };

  auto* verify = app.add_subcommand("verify", "randomized inequality sweeps and lemma batteries");
  common(verify);
  verify->add_option("--structure", o.structure, "nice|power|inner_product|weighted_ip|bregman|bounded_lipschitz");
  verify->add_option("--space", o.space, "tripod|random_tree|euclidean|weighted|unit_square|plane_disc")->capture_default_str();
  verify->add_option("--dim", o.dim)->capture_default_str();
  verify->add_option("--edges", o.edges)->capture_default_str();
  verify->add_option("--tree-seed", o.tree_seed)->capture_default_str();
  verify->add_option("--alpha", o.alpha)->capture_default_str();
  verify->add_option("--diam", o.diam);
  verify->add_option("--psi", o.psi)->capture_default_str();
  verify->add_option("--box-lo", o.box_lo)->capture_default_str();
  verify->add_option("--box-hi", o.box_hi)->capture_default_str();
  verify->add_option("--lemma", o.lemma, "lemma name or 'all'");
  verify->add_option("--trials", o.trials)->capture_default_str();
  verify->add_option("--tol", o.tol, "relative tolerance")->capture_default_str();

  auto* counter = app.add_subcommand("counterexample", "evaluate the tripod or optimality configurations");
  counter->require_subcommand(1);
  auto* tripod = counter->add_subcommand("tripod", "projection-metric counterexample on the tripod");
  common(tripod);
  tripod->add_option("--r", o.r)->capture_default_str();
  tripod->add_option("--eps", o.eps)->capture_default_str();
  auto* optimality = counter->add_subcommand("optimality", "ratio for the power-constant optimality cases");
  common(optimality);
  optimality->add_option("--case", o.which_case, "a|b|c")->capture_default_str();
  optimality->add_option("--alpha", o.alpha)->capture_default_str();
  optimality->add_option("--eps", o.eps)->capture_default_str();

  auto* mean = app.add_subcommand("mean", "Frechet mean of samples from a CSV file");
  common(mean);
  mean->add_option("--samples", o.samples, "CSV, one point per row")->required();
  mean->add_option("--space", o.space)->capture_default_str();
  mean->add_option("--cost", o.cost, "squared_distance|power")->capture_default_str();
  mean->add_option("--two-alpha", o.two_alpha)->capture_default_str();
  mean->add_option("--method", o.method)->capture_default_str();

  auto* rates = app.add_subcommand("rates", "Monte Carlo rate experiment");
  common(rates);
  rates->add_option("--statistic", o.statistic, "mean|median|q<p>")->capture_default_str();
  rates->add_option("--tail-n", o.tail_n, "n for the tail check (0 = skip)");
  rates->add_option("--zeta", o.zeta)->capture_default_str();
  rates->add_option("--gamma-minus", o.gamma_minus)->capture_default_str();

  std::string entropy_action;
  auto* entropy = app.add_subcommand("entropy", "covering numbers, entrn, eta, fits and rate predictions");
  common(entropy);
  entropy->add_option("action", entropy_action, "eta|covering|entrn|fit|predict")->required();
  entropy->add_option("--beta", o.beta)->capture_default_str();
  entropy->add_option("--alpha", o.alpha_ent)->capture_default_str();
  entropy->add_option("--gamma", o.gamma)->capture_default_str();
  entropy->add_option("--kappa", o.kappa, "switch to the log-schedule rate");
  entropy->add_option("--n", o.n)->capture_default_str();
  entropy->add_option("--dim", o.dim)->capture_default_str();
  entropy->add_option("--radius", o.radius)->capture_default_str();
  entropy->add_option("--r", o.r)->capture_default_str();
  entropy->add_option("--r-min", o.r_min)->capture_default_str();
  entropy->add_option("--spacing", o.spacing);

  auto* report = app.add_subcommand("report", "loss table CSV to a log-log SVG");
  common(report);
  report->add_option("--csv", o.csv)->required();
  report->add_option("--svg", o.svg_out)->capture_default_str();

  auto* replay = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  replay->add_option("--manifest", o.manifest)->required();
  replay->add_option("--out", o.out);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*replay) return run_replay(o);
    fs::create_directories(o.out);
    auto run = [&](const std::string& sub, auto&& fn) {
      write_manifest(o, sub, args);
      return fn();
    };
    if (*verify) return run("verify", [&] { return run_verify(o); });
    if (*tripod) return run("counterexample tripod", [&] { return run_tripod(o); });
    if (*optimality) return run("counterexample optimality", [&] { return run_optimality(o); });
    if (*mean) return run("mean", [&] { return run_mean(o); });
    if (*rates) return run("rates", [&] { return run_rates(o); });
    if (*entropy) return run("entropy", [&] { return run_entropy(o, entropy_action); });
    if (*report) return run("report", [&] { return run_report(o); });
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad config: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace frechet::cli
