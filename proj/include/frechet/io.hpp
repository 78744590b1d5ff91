#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "frechet/cost.hpp"
#include "frechet/distance.hpp"
#include "frechet/entropy.hpp"
#include "frechet/error.hpp"
#include "frechet/harness.hpp"
#include "frechet/population.hpp"
#include "frechet/space.hpp"
#include "frechet/structure.hpp"

namespace frechet::io {

using json = nlohmann::json;

inline std::string kind_of(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ErrorKind::InvalidArgument, std::string(what) + " needs a string 'kind'");
  return j["kind"].get<std::string>();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j[key].get<T>() : fallback;
}

inline SpacePoint parse_point(const json& j) {
  if (j.is_array()) return VectorPoint(j.get<std::vector<double>>());
  if (j.is_number()) return VectorPoint{j.get<double>()};
  if (j.is_object() && j.contains("edge")) return TreePoint{j["edge"].get<std::size_t>(), get_or(j, "offset", 0.0)};
  fail(ErrorKind::InvalidArgument, "cannot read a point from " + j.dump());
}

inline json point_json(const SpacePoint& p) {
  if (const auto* t = std::get_if<TreePoint>(&p)) return json{{"edge", t->edge}, {"offset", t->offset}};
  return json(std::get<VectorPoint>(p).coords);
}

inline Psi parse_psi(const json& j) {
  const auto s = get_or<std::string>(j, "psi", "squared_norm");
  if (s == "squared_norm") return Psi::SquaredNorm;
  if (s == "coordinate_exponential") return Psi::CoordinateExponential;
  fail(ErrorKind::InvalidArgument, "unknown psi '" + s + "'");
}

inline MetricSpace parse_space(const json& j) {
  const auto k = kind_of(j, "space");
  if (k == "euclidean") return euclidean(get_or<std::size_t>(j, "dim", 1));
  if (k == "weighted") return weighted_sequence(j.at("weights").get<std::vector<double>>());
  if (k == "tripod") return MetricTree::tripod(get_or(j, "length", 1.0));
  if (k == "star") return MetricTree::star(j.at("arms").get<std::size_t>(), get_or(j, "length", 1.0));
  if (k == "random_tree")
    return MetricTree::random(j.at("edges").get<std::size_t>(), get_or<std::uint64_t>(j, "seed", 0),
                              get_or(j, "min_length", 0.5), get_or(j, "max_length", 2.0));
  if (k == "tree") {
    std::vector<MetricTree::Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
    return MetricTree(j.at("vertices").get<std::size_t>(), std::move(edges));
  }
  if (k == "plane_disc")
    return PlaneWithHole(DiscHole{VectorPoint(get_or(j, "center", std::vector<double>{0.0, 0.0})), get_or(j, "radius", 1.0)});
  if (k == "plane_polygon") {
    PolygonHole poly;
    for (const auto& v : j.at("vertices")) poly.vertices.emplace_back(v.get<std::vector<double>>());
    return PlaneWithHole(poly);
  }
  fail(ErrorKind::InvalidArgument, "unknown space kind '" + k + "'");
}

inline CostDescriptor parse_cost(const json& j) {
  const auto k = kind_of(j, "cost");
  if (k == "squared_distance") return cost::SquaredDistance{};
  if (k == "power") return cost::Power{j.at("two_alpha").get<double>()};
  if (k == "anchored_power") return cost::AnchoredPower{j.at("two_alpha").get<double>(), parse_point(j.at("anchor"))};
  if (k == "bregman") return cost::Bregman{parse_psi(j)};
  fail(ErrorKind::InvalidArgument, "unknown cost kind '" + k + "'");
}

inline QuadrupleStructure parse_structure(const json& j) {
  const auto k = kind_of(j, "structure");
  if (k == "nice") return {structure::Nice{}};
  if (k == "bounded_lipschitz") return {structure::BoundedLipschitz{j.at("diam").get<double>()}};
  if (k == "power") return {structure::Power{j.at("alpha").get<double>()}};
  if (k == "inner_product") return {structure::InnerProduct{}};
  if (k == "weighted_ip") return {structure::WeightedIP{j.at("weights").get<std::vector<double>>()}};
  if (k == "bregman") return {structure::Bregman{parse_psi(j)}};
  if (k == "strong_ip") return {structure::StrongIP{as_vector(parse_point(j.at("m")))}};
  if (k == "product") {
    std::vector<std::pair<QuadrupleStructure, std::size_t>> fs;
    for (const auto& f : j.at("factors")) fs.emplace_back(parse_structure(f.at("structure")), f.at("dim").get<std::size_t>());
    return product_structure(fs);
  }
  if (k == "min") return min_structure(parse_structure(j.at("base")), j.at("k").get<std::size_t>());
  fail(ErrorKind::InvalidArgument, "unknown structure kind '" + k + "'");
}

inline DistanceKind parse_loss(const json& j) {
  const auto k = kind_of(j, "loss");
  if (k == "base") return kind::Base{};
  if (k == "power") return kind::Power{j.at("a").get<double>()};
  if (k == "projection") return kind::Projection{parse_point(j.at("m"))};
  if (k == "sphere_projection") return kind::SphereProjection{as_vector(parse_point(j.at("m")))};
  if (k == "weighted_norm")
    return kind::WeightedNorm{j.at("weights").get<std::vector<double>>(), get_or(j, "inverse", false)};
  fail(ErrorKind::InvalidArgument, "unknown loss kind '" + k + "'");
}

inline DistributionSpec parse_distribution(const json& j) {
  const auto k = kind_of(j, "distribution");
  if (k == "gaussian")
    return dist::GaussianVector{as_vector(parse_point(j.at("mean"))), j.at("variances").get<std::vector<double>>()};
  if (k == "cauchy") return dist::CauchyLine{get_or(j, "location", 0.0), get_or(j, "scale", 1.0)};
  if (k == "tree_discrete") {
    dist::TreeDiscrete t;
    for (const auto& p : j.at("points")) t.points.push_back(as_tree(parse_point(p)));
    t.probs = j.at("probs").get<std::vector<double>>();
    return t;
  }
  if (k == "plane_cloud") {
    dist::PlaneCloud c;
    for (const auto& p : j.at("points")) c.points.push_back(as_vector(parse_point(p)));
    c.weights = j.at("weights").get<std::vector<double>>();
    return c;
  }
  if (k == "point_mass") return dist::PointMass{parse_point(j.at("point"))};
  fail(ErrorKind::InvalidArgument, "unknown distribution kind '" + k + "'");
}

inline EstimatorConfig parse_estimator(const json& j) {
  EstimatorConfig c;
  if (j.is_null()) return c;
  c.method = parse_method(get_or<std::string>(j, "method", "auto"));
  c.tol = get_or(j, "tol", c.tol);
  c.max_iter = get_or(j, "max_iter", c.max_iter);
  c.grid_step = get_or(j, "grid_step", c.grid_step);
  if (j.contains("box")) c.box = Box{j["box"].at(0).get<double>(), j["box"].at(1).get<double>()};
  validate_config(c);
  return c;
}

inline Statistic parse_statistic(const std::string& s) {
  if (s == "mean") return {Statistic::Mean, 0.5};
  if (s == "median") return {Statistic::Median, 0.5};
  if (s.size() > 1 && s[0] == 'q') return {Statistic::Quantile, std::stod(s.substr(1))};
  fail(ErrorKind::InvalidArgument, "unknown statistic '" + s + "'");
}

// {space, cost, loss, distribution, experiment:{n_grid, replications, seed, kappa, known_m, estimator}}
inline ExperimentConfig parse_experiment(const json& root) {
  ExperimentConfig c;
  c.space = parse_space(root.at("space"));
  c.cost = root.contains("cost") ? parse_cost(root["cost"]) : CostDescriptor{cost::SquaredDistance{}};
  if (root.contains("loss")) c.loss = parse_loss(root["loss"]);
  c.distribution = parse_distribution(root.at("distribution"));
  const auto& e = root.at("experiment");
  c.n_grid = e.at("n_grid").get<std::vector<std::size_t>>();
  c.replications = get_or<std::size_t>(e, "replications", 1);
  c.seed = get_or<std::uint64_t>(e, "seed", 0);
  c.kappa = get_or(e, "kappa", 1.0);
  if (e.contains("known_m")) c.known_m = parse_point(e["known_m"]);
  if (e.contains("estimator")) c.estimator = parse_estimator(e["estimator"]);
  validate_experiment(c);
  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, "malformed JSON in '" + path + "': " + e.what());
  }
}

// Shortest decimal that reads back to the same double.
inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

// Semicolon-joined coordinates, or edge:offset on a tree.
inline std::string point_field(const SpacePoint& p) {
  if (const auto* t = std::get_if<TreePoint>(&p)) return std::to_string(t->edge) + ":" + num(t->offset);
  std::string out;
  for (double x : std::get<VectorPoint>(p).coords) out += (out.empty() ? "" : ";") + num(x);
  return out;
}

inline std::string loss_table_csv(const LossTable& t, bool with_runtime = true) {
  std::string out = with_runtime ? "n,rep,loss,status,runtime_s\n" : "n,rep,loss,status\n";
  for (const auto& r : t.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.rep) + "," + num(r.loss) + "," + r.status;
    if (with_runtime) out += "," + num(r.runtime_s);
    out += "\n";
  }
  return out;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

inline double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, "not a number: '" + s + "'");
  }
}

inline LossTable parse_loss_table_csv(std::istream& in) {
  LossTable t;
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,rep,loss,status", 0) != 0)
    fail(ErrorKind::InvalidArgument, "loss table CSV needs the header n,rep,loss,status[,runtime_s]");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() < 4) fail(ErrorKind::InvalidArgument, "short loss table row: " + line);
    LossRow r;
    r.n = static_cast<std::size_t>(to_double(f[0]));
    r.rep = static_cast<std::size_t>(to_double(f[1]));
    r.loss = f[2] == "nan" ? std::numeric_limits<double>::quiet_NaN() : to_double(f[2]);
    r.status = f[3];
    if (f.size() > 4) r.runtime_s = to_double(f[4]);
    t.rows.push_back(r);
  }
  return t;
}

// One sample per row: coordinates for vector spaces, edge_id,offset for trees.
// A first row that does not parse as numbers is taken as a header.
inline std::vector<SpacePoint> parse_samples_csv(std::istream& in, const MetricSpace& s) {
  std::vector<SpacePoint> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    std::vector<double> v;
    try {
      for (const auto& x : f) v.push_back(to_double(x));
    } catch (const Error&) {
      if (first) {
        first = false;
        continue;
      }
      throw;
    }
    first = false;
    SpacePoint p;
    if (std::holds_alternative<MetricTree>(s)) {
      if (v.size() != 2) fail(ErrorKind::InvalidArgument, "tree samples need edge_id,offset: " + line);
      p = TreePoint{static_cast<std::size_t>(v[0]), v[1]};
    } else {
      p = VectorPoint(v);
    }
    require_in_space(s, p);
    out.push_back(std::move(p));
  }
  return out;
}

inline json rate_fit_json(const RateFit& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"stderr", f.stderr_slope}, {"r2", f.r_squared}};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorKind::InvalidArgument, "write failed for '" + path + "'");
}

}  // namespace frechet::io
