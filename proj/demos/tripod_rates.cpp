// Sample-mean convergence on a tripod, compared with the real line.
#include <cstdio>

#include "frechet/frechet.hpp"

using namespace frechet;

int main() {
  const std::vector<std::size_t> ns{16, 64, 256, 1024};

  ExperimentConfig tri;
  tri.space = MetricTree::tripod(1.0);
  tri.distribution = dist::TreeDiscrete{{TreePoint{0, 1.0}, TreePoint{1, 1.0}, TreePoint{2, 1.0}}, {0.6, 0.2, 0.2}};
  tri.n_grid = ns;
  tri.replications = 200;
  tri.seed = 1;

  ExperimentConfig line;
  line.space = Euclidean{1};
  line.distribution = dist::GaussianVector{VectorPoint{0.0}, {1.0}};
  line.n_grid = ns;
  line.replications = 200;
  line.seed = 1;

  std::printf("population mean on the tripod: %s\n", format_point(experiment_center(tri)).c_str());
  const auto a = run_experiment(tri), b = run_experiment(line);
  const auto ma = aggregate(a, {}), mb = aggregate(b, {});
  std::printf("%6s %14s %14s\n", "n", "tripod median", "line median");
  for (std::size_t i = 0; i < ma.size(); ++i) std::printf("%6zu %14.5f %14.5f\n", ma[i].n, ma[i].value, mb[i].value);
  std::printf("slopes: tripod %.3f, line %.3f\n", fit_rate(a).slope, fit_rate(b).slope);
}
