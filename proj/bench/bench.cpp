// Serial reference vs OpenMP kernels. Usage: gdist_bench [threads]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "gdist/alt.hpp"
#include "gdist/classic.hpp"
#include "gdist/classify.hpp"
#include "gdist/fixtures.hpp"
#include "gdist/kernel.hpp"
#include "gdist/parallel.hpp"
#include "gdist/rsp.hpp"
#include "gdist/sbm.hpp"

using namespace gdist;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, const std::function<void()>& serial_run, const std::function<void()>& parallel_run,
         int reps = 3) {
  const double s = seconds(serial_run, reps);
  const double p = seconds(parallel_run, reps);
  std::printf("%-28s %10.4f %10.4f %8.2fx\n", name, s, p, s / p);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) set_num_threads(std::atoi(argv[1]));
  std::printf("threads: %d\n", num_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  const CostedGraph sp_graph = fixtures::random_connected(1500, 1, fixtures::Weights::Independent, 0.01);
  row("all-pairs SP n=1500", [&] { serial::shortest_path(sp_graph); }, [&] { shortest_path(sp_graph); });

  const CostedGraph pres_graph = fixtures::random_connected(40, 2, fixtures::Weights::Affinity, 0.1);
  row(
      "p-resistance n=40 p=1.5", [&] { serial::p_resistance(pres_graph, 1.5); }, [&] { p_resistance(pres_graph, 1.5); },
      1);

  const PlantedGraph pg = gen_sbm({100, 100, 100}, 0.1, 0.005, 3);
  const KernelMatrix k = center_kernel(free_energy_distance(build_core(pg.graph, 0.07)));
  row("kernel k-means n=300 x40", [&] { serial::kernel_kmeans(k, 3, 40, 1); }, [&] { kernel_kmeans(k, 3, 40, 1); });

  const PlantedGraph small = gen_sbm({40, 40, 40}, 0.2, 0.01, 4);
  const LabelSet labels = LabelSet::all_known(small.labels);
  const DistanceFamily fe = [&](double beta) { return free_energy_distance(build_core(small.graph, beta)); };
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(1e-3 * std::pow(10.0, i / 5.0));
  row(
      "tune_by_cv FE n=120 x16", [&] { serial::tune_by_cv(fe, labels, 5, grid, 1); },
      [&] { tune_by_cv(fe, labels, 5, grid, 1); });
}
