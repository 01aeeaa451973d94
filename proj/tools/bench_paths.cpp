// Compares the OpenMP kernels against the serial reference on random
// instances: all-pairs path metrics and the weak-proximity sign enumeration.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <vector>

#include "summet/graph.hpp"
#include "summet/path_metrics.hpp"
#include "summet/proximity.hpp"

using namespace summet;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::uniform_real_distribution<double> wdist(0.1, 2.0);
  std::vector<WeightedGraph::Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    edges.push_back({pick(rng), v, wdist(rng)});
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t added = 0;
  while (added < extra) {
    std::size_t u = pick(rng);
    std::size_t v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    bool dup = false;
    for (const auto& e : edges) {
      if (e.u == u && e.v == v) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    edges.push_back({u, v, wdist(rng)});
    ++added;
  }
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = "v" + std::to_string(i);
  return WeightedGraph::make(std::move(ids), std::move(edges));
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 1200;
  if (argc > 1) n = static_cast<std::size_t>(std::atoll(argv[1]));

  std::mt19937_64 rng(4242);
  const WeightedGraph g = random_graph(rng, n, 4 * n);
  std::cout << "all-pairs q_2 on a random graph with " << n << " vertices, " << g.edges.size()
            << " edges\n";

  auto t0 = std::chrono::steady_clock::now();
  const PathMatrixResult serial = q_p(g, 2.0, ExecPolicy::Serial);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const PathMatrixResult parallel = q_p(g, 2.0, ExecPolicy::Parallel);
  const double t_parallel = seconds_since(t0);

  const bool identical = serial.values == parallel.values;
  std::cout << "  serial:   " << t_serial << " s\n"
            << "  parallel: " << t_parallel << " s  (speedup " << t_serial / t_parallel << "x)\n"
            << "  results " << (identical ? "identical" : "DIFFER") << "\n";

  std::mt19937_64 rng2(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t pts = 8;
  Matrix d = Matrix::square(pts, 0.0);
  std::vector<double> coords(pts);
  for (auto& c : coords) c = unif(rng2);
  for (std::size_t i = 0; i < pts; ++i) {
    for (std::size_t j = 0; j < pts; ++j) d(i, j) = std::abs(coords[i] - coords[j]);
  }
  std::vector<std::string> ids(pts);
  for (std::size_t i = 0; i < pts; ++i) ids[i] = "p" + std::to_string(i);
  const FiniteMetricSpace space{ids, d, 0, false};

  PairSequence seq;
  std::uniform_int_distribution<std::size_t> pick(0, pts - 1);
  for (int i = 0; i < 14; ++i) {
    seq.pairs.emplace_back(pick(rng2), pick(rng2));
    seq.weights.push_back(1.0);
  }

  std::cout << "weak proximity (exact, " << seq.size() << " pairs, " << pts << " points)\n";
  WcOptions wc;
  wc.mode = WcMode::Exact;
  wc.policy = ExecPolicy::Serial;
  t0 = std::chrono::steady_clock::now();
  const WcResult ws = d_wc(space, seq, 1.0, wc);
  const double wc_serial = seconds_since(t0);

  wc.policy = ExecPolicy::Parallel;
  t0 = std::chrono::steady_clock::now();
  const WcResult wp = d_wc(space, seq, 1.0, wc);
  const double wc_parallel = seconds_since(t0);

  std::cout << "  serial:   " << wc_serial << " s\n"
            << "  parallel: " << wc_parallel << " s  (speedup " << wc_serial / wc_parallel
            << "x)\n"
            << "  results " << (ws.value() == wp.value() ? "identical" : "DIFFER") << " (value "
            << ws.value() << ")\n";
  return (identical && ws.value() == wp.value()) ? 0 : 1;
}
