#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <numbers>

#include "hsurf/kernels.hpp"
#include "hsurf/mesher.hpp"
#include "hsurf/solver.hpp"

using namespace hsurf;

namespace {

struct Fixture {
  Mesh mesh;
  std::vector<TriangleFactors> factors;
  std::vector<double> u;
};

const Fixture& fixture(double ell) {
  static std::map<double, Fixture> cache;
  auto it = cache.find(ell);
  if (it != cache.end()) return it->second;
  const double a = 2.0 / std::numbers::pi;
  const auto d = helicoidal_sector(4, 0.5, linear_boundary_function(a, std::numbers::pi / 4));
  MeshGrading g;
  g.ell = ell;
  Fixture f;
  f.mesh = triangulate(d, g);
  f.factors = triangle_factors(f.mesh);
  f.u.resize(f.mesh.vertex_count());
  for (std::size_t v = 0; v < f.u.size(); ++v) f.u[v] = a * std::arg(f.mesh.vertices[v]);
  return cache.emplace(ell, std::move(f)).first->second;
}

double ell_of(const benchmark::State& s) { return 0.1 / static_cast<double>(s.range(0)); }

void local_terms_bench(benchmark::State& state, Kernel kernel) {
  const Fixture& f = fixture(ell_of(state));
  LocalTerms out;
  for (auto _ : state) {
    local_terms(f.mesh, f.factors, f.u, true, kernel, out);
    benchmark::DoNotOptimize(out.energy.data());
  }
  state.counters["triangles"] = static_cast<double>(f.mesh.triangle_count());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.mesh.triangle_count()));
}

void BM_LocalTermsSerial(benchmark::State& s) { local_terms_bench(s, Kernel::Serial); }
void BM_LocalTermsParallel(benchmark::State& s) { local_terms_bench(s, Kernel::Parallel); }

void solve_bench(benchmark::State& state, Kernel kernel) {
  const Fixture& f = fixture(ell_of(state));
  SolverOptions opt;
  opt.kernel = kernel;
  std::vector<double> data = f.u;
  for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet(f.mesh, data, opt).residual);
}

void BM_SolveSerial(benchmark::State& s) { solve_bench(s, Kernel::Serial); }
void BM_SolveParallel(benchmark::State& s) { solve_bench(s, Kernel::Parallel); }

}  // namespace

// range(0) divides ell = 0.1
BENCHMARK(BM_LocalTermsSerial)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LocalTermsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
