#include <benchmark/benchmark.h>

#include <vector>

#include "spinent/entangle.hpp"
#include "spinent/model.hpp"
#include "spinent/random_states.hpp"
#include "spinent/reduced.hpp"
#include "spinent/solver.hpp"
#include "spinent/symmetry.hpp"

using namespace spinent;

namespace {

ModelSpec xxz_ring(int n) { return ModelSpec::xxz(LatticeSpec(n, Boundary::periodic), 1.0); }

void BM_ApplyXXZ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_hamiltonian(xxz_ring(n));
  const StateVector v = start_vector(h.dimension(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(h.apply(v));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(h.dimension()));
}
BENCHMARK(BM_ApplyXXZ)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_ApplyTFIM(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_hamiltonian(ModelSpec::tfim(LatticeSpec(n, Boundary::periodic), 0.5, 1e-3));
  const StateVector v = start_vector(h.dimension(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(h.apply(v));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(h.dimension()));
}
BENCHMARK(BM_ApplyTFIM)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_LanczosGround(benchmark::State& state) {
  const auto h = build_hamiltonian(xxz_ring(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lanczos_ground_state(h).report.ground_energy);
}
BENCHMARK(BM_LanczosGround)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& state) {
  const auto h = build_hamiltonian(xxz_ring(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dense_spectrum(h).energies(0));
}
BENCHMARK(BM_DenseSpectrum)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ReducePure(benchmark::State& state) {
  const int n = 16;
  const GroundState gs = lanczos_ground_state(build_hamiltonian(xxz_ring(n)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_pure(gs.state, n, 0, 3));
}
BENCHMARK(BM_ReducePure)->Unit(benchmark::kMicrosecond);

void BM_Concurrence(benchmark::State& state) {
  RandomStates rs(7);
  std::vector<TwoSiteDensityMatrix> pool;
  for (int k = 0; k < 64; ++k) pool.push_back(rs.density_matrix());
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(pool[k++ % pool.size()]).concurrence);
}
BENCHMARK(BM_Concurrence);

void BM_IsingCubic(benchmark::State& state) {
  RandomStates rs(11);
  std::vector<IsingForm> pool;
  for (int k = 0; k < 64; ++k) pool.push_back(rs.ising_form());
  std::size_t k = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(concurrence_ising_cubic(pool[k++ % pool.size()]));
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_IsingCubic);

}  // namespace
BENCHMARK_MAIN();
