#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "pcr/parse.hpp"
#include "pcr/prover.hpp"
#include "pcr/tmc.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Valid sequent whose cost grows with the number of R-atoms.
pcr::Sequent chain(std::size_t k) {
  std::string left = "R(p0)", right;
  for (std::size_t i = 1; i < k; ++i) left += " & R(p" + std::to_string(i) + ")";
  for (std::size_t i = 0; i < k; ++i) right += (i ? " | R(p" : "R(p") + std::to_string(i) + ")";
  return pcr::parse_sequent(left + " |- " + right);
}

void BM_Prove(benchmark::State& state) {
  const pcr::Sequent s = chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcr::prove(s));
}
BENCHMARK(BM_Prove)->DenseRange(1, 5);

void BM_CheckPk(benchmark::State& state) {
  const pcr::Proof p = *pcr::prove(chain(static_cast<std::size_t>(state.range(0)))).proof;
  for (auto _ : state) benchmark::DoNotOptimize(pcr::check_pk(p));
  state.counters["nodes"] = static_cast<double>(pcr::counted_size(p));
}
BENCHMARK(BM_CheckPk)->DenseRange(1, 5);

void BM_Compile(benchmark::State& state) {
  const pcr::MachineSpec m = pcr::machine_from_json(slurp(PCR_DATA_DIR "/machines/first1.json"));
  const std::string input(static_cast<std::size_t>(state.range(0)), '0');
  for (auto _ : state) benchmark::DoNotOptimize(pcr::compile(m, input));
  state.counters["length"] = static_cast<double>(pcr::length(pcr::compile(m, input).formula));
}
BENCHMARK(BM_Compile)->RangeMultiplier(2)->Range(4, 32);

void BM_SatPi1Compiled(benchmark::State& state) {
  const pcr::MachineSpec m = pcr::machine_from_json(slurp(PCR_DATA_DIR "/machines/first1.json"));
  const pcr::Formula f = pcr::compile(m, "1", 1).formula;
  for (auto _ : state) benchmark::DoNotOptimize(pcr::sat_pi1(f));
}
BENCHMARK(BM_SatPi1Compiled);

}  // namespace

BENCHMARK_MAIN();
