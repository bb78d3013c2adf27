// Serial/parallel comparison for the data-parallel inner loops.  Each kernel
// is benchmarked in both forms on the same fixture so the speedup (or lack
// of it) is visible directly in the report.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "gshift/kernels.hpp"

namespace {

using gshift::kernels::Mode;

// Cayley table of Z_n: associative, so the scans run to completion.
std::vector<int> cyclic_table(int n) {
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return t;
}

// Deterministic sparse digraph with out-degree `deg` on `n` vertices.
std::vector<std::vector<int>> random_graph(int n, int deg, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<std::vector<int>> out(n);
  for (auto& row : out) {
    for (int k = 0; k < deg; ++k) row.push_back(pick(rng));
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

void bench_associativity(benchmark::State& state, Mode mode) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> table = cyclic_table(n);
  for (auto _ : state) {
    auto v = gshift::kernels::associativity_violation(table, n, mode);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n * n);
}

void bench_closure(benchmark::State& state, Mode mode) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> table = cyclic_table(n);
  std::vector<int> members;   // even residues: closed under addition
  std::vector<char> mask(n, 0);
  for (int a = 0; a < n; a += 2) {
    members.push_back(a);
    mask[a] = 1;
  }
  for (auto _ : state) {
    auto v = gshift::kernels::closure_violation(table, n, members, mask, mode);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(members.size()) * members.size());
}

void bench_path_count(benchmark::State& state, Mode mode) {
  const int n = static_cast<int>(state.range(0));
  const auto out = random_graph(n, 8, 1234);
  for (auto _ : state) {
    auto counts = gshift::kernels::path_count_vector(out, -1, 64, mode);
    benchmark::DoNotOptimize(counts);
  }
}

void bench_enumerate(benchmark::State& state, Mode mode) {
  const int n = static_cast<int>(state.range(0));
  const auto out = random_graph(8, 4, 99);
  for (auto _ : state) {
    auto w = gshift::kernels::enumerate_words(out, n, 1u << 24, mode);
    benchmark::DoNotOptimize(w);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_associativity, serial, Mode::Serial)->Arg(128)->Arg(320);
BENCHMARK_CAPTURE(bench_associativity, parallel, Mode::Parallel)->Arg(128)->Arg(320);
BENCHMARK_CAPTURE(bench_closure, serial, Mode::Serial)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_closure, parallel, Mode::Parallel)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_path_count, serial, Mode::Serial)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_path_count, parallel, Mode::Parallel)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_enumerate, serial, Mode::Serial)->Arg(6)->Arg(8);
BENCHMARK_CAPTURE(bench_enumerate, parallel, Mode::Parallel)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
