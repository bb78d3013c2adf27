#include "gshift/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

#include "gshift/error.hpp"

namespace gshift::kernels {

namespace {
Mode g_mode = Mode::Parallel;
}

Mode default_mode() { return g_mode; }
void set_default_mode(Mode m) { g_mode = m; }

// --- associativity ----------------------------------------------------------

std::optional<TripleViolation> associativity_violation_serial(
    const std::vector<int>& table, int n) {
  auto mul = [&](int i, int j) { return table[static_cast<size_t>(i) * n + j]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = mul(a, b);
      for (int c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return TripleViolation{a, b, c};
    }
  return std::nullopt;
}

std::optional<TripleViolation> associativity_violation_parallel(
    const std::vector<int>& table, int n) {
  auto mul = [&](int i, int j) { return table[static_cast<size_t>(i) * n + j]; };
  // first violation == lexicographically least triple, so reduce by min over
  // the flattened triple index.
  const long long none = -1;
  long long best = none;
#pragma omp parallel
  {
    long long local = none;
#pragma omp for schedule(static) nowait
    for (int a = 0; a < n; ++a) {
      if (local != none && local < static_cast<long long>(a) * n * n) continue;
      for (int b = 0; b < n; ++b) {
        const int ab = mul(a, b);
        for (int c = 0; c < n; ++c) {
          if (mul(ab, c) != mul(a, mul(b, c))) {
            const long long t =
                (static_cast<long long>(a) * n + b) * n + c;
            if (local == none || t < local) local = t;
            break;  // later c in this (a,b) row cannot beat t
          }
        }
      }
    }
#pragma omp critical
    if (local != none && (best == none || local < best)) best = local;
  }
  if (best == none) return std::nullopt;
  const int c = static_cast<int>(best % n);
  const int b = static_cast<int>((best / n) % n);
  const int a = static_cast<int>(best / n / n);
  return TripleViolation{a, b, c};
}

std::optional<TripleViolation> associativity_violation(
    const std::vector<int>& table, int n, Mode mode) {
  return mode == Mode::Serial ? associativity_violation_serial(table, n)
                              : associativity_violation_parallel(table, n);
}

// --- subset closure ----------------------------------------------------------

std::optional<PairViolation> closure_violation_serial(
    const std::vector<int>& table, int n, const std::vector<int>& members,
    const std::vector<char>& mask) {
  const int m = static_cast<int>(members.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (!mask[table[static_cast<size_t>(members[i]) * n + members[j]]])
        return PairViolation{i, j};
  return std::nullopt;
}

std::optional<PairViolation> closure_violation_parallel(
    const std::vector<int>& table, int n, const std::vector<int>& members,
    const std::vector<char>& mask) {
  const int m = static_cast<int>(members.size());
  const long long none = -1;
  long long best = none;
#pragma omp parallel
  {
    long long local = none;
#pragma omp for schedule(static) nowait
    for (int i = 0; i < m; ++i) {
      if (local != none && local < static_cast<long long>(i) * m) continue;
      for (int j = 0; j < m; ++j) {
        if (!mask[table[static_cast<size_t>(members[i]) * n + members[j]]]) {
          const long long t = static_cast<long long>(i) * m + j;
          if (local == none || t < local) local = t;
          break;
        }
      }
    }
#pragma omp critical
    if (local != none && (best == none || local < best)) best = local;
  }
  if (best == none) return std::nullopt;
  return PairViolation{static_cast<int>(best / m), static_cast<int>(best % m)};
}

std::optional<PairViolation> closure_violation(
    const std::vector<int>& table, int n, const std::vector<int>& members,
    const std::vector<char>& mask, Mode mode) {
  return mode == Mode::Serial
             ? closure_violation_serial(table, n, members, mask)
             : closure_violation_parallel(table, n, members, mask);
}

// --- path-count DP -----------------------------------------------------------

namespace {
std::vector<mpz_class> path_count_init(int n, int start) {
  std::vector<mpz_class> v(n, 0);
  if (start < 0)
    for (auto& x : v) x = 1;
  else
    v[start] = 1;
  return v;
}
}  // namespace

std::vector<mpz_class> path_count_vector_serial(
    const std::vector<std::vector<int>>& out, int start, int steps) {
  const int n = static_cast<int>(out.size());
  // counts[v] = paths of `steps` edges ending at v; iterate "gather from
  // predecessors" as "scatter along out-edges" on a swap buffer.
  std::vector<mpz_class> cur = path_count_init(n, start), next(n);
  for (int s = 0; s < steps; ++s) {
    for (auto& x : next) x = 0;
    for (int v = 0; v < n; ++v)
      if (cur[v] != 0)
        for (int w : out[v]) next[w] += cur[v];
    std::swap(cur, next);
  }
  return cur;
}

std::vector<mpz_class> path_count_vector_parallel(
    const std::vector<std::vector<int>>& out, int start, int steps) {
  const int n = static_cast<int>(out.size());
  // gather formulation: next[w] = sum over in-neighbors; rows independent.
  std::vector<std::vector<int>> in(n);
  for (int v = 0; v < n; ++v)
    for (int w : out[v]) in[w].push_back(v);
  std::vector<mpz_class> cur = path_count_init(n, start), next(n);
  for (int s = 0; s < steps; ++s) {
#pragma omp parallel for schedule(static)
    for (int w = 0; w < n; ++w) {
      mpz_class acc = 0;
      for (int v : in[w]) acc += cur[v];
      next[w] = acc;
    }
    std::swap(cur, next);
  }
  return cur;
}

std::vector<mpz_class> path_count_vector(
    const std::vector<std::vector<int>>& out, int start, int steps, Mode mode) {
  return mode == Mode::Serial ? path_count_vector_serial(out, start, steps)
                              : path_count_vector_parallel(out, start, steps);
}

// --- word enumeration ----------------------------------------------------------

namespace {
void dfs_words(const std::vector<std::vector<int>>& out, int n,
               std::vector<int>& w, std::vector<std::vector<int>>& acc,
               std::size_t limit) {
  if (static_cast<int>(w.size()) == n) {
    if (acc.size() >= limit)
      throw Error(ErrorCode::SizeLimit,
                  "word enumeration exceeds limit " + std::to_string(limit));
    acc.push_back(w);
    return;
  }
  for (int next : out[w.back()]) {
    w.push_back(next);
    dfs_words(out, n, w, acc, limit);
    w.pop_back();
  }
}
}  // namespace

std::vector<std::vector<int>> enumerate_words_serial(
    const std::vector<std::vector<int>>& out, int n, std::size_t limit) {
  std::vector<std::vector<int>> acc;
  if (n <= 0) return acc;
  std::vector<int> w;
  for (int a = 0; a < static_cast<int>(out.size()); ++a) {
    w.assign(1, a);
    dfs_words(out, n, w, acc, limit);
  }
  return acc;
}

std::vector<std::vector<int>> enumerate_words_parallel(
    const std::vector<std::vector<int>>& out, int n, std::size_t limit) {
  const int syms = static_cast<int>(out.size());
  std::vector<std::vector<std::vector<int>>> buckets(syms);
  if (n <= 0) return {};
  std::atomic<bool> overflow{false};
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < syms; ++a) {
    if (overflow.load()) continue;
    std::vector<int> w(1, a);
    try {
      dfs_words(out, n, w, buckets[a], limit);
    } catch (const Error&) {
      overflow.store(true);
    }
  }
  std::vector<std::vector<int>> acc;
  std::size_t total = 0;
  for (auto& b : buckets) total += b.size();
  if (overflow.load() || total > limit)
    throw Error(ErrorCode::SizeLimit,
                "word enumeration exceeds limit " + std::to_string(limit));
  acc.reserve(total);
  for (auto& b : buckets)
    for (auto& w : b) acc.push_back(std::move(w));
  return acc;
}

std::vector<std::vector<int>> enumerate_words(
    const std::vector<std::vector<int>>& out, int n, std::size_t limit,
    Mode mode) {
  return mode == Mode::Serial ? enumerate_words_serial(out, n, limit)
                              : enumerate_words_parallel(out, n, limit);
}

}  // namespace gshift::kernels
