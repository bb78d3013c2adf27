#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace gshift::kernels {

// Data-parallel inner loops, each in a serial reference form and an
// OpenMP form.  Both forms produce identical output (first-violation
// searches return the lexicographically first tuple; exact-integer sums
// are order-independent), so the test suite can compare them bitwise and
// the rest of the library can call the dispatching wrapper.

enum class Mode { Serial, Parallel };

// Process-wide default used by the dispatching wrappers.
Mode default_mode();
void set_default_mode(Mode m);

struct TripleViolation {
  int a, b, c;  // first (lex) triple with (a*b)*c != a*(b*c)
};

std::optional<TripleViolation> associativity_violation_serial(
    const std::vector<int>& table, int n);
std::optional<TripleViolation> associativity_violation_parallel(
    const std::vector<int>& table, int n);
std::optional<TripleViolation> associativity_violation(
    const std::vector<int>& table, int n, Mode mode = default_mode());

struct PairViolation {
  int i, j;  // first (lex) pair of member-list positions whose product escapes
};

// Closure scan for a subset of a group given by a sorted member list + mask.
std::optional<PairViolation> closure_violation_serial(
    const std::vector<int>& table, int n, const std::vector<int>& members,
    const std::vector<char>& mask);
std::optional<PairViolation> closure_violation_parallel(
    const std::vector<int>& table, int n, const std::vector<int>& members,
    const std::vector<char>& mask);
std::optional<PairViolation> closure_violation(
    const std::vector<int>& table, int n, const std::vector<int>& members,
    const std::vector<char>& mask, Mode mode = default_mode());

// Path-count DP over an adjacency structure: counts[v] after `steps`
// applications of "sum over out-neighbors" starting from `start` (all-ones
// when start < 0).  Exact big integers; the parallel form splits rows.
std::vector<mpz_class> path_count_vector_serial(
    const std::vector<std::vector<int>>& out, int start, int steps);
std::vector<mpz_class> path_count_vector_parallel(
    const std::vector<std::vector<int>>& out, int start, int steps);
std::vector<mpz_class> path_count_vector(
    const std::vector<std::vector<int>>& out, int start, int steps,
    Mode mode = default_mode());

// Word enumeration: all label sequences of length n along edges of `out`,
// in lexicographic order.  `limit` guards output size (throws SizeLimit).
// The parallel form fans out over the first symbol and concatenates in
// symbol order, so the output is identical to the serial form.
std::vector<std::vector<int>> enumerate_words_serial(
    const std::vector<std::vector<int>>& out, int n, std::size_t limit);
std::vector<std::vector<int>> enumerate_words_parallel(
    const std::vector<std::vector<int>>& out, int n, std::size_t limit);
std::vector<std::vector<int>> enumerate_words(
    const std::vector<std::vector<int>>& out, int n, std::size_t limit,
    Mode mode = default_mode());

}  // namespace gshift::kernels
