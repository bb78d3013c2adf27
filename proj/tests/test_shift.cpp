// Shift layer: vertex shifts, SFTs, block maps, recoding, word counts.
// Path counts are checked against an explicit transfer-matrix oracle and
// word enumerations against raw string filtering.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "gshift/error.hpp"
#include "gshift/shift.hpp"

using namespace gshift;

namespace {

// a -> a, a -> b, b -> a: word counts follow the Fibonacci recurrence
VertexShift golden_mean() {
  return build_vertex_shift({"a", "b"}, {{0, 0}, {0, 1}, {1, 0}});
}

// transfer-matrix oracle: number of length-n walks = sum of entries of
// M^(n-1) (rows restricted to `from` when given)
mpz_class count_oracle(const VertexShift& x, int n, int from = -1) {
  const int m = x.size();
  std::vector<std::vector<mpz_class>> pow(m, std::vector<mpz_class>(m, 0));
  for (int i = 0; i < m; ++i) pow[i][i] = 1;
  for (int step = 1; step < n; ++step) {
    std::vector<std::vector<mpz_class>> nxt(m, std::vector<mpz_class>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int k : x.out[i])
        for (int j = 0; j < m; ++j) nxt[i][j] += pow[k][j];
    // nxt[i][j] = sum over edges i->k of pow[k][j]
    pow = std::move(nxt);
  }
  mpz_class total = 0;
  for (int i = 0; i < m; ++i) {
    if (from >= 0 && i != from) continue;
    for (int j = 0; j < m; ++j) total += pow[i][j];
  }
  return total;
}

// brute-force word list of a binary SFT given as a forbidden-substring set
std::vector<std::string> binary_words_avoiding(
    const std::vector<std::string>& forbidden, int n) {
  std::vector<std::string> out;
  for (int v = 0; v < (1 << n); ++v) {
    std::string w(n, '0');
    for (int k = 0; k < n; ++k)
      if (v & (1 << k)) w[k] = '1';
    bool ok = true;
    for (const std::string& f : forbidden)
      if (w.find(f) != std::string::npos) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

Sft binary_sft(std::vector<Word> forbidden) {
  Sft s;
  s.symbols = {"0", "1"};
  s.forbidden = std::move(forbidden);
  return s;
}

}  // namespace

TEST_CASE("vertex shift construction and stripping") {
  const VertexShift x = golden_mean();
  CHECK(x.size() == 2);
  CHECK(x.edge(0, 1));
  CHECK(!x.edge(1, 1));
  CHECK(x.edge_count() == 3);
  CHECK(x.stripped.empty());

  // c has no outgoing edge; after removing it, d has no incoming edge
  const VertexShift y = build_vertex_shift(
      {"a", "b", "c", "d"}, {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {3, 0}});
  CHECK(y.size() == 2);
  CHECK(y.stripped == std::vector<std::string>{"c", "d"});

  CHECK_THROWS_AS(build_vertex_shift({"a"}, {}), Error);  // everything stripped
}

TEST_CASE("path counts match the transfer-matrix oracle") {
  const VertexShift x = golden_mean();
  for (int n = 1; n <= 12; ++n) {
    CHECK(path_count(x, n) == count_oracle(x, n));
    CHECK(path_count(x, n, 0) == count_oracle(x, n, 0));
    CHECK(path_count(x, n, 1) == count_oracle(x, n, 1));
  }
  // Fibonacci values, frozen
  CHECK(path_count(x, 1) == 2);
  CHECK(path_count(x, 5) == 13);
  CHECK(path_count(x, 10) == 144);

  const VertexShift f = full_shift({"x", "y", "z"});
  for (int n = 1; n <= 8; ++n) {
    mpz_class want;
    mpz_ui_pow_ui(want.get_mpz_t(), 3, static_cast<unsigned long>(n));
    CHECK(path_count(f, n) == want);
  }
}

TEST_CASE("word enumeration agrees with counts and membership") {
  const VertexShift x = golden_mean();
  for (int n = 1; n <= 8; ++n) {
    const auto ws = words(x, n);
    CHECK(mpz_class(static_cast<long>(ws.size())) == path_count(x, n));
    CHECK(std::is_sorted(ws.begin(), ws.end()));
    for (const Word& w : ws) CHECK(is_word(x, w));
  }
  CHECK(is_word(x, {0, 1, 0, 0}));
  CHECK(!is_word(x, {1, 1}));
  CHECK(follower(x, {0, 1}) == std::vector<int>{0});
  CHECK(predecessor(x, {1, 0}) == std::vector<int>{0});
}

TEST_CASE("transpose reverses words") {
  const VertexShift x = golden_mean();
  const VertexShift t = transpose(x);
  for (int n = 1; n <= 8; ++n) CHECK(path_count(t, n) == path_count(x, n));
  auto ws = words(x, 4);
  for (Word w : ws) {
    std::reverse(w.begin(), w.end());
    CHECK(is_word(t, w));
  }
}

TEST_CASE("sft word counts against raw string filtering") {
  const Sft s = binary_sft({{1, 0, 1}});
  for (int n = 1; n <= 10; ++n)
    CHECK(words(s, n).size() == binary_words_avoiding({"101"}, n).size());
  const Sft s2 = binary_sft({{1, 0, 0, 1}, {1, 1, 1}});
  for (int n = 1; n <= 10; ++n)
    CHECK(words(s2, n).size() ==
          binary_words_avoiding({"1001", "111"}, n).size());
}

TEST_CASE("markov memory detection") {
  CHECK(markov_memory(as_sft(full_shift({"0", "1"})), 3) == 0);
  CHECK(markov_memory(golden_mean(), 3) == 1);
  CHECK(markov_memory(binary_sft({{1, 0, 1}}), 3) == 2);
  CHECK(markov_memory(binary_sft({{1, 0, 0, 1}}), 3) == 3);
  // a full shift presented with redundant forbidden data is still 0-step
  CHECK(markov_memory(binary_sft({}), 3) == 0);
  CHECK_THROWS_AS(markov_memory(binary_sft({{1, 0, 0, 1}}), 2), Error);
  try {
    markov_memory(binary_sft({{1, 0, 0, 1}}), 2);
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::NotStabilized);
  }
}

TEST_CASE("higher block recoding is a conjugacy") {
  const VertexShift x = golden_mean();
  const HigherBlock hb = higher_block(x, 3);
  CHECK(hb.shift.size() == 5);  // golden-mean words of length 3
  CHECK(hb.alphabet_words.size() == 5);
  // counts shift by the window length
  for (int n = 1; n <= 6; ++n)
    CHECK(path_count(hb.shift, n) == path_count(x, n + 2));
  // forward then inverse returns the word minus the forward window overhang
  for (const Word& w : words(x, 7)) {
    const Word coded = apply_block_map(hb.forward, w);
    CHECK(coded.size() == 5);
    CHECK(is_word(hb.shift, coded));
    const Word back = apply_block_map(hb.inverse, coded);
    CHECK(back == Word(w.begin(), w.begin() + 5));
  }
  // the recoded shift is 1-step by construction
  CHECK(markov_memory(as_sft(hb.shift), 1) <= 1);
}

TEST_CASE("higher block recoding of a 2-step sft is 1-step") {
  const Sft s = binary_sft({{1, 0, 1}});
  CHECK(markov_memory(s, 3) == 2);
  const HigherBlock hb = higher_block(s, 3);
  for (int n = 1; n <= 6; ++n)
    CHECK(mpz_class(static_cast<long>(words(s, n + 2).size())) ==
          path_count(hb.shift, n));
  CHECK(markov_memory(as_sft(hb.shift), 1) <= 1);
}

TEST_CASE("block entropy growth report") {
  const GrowthReport full = block_entropy(full_shift({"a", "b", "c", "d"}), 8);
  CHECK(full.exact_geometric);
  CHECK(full.ratio_num == 4);
  CHECK(full.ratio_den == 1);
  CHECK(full.limit_log == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(full.counts.front() == 4);

  const GrowthReport gm = block_entropy(golden_mean(), 10);
  CHECK(!gm.exact_geometric);
  CHECK(gm.counts[0] == 2);
  CHECK(gm.counts[4] == 13);
}

TEST_CASE("determinism and cycle structure") {
  // permutation (0 1 2)(3 4)
  const VertexShift p = build_vertex_shift(
      {"p0", "p1", "p2", "q0", "q1"},
      {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 3}});
  const DeterminismReport r = determinism(p);
  CHECK(r.forward);
  CHECK(r.backward);
  REQUIRE(r.cycles.size() == 2);
  CHECK(r.cycles[0] == std::vector<int>{0, 1, 2});
  CHECK(r.cycles[1] == std::vector<int>{3, 4});

  const DeterminismReport g = determinism(golden_mean());
  CHECK(!g.forward);
  CHECK(g.cycles.empty());
}

TEST_CASE("enumeration limit guards word lists") {
  const std::size_t saved = enum_limit();
  set_enum_limit(8);
  CHECK_THROWS_AS(words(full_shift({"a", "b", "c"}), 2), Error);
  try {
    words(full_shift({"a", "b", "c"}), 2);
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::SizeLimit);
  }
  set_enum_limit(saved);
  CHECK(words(full_shift({"a", "b", "c"}), 2).size() == 9);
}

TEST_CASE("apply_block_map rejects unknown windows") {
  BlockMap f;
  f.memory = 0;
  f.anticipation = 1;
  f.rule[{0, 0}] = 0;
  CHECK_THROWS_AS(apply_block_map(f, {0, 1, 0}), Error);
  f.rule[{0, 1}] = 1;
  f.rule[{1, 0}] = 0;
  CHECK(apply_block_map(f, {0, 0, 1, 0}) == Word{0, 1, 0});
}
