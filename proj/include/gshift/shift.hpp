#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gshift/error.hpp"
#include "gshift/group.hpp"

namespace gshift {

using Word = std::vector<int>;  // symbol indices

// Enumeration guard for word lists.  words() first computes the exact count
// and throws SizeLimit when it exceeds the cap.  The CLI seeds this from the
// GSHIFT_ENUM_LIMIT environment variable.
std::size_t enum_limit();
void set_enum_limit(std::size_t cap);

// A one-step (vertex) shift: finite alphabet, allowed transitions.
// Symbols with no outgoing or no incoming edge cannot occur in any
// bi-infinite point; validation strips them iteratively and records the
// stripped names.  `group` is an optional designation set when the alphabet
// carries group structure (group_shift module).
struct VertexShift {
  std::vector<std::string> symbols;
  std::vector<std::vector<int>> out;  // sorted out-neighbor lists
  std::vector<std::vector<int>> in;   // sorted in-neighbor lists
  std::vector<std::string> stripped;  // names removed during validation
  const FiniteGroup* group = nullptr;

  int size() const { return static_cast<int>(symbols.size()); }
  bool edge(int a, int b) const;
  std::size_t edge_count() const;
};

bool operator==(const VertexShift& a, const VertexShift& b);

// Build + validate from an edge list over named symbols.
VertexShift build_vertex_shift(std::vector<std::string> symbols,
                               const std::vector<std::pair<int, int>>& edges);

VertexShift full_shift(std::vector<std::string> symbols);
VertexShift transpose(const VertexShift& x);

// A subshift of finite type presented by forbidden words.  Only ever an
// input to markov_memory / higher_block; the decomposition pipeline works
// on VertexShift.
struct Sft {
  std::vector<std::string> symbols;
  std::vector<Word> forbidden;  // each length >= 2
  int max_forbidden_len() const;
  int size() const { return static_cast<int>(symbols.size()); }
};

Sft as_sft(const VertexShift& x);

// Sliding block code: output coordinate t is rule[input window [t-memory,
// t+anticipation]].  The rule table is total on the words of the source
// shift of window length.
struct BlockMap {
  int memory = 0;
  int anticipation = 0;
  std::map<Word, int> rule;
  int window() const { return memory + 1 + anticipation; }
};

// Applies the map to a finite word; the result covers input coordinates
// [memory, |w|-1-anticipation] and is shorter by memory+anticipation.
// Throws NotAWord if some window is missing from the rule.
Word apply_block_map(const BlockMap& f, const Word& w);

// --- word combinatorics ---------------------------------------------------

bool is_word(const VertexShift& x, const Word& w);
bool is_word(const Sft& x, const Word& w);

// All words of length n in lexicographic order.  Throws SizeLimit past the
// enumeration cap.
std::vector<Word> words(const VertexShift& x, int n);
std::vector<Word> words(const Sft& x, int n);

// f(w) / p(w): symbols a with wa (resp. aw) a word.  Throws NotAWord.
std::vector<int> follower(const VertexShift& x, const Word& w);
std::vector<int> predecessor(const VertexShift& x, const Word& w);
std::vector<int> follower(const Sft& x, const Word& w);
std::vector<int> predecessor(const Sft& x, const Word& w);

// Exact number of words of length n (from a fixed first symbol if from >= 0).
mpz_class path_count(const VertexShift& x, int n, int from = -1);

// Least N <= max_n such that followers depend only on the last N symbols,
// verified exhaustively at every length up to max(max forbidden length,
// N+1).  Full shift -> 0, vertex shift -> <=1.  Throws NotStabilized if no
// N <= max_n works.
int markov_memory(const Sft& x, int max_n);
int markov_memory(const VertexShift& x, int max_n);

// Standard n-block recoding: alphabet = words of length n, overlap edges.
// forward has window (0, n-1); inverse is a 1-block map (first letter).
struct HigherBlock {
  VertexShift shift;
  BlockMap forward;
  BlockMap inverse;
  std::vector<Word> alphabet_words;  // target symbol index -> source word
};

HigherBlock higher_block(const Sft& x, int n);
HigherBlock higher_block(const VertexShift& x, int n);

// Growth of word counts.  ratio_log[k] = log(count(k+2)/count(k+1)).
// exact_geometric iff the counts form an exact geometric progression from
// n=1 on; then ratio_num/ratio_den is the reduced common ratio and
// limit_log = log of it.
struct GrowthReport {
  std::vector<mpz_class> counts;   // counts[k] = |W(k+1)|
  std::vector<double> ratio_log;
  bool exact_geometric = false;
  mpz_class ratio_num, ratio_den;
  double limit_log = 0.0;
};

GrowthReport block_entropy(const VertexShift& x, int n_max);

// Forward/backward determinism; when both hold the shift is a permutation
// of its alphabet and `cycles` lists its cycles (each starting at its
// minimal symbol, cycles ordered by that symbol).
struct DeterminismReport {
  bool forward = false;
  bool backward = false;
  std::vector<std::vector<int>> cycles;
};

DeterminismReport determinism(const VertexShift& x);

}  // namespace gshift
