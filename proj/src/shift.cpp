#include "gshift/shift.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gshift/kernels.hpp"

namespace gshift {

namespace {
std::size_t g_enum_limit = 10'000'000;
}

std::size_t enum_limit() { return g_enum_limit; }
void set_enum_limit(std::size_t cap) { g_enum_limit = cap; }

bool VertexShift::edge(int a, int b) const {
  return std::binary_search(out[a].begin(), out[a].end(), b);
}

std::size_t VertexShift::edge_count() const {
  std::size_t n = 0;
  for (const auto& o : out) n += o.size();
  return n;
}

bool operator==(const VertexShift& a, const VertexShift& b) {
  return a.symbols == b.symbols && a.out == b.out;
}

VertexShift build_vertex_shift(std::vector<std::string> symbols,
                               const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(symbols.size());
  {
    std::set<std::string> seen;
    for (const auto& s : symbols)
      if (!seen.insert(s).second)
        throw Error(ErrorCode::DuplicateElement, "symbol '" + s + "'");
  }
  std::vector<std::set<int>> out(n);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error(ErrorCode::UnresolvedReference, "edge endpoint out of range");
    out[a].insert(b);
  }
  // iteratively strip symbols that cannot occur in a bi-infinite point
  std::vector<char> alive(n, 1);
  std::vector<std::string> stripped;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    for (int a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (int b : out[a])
        if (alive[b]) { ++outdeg[a]; ++indeg[b]; }
    }
    for (int a = 0; a < n; ++a)
      if (alive[a] && (indeg[a] == 0 || outdeg[a] == 0)) {
        alive[a] = 0;
        stripped.push_back(symbols[a]);
        changed = true;
      }
  }
  std::vector<int> remap(n, -1);
  VertexShift x;
  for (int a = 0; a < n; ++a)
    if (alive[a]) {
      remap[a] = static_cast<int>(x.symbols.size());
      x.symbols.push_back(symbols[a]);
    }
  if (x.symbols.empty())
    throw Error(ErrorCode::EmptyShift, "no symbol admits a bi-infinite orbit");
  x.out.resize(x.symbols.size());
  x.in.resize(x.symbols.size());
  for (int a = 0; a < n; ++a) {
    if (!alive[a]) continue;
    for (int b : out[a])
      if (alive[b]) {
        x.out[remap[a]].push_back(remap[b]);
        x.in[remap[b]].push_back(remap[a]);
      }
  }
  for (auto& v : x.out) std::sort(v.begin(), v.end());
  for (auto& v : x.in) std::sort(v.begin(), v.end());
  std::sort(stripped.begin(), stripped.end());
  x.stripped = std::move(stripped);
  return x;
}

VertexShift full_shift(std::vector<std::string> symbols) {
  std::vector<std::pair<int, int>> edges;
  const int n = static_cast<int>(symbols.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) edges.emplace_back(a, b);
  return build_vertex_shift(std::move(symbols), edges);
}

VertexShift transpose(const VertexShift& x) {
  VertexShift y = x;
  std::swap(y.out, y.in);
  return y;
}

int Sft::max_forbidden_len() const {
  int m = 2;
  for (const auto& w : forbidden) m = std::max(m, static_cast<int>(w.size()));
  return m;
}

Sft as_sft(const VertexShift& x) {
  Sft s;
  s.symbols = x.symbols;
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      if (!x.edge(a, b)) s.forbidden.push_back({a, b});
  return s;
}

Word apply_block_map(const BlockMap& f, const Word& w) {
  const int win = f.window();
  Word r;
  if (static_cast<int>(w.size()) < win) return r;
  for (size_t t = 0; t + win <= w.size(); ++t) {
    Word key(w.begin() + t, w.begin() + t + win);
    auto it = f.rule.find(key);
    if (it == f.rule.end())
      throw Error(ErrorCode::NotAWord, "window not in block-map rule");
    r.push_back(it->second);
  }
  return r;
}

// --- words -------------------------------------------------------------------

bool is_word(const VertexShift& x, const Word& w) {
  for (int a : w)
    if (a < 0 || a >= x.size()) return false;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (!x.edge(w[i], w[i + 1])) return false;
  return !w.empty();
}

bool is_word(const Sft& x, const Word& w) {
  if (w.empty()) return false;
  for (int a : w)
    if (a < 0 || a >= x.size()) return false;
  for (const auto& f : x.forbidden) {
    if (f.size() > w.size()) continue;
    for (size_t i = 0; i + f.size() <= w.size(); ++i)
      if (std::equal(f.begin(), f.end(), w.begin() + i)) return false;
  }
  return true;
}

std::vector<Word> words(const VertexShift& x, int n) {
  if (n <= 0) return {};
  mpz_class total = path_count(x, n);
  if (total > static_cast<unsigned long>(enum_limit()))
    throw Error(ErrorCode::SizeLimit,
                "word count " + total.get_str() + " exceeds enumeration cap");
  return kernels::enumerate_words(x.out, n, enum_limit());
}

std::vector<Word> words(const Sft& x, int n) {
  // forbidden-word shifts are only ever small test inputs; direct DFS
  std::vector<Word> acc;
  if (n <= 0) return acc;
  Word w;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(w.size()) == n) {
      acc.push_back(w);
      if (acc.size() > enum_limit())
        throw Error(ErrorCode::SizeLimit, "word enumeration exceeds cap");
      return;
    }
    for (int a = 0; a < x.size(); ++a) {
      w.push_back(a);
      // incremental check: only suffixes ending at the new symbol matter
      bool ok = true;
      for (const auto& f : x.forbidden) {
        if (f.size() > w.size()) continue;
        if (std::equal(f.begin(), f.end(), w.end() - f.size())) { ok = false; break; }
      }
      if (ok) self(self);
      w.pop_back();
    }
  };
  rec(rec);
  return acc;
}

std::vector<int> follower(const VertexShift& x, const Word& w) {
  if (!is_word(x, w)) throw Error(ErrorCode::NotAWord, "follower of a non-word");
  return x.out[w.back()];
}

std::vector<int> predecessor(const VertexShift& x, const Word& w) {
  if (!is_word(x, w)) throw Error(ErrorCode::NotAWord, "predecessor of a non-word");
  return x.in[w.front()];
}

std::vector<int> follower(const Sft& x, const Word& w) {
  if (!is_word(x, w)) throw Error(ErrorCode::NotAWord, "follower of a non-word");
  std::vector<int> r;
  for (int a = 0; a < x.size(); ++a) {
    Word wa = w;
    wa.push_back(a);
    if (is_word(x, wa)) r.push_back(a);
  }
  return r;
}

std::vector<int> predecessor(const Sft& x, const Word& w) {
  if (!is_word(x, w)) throw Error(ErrorCode::NotAWord, "predecessor of a non-word");
  std::vector<int> r;
  for (int a = 0; a < x.size(); ++a) {
    Word aw;
    aw.push_back(a);
    aw.insert(aw.end(), w.begin(), w.end());
    if (is_word(x, aw)) r.push_back(a);
  }
  return r;
}

mpz_class path_count(const VertexShift& x, int n, int from) {
  if (n <= 0) return 0;
  auto v = kernels::path_count_vector(x.out, from, n - 1);
  mpz_class total = 0;
  for (const auto& c : v) total += c;
  return total;
}

// --- Markov memory ------------------------------------------------------------

namespace {
// follower set of w in the SFT, assuming w is a word
std::vector<int> follower_unchecked(const Sft& x, const Word& w) {
  std::vector<int> r;
  for (int a = 0; a < x.size(); ++a) {
    Word wa = w;
    wa.push_back(a);
    if (is_word(x, wa)) r.push_back(a);
  }
  return r;
}
}  // namespace

int markov_memory(const Sft& x, int max_n) {
  const int lmax = x.max_forbidden_len();
  for (int cand = 0; cand <= max_n; ++cand) {
    bool ok = true;
    // exhaustive: followers at every length in (cand, max(lmax, cand+1)]
    // must agree with the length-cand suffix; beyond that, followers only
    // depend on the last lmax-1 symbols, so the check closes the induction.
    const int top = std::max(lmax, cand + 1);
    for (int len = cand + 1; len <= top && ok; ++len)
      for (const auto& w : words(x, len)) {
        Word suf(w.end() - cand, w.end());
        if (cand == 0) suf.clear();
        std::vector<int> fw = follower_unchecked(x, w);
        std::vector<int> fs;
        if (suf.empty()) {
          for (int a = 0; a < x.size(); ++a)
            if (is_word(x, {a})) fs.push_back(a);
        } else if (is_word(x, suf)) {
          fs = follower_unchecked(x, suf);
        } else {
          ok = false;  // suffix itself not a word: memory cand cannot encode f(w)
          break;
        }
        if (fw != fs) { ok = false; break; }
      }
    if (ok) return cand;
  }
  throw Error(ErrorCode::NotStabilized,
              "follower sets do not stabilize by memory " + std::to_string(max_n));
}

int markov_memory(const VertexShift& x, int max_n) {
  return markov_memory(as_sft(x), max_n);
}

// --- higher block --------------------------------------------------------------

HigherBlock higher_block(const Sft& x, int n) {
  if (n < 1) throw Error(ErrorCode::SectionInvalid, "block length must be >= 1");
  HigherBlock hb;
  hb.alphabet_words = words(x, n);
  const auto& alpha = hb.alphabet_words;
  std::map<Word, int> index;
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i) {
    index[alpha[i]] = i;
    std::string nm;
    for (int a : alpha[i]) nm += x.symbols[a];
    names.push_back(nm);
  }
  // overlap edges: w -> w' iff the (n+1)-letter overlap concatenation is a word
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i) {
    Word ext = alpha[i];
    ext.push_back(0);
    for (int a = 0; a < x.size(); ++a) {
      ext.back() = a;
      if (!is_word(x, ext)) continue;
      Word next(ext.begin() + 1, ext.end());
      auto it = index.find(next);
      if (it != index.end()) edges.emplace_back(i, it->second);
    }
  }
  hb.shift = build_vertex_shift(names, edges);
  if (!hb.shift.stripped.empty())
    throw Error(ErrorCode::EmptyShift,
                "higher-block alphabet contains non-extendable words");
  hb.forward.memory = 0;
  hb.forward.anticipation = n - 1;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i)
    hb.forward.rule[alpha[i]] = i;
  hb.inverse.memory = 0;
  hb.inverse.anticipation = 0;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i)
    hb.inverse.rule[{i}] = alpha[i].front();
  return hb;
}

HigherBlock higher_block(const VertexShift& x, int n) {
  return higher_block(as_sft(x), n);
}

// --- growth -----------------------------------------------------------------------

GrowthReport block_entropy(const VertexShift& x, int n_max) {
  GrowthReport r;
  for (int n = 1; n <= n_max; ++n) r.counts.push_back(path_count(x, n));
  for (size_t k = 0; k + 1 < r.counts.size(); ++k) {
    const double num = r.counts[k + 1].get_d();
    const double den = r.counts[k].get_d();
    r.ratio_log.push_back(std::log(num) - std::log(den));
  }
  if (r.counts.size() >= 2) {
    mpz_class g = gcd(r.counts[1], r.counts[0]);
    r.ratio_num = r.counts[1] / g;
    r.ratio_den = r.counts[0] / g;
    r.exact_geometric = true;
    for (size_t k = 0; k + 1 < r.counts.size(); ++k)
      if (r.counts[k + 1] * r.ratio_den != r.counts[k] * r.ratio_num) {
        r.exact_geometric = false;
        break;
      }
    if (r.exact_geometric)
      r.limit_log = std::log(r.ratio_num.get_d()) - std::log(r.ratio_den.get_d());
  }
  return r;
}

DeterminismReport determinism(const VertexShift& x) {
  DeterminismReport r;
  r.forward = true;
  r.backward = true;
  for (int a = 0; a < x.size(); ++a) {
    if (x.out[a].size() != 1) r.forward = false;
    if (x.in[a].size() != 1) r.backward = false;
  }
  if (r.forward && r.backward) {
    std::vector<char> seen(x.size(), 0);
    for (int s = 0; s < x.size(); ++s) {
      if (seen[s]) continue;
      std::vector<int> cycle;
      for (int v = s; !seen[v]; v = x.out[v][0]) {
        seen[v] = 1;
        cycle.push_back(v);
      }
      r.cycles.push_back(std::move(cycle));
    }
  }
  return r;
}

}  // namespace gshift
