#include "gshift/wandering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace gshift {

namespace {

long long eval_expr_num(const LinExpr& e, const std::vector<long long>& x) {
  long long v = e.cst;
  for (size_t k = 0; k < e.coef.size(); ++k) v += e.coef[k] * x[k];
  return v;
}

bool constraint_holds(const Constraint& c, const std::vector<long long>& x) {
  const long long v = eval_expr_num(c.expr, x);
  switch (c.kind) {
    case Constraint::GE:  return v >= 0;
    case Constraint::EQ:  return v == 0;
    case Constraint::MOD: return ((v % c.mod) + c.mod) % c.mod == 0;
  }
  return false;
}

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

}  // namespace

// Applies one rule at a source state; empty when the rule does not fire
// (guards, divisibility, domains, or carve-outs).
std::optional<State> apply_rule(const GeneratedGraph& g, const Rule& r,
                                const State& s) {
  if (s.cls != r.src) return std::nullopt;
  // A rule only fires at actual states: predecessor solving feeds raw
  // lattice candidates through here, and those may sit outside the class
  // domain even when every guard holds.
  const ClassDecl& sc = g.classes[r.src];
  for (const Constraint& c : sc.domain)
    if (!constraint_holds(c, s.idx)) return std::nullopt;
  for (const Constraint& c : r.guards)
    if (!constraint_holds(c, s.idx)) return std::nullopt;
  for (const State& ex : r.excluded_sources)
    if (ex == s) return std::nullopt;
  State y;
  y.cls = r.dst;
  for (const LinExpr& e : r.map) {
    const long long num = eval_expr_num(e, s.idx);
    if (num % e.den != 0) return std::nullopt;
    y.idx.push_back(num / e.den);
  }
  const ClassDecl& dc = g.classes[r.dst];
  for (const Constraint& c : dc.domain)
    if (!constraint_holds(c, y.idx)) return std::nullopt;
  for (const State& ex : r.excluded_targets)
    if (ex == y) return std::nullopt;
  return y;
}

namespace {

// --- integer boxes and interval tightening ------------------------------------

struct IntCons {
  std::vector<long long> coef;
  long long cst = 0;  // sum coef*x + cst >= 0
};

struct ModCons {
  std::vector<long long> coef;
  long long cst = 0, mod = 1;  // (sum coef*x + cst) % mod == 0
};

struct Box {
  std::vector<std::optional<long long>> lb, ub;
};

// Refines per-variable integer bounds by propagating each linear constraint
// against the current extremes of the other variables.  Returns false when
// the region is proved empty.
bool tighten(Box& box, const std::vector<IntCons>& cons) {
  const size_t n = box.lb.size();
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    for (const IntCons& c : cons)
      for (size_t k = 0; k < n; ++k) {
        if (k >= c.coef.size() || c.coef[k] == 0) continue;
        long long rest = c.cst;
        bool finite = true;
        for (size_t l = 0; l < n && finite; ++l) {
          if (l == k || l >= c.coef.size() || c.coef[l] == 0) continue;
          const auto& hi = c.coef[l] > 0 ? box.ub[l] : box.lb[l];
          if (!hi) finite = false;
          else rest += c.coef[l] * *hi;
        }
        if (!finite) continue;
        // c.coef[k]*x_k >= -rest
        if (c.coef[k] > 0) {
          const long long nb = ceil_div(-rest, c.coef[k]);
          if (!box.lb[k] || nb > *box.lb[k]) { box.lb[k] = nb; changed = true; }
        } else {
          const long long nb = floor_div(-rest, c.coef[k]);
          if (!box.ub[k] || nb < *box.ub[k]) { box.ub[k] = nb; changed = true; }
        }
        if (box.lb[k] && box.ub[k] && *box.lb[k] > *box.ub[k]) return false;
      }
    if (!changed) break;
  }
  return true;
}

constexpr long long kEnumCap = 200000;

// All integer points of a finite box satisfying every constraint.  Empty
// optional when the box is unbounded or too large.
std::optional<std::vector<std::vector<long long>>> enumerate_box(
    const Box& box, const std::vector<IntCons>& cons,
    const std::vector<ModCons>& mods) {
  const size_t n = box.lb.size();
  long long volume = 1;
  for (size_t k = 0; k < n; ++k) {
    if (!box.lb[k] || !box.ub[k]) return std::nullopt;
    const long long w = *box.ub[k] - *box.lb[k] + 1;
    if (w <= 0) return std::vector<std::vector<long long>>{};
    if (volume > kEnumCap / w) return std::nullopt;
    volume *= w;
  }
  std::vector<std::vector<long long>> acc;
  std::vector<long long> x(n);
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == n) {
      for (const IntCons& c : cons) {
        long long v = c.cst;
        for (size_t l = 0; l < c.coef.size(); ++l) v += c.coef[l] * x[l];
        if (v < 0) return;
      }
      for (const ModCons& c : mods) {
        long long v = c.cst;
        for (size_t l = 0; l < c.coef.size(); ++l) v += c.coef[l] * x[l];
        if (((v % c.mod) + c.mod) % c.mod != 0) return;
      }
      acc.push_back(x);
      return;
    }
    for (long long v = *box.lb[k]; v <= *box.ub[k]; ++v) {
      x[k] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return acc;
}

void collect_source_constraints(const GeneratedGraph& g, const Rule& r,
                                std::vector<IntCons>& cons,
                                std::vector<ModCons>& mods) {
  auto add = [&](const Constraint& c) {
    if (c.kind == Constraint::MOD) {
      mods.push_back({c.expr.coef, c.expr.cst, c.mod});
      return;
    }
    cons.push_back({c.expr.coef, c.expr.cst});
    if (c.kind == Constraint::EQ) {
      IntCons neg{c.expr.coef, -c.expr.cst};
      for (auto& v : neg.coef) v = -v;
      cons.push_back(std::move(neg));
    }
  };
  for (const Constraint& c : g.classes[r.src].domain) add(c);
  for (const Constraint& c : r.guards) add(c);
}

// --- exact affine composition (rational) ---------------------------------------

struct Affine {
  std::vector<mpq_class> coef;
  mpq_class cst;
};

// gmpxx has no long long overloads, so everything routes through mpz_class
// values built with explicit casts.
mpz_class mk_z(long long v) { return mpz_class(static_cast<long>(v)); }

mpq_class mk_q(long long num, long long den) {
  mpq_class q{mk_z(num), mk_z(den)};
  q.canonicalize();
  return q;
}

Affine as_affine(const LinExpr& e, size_t nvars) {
  Affine a;
  a.coef.assign(nvars, 0);
  for (size_t k = 0; k < e.coef.size(); ++k) a.coef[k] = mk_q(e.coef[k], e.den);
  a.cst = mk_q(e.cst, e.den);
  return a;
}

// rank_dst(map(x)) - rank_src(x) as an exact affine function of the source
// indices.
Affine rank_delta(const RankCertificate& cert, const GeneratedGraph& g,
                  const Rule& r) {
  const size_t ns = g.classes[r.src].dims();
  const LinExpr& rd = cert.rank[r.dst];
  const LinExpr& rs = cert.rank[r.src];
  Affine acc;
  acc.coef.assign(ns, 0);
  acc.cst = mk_q(rd.cst, rd.den);
  for (size_t k = 0; k < r.map.size(); ++k) {
    const mpq_class w =
        k < rd.coef.size() ? mk_q(rd.coef[k], rd.den) : mpq_class(0);
    Affine m = as_affine(r.map[k], ns);
    for (size_t l = 0; l < ns; ++l) acc.coef[l] += w * m.coef[l];
    acc.cst += w * m.cst;
  }
  Affine src = as_affine(rs, ns);
  for (size_t l = 0; l < ns; ++l) acc.coef[l] -= src.coef[l];
  acc.cst -= src.cst;
  return acc;
}

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p())
    throw Error(ErrorCode::BadCertificate, "certificate coefficients overflow");
  return z.get_si();
}

// Clears denominators: returns integer coefficients of D*f for the positive
// common denominator D (sign-preserving).
IntCons clear_denominators(const Affine& f) {
  mpz_class d = 1;
  for (const auto& q : f.coef) d = lcm(d, q.get_den());
  d = lcm(d, f.cst.get_den());
  IntCons out;
  for (const auto& q : f.coef)
    out.coef.push_back(to_ll(mpz_class(q.get_num() * (d / q.get_den()))));
  out.cst = to_ll(mpz_class(f.cst.get_num() * (d / f.cst.get_den())));
  return out;
}

std::string format_expr(const LinExpr& e, const std::vector<std::string>& vars) {
  std::string s;
  bool first = true;
  for (size_t k = 0; k < e.coef.size(); ++k) {
    if (e.coef[k] == 0) continue;
    if (!first) s += e.coef[k] > 0 ? "+" : "-";
    else if (e.coef[k] < 0) s += "-";
    const long long a = std::abs(e.coef[k]);
    if (a != 1) s += std::to_string(a) + "*";
    s += vars[k];
    first = false;
  }
  if (e.cst != 0 || first) {
    if (!first) s += e.cst >= 0 ? "+" : "-";
    else if (e.cst < 0) s += "-";
    s += std::to_string(std::abs(e.cst));
  }
  if (e.den != 1) s = "(" + s + ")/" + std::to_string(e.den);
  return s;
}

std::string format_rule(const GeneratedGraph& g, const Rule& r) {
  const ClassDecl& sc = g.classes[r.src];
  const ClassDecl& dc = g.classes[r.dst];
  std::string s = sc.name;
  if (sc.dims() > 0) {
    s += "(";
    for (int k = 0; k < sc.dims(); ++k) s += (k ? "," : "") + sc.vars[k];
    s += ")";
  }
  s += " -> " + dc.name;
  if (dc.dims() > 0) {
    s += "(";
    for (size_t k = 0; k < r.map.size(); ++k)
      s += (k ? "," : "") + format_expr(r.map[k], sc.vars);
    s += ")";
  }
  for (const Constraint& c : r.guards) {
    s += " when " + format_expr(c.expr, sc.vars);
    switch (c.kind) {
      case Constraint::GE:  s += " >= 0"; break;
      case Constraint::EQ:  s += " == 0"; break;
      case Constraint::MOD: s += " == 0 mod " + std::to_string(c.mod); break;
    }
  }
  return s;
}

bool is_fixed_state(const GeneratedGraph& g, const State& s) {
  return std::find(g.fixed.begin(), g.fixed.end(), s) != g.fixed.end();
}

// Symbolic proof that one rule never breaks strict rank monotonicity, except
// at fixed-state self-loops or carved-out states.  The violation region
// {rank moves the wrong way} is first attacked by a sup bound over the
// tightened box, then by exhaustive enumeration when it is finite.
RuleProof prove_rule(const GeneratedGraph& g, const RankCertificate& cert,
                     const Rule& r) {
  RuleProof proof;
  proof.rule_desc = format_rule(g, r);
  const size_t ns = g.classes[r.src].dims();

  Affine delta = rank_delta(cert, g, r);
  Affine viol = delta;  // violation iff viol >= 0
  if (cert.increasing) {
    for (auto& q : viol.coef) q = -q;
    viol.cst = -viol.cst;
  }
  IntCons w = clear_denominators(viol);

  std::vector<IntCons> cons;
  std::vector<ModCons> mods;
  collect_source_constraints(g, r, cons, mods);

  Box box;
  box.lb.assign(ns, std::nullopt);
  box.ub.assign(ns, std::nullopt);
  if (!tighten(box, cons)) {
    proof.proved = true;
    proof.note = "rule never applies (empty source region)";
    return proof;
  }

  // sup of the violation polynomial over the box; strictly negative sup
  // proves the rule outright
  {
    bool finite = true;
    long long sup = w.cst;
    for (size_t k = 0; k < ns && finite; ++k) {
      if (k >= w.coef.size() || w.coef[k] == 0) continue;
      const auto& side = w.coef[k] > 0 ? box.ub[k] : box.lb[k];
      if (!side) finite = false;
      else sup += w.coef[k] * *side;
    }
    if (finite && sup < 0) {
      proof.proved = true;
      proof.note = "strict margin " + std::to_string(sup) + " over the whole rule";
      return proof;
    }
  }

  // otherwise the violation candidates must form a finite set
  std::vector<IntCons> vcons = cons;
  vcons.push_back(w);
  Box vbox = box;
  if (!tighten(vbox, vcons)) {
    proof.proved = true;
    proof.note = "violation region is empty";
    return proof;
  }
  auto points = enumerate_box(vbox, vcons, mods);
  if (!points)
    throw Error(ErrorCode::BadCertificate,
                "violation region of rule '" + proof.rule_desc +
                    "' is unbounded or too large to enumerate");
  size_t real = 0;
  for (const auto& x : *points) {
    State s{r.src, x};
    auto y = apply_rule(g, r, s);
    if (!y) continue;  // carved out or not actually an edge
    if (*y == s && is_fixed_state(g, s)) continue;  // exempt self-loop
    proof.proved = false;
    proof.note = "rank fails to move at " + format_state(g, s);
    return proof;
  }
  real = points->size();
  proof.proved = true;
  proof.note = "checked " + std::to_string(real) +
               " boundary candidates, all exempt";
  return proof;
}

}  // namespace

// --- basic graph operations -------------------------------------------------------

int GeneratedGraph::class_index(const std::string& name) const {
  for (size_t k = 0; k < classes.size(); ++k)
    if (classes[k].name == name) return static_cast<int>(k);
  return -1;
}

bool state_in_domain(const GeneratedGraph& g, const State& s) {
  if (s.cls < 0 || s.cls >= static_cast<int>(g.classes.size())) return false;
  const ClassDecl& c = g.classes[s.cls];
  if (static_cast<int>(s.idx.size()) != c.dims()) return false;
  for (const Constraint& d : c.domain)
    if (!constraint_holds(d, s.idx)) return false;
  return true;
}

std::string format_state(const GeneratedGraph& g, const State& s) {
  const ClassDecl& c = g.classes[s.cls];
  if (c.dims() == 0) return c.name;
  std::string r = c.name + "(";
  for (size_t k = 0; k < s.idx.size(); ++k)
    r += (k ? "," : "") + std::to_string(s.idx[k]);
  return r + ")";
}

void validate_generated_graph(const GeneratedGraph& g) {
  if (g.classes.empty())
    throw Error(ErrorCode::SectionInvalid, "graph has no state classes");
  std::set<std::string> names;
  for (const ClassDecl& c : g.classes) {
    if (c.name.empty() || !names.insert(c.name).second)
      throw Error(ErrorCode::SectionInvalid, "class names must be unique");
    for (const Constraint& d : c.domain) {
      if (static_cast<int>(d.expr.coef.size()) != c.dims() || d.expr.den != 1)
        throw Error(ErrorCode::SectionInvalid,
                    "domain constraint arity mismatch in class " + c.name);
      if (d.kind == Constraint::MOD && d.mod < 2)
        throw Error(ErrorCode::SectionInvalid, "modulus must be >= 2");
    }
  }
  const int nc = static_cast<int>(g.classes.size());
  for (const Rule& r : g.rules) {
    if (r.src < 0 || r.src >= nc || r.dst < 0 || r.dst >= nc)
      throw Error(ErrorCode::SectionInvalid, "rule references an unknown class");
    if (static_cast<int>(r.map.size()) != g.classes[r.dst].dims())
      throw Error(ErrorCode::SectionInvalid, "rule map arity mismatch");
    for (const LinExpr& e : r.map)
      if (static_cast<int>(e.coef.size()) != g.classes[r.src].dims() || e.den < 1)
        throw Error(ErrorCode::SectionInvalid, "rule map expression malformed");
    for (const Constraint& c : r.guards) {
      if (static_cast<int>(c.expr.coef.size()) != g.classes[r.src].dims() ||
          c.expr.den != 1)
        throw Error(ErrorCode::SectionInvalid, "rule guard arity mismatch");
      if (c.kind == Constraint::MOD && c.mod < 2)
        throw Error(ErrorCode::SectionInvalid, "modulus must be >= 2");
    }
  }
  if (!state_in_domain(g, g.base))
    throw Error(ErrorCode::SectionInvalid, "base state is outside its domain");
  for (const State& s : g.fixed) {
    if (!state_in_domain(g, s))
      throw Error(ErrorCode::BadCertificate,
                  "declared fixed state " + format_state(g, s) +
                      " is outside its domain");
    auto succ = out_edges(g, s);
    if (!std::binary_search(succ.begin(), succ.end(), s))
      throw Error(ErrorCode::BadCertificate,
                  "declared fixed state " + format_state(g, s) +
                      " has no self-loop");
  }
}

std::vector<State> out_edges(const GeneratedGraph& g, const State& s) {
  std::vector<State> r;
  for (const Rule& rule : g.rules)
    if (auto y = apply_rule(g, rule, s)) r.push_back(std::move(*y));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

namespace {

// Predecessor solving factored per rule.  The linear system map(x) = t is
// eliminated exactly over the rationals, and the pivot choices depend only on
// the coefficient columns -- never on the target -- so the elimination, the
// free-column analysis, and the enumeration of the free box are all
// target-independent.  Building the solver once and replaying it against many
// targets leaves only a right-hand-side transform per query, which is what
// makes level-by-level backward walks affordable.
struct RuleSolver {
  int ns = 0, m = 0, rank = 0;
  std::vector<int> pivot_col, free_cols;
  std::vector<std::vector<mpq_class>> red;  // reduced coefficient matrix, m x ns
  std::vector<std::vector<mpq_class>> ops;  // accumulated row operations, m x m
  bool empty_box = false;  // free box proven empty: the rule has no preimages
  std::optional<std::vector<std::vector<long long>>> free_points;  // nullopt: unbounded
};

RuleSolver build_rule_solver(const GeneratedGraph& g, const Rule& rule) {
  RuleSolver rs;
  rs.ns = g.classes[rule.src].dims();
  rs.m = static_cast<int>(rule.map.size());
  rs.red.assign(rs.m, std::vector<mpq_class>(rs.ns, 0));
  rs.ops.assign(rs.m, std::vector<mpq_class>(rs.m, 0));
  for (int k = 0; k < rs.m; ++k) {
    const LinExpr& e = rule.map[k];
    for (size_t l = 0; l < e.coef.size(); ++l) rs.red[k][l] = mk_q(e.coef[l], 1);
    rs.ops[k][k] = 1;
  }
  int row = 0;
  for (int col = 0; col < rs.ns && row < rs.m; ++col) {
    int pr = -1;
    for (int k = row; k < rs.m; ++k)
      if (rs.red[k][col] != 0) { pr = k; break; }
    if (pr < 0) continue;
    std::swap(rs.red[row], rs.red[pr]);
    std::swap(rs.ops[row], rs.ops[pr]);
    const mpq_class inv = rs.red[row][col];
    for (int c = col; c < rs.ns; ++c) rs.red[row][c] /= inv;
    for (int c = 0; c < rs.m; ++c) rs.ops[row][c] /= inv;
    for (int k = 0; k < rs.m; ++k) {
      if (k == row || rs.red[k][col] == 0) continue;
      const mpq_class f = rs.red[k][col];
      for (int c = col; c < rs.ns; ++c) rs.red[k][c] -= f * rs.red[row][c];
      for (int c = 0; c < rs.m; ++c) rs.ops[k][c] -= f * rs.ops[row][c];
    }
    rs.pivot_col.push_back(col);
    ++row;
  }
  rs.rank = row;
  std::vector<char> is_free(rs.ns, 1);
  for (int c : rs.pivot_col) is_free[c] = 0;
  for (int c = 0; c < rs.ns; ++c)
    if (is_free[c]) rs.free_cols.push_back(c);
  if (rs.free_cols.empty()) {
    rs.free_points = std::vector<std::vector<long long>>{{}};
    return rs;
  }
  // free variables: bound them by the source-side constraints that touch
  // only free coordinates, then enumerate
  std::vector<IntCons> cons;
  std::vector<ModCons> mods;
  collect_source_constraints(g, rule, cons, mods);
  std::vector<IntCons> fcons;
  for (const IntCons& c : cons) {
    IntCons fc;
    fc.cst = c.cst;
    bool only_free = true;
    for (int col : rs.free_cols)
      fc.coef.push_back(col < static_cast<int>(c.coef.size()) ? c.coef[col] : 0);
    for (int col = 0; col < rs.ns && only_free; ++col)
      if (!is_free[col] && col < static_cast<int>(c.coef.size()) &&
          c.coef[col] != 0)
        only_free = false;
    if (only_free) fcons.push_back(std::move(fc));
  }
  Box box;
  box.lb.assign(rs.free_cols.size(), std::nullopt);
  box.ub.assign(rs.free_cols.size(), std::nullopt);
  if (!tighten(box, fcons)) {
    rs.empty_box = true;
    return rs;
  }
  rs.free_points = enumerate_box(box, fcons, {});
  return rs;
}

void solve_predecessors(const GeneratedGraph& g, const Rule& rule,
                        const RuleSolver& rs, const State& t,
                        std::vector<State>& out) {
  if (rs.empty_box) return;
  // transformed right-hand side: the recorded row operations applied to
  // b_k = t_k * den_k - cst_k
  std::vector<mpq_class> rhs(rs.m, 0);
  for (int k = 0; k < rs.m; ++k) {
    const LinExpr& e = rule.map[k];
    const mpz_class b = mk_z(t.idx[k]) * mk_z(e.den) - mk_z(e.cst);
    if (b == 0) continue;
    for (int j = 0; j < rs.m; ++j)
      if (rs.ops[j][k] != 0) rhs[j] += rs.ops[j][k] * b;
  }
  for (int k = rs.rank; k < rs.m; ++k)
    if (rhs[k] != 0) return;  // inconsistent: no preimage under this rule
  if (!rs.free_points)
    throw Error(ErrorCode::SizeLimit,
                "predecessor set of " + format_state(g, t) +
                    " is not finitely enumerable");
  for (const auto& fv : *rs.free_points) {
    std::vector<long long> x(rs.ns, 0);
    for (size_t k = 0; k < rs.free_cols.size(); ++k) x[rs.free_cols[k]] = fv[k];
    bool ok = true;
    for (int k = 0; k < rs.rank && ok; ++k) {
      mpq_class v = rhs[k];
      for (int c : rs.free_cols) v -= rs.red[k][c] * mk_z(x[c]);
      if (v.get_den() != 1 || !v.get_num().fits_slong_p()) {
        ok = false;  // pivot not integral or out of range
        break;
      }
      x[rs.pivot_col[k]] = v.get_num().get_si();
    }
    if (!ok) continue;
    State cand{rule.src, x};
    auto y = apply_rule(g, rule, cand);
    if (y && *y == t) out.push_back(std::move(cand));
  }
}

}  // namespace

std::vector<State> in_edges(const GeneratedGraph& g, const State& t) {
  std::vector<State> r;
  for (const Rule& rule : g.rules) {
    if (rule.dst != t.cls) continue;
    RuleSolver rs = build_rule_solver(g, rule);
    solve_predecessors(g, rule, rs, t, r);
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

// --- truncation --------------------------------------------------------------------

int Truncation::index_of(const State& s) const {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  if (it == states.end() || !(*it == s)) return -1;
  return static_cast<int>(it - states.begin());
}

Truncation truncate(const GeneratedGraph& g, long long radius) {
  if (radius < 0) throw Error(ErrorCode::SectionInvalid, "radius must be >= 0");
  Truncation t;
  t.graph = &g;
  t.radius = radius;
  for (int cls = 0; cls < static_cast<int>(g.classes.size()); ++cls) {
    const int d = g.classes[cls].dims();
    long long volume = 1;
    for (int k = 0; k < d; ++k) {
      if (volume > kEnumCap / (2 * radius + 1))
        throw Error(ErrorCode::SizeLimit, "truncation ball is too large");
      volume *= 2 * radius + 1;
    }
    std::vector<long long> x(d, -radius);
    while (true) {
      State s{cls, x};
      if (state_in_domain(g, s)) t.states.push_back(s);
      int k = d - 1;
      while (k >= 0 && x[k] == radius) x[k--] = -radius;
      if (k < 0) break;
      ++x[k];
    }
  }
  std::sort(t.states.begin(), t.states.end());
  if (t.states.empty())
    throw Error(ErrorCode::EmptyTruncation,
                "no state has index norm <= " + std::to_string(radius));
  t.out.resize(t.states.size());
  t.in.resize(t.states.size());
  t.boundary.assign(t.states.size(), 0);
  for (int v = 0; v < t.size(); ++v) {
    for (const State& y : out_edges(g, t.states[v])) {
      const int w = t.index_of(y);
      if (w >= 0) {
        t.out[v].push_back(w);
        t.in[w].push_back(v);
      } else {
        t.boundary[v] = 1;
      }
    }
    for (const State& y : in_edges(g, t.states[v]))
      if (t.index_of(y) < 0) t.boundary[v] = 1;
  }
  for (auto& e : t.out) std::sort(e.begin(), e.end());
  for (auto& e : t.in) std::sort(e.begin(), e.end());
  return t;
}

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(out.size());
  std::vector<int> index(n, -1), low(n, 0), on(n, 0);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  int counter = 0;
  // iterative Tarjan: frame = (vertex, next-edge position)
  std::vector<std::pair<int, size_t>> frames;
  for (int s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    frames.push_back({s, 0});
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < out[v].size()) {
        const int w = out[v][pos++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          frames.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          std::vector<int> comp;
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
        const int vv = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().first] = std::min(low[frames.back().first], low[vv]);
      }
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

// --- total wandering -----------------------------------------------------------------

namespace {

// Explicit cycle through the first vertex of a cyclic component.
std::vector<int> extract_cycle(const Truncation& t, const std::vector<int>& comp) {
  const int v0 = comp[0];
  std::set<int> inside(comp.begin(), comp.end());
  if (std::binary_search(t.out[v0].begin(), t.out[v0].end(), v0)) return {v0};
  // BFS back to v0 within the component
  std::map<int, int> parent;
  std::deque<int> q;
  for (int w : t.out[v0])
    if (inside.count(w) && !parent.count(w)) {
      parent[w] = v0;
      q.push_back(w);
    }
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    if (v == v0) break;
    for (int w : t.out[v])
      if (inside.count(w) && !parent.count(w)) {
        parent[w] = v;
        q.push_back(w);
      }
  }
  std::vector<int> path{v0};
  for (int v = parent.at(v0); v != v0; v = parent.at(v)) path.push_back(v);
  std::reverse(path.begin() + 1, path.end());
  return path;
}

bool comp_is_cyclic(const Truncation& t, const std::vector<int>& comp) {
  if (comp.size() > 1) return true;
  const int v = comp[0];
  return std::binary_search(t.out[v].begin(), t.out[v].end(), v);
}

}  // namespace

WanderingReport totally_wandering(const GeneratedGraph& g,
                                  const RankCertificate& cert,
                                  long long radius) {
  if (radius < 1) throw Error(ErrorCode::SectionInvalid, "radius must be >= 1");
  if (cert.rank.size() != g.classes.size())
    throw Error(ErrorCode::BadCertificate, "one rank expression per class required");
  for (size_t k = 0; k < g.classes.size(); ++k)
    if (static_cast<int>(cert.rank[k].coef.size()) != g.classes[k].dims() ||
        cert.rank[k].den < 1)
      throw Error(ErrorCode::BadCertificate,
                  "rank arity mismatch in class " + g.classes[k].name);

  WanderingReport rep;
  Truncation t = truncate(g, radius);

  bool window_ok = true;
  for (const auto& comp : strongly_connected_components(t.out)) {
    if (!comp_is_cyclic(t, comp)) continue;
    std::vector<int> cyc = extract_cycle(t, comp);
    std::vector<State> cyc_states;
    for (int v : cyc) cyc_states.push_back(t.states[v]);
    const bool exempt =
        cyc.size() == 1 && is_fixed_state(g, t.states[cyc[0]]);
    if (!exempt && window_ok) {
      window_ok = false;
      rep.counterexample = cyc_states;
    }
    rep.cycles.push_back(std::move(cyc_states));
  }

  bool rules_ok = true;
  for (const Rule& r : g.rules) {
    RuleProof p = prove_rule(g, cert, r);
    rules_ok = rules_ok && p.proved;
    rep.rule_proofs.push_back(std::move(p));
  }

  rep.totally_wandering = window_ok && rules_ok;
  rep.summary =
      std::string(window_ok ? "window cycles are fixed self-loops only"
                            : "window contains a non-trivial cycle") +
      "; " +
      (rules_ok ? "rank certificate verified on every rule"
                : "rank certificate fails on some rule") +
      " (radius " + std::to_string(radius) + ", " +
      std::to_string(t.size()) + " states)";
  return rep;
}

// --- classification --------------------------------------------------------------------

namespace {

std::vector<char> reach(const std::vector<std::vector<int>>& adj,
                        const std::vector<int>& seeds) {
  std::vector<char> seen(adj.size(), 0);
  std::deque<int> q;
  for (int s : seeds)
    if (!seen[s]) {
      seen[s] = 1;
      q.push_back(s);
    }
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        q.push_back(w);
      }
  }
  return seen;
}

mpq_class rank_value(const RankCertificate& cert, const State& s) {
  const LinExpr& e = cert.rank[s.cls];
  mpq_class v = mk_q(e.cst, e.den);
  for (size_t k = 0; k < e.coef.size(); ++k)
    v += mk_q(e.coef[k], e.den) * mk_z(s.idx[k]);
  return v;
}

}  // namespace

Classification classify_blocks(const GeneratedGraph& g, long long radius,
                               const RankCertificate* cert) {
  Classification out;
  out.trunc = truncate(g, radius);
  const Truncation& t = out.trunc;

  auto comps = strongly_connected_components(t.out);
  std::vector<char> on_cycle(t.size(), 0);
  for (const auto& comp : comps)
    if (comp_is_cyclic(t, comp))
      for (int v : comp) on_cycle[v] = 1;
  for (int v = 0; v < t.size(); ++v) {
    if (on_cycle[v]) out.cycle_states.push_back(v);
    if (on_cycle[v] && t.boundary[v])
      throw Error(ErrorCode::RadiusTooSmall,
                  "cycle state " + format_state(g, t.states[v]) +
                      " touches the truncation boundary");
  }

  // T: on a round trip through the base component; C: from a cycle and back
  // to a cycle; W: the rest
  const int base_idx = t.index_of(g.base);
  if (base_idx < 0)
    throw Error(ErrorCode::RadiusTooSmall, "base state is outside the truncation");
  std::vector<int> base_comp;
  for (const auto& comp : comps)
    if (std::binary_search(comp.begin(), comp.end(), base_idx)) base_comp = comp;
  std::vector<char> fwd_base = reach(t.out, base_comp);
  std::vector<char> bwd_base = reach(t.in, base_comp);
  std::vector<char> fwd_cyc = reach(t.out, out.cycle_states);
  std::vector<char> bwd_cyc = reach(t.in, out.cycle_states);

  out.part.assign(t.size(), Part::W);
  std::vector<State> c_states;
  for (int v = 0; v < t.size(); ++v) {
    const bool in_t = fwd_base[v] && bwd_base[v];
    const bool in_c = fwd_cyc[v] && bwd_cyc[v];
    if (in_t) out.t_part.push_back(v);
    if (in_c) {
      out.c_part.push_back(v);
      c_states.push_back(t.states[v]);
    }
    if (in_t) out.part[v] = Part::T;
    else if (in_c) out.part[v] = Part::C;
    else out.w_part.push_back(v);
  }

  // quotient: collapse every C state (T∩C included) into one fixed point
  if (c_states.empty()) {
    out.quotient = g;
    if (cert) out.quotient_cert = *cert;
  } else {
    GeneratedGraph q;
    q.classes = g.classes;
    ClassDecl ccls;
    ccls.name = "__C";
    q.classes.push_back(ccls);
    const int c_idx = static_cast<int>(q.classes.size()) - 1;
    const State c_state{c_idx, {}};

    std::set<State> c_set(c_states.begin(), c_states.end());
    for (Rule r : g.rules) {
      for (const State& s : c_states) {
        if (s.cls == r.src) r.excluded_sources.push_back(s);
        if (s.cls == r.dst) r.excluded_targets.push_back(s);
      }
      q.rules.push_back(std::move(r));
    }
    // crossing edges, derived exactly from the finite C set
    std::set<State> into_c, from_c;
    for (const State& c : c_states) {
      for (const State& w : in_edges(g, c))
        if (!c_set.count(w)) into_c.insert(w);
      for (const State& w : out_edges(g, c))
        if (!c_set.count(w)) from_c.insert(w);
    }
    for (const State& w : into_c) {
      Rule r;
      r.src = w.cls;
      r.dst = c_idx;
      for (size_t k = 0; k < w.idx.size(); ++k) {
        Constraint pin;
        pin.kind = Constraint::EQ;
        pin.expr.coef.assign(g.classes[w.cls].dims(), 0);
        pin.expr.coef[k] = 1;
        pin.expr.cst = -w.idx[k];
        r.guards.push_back(std::move(pin));
      }
      q.rules.push_back(std::move(r));
    }
    for (const State& w : from_c) {
      Rule r;
      r.src = c_idx;
      r.dst = w.cls;
      for (long long v : w.idx) {
        LinExpr e;
        e.cst = v;
        r.map.push_back(std::move(e));
      }
      q.rules.push_back(std::move(r));
    }
    {
      Rule loop;
      loop.src = loop.dst = c_idx;
      q.rules.push_back(std::move(loop));
    }
    q.base = c_set.count(g.base) ? c_state : g.base;
    for (const State& s : g.fixed)
      if (!c_set.count(s)) q.fixed.push_back(s);
    q.fixed.push_back(c_state);
    out.quotient = std::move(q);

    // inherited certificate: original ranks, with the collapsed state slotted
    // strictly between its incoming and outgoing neighbors
    if (cert) {
      out.quotient_cert = *cert;
      std::optional<mpq_class> lo, hi;  // lo < rank(__C) < hi required
      for (const State& w : into_c) {
        const mpq_class rv = rank_value(*cert, w);
        if (cert->increasing) {
          if (!lo || rv > *lo) lo = rv;
        } else if (!hi || rv < *hi) {
          hi = rv;
        }
      }
      for (const State& w : from_c) {
        const mpq_class rv = rank_value(*cert, w);
        if (cert->increasing) {
          if (!hi || rv < *hi) hi = rv;
        } else if (!lo || rv > *lo) {
          lo = rv;
        }
      }
      mpq_class pick = 0;
      if (lo && hi) pick = (*lo + *hi) / 2;
      else if (lo) pick = *lo + 1;
      else if (hi) pick = *hi - 1;
      LinExpr ce;
      pick.canonicalize();
      if (!pick.get_num().fits_slong_p() || !pick.get_den().fits_slong_p())
        throw Error(ErrorCode::BadCertificate, "collapsed rank overflows");
      ce.cst = pick.get_num().get_si();
      ce.den = pick.get_den().get_si();
      out.quotient_cert.rank.push_back(ce);
      const bool slot_ok = (!lo || !hi) || *lo < *hi;
      out.quotient_cert_valid = slot_ok;
      if (slot_ok)
        for (const Rule& r : out.quotient.rules)
          if (!prove_rule(out.quotient, out.quotient_cert, r).proved) {
            out.quotient_cert_valid = false;
            break;
          }
    }
  }

  out.summary = "T=" + std::to_string(out.t_part.size()) +
                " C=" + std::to_string(out.c_part.size()) +
                " W=" + std::to_string(out.w_part.size()) + " of " +
                std::to_string(t.size()) + " states at radius " +
                std::to_string(radius) +
                (cert && out.quotient_cert_valid
                     ? "; quotient certificate verified"
                     : "; quotient exact for this window");
  return out;
}

// --- dual entropy ---------------------------------------------------------------------

namespace {

GrowthSide growth_from_counts(std::vector<mpz_class> counts) {
  GrowthSide s;
  s.counts = std::move(counts);
  if (s.counts.size() >= 2 && s.counts[0] > 0) {
    mpz_class g = gcd(s.counts[1], s.counts[0]);
    s.ratio_num = s.counts[1] / g;
    s.ratio_den = s.counts[0] / g;
    s.exact_geometric = true;
    for (size_t k = 0; k + 1 < s.counts.size(); ++k)
      if (s.counts[k + 1] * s.ratio_den != s.counts[k] * s.ratio_num) {
        s.exact_geometric = false;
        break;
      }
  }
  if (s.exact_geometric && s.ratio_num > 0) {
    s.growth_log = std::log(s.ratio_num.get_d()) - std::log(s.ratio_den.get_d());
  } else if (s.counts.size() >= 2 && s.counts[s.counts.size() - 2] > 0 &&
             s.counts.back() > 0) {
    s.growth_log = std::log(s.counts.back().get_d()) -
                   std::log(s.counts[s.counts.size() - 2].get_d());
  }
  return s;
}

}  // namespace

DualEntropyReport dual_entropy(const GeneratedGraph& g, const State& s0,
                               int n_max, const RankCertificate* cert) {
  if (!state_in_domain(g, s0))
    throw Error(ErrorCode::SectionInvalid, "start state is outside its domain");
  DualEntropyReport rep;
  long long touched = 0;
  auto norm = [](const State& s) {
    long long m = 0;
    for (long long v : s.idx) m = std::max(m, std::abs(v));
    return m;
  };

  // rule solvers factored out of the level loop: the backward walk solves the
  // same linear systems for every state on every level, so the elimination and
  // free-box enumeration are done once per rule up front
  std::vector<RuleSolver> solvers;
  solvers.reserve(g.rules.size());
  for (const Rule& rule : g.rules) solvers.push_back(build_rule_solver(g, rule));
  auto predecessors = [&](const State& t) {
    std::vector<State> r;
    for (size_t k = 0; k < g.rules.size(); ++k) {
      if (g.rules[k].dst != t.cls) continue;
      solve_predecessors(g, g.rules[k], solvers[k], t, r);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  };

  for (int dir = 0; dir < 2; ++dir) {
    std::map<State, mpz_class> cur;
    cur[s0] = 1;
    std::vector<mpz_class> counts{1};
    for (int n = 1; n <= n_max; ++n) {
      std::map<State, mpz_class> next;
      for (const auto& [s, c] : cur)
        for (const State& y : (dir == 0 ? out_edges(g, s) : predecessors(s))) {
          next[y] += c;
          touched = std::max(touched, norm(y));
        }
      if (next.size() > 1000000)
        throw Error(ErrorCode::SizeLimit, "reachable state set exceeds cap");
      mpz_class total = 0;
      for (const auto& [s, c] : next) total += c;
      counts.push_back(total);
      cur = std::move(next);
    }
    (dir == 0 ? rep.forward : rep.backward) = growth_from_counts(std::move(counts));
  }
  rep.growth_entropy = std::max(rep.forward.growth_log, rep.backward.growth_log);
  rep.index_radius_touched = touched;

  rep.measure_entropy_bound = 0.0;
  if (cert) {
    // the per-rule symbolic proofs carry the global cycle claim, so a small
    // sanity window suffices regardless of how far the DP wandered
    WanderingReport w = totally_wandering(g, *cert, 2);
    rep.measure_bound_certified = w.totally_wandering;
  }
  rep.explanation =
      std::string("block growth measures distinct finite windows, while every ") +
      "shift-invariant probability measure must sit on states with recurrent " +
      "orbits; when all cycles are self-loops at finitely many fixed states, " +
      "such measures are point masses and the measure-theoretic entropy is 0, " +
      "so the two notions split: growth " +
      (rep.growth_entropy > 0 ? "is positive" : "vanishes") +
      " and the measure bound is 0" +
      (rep.measure_bound_certified ? " (certified by the rank argument)"
                                   : " (not certified on this input)") +
      ".";
  return rep;
}

// --- integer matrix systems ---------------------------------------------------------

namespace {

// Bareiss fraction-free determinant, exact.
mpz_class int_det(std::vector<std::vector<mpz_class>> a) {
  const int n = static_cast<int>(a.size());
  mpz_class sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { swap_row = i; break; }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

MatrixSystem build_matrix_system(std::vector<std::vector<long long>> rows) {
  MatrixSystem m;
  m.d = static_cast<int>(rows.size());
  if (m.d < 1) throw Error(ErrorCode::SectionInvalid, "matrix must be nonempty");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != m.d)
      throw Error(ErrorCode::SectionInvalid, "matrix must be square");
  m.m = std::move(rows);
  std::vector<std::vector<mpz_class>> a(m.d, std::vector<mpz_class>(m.d));
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) a[i][j] = mk_z(m.m[i][j]);
  const mpz_class det = int_det(a);
  if (det != 1 && det != -1)
    throw Error(ErrorCode::NoInverse,
                "matrix determinant " + det.get_str() +
                    " is not a unit; the map is not an automorphism of the lattice");
  return m;
}

PeriodicityReport matrix_no_periodics(const MatrixSystem& m, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::SectionInvalid, "n_max must be >= 1");
  PeriodicityReport rep;
  rep.n_max = n_max;
  rep.no_periodic_points = true;
  const int d = m.d;
  std::vector<std::vector<mpz_class>> pow(d, std::vector<mpz_class>(d, 0));
  for (int i = 0; i < d; ++i) pow[i][i] = 1;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::vector<mpz_class>> nxt(d, std::vector<mpz_class>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) nxt[i][j] += pow[i][k] * mk_z(m.m[k][j]);
    pow = std::move(nxt);
    std::vector<std::vector<mpz_class>> diff = pow;
    for (int i = 0; i < d; ++i) diff[i][i] -= 1;
    mpz_class det = int_det(std::move(diff));
    if (det == 0 && !rep.first_degenerate_n) {
      rep.no_periodic_points = false;
      rep.first_degenerate_n = n;
    }
    rep.dets.push_back(std::move(det));
  }
  return rep;
}

// --- builders ----------------------------------------------------------------------

GraphWithCertificate q3_graph() {
  GraphWithCertificate out;
  GeneratedGraph& g = out.graph;
  ClassDecl tail;
  tail.name = "Tail";
  tail.vars = {"i"};
  {
    Constraint ge;
    ge.kind = Constraint::GE;
    ge.expr.coef = {1};
    tail.domain.push_back(ge);
  }
  g.classes.push_back(tail);
  for (long long r = 0; r < 3; ++r) {
    Rule rule;
    rule.src = rule.dst = 0;
    LinExpr e;
    e.coef = {1};
    e.cst = -r;
    e.den = 3;
    rule.map.push_back(e);
    Constraint m;
    m.kind = Constraint::MOD;
    m.expr.coef = {1};
    m.expr.cst = -r;
    m.mod = 3;
    rule.guards.push_back(m);
    g.rules.push_back(rule);
  }
  g.base = State{0, {0}};
  g.fixed = {g.base};
  validate_generated_graph(g);

  out.cert.increasing = false;  // digit-window position falls toward the base
  LinExpr rank;
  rank.coef = {1};
  out.cert.rank.push_back(rank);
  return out;
}

GraphWithCertificate q3xq3_graph() {
  GraphWithCertificate out;
  GeneratedGraph& g = out.graph;
  ClassDecl pair;
  pair.name = "Pair";
  pair.vars = {"i", "j"};
  for (int k = 0; k < 2; ++k) {
    Constraint ge;
    ge.kind = Constraint::GE;
    ge.expr.coef = {k == 0 ? 1LL : 0LL, k == 1 ? 1LL : 0LL};
    pair.domain.push_back(ge);
  }
  g.classes.push_back(pair);
  for (long long d = 0; d < 3; ++d)
    for (long long r = 0; r < 3; ++r) {
      Rule rule;
      rule.src = rule.dst = 0;
      LinExpr stretch;  // first coordinate expands: i -> 3i + d
      stretch.coef = {3, 0};
      stretch.cst = d;
      LinExpr shrink;  // second coordinate contracts: j -> (j - r)/3
      shrink.coef = {0, 1};
      shrink.cst = -r;
      shrink.den = 3;
      rule.map = {stretch, shrink};
      Constraint m;
      m.kind = Constraint::MOD;
      m.expr.coef = {0, 1};
      m.expr.cst = -r;
      m.mod = 3;
      rule.guards.push_back(m);
      g.rules.push_back(rule);
    }
  g.base = State{0, {0, 0}};
  g.fixed = {g.base};
  validate_generated_graph(g);

  out.cert.increasing = true;  // expansion index minus contraction index
  LinExpr rank;
  rank.coef = {1, -1};
  out.cert.rank.push_back(rank);
  return out;
}

GraphWithCertificate cycle_plus_tail_graph() {
  GraphWithCertificate out;
  GeneratedGraph& g = out.graph;
  ClassDecl cyc;
  cyc.name = "Cyc";
  cyc.vars = {"i"};
  {
    Constraint ge;
    ge.kind = Constraint::GE;
    ge.expr.coef = {1};
    cyc.domain.push_back(ge);
    Constraint le;
    le.kind = Constraint::GE;
    le.expr.coef = {-1};
    le.expr.cst = 3;
    cyc.domain.push_back(le);
  }
  g.classes.push_back(cyc);
  ClassDecl tail;
  tail.name = "Tail";
  tail.vars = {"i"};
  {
    Constraint ge;
    ge.kind = Constraint::GE;
    ge.expr.coef = {1};
    tail.domain.push_back(ge);
  }
  g.classes.push_back(tail);

  {
    Rule step;  // around the 4-cycle
    step.src = step.dst = 0;
    LinExpr e;
    e.coef = {1};
    e.cst = 1;
    step.map.push_back(e);
    Constraint guard;
    guard.kind = Constraint::GE;
    guard.expr.coef = {-1};
    guard.expr.cst = 2;
    step.guards.push_back(guard);
    g.rules.push_back(step);
    Rule wrap;
    wrap.src = wrap.dst = 0;
    LinExpr z;
    z.coef = {0};
    wrap.map.push_back(z);
    Constraint at3;
    at3.kind = Constraint::EQ;
    at3.expr.coef = {1};
    at3.expr.cst = -3;
    wrap.guards.push_back(at3);
    g.rules.push_back(wrap);
  }
  for (long long r = 0; r < 3; ++r) {
    Rule rule;
    rule.src = rule.dst = 1;
    LinExpr e;
    e.coef = {1};
    e.cst = -r;
    e.den = 3;
    rule.map.push_back(e);
    Constraint m;
    m.kind = Constraint::MOD;
    m.expr.coef = {1};
    m.expr.cst = -r;
    m.mod = 3;
    rule.guards.push_back(m);
    g.rules.push_back(rule);
  }
  g.base = State{1, {0}};
  g.fixed = {g.base};
  validate_generated_graph(g);

  // rank data for the wandering part only; the cycle class gets the
  // constant rank 0, which cannot strictly decrease around the 4-cycle --
  // a well-formed certificate that fails, which is the point of this fixture
  out.cert.increasing = false;
  LinExpr czero;
  czero.coef = {0};
  out.cert.rank.push_back(czero);
  LinExpr rank;
  rank.coef = {1};
  out.cert.rank.push_back(rank);
  return out;
}

MatrixSystem z2_system() { return build_matrix_system({{2, 1}, {1, 1}}); }

}  // namespace gshift
