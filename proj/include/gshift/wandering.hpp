#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gshift/error.hpp"

namespace gshift {

// --- finitely generated countable-state graphs ------------------------------
//
// States are (class, integer index vector); edges come from affine rules
// with linear guards.  Everything downstream (truncation, rank certificates,
// path counts) is exact integer arithmetic.

// (sum coef[k]*x[k] + cst) / den, den >= 1.  Guards use den == 1.
struct LinExpr {
  std::vector<long long> coef;
  long long cst = 0;
  long long den = 1;
};

struct Constraint {
  enum Kind { GE, EQ, MOD } kind = GE;  // expr >= 0, expr == 0, expr % mod == 0
  LinExpr expr;
  long long mod = 0;
};

struct State {
  int cls = 0;
  std::vector<long long> idx;
  auto operator<=>(const State&) const = default;
};

struct ClassDecl {
  std::string name;
  std::vector<std::string> vars;          // index dimension names
  std::vector<Constraint> domain;         // which index vectors are states
  int dims() const { return static_cast<int>(vars.size()); }
};

struct Rule {
  int src = 0, dst = 0;
  std::vector<LinExpr> map;               // one expr per dst dimension
  std::vector<Constraint> guards;         // on src indices
  // Finite carve-outs used by quotient graphs: the rule does not apply when
  // the source (resp. the computed target) is listed here.
  std::vector<State> excluded_sources;
  std::vector<State> excluded_targets;
};

struct GeneratedGraph {
  std::vector<ClassDecl> classes;
  std::vector<Rule> rules;
  State base;
  std::vector<State> fixed;  // declared; validation checks the self-loops

  int class_index(const std::string& name) const;  // -1 if absent
};

// Structural validation: indices in range, rule dimensions consistent,
// declared fixed states exist, satisfy their class domain, and carry a
// self-loop.  Throws Error (SectionInvalid / BadCertificate details).
void validate_generated_graph(const GeneratedGraph& g);

bool state_in_domain(const GeneratedGraph& g, const State& s);
std::string format_state(const GeneratedGraph& g, const State& s);

// Successors of s under every applicable rule (sorted, deduplicated).
std::vector<State> out_edges(const GeneratedGraph& g, const State& s);
// Single-rule application: source domain, guards, carve-outs, divisibility
// of the map, and the target domain; empty when the rule does not fire at s.
std::optional<State> apply_rule(const GeneratedGraph& g, const Rule& r,
                                const State& s);
// Predecessors via exact rule inversion (rational solve + enumeration of
// guard-bounded free variables).
std::vector<State> in_edges(const GeneratedGraph& g, const State& s);

// --- truncation --------------------------------------------------------------

// All states with max-norm index <= radius, with the induced edges.
// boundary[v] iff v has a rule edge (either direction) whose other endpoint
// lies outside the ball; interior states have their full edge neighborhood
// inside the truncation.  Throws EmptyTruncation when no state qualifies.
struct Truncation {
  const GeneratedGraph* graph = nullptr;
  long long radius = 0;
  std::vector<State> states;              // sorted
  std::vector<std::vector<int>> out, in;  // indices into `states`
  std::vector<char> boundary;

  int size() const { return static_cast<int>(states.size()); }
  int index_of(const State& s) const;     // -1 if absent
};

Truncation truncate(const GeneratedGraph& g, long long radius);

// Strongly connected components (Tarjan), in deterministic order.  A
// component is cyclic iff it has >= 2 states or a self-loop.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& out);

// --- rank certificates --------------------------------------------------------

// One affine rank expression per class.  The certificate claims: rank is
// strictly increasing (or decreasing) along every rule-generated edge of the
// full countable graph, except the self-loops at the declared fixed states.
// A valid certificate therefore proves every cycle is a fixed-state
// self-loop.
struct RankCertificate {
  std::vector<LinExpr> rank;  // indexed by class
  bool increasing = true;
};

struct RuleProof {
  std::string rule_desc;
  bool proved = false;
  std::string note;  // margin or enumeration summary
};

struct WanderingReport {
  bool totally_wandering = false;
  std::vector<RuleProof> rule_proofs;          // symbolic part (b)
  std::vector<std::vector<State>> cycles;      // cycles found in truncation
  std::vector<State> counterexample;           // non-self-loop cycle if any
  std::string summary;
};

// (a) SCC scan of the radius truncation: the only cycles must be self-loops
// at declared fixed states; (b) symbolic verification of the certificate on
// every rule, which extends (a) to the full graph.  Throws BadCertificate
// when a rule cannot be decided (unbounded violation region).
WanderingReport totally_wandering(const GeneratedGraph& g,
                                  const RankCertificate& cert,
                                  long long radius);

// --- block classification ------------------------------------------------------

enum class Part { T, C, W };

struct Classification {
  Truncation trunc;
  std::vector<Part> part;                 // per state; label priority T, C, W
  // Explicit membership (truncation indices, sorted).  T and C may overlap:
  // a cyclic base component belongs to both.
  std::vector<int> t_part, c_part, w_part;
  std::vector<int> cycle_states;          // truncation indices on cycles
  // Quotient: C-part collapsed to one fixed state (class "__C"); W states
  // keep their classes with the C-part carved out via rule exclusions.
  GeneratedGraph quotient;
  RankCertificate quotient_cert;
  bool quotient_cert_valid = false;
  std::string summary;
};

// T-part: states on paths that start and end in the base state's SCC.
// C-part: states reachable from some cycle and co-reachable to some cycle.
// W-part: the rest.  Preconditions: every cycle of the truncation lies in
// the interior (RadiusTooSmall otherwise); with `cert` supplied and valid,
// the containment of all cycles of the full graph is certified, otherwise
// the classification is exact for the truncation window (callers check
// radius stability).
Classification classify_blocks(const GeneratedGraph& g, long long radius,
                               const RankCertificate* cert = nullptr);

// --- dual entropy ---------------------------------------------------------------

struct GrowthSide {
  std::vector<mpz_class> counts;  // counts[k] = paths of length k+1
  bool exact_geometric = false;
  mpz_class ratio_num = 0, ratio_den = 1;
  double growth_log = 0.0;
};

struct DualEntropyReport {
  GrowthSide forward, backward;
  double growth_entropy = 0.0;        // max of the two growth rates
  double measure_entropy_bound = 0.0;
  bool measure_bound_certified = false;
  long long index_radius_touched = 0;
  std::string explanation;
};

// Exact path counts from `s0` by sparse DP over the reachable set (forward
// via rules, backward via rule inversion); no truncation approximation.
// The measure bound is 0 -- certified when `cert` proves all cycles are
// fixed-state self-loops (every invariant measure then sits on fixed
// points).
DualEntropyReport dual_entropy(const GeneratedGraph& g, const State& s0,
                               int n_max, const RankCertificate* cert = nullptr);

// --- integer matrix systems -----------------------------------------------------

// Automorphism of Z^d given by a unimodular integer matrix (|det| = 1).
struct MatrixSystem {
  int d = 0;
  std::vector<std::vector<long long>> m;  // row-major d x d
};

MatrixSystem build_matrix_system(std::vector<std::vector<long long>> rows);

struct PeriodicityReport {
  int n_max = 0;
  bool no_periodic_points = false;        // det(M^n - I) != 0 for all n <= n_max
  std::optional<int> first_degenerate_n;  // least n with det(M^n - I) == 0
  std::vector<mpz_class> dets;            // dets[k] = det(M^(k+1) - I)
};

// Exact integer check that M^n has no fixed vectors for n = 1..n_max
// (equivalently: no periodic points of period <= n_max off the origin in
// the dual system).
PeriodicityReport matrix_no_periodics(const MatrixSystem& m, int n_max);

// --- builders -------------------------------------------------------------------

struct GraphWithCertificate {
  GeneratedGraph graph;
  RankCertificate cert;
};

// Coset transition graph of the 3-adic rationals over the 3-adic integers
// under multiplication by 3: states Tail(i), i >= 0 (base-3 digit tails),
// one fixed base state Tail(0); |f| = 1 and |p| = 3 everywhere.
GraphWithCertificate q3_graph();

// Same for the plane of two 3-adic coordinates stretched one way and shrunk
// the other: states Pair(i, j), i, j >= 0; unique fixed state Pair(0, 0)
// carrying the only cycle; |f| = |p| = 3.
GraphWithCertificate q3xq3_graph();

// Disjoint sum of a 4-cycle (class Cyc) and the q3 tail; base at Tail(0).
// Deliberately admits no global rank certificate (the 4-cycle); used to
// exercise truncation-level classification and the W-quotient.  The
// returned cert is the rank data the quotient inherits.
GraphWithCertificate cycle_plus_tail_graph();

MatrixSystem z2_system();  // [[2,1],[1,1]]

}  // namespace gshift
