#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gshift/group_shift.hpp"

namespace gshift {

// The engine never forms abstract quotient groups: it tracks an increasing
// subgroup chain h0 = {e} <= h1 <= ... inside the fixed ambient alphabet
// group, and presents each stage shift on the left cosets of the current
// subgroup (labeled by minimal representatives).  Edges are always induced
// from the original edge subgroup.
struct ReductionState {
  const GroupShiftModel* model = nullptr;
  Subgroup h_cur;              // current subgroup of the ambient group
  CosetPartition cosets_cur;   // left cosets of h_cur
  VertexShift shift_cur;       // induced shift on those cosets

  // element-level unions of the follower/predecessor sets of the identity
  // coset, and their intersection; all are subgroups containing h_cur.
  Subgroup f, p, k;
};

ReductionState initial_state(const GroupShiftModel& m);

// Recomputes f, p, k for the current stage (NotASubgroup on violation).
void compute_fpk(ReductionState& s);

enum class StepType { SplitFullShift, AmalgamateFollower, AmalgamatePredecessor };

struct StepRecord {
  StepType type;
  int factor_size = 0;                    // SplitFullShift: |k| / |h_old|
  std::vector<std::string> factor_names;  // coset labels of the emitted factor
  int c2_before = 0;                      // #amalgamations before this split
  BlockMap forward, inverse;              // stage conjugacy maps
  int alphabet_before = 0, alphabet_after = 0;
};

// Construction step 1: when k properly contains h_cur, the shift splits as
// (shift on cosets of k) x (full shift on k/h_cur).  Verified by exact path
// counts and an exhaustive lifted-edge check; throws PreconditionK1 when
// |k| == |h_cur| and SplitVerificationFailed when verification fails.
StepRecord construction1(ReductionState& s, int verify_n = 8);

// Construction step 2: when k == h_cur but the follower (resp. predecessor)
// union properly contains h_cur, amalgamating to cosets of it is invertible
// by a 2-block map (one symbol of future resp. past).  Throws PreconditionK2
// when |k| > |h_cur|, AmalgamationExhausted when there is nothing to
// amalgamate, AmbiguousAmalgamation when two symbols in one block share a
// follower (resp. predecessor) image.
StepRecord construction2(ReductionState& s, bool follower_side, int verify_n = 8);

// Full decomposition certificate: the original shift is conjugate to
// (residual permutation shift) x (full shifts on the emitted alphabets).
// The composed forward map is 1-block; the composed inverse needs
// `memory` symbols of past and `anticipation` of future (one per
// amalgamation of the respective side).
struct DecompositionCertificate {
  std::vector<int> emitted;                 // full-shift factor sizes, in order
  std::vector<StepRecord> steps;
  VertexShift residual;                     // permutation shift
  std::vector<int> residual_cycle_lengths;  // sorted descending
  VertexShift product;                      // residual x emitted full shifts
  std::vector<std::string> product_names;   // product symbol names
  BlockMap forward;                         // original -> product, 1-block
  BlockMap inverse;                         // product -> original
  int original_alphabet = 0;
};

struct DriverLimits {
  int max_steps = 64;
  int verify_n = 8;
};

// Alternates construction1 (whenever |k| > |h_cur|) with construction2
// (follower side first, predecessor side when the follower side is
// exhausted) until |f| = |p| = |h_cur|; asserts the residual is a
// permutation and that entropy is conserved exactly (the original counts
// are geometric with ratio = product of emitted sizes).
DecompositionCertificate decompose_driver(const GroupShiftModel& m,
                                          DriverLimits limits = {});

struct CertificateCheck {
  bool word_counts = false;  // counts match R * prod(factor^(n + c_i)) exactly
  bool maps_compose = false; // forward/inverse compose to identity on words
  bool structure = false;    // windows declared = windows observed, rules total
  bool ok() const { return word_counts && maps_compose && structure; }
  std::string detail;
};

CertificateCheck verify_certificate(const GroupShiftModel& original,
                                    const DecompositionCertificate& cert,
                                    int n_max);

}  // namespace gshift
