#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gshift/group.hpp"
#include "gshift/shift.hpp"

namespace gshift {

// A vertex shift over an alphabet group A whose edge set is a subgroup of
// A x A with surjective projections.  Symbols of `shift` coincide with
// elements of `alphabet` (same order).  f_e / p_e are the follower and
// predecessor subgroups of the identity; every follower set is a left coset
// of f_e, every predecessor set a left coset of p_e.
struct GroupShiftModel {
  std::shared_ptr<const FiniteGroup> alphabet;
  std::shared_ptr<const FiniteGroup> pair_group;  // alphabet x alphabet
  VertexShift shift;
  Subgroup edge_subgroup;  // subgroup of *pair_group
  Subgroup f_e, p_e;       // subgroups of *alphabet

  const FiniteGroup& A() const { return *alphabet; }
  int pair_index(int a, int b) const { return a * alphabet->size() + b; }
};

// Validates the group-shift axioms and computes the derived fields:
//   - (e,e) is an edge                          (IdentityLoopMissing)
//   - the edge set is product/inverse closed    (NotProductClosed)
//   - both projections are onto                 (NotSurjective)
//   - f(e), p(e) are subgroups and every follower/predecessor set is a
//     left coset of the respective one          (NotASubgroup)
GroupShiftModel validate_group_shift(std::shared_ptr<const FiniteGroup> a,
                                     const std::vector<std::pair<int, int>>& edges);

// Test-only escape hatch: build the structure without the axioms (used to
// probe failure detection on deliberately broken graphs).
GroupShiftModel assemble_group_shift_unchecked(
    std::shared_ptr<const FiniteGroup> a,
    const std::vector<std::pair<int, int>>& edges);

GroupShiftModel full_group_shift(std::shared_ptr<const FiniteGroup> a);

// --- coding a finite system ------------------------------------------------

// Symbolic coding of (G, T) by the coset partition of h: symbol of g at
// time i is the coset of T^i(g).  Precondition (NotSeparating): the coset
// itinerary over one period of T separates points of G.
struct CodedSystem {
  std::shared_ptr<const FiniteGroup> group;
  GroupAutomorphism t;
  Subgroup h;
  CosetPartition partition;
  VertexShift shift;                      // on coset labels
  std::vector<Word> itinerary;            // per element: one period of cosets
  std::uint64_t period = 1;               // order of T
};

CodedSystem code_finite_system(std::shared_ptr<const FiniteGroup> g,
                               const GroupAutomorphism& t, const Subgroup& h);

// With h trivial the coded shift is the transition graph of T itself, which
// is a group shift (the graph of an automorphism is a subgroup of G x G).
GroupShiftModel as_group_shift(const CodedSystem& c);

// --- local stable/unstable words -------------------------------------------

// Depth-d truncations of the local stable/unstable sets, as words with a
// fixed coordinate layout.  `offset` is the index of coordinate 0 inside
// each word.  Stable words of depth d live on coordinates
// [-floor(d/2), ceil(d/2)-1] and are identity at every coordinate >= 0
// (free strictly before 0); unstable words live on the mirrored window
// [-(ceil(d/2)-1), floor(d/2)] and are identity at every coordinate <= 0
// (free strictly after 0).
struct LocalWords {
  std::vector<Word> words;
  int offset = 0;
};

LocalWords local_stable_words(const GroupShiftModel& m, int d);
LocalWords local_unstable_words(const GroupShiftModel& m, int d);

// Splice of two words of length 2d+1 centered at coordinate 0: takes w1 on
// coordinates >= 0 and w2 on coordinates <= 0.  Requires equal centers
// (NotSameCoset) and a valid result (SpliceNotAWord).
Word bracket(const GroupShiftModel& m, const Word& w1, const Word& w2, int d);

// Exhaustive depth-d product-structure check: every identity-centered word
// of length 2d+1 must factor as (unstable half) * (stable half) in both
// orders, symbolwise.  Scanning is per half (backward paths into e and
// forward paths out of e); the failure witness is reported.
struct ProductStructureReport {
  bool ok = true;
  int depth = 0;
  std::size_t stable_half_count = 0;
  std::size_t unstable_half_count = 0;
  std::string failure;  // human-readable witness when !ok
};

ProductStructureReport check_product_structure(const GroupShiftModel& m, int d);

// Symbol-level follower factorization: (A) f(e) equals the product of the
// identity-tail-reached follower symbols (stabilized over depth) with the
// depth-1 stable symbols, and (B) f(e)p(e) = p(e)f(e) as sets.
struct FactorizationReport {
  bool identity_a = false;
  bool identity_b = false;
  int stabilized_depth = 0;
  std::vector<int> f_e, p_e, product_fp, product_pf;
};

FactorizationReport check_follower_factorization(const GroupShiftModel& m);

}  // namespace gshift
