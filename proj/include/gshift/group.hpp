#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gshift/error.hpp"

namespace gshift {

// Hard cap on alphabet-group order.  Everything here is enumeration-based;
// the cap keeps every check exhaustive and exact.
inline constexpr int kMaxGroupOrder = 4096;

// A finite group as a multiplication table over element indices 0..n-1.
// Element names are carried for reports and the spec-file format; all
// computation uses indices.
struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<int> table;  // row-major: table[i * n + j] = index of names[i]*names[j]
  int identity = -1;
  std::vector<int> inverse;

  int size() const { return static_cast<int>(names.size()); }
  int mul(int i, int j) const { return table[static_cast<size_t>(i) * names.size() + j]; }
  int inv(int i) const { return inverse[i]; }
  int index_of(const std::string& name) const;  // -1 if absent
};

bool operator==(const FiniteGroup& a, const FiniteGroup& b);

// Subgroup of a fixed parent group: sorted member indices plus a membership
// mask.  The parent pointer is non-owning; FiniteGroup values are immutable
// once built, and every structure holding subgroups also holds the group.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> members;       // sorted ascending
  std::vector<char> mask;         // mask[i] iff i is a member

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int g) const { return mask[g]; }
};

bool operator==(const Subgroup& a, const Subgroup& b);

struct GroupAutomorphism {
  const FiniteGroup* group = nullptr;
  std::vector<int> image;  // image[g] = T(g)
  int operator()(int g) const { return image[g]; }
};

// Left or right coset partition.  Block 0 is the subgroup itself; the
// remaining blocks are ordered by their minimal-index representative, and
// each block is sorted.  rep[b] = minimal element of block b (the label).
struct CosetPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> rep;
  std::vector<int> block_of;  // element index -> block index

  int count() const { return static_cast<int>(blocks.size()); }
};

// Validating constructor: checks unique names, identity, inverses, and full
// associativity (every triple).  Throws Error with the first violating tuple.
FiniteGroup build_group(std::vector<std::string> names, std::vector<int> table);

// Same checks but starting from names in the table rows (spec-file path).
FiniteGroup build_group_named(const std::vector<std::string>& names,
                              const std::vector<std::vector<std::string>>& rows);

// Builders used by fixtures and the gallery.  All return validated groups.
FiniteGroup cyclic_group(int n);                       // names "0".."n-1"
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric_s3();
FiniteGroup dihedral_d4();
FiniteGroup quaternion_q8();

// Closure saturation of the seed set (plus identity).  Result is the least
// subgroup containing the seeds.
Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& seeds);

// Subgroup from an explicit member list; throws NotASubgroup if the set is
// not closed (detail names the violating pair) or misses the identity.
Subgroup subgroup_from_members(const FiniteGroup& g, std::vector<int> members);

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup full_subgroup(const FiniteGroup& g);

enum class CosetSide { Left, Right };

// Partition of g into cosets of h (left: aH, right: Ha).
CosetPartition cosets(const FiniteGroup& g, const Subgroup& h, CosetSide side);

Subgroup intersect(const Subgroup& h1, const Subgroup& h2);

// Validating constructor: bijectivity plus the homomorphism law over all pairs.
GroupAutomorphism build_automorphism(const FiniteGroup& g, std::vector<int> image);

// Order of T in Aut(g): least n >= 1 with T^n = id.  Exact (lcm of cycle
// lengths of the underlying permutation).
std::uint64_t automorphism_order(const GroupAutomorphism& t);

// Image subgroup T(h).
Subgroup automorphism_image(const GroupAutomorphism& t, const Subgroup& h);

// Diagnostic only; nothing downstream requires normality.
bool is_normal(const FiniteGroup& g, const Subgroup& h);

// Product of two subsets of g, as a sorted element list.
std::vector<int> set_product(const FiniteGroup& g, const std::vector<int>& a,
                             const std::vector<int>& b);

}  // namespace gshift
