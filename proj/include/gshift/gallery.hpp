#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gshift/group_shift.hpp"
#include "gshift/wandering.hpp"

namespace gshift {

// Named example models.  Each exists twice: as a typed builder here and as
// a bundled spec file under specs/; tests cross-check the two.

// Order-8 alphabet Z4 x Z2 with edges (a,b) allowed iff the Z2 coordinate
// of b equals a1 + a2 (mod 2).  Decomposes into two binary full shifts.
GroupShiftModel sigma_a_model();

// Full shift on the six elements of S3.
GroupShiftModel full_shift_s3_model();

// Direct sum Z/3 + Z/9 + ... + Z/3^m under multiplication by 2, coded by
// the trivial subgroup: a pure permutation shift on 3^(m(m+1)/2) states.
CodedSystem dlim_3adic_truncation(int m);

// Full shift on S3 crossed with the m=1 permutation system: splits off one
// size-6 full-shift factor, leaving the permutation.
GroupShiftModel s3_cross_perm_model();

struct GalleryEntry {
  std::string name;
  std::string description;
  std::string spec_text;  // canonical rendering, byte-stable
};

// sigma_a, full_shift_s3, dlim_3adic_truncation, q3, q3xq3, z2_matrix.
std::vector<GalleryEntry> gallery_entries();

}  // namespace gshift
