// Shared test fixture: reproducible random group-shift models.
//
// Two families cover the model space:
//   (a) twisted-subgroup edges  E = {(a, t(a) f) : a in A, f in F}  for an
//       automorphism t and a normal subgroup F -- always a valid model, with
//       follower subgroup exactly F;
//   (b) subgroups of A x A grown from random generators, kept when both
//       projections are onto.
// Every model returned passes validate_group_shift, so the axioms hold by
// construction and the tests can focus on decomposition behavior.

#pragma once

#include <memory>
#include <random>
#include <vector>

#include "gshift/group_shift.hpp"

namespace testfix {

inline std::vector<std::shared_ptr<const gshift::FiniteGroup>> group_pool(
    int max_order) {
  using namespace gshift;
  std::vector<FiniteGroup> gs;
  for (int n = 2; n <= max_order; ++n) gs.push_back(cyclic_group(n));
  gs.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
  gs.push_back(direct_product(cyclic_group(4), cyclic_group(2)));
  gs.push_back(direct_product(cyclic_group(2),
                              direct_product(cyclic_group(2), cyclic_group(2))));
  gs.push_back(direct_product(cyclic_group(3), cyclic_group(3)));
  gs.push_back(symmetric_s3());
  gs.push_back(dihedral_d4());
  gs.push_back(quaternion_q8());
  if (max_order >= 12)
    gs.push_back(direct_product(symmetric_s3(), cyclic_group(2)));
  if (max_order >= 16) {
    gs.push_back(direct_product(cyclic_group(8), cyclic_group(2)));
    gs.push_back(direct_product(cyclic_group(4), cyclic_group(4)));
  }
  std::vector<std::shared_ptr<const FiniteGroup>> out;
  for (FiniteGroup& g : gs)
    if (g.size() <= max_order)
      out.push_back(std::make_shared<const FiniteGroup>(std::move(g)));
  return out;
}

// an automorphism usable for any group: identity, an inner conjugation, or
// (abelian only) inversion
inline std::vector<int> random_automorphism_image(const gshift::FiniteGroup& g,
                                                  std::mt19937& rng) {
  const int n = g.size();
  std::vector<int> img(n);
  bool abelian = true;
  for (int a = 0; a < n && abelian; ++a)
    for (int b = 0; b < n && abelian; ++b)
      if (g.mul(a, b) != g.mul(b, a)) abelian = false;
  const int pick = static_cast<int>(rng() % 3);
  if (pick == 0) {
    for (int a = 0; a < n; ++a) img[a] = a;
  } else if (pick == 1 && abelian) {
    for (int a = 0; a < n; ++a) img[a] = g.inv(a);
  } else {
    const int c = static_cast<int>(rng() % n);
    for (int a = 0; a < n; ++a) img[a] = g.mul(g.mul(c, a), g.inv(c));
  }
  return img;
}

inline gshift::GroupShiftModel random_group_shift(
    const std::vector<std::shared_ptr<const gshift::FiniteGroup>>& pool,
    std::mt19937& rng) {
  using namespace gshift;
  for (;;) {
    const auto& g = pool[rng() % pool.size()];
    const int n = g->size();
    const int strategy = static_cast<int>(rng() % 4);

    if (strategy == 0) return full_group_shift(g);

    if (strategy <= 2) {
      // twisted-subgroup family: pick a normal F (a few tries, else trivial)
      Subgroup f = trivial_subgroup(*g);
      for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<int> seeds = {static_cast<int>(rng() % n)};
        if (rng() % 2) seeds.push_back(static_cast<int>(rng() % n));
        Subgroup cand = subgroup_generated(*g, seeds);
        if (is_normal(*g, cand)) {
          f = std::move(cand);
          break;
        }
      }
      const std::vector<int> img = random_automorphism_image(*g, rng);
      std::vector<std::pair<int, int>> edges;
      for (int a = 0; a < n; ++a)
        for (int m : f.members) edges.emplace_back(a, g->mul(img[a], m));
      return validate_group_shift(g, edges);
    }

    // free family: a random subgroup of A x A, kept when both projections
    // are onto
    const FiniteGroup pair = direct_product(*g, *g);
    std::vector<int> seeds;
    const int k = 2 + static_cast<int>(rng() % 2);
    for (int j = 0; j < k; ++j)
      seeds.push_back(static_cast<int>(rng() % pair.size()));
    const Subgroup e = subgroup_generated(pair, seeds);
    std::vector<char> src(n, 0), dst(n, 0);
    for (int m : e.members) {
      src[m / n] = 1;
      dst[m % n] = 1;
    }
    bool onto = true;
    for (int a = 0; a < n; ++a)
      if (!src[a] || !dst[a]) onto = false;
    if (!onto) continue;  // resample
    std::vector<std::pair<int, int>> edges;
    for (int m : e.members) edges.emplace_back(m / n, m % n);
    return validate_group_shift(g, edges);
  }
}

}  // namespace testfix
