#include "gshift/gallery.hpp"

#include <memory>

#include "gshift/specfile.hpp"

namespace gshift {

namespace {

std::shared_ptr<const FiniteGroup> z4_x_z2() {
  return std::make_shared<const FiniteGroup>(
      direct_product(cyclic_group(4), cyclic_group(2)));
}

// Direct sum Z/3 + Z/9 + ... + Z/3^m, elements indexed by mixed-radix digits
// (most significant summand first).
std::shared_ptr<const FiniteGroup> three_adic_sum(int m) {
  FiniteGroup g = cyclic_group(3);
  long long modulus = 3;
  for (int k = 2; k <= m; ++k) {
    modulus *= 3;
    g = direct_product(g, cyclic_group(static_cast<int>(modulus)));
  }
  return std::make_shared<const FiniteGroup>(std::move(g));
}

GroupAutomorphism doubling(std::shared_ptr<const FiniteGroup> g, int m) {
  std::vector<int> image(g->size());
  // per-coordinate moduli 3, 9, ..., 3^m; index = fold of (prev*mod + digit)
  std::vector<long long> mods;
  long long mod = 1;
  for (int k = 1; k <= m; ++k) mods.push_back(mod *= 3);
  for (int x = 0; x < g->size(); ++x) {
    long long rest = x, rebuilt = 0;
    std::vector<long long> digits(m);
    for (int k = m - 1; k >= 0; --k) {
      digits[k] = rest % mods[k];
      rest /= mods[k];
    }
    for (int k = 0; k < m; ++k)
      rebuilt = rebuilt * mods[k] + (2 * digits[k]) % mods[k];
    image[x] = static_cast<int>(rebuilt);
  }
  return build_automorphism(*g, image);
}

}  // namespace

GroupShiftModel sigma_a_model() {
  auto a = z4_x_z2();
  // element index q*2 + r for (q, r) in Z4 x Z2; an edge may enter (h, r')
  // exactly when r' = q + r (mod 2)
  std::vector<std::pair<int, int>> edges;
  for (int q = 0; q < 4; ++q)
    for (int r = 0; r < 2; ++r) {
      const int parity = (q + r) % 2;
      for (int h = 0; h < 4; ++h)
        edges.push_back({q * 2 + r, h * 2 + parity});
    }
  return validate_group_shift(a, edges);
}

GroupShiftModel full_shift_s3_model() {
  return full_group_shift(std::make_shared<const FiniteGroup>(symmetric_s3()));
}

CodedSystem dlim_3adic_truncation(int m) {
  if (m < 1 || m > 3)
    throw Error(ErrorCode::SizeLimit, "truncation depth must be 1..3");
  auto g = three_adic_sum(m);
  GroupAutomorphism t = doubling(g, m);
  return code_finite_system(g, t, trivial_subgroup(*g));
}

GroupShiftModel s3_cross_perm_model() {
  auto a = std::make_shared<const FiniteGroup>(
      direct_product(symmetric_s3(), cyclic_group(3)));
  // element index g*3 + v; the S3 coordinate moves freely, the Z3 coordinate
  // must double
  std::vector<std::pair<int, int>> edges;
  for (int g1 = 0; g1 < 6; ++g1)
    for (int v = 0; v < 3; ++v)
      for (int g2 = 0; g2 < 6; ++g2)
        edges.push_back({g1 * 3 + v, g2 * 3 + (2 * v) % 3});
  return validate_group_shift(a, edges);
}

std::vector<GalleryEntry> gallery_entries() {
  std::vector<GalleryEntry> out;
  {
    GroupShiftModel m = sigma_a_model();
    GalleryEntry e;
    e.name = "sigma_a";
    e.description =
        "order-8 group shift over Z4 x Z2 that decomposes into two binary "
        "full shifts";
    e.spec_text = render_group("Z4xZ2", *m.alphabet) +
                  render_group_shift("sigma_a", "Z4xZ2", m);
    out.push_back(std::move(e));
  }
  {
    GroupShiftModel m = full_shift_s3_model();
    GalleryEntry e;
    e.name = "full_shift_s3";
    e.description = "unconstrained shift on the six elements of S3";
    e.spec_text = render_group("S3", *m.alphabet) +
                  render_group_shift("full_shift_s3", "S3", m);
    out.push_back(std::move(e));
  }
  {
    const int m = 2;
    auto g = three_adic_sum(m);
    GroupAutomorphism t = doubling(g, m);
    Subgroup h = trivial_subgroup(*g);
    GalleryEntry e;
    e.name = "dlim_3adic_truncation";
    e.description =
        "Z3 + Z9 under doubling, coded by the trivial subgroup: a pure "
        "permutation shift";
    e.spec_text = render_group("Z3xZ9", *g) +
                  render_automorphism("double", "Z3xZ9", *g, t) +
                  render_subgroup("origin", "Z3xZ9", *g, h) +
                  render_coded_system("dlim_3adic_truncation", "Z3xZ9",
                                      "double", "origin");
    out.push_back(std::move(e));
  }
  {
    GraphWithCertificate g = q3_graph();
    GalleryEntry e;
    e.name = "q3";
    e.description =
        "one-sided digit-tail graph: single follower, three predecessors";
    e.spec_text = render_generated_graph("q3", g.graph, &g.cert);
    out.push_back(std::move(e));
  }
  {
    GraphWithCertificate g = q3xq3_graph();
    GalleryEntry e;
    e.name = "q3xq3";
    e.description =
        "plane of two digit coordinates, one stretching and one shrinking; "
        "unique fixed state";
    e.spec_text = render_generated_graph("q3xq3", g.graph, &g.cert);
    out.push_back(std::move(e));
  }
  {
    MatrixSystem m = z2_system();
    GalleryEntry e;
    e.name = "z2_matrix";
    e.description =
        "unimodular plane map [[2,1],[1,1]]; periodic points checked by "
        "exact determinants";
    e.spec_text = render_matrix_system("z2_matrix", m);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace gshift
