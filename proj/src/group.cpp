#include "gshift/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gshift/kernels.hpp"

namespace gshift {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::EmptyShift: return "EmptyShift";
    case ErrorCode::NotAWord: return "NotAWord";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::NotProductClosed: return "NotProductClosed";
    case ErrorCode::IdentityLoopMissing: return "IdentityLoopMissing";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NotSeparating: return "NotSeparating";
    case ErrorCode::NotSameCoset: return "NotSameCoset";
    case ErrorCode::SpliceNotAWord: return "SpliceNotAWord";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::PreconditionK1: return "PreconditionK1";
    case ErrorCode::PreconditionK2: return "PreconditionK2";
    case ErrorCode::AmalgamationExhausted: return "AmalgamationExhausted";
    case ErrorCode::SplitVerificationFailed: return "SplitVerificationFailed";
    case ErrorCode::AmbiguousAmalgamation: return "AmbiguousAmalgamation";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::EmptyTruncation: return "EmptyTruncation";
    case ErrorCode::BadCertificate: return "BadCertificate";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::SectionInvalid: return "SectionInvalid";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

int FiniteGroup::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  return -1;
}

bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
  return a.names == b.names && a.table == b.table;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.members == b.members;
}

FiniteGroup build_group(std::vector<std::string> names, std::vector<int> table) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw Error(ErrorCode::NoIdentity, "empty element list");
  if (n > kMaxGroupOrder)
    throw Error(ErrorCode::SizeLimit,
                "group order " + std::to_string(n) + " exceeds cap " +
                    std::to_string(kMaxGroupOrder));
  if (table.size() != static_cast<size_t>(n) * n)
    throw Error(ErrorCode::SectionInvalid, "table is not n x n");
  {
    std::set<std::string> seen;
    for (const auto& s : names)
      if (!seen.insert(s).second)
        throw Error(ErrorCode::DuplicateElement, "element '" + s + "'");
  }
  for (int v : table)
    if (v < 0 || v >= n)
      throw Error(ErrorCode::SectionInvalid, "table entry out of range");

  FiniteGroup g;
  g.names = std::move(names);
  g.table = std::move(table);

  // identity: the unique e with e*x = x*e = x for all x
  for (int e = 0; e < n && g.identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) g.identity = e;
  }
  if (g.identity < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity");

  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] < 0)
      throw Error(ErrorCode::NoInverse, "element '" + g.names[a] + "'");
  }

  if (auto v = kernels::associativity_violation(g.table, n))
    throw Error(ErrorCode::NonAssociative,
                "(" + g.names[v->a] + " " + g.names[v->b] + ") " + g.names[v->c] +
                    " != " + g.names[v->a] + " (" + g.names[v->b] + " " +
                    g.names[v->c] + ")");
  return g;
}

FiniteGroup build_group_named(const std::vector<std::string>& names,
                              const std::vector<std::vector<std::string>>& rows) {
  const int n = static_cast<int>(names.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) {
    if (!idx.emplace(names[i], i).second)
      throw Error(ErrorCode::DuplicateElement, "element '" + names[i] + "'");
  }
  if (static_cast<int>(rows.size()) != n)
    throw Error(ErrorCode::SectionInvalid,
                "table has " + std::to_string(rows.size()) + " rows, expected " +
                    std::to_string(n));
  std::vector<int> table;
  table.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorCode::SectionInvalid, "table row of width " +
                                                 std::to_string(row.size()) +
                                                 ", expected " + std::to_string(n));
    for (const auto& cell : row) {
      auto it = idx.find(cell);
      if (it == idx.end())
        throw Error(ErrorCode::UnresolvedReference,
                    "table entry '" + cell + "' is not an element");
      table.push_back(it->second);
    }
  }
  return build_group(names, std::move(table));
}

FiniteGroup cyclic_group(int n) {
  std::vector<std::string> names(n);
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[static_cast<size_t>(i) * n + j] = (i + j) % n;
  return build_group(std::move(names), std::move(table));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.size(), nb = b.size(), n = na * nb;
  if (n > kMaxGroupOrder)
    throw Error(ErrorCode::SizeLimit, "product order exceeds cap");
  // componentwise table; group laws are inherited, so the full triple scan
  // is skipped here (build_group re-checks whenever a table comes from
  // outside the library).
  FiniteGroup g;
  g.names.reserve(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) g.names.push_back(a.names[i] + "," + b.names[j]);
  g.table.resize(static_cast<size_t>(n) * n);
  for (int i1 = 0; i1 < na; ++i1)
    for (int j1 = 0; j1 < nb; ++j1)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2)
          g.table[static_cast<size_t>(i1 * nb + j1) * n + (i2 * nb + j2)] =
              a.mul(i1, i2) * nb + b.mul(j1, j2);
  g.identity = a.identity * nb + b.identity;
  g.inverse.resize(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      g.inverse[i * nb + j] = a.inv(i) * nb + b.inv(j);
  return g;
}

namespace {
// permutation composition helper for the small concrete groups
FiniteGroup group_from_perms(std::vector<std::string> names,
                             std::vector<std::vector<int>> perms) {
  const int n = static_cast<int>(perms.size());
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];  // (f*g)(x) = f(g(x))
    return h;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto h = compose(perms[i], perms[j]);
      for (int k = 0; k < n; ++k)
        if (perms[k] == h) {
          table[static_cast<size_t>(i) * n + j] = k;
          break;
        }
    }
  return build_group(std::move(names), std::move(table));
}
}  // namespace

FiniteGroup symmetric_s3() {
  return group_from_perms(
      {"e", "r", "rr", "s", "rs", "rrs"},
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}});
}

FiniteGroup dihedral_d4() {
  // symmetries of the square as permutations of its corners
  return group_from_perms(
      {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"},
      {{0, 1, 2, 3},
       {1, 2, 3, 0},
       {2, 3, 0, 1},
       {3, 0, 1, 2},
       {1, 0, 3, 2},
       {2, 1, 0, 3},
       {3, 2, 1, 0},
       {0, 3, 2, 1}});
}

FiniteGroup quaternion_q8() {
  // indices: 1, -1, i, -i, j, -j, k, -k
  std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto neg = [](int x) { return x ^ 1; };
  std::vector<int> table(64, -1);
  auto set = [&](int a, int b, int c) { table[a * 8 + b] = c; };
  // products with +-1
  for (int b = 0; b < 8; ++b) { set(0, b, b); set(1, b, neg(b)); }
  for (int a = 2; a < 8; ++a) { set(a, 0, a); set(a, 1, neg(a)); }
  const int I = 2, J = 4, K = 6;
  auto rule = [&](int a, int b, int c) {
    // a*b = c implies the 4 sign variants
    set(a, b, c); set(neg(a), b, neg(c)); set(a, neg(b), neg(c));
    set(neg(a), neg(b), c);
  };
  rule(I, I, 1); rule(J, J, 1); rule(K, K, 1);   // i^2 = j^2 = k^2 = -1
  rule(I, J, K); rule(J, K, I); rule(K, I, J);
  rule(J, I, neg(K)); rule(K, J, neg(I)); rule(I, K, neg(J));
  return build_group(std::move(names), std::move(table));
}

static Subgroup subgroup_from_mask(const FiniteGroup& g, std::vector<char> mask) {
  Subgroup h;
  h.parent = &g;
  h.mask = std::move(mask);
  for (int i = 0; i < g.size(); ++i)
    if (h.mask[i]) h.members.push_back(i);
  return h;
}

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& seeds) {
  std::vector<char> mask(g.size(), 0);
  std::vector<int> frontier = {g.identity};
  mask[g.identity] = 1;
  for (int s : seeds)
    if (!mask[s]) { mask[s] = 1; frontier.push_back(s); }
  // closure saturation: keep multiplying known members until stable
  std::vector<int> known = frontier;
  while (!frontier.empty()) {
    std::vector<int> fresh;
    for (int a : frontier)
      for (int b : known) {
        for (int c : {g.mul(a, b), g.mul(b, a)})
          if (!mask[c]) { mask[c] = 1; fresh.push_back(c); }
      }
    for (int x : fresh) known.push_back(x);
    frontier = std::move(fresh);
  }
  return subgroup_from_mask(g, std::move(mask));
}

Subgroup subgroup_from_members(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<char> mask(g.size(), 0);
  for (int m : members) {
    if (m < 0 || m >= g.size())
      throw Error(ErrorCode::UnresolvedReference, "member index out of range");
    mask[m] = 1;
  }
  if (members.empty() || !mask[g.identity])
    throw Error(ErrorCode::NotASubgroup, "identity not in member list");
  if (auto v = kernels::closure_violation(g.table, g.size(), members, mask))
    throw Error(ErrorCode::NotASubgroup,
                "product " + g.names[members[v->i]] + " * " +
                    g.names[members[v->j]] + " escapes the set");
  Subgroup h;
  h.parent = &g;
  h.members = std::move(members);
  h.mask = std::move(mask);
  return h;
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return subgroup_from_members(g, {g.identity});
}

Subgroup full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  return subgroup_from_members(g, std::move(all));
}

CosetPartition cosets(const FiniteGroup& g, const Subgroup& h, CosetSide side) {
  CosetPartition part;
  part.block_of.assign(g.size(), -1);
  // subgroup block first, then by minimal unseen representative
  auto emit = [&](int rep) {
    std::vector<int> block;
    for (int m : h.members)
      block.push_back(side == CosetSide::Left ? g.mul(rep, m) : g.mul(m, rep));
    std::sort(block.begin(), block.end());
    const int b = static_cast<int>(part.blocks.size());
    for (int x : block) part.block_of[x] = b;
    part.rep.push_back(block.front());
    part.blocks.push_back(std::move(block));
  };
  emit(g.identity);
  for (int x = 0; x < g.size(); ++x)
    if (part.block_of[x] < 0) emit(x);
  return part;
}

Subgroup intersect(const Subgroup& h1, const Subgroup& h2) {
  std::vector<int> common;
  for (int m : h1.members)
    if (h2.mask[m]) common.push_back(m);
  return subgroup_from_members(*h1.parent, std::move(common));
}

GroupAutomorphism build_automorphism(const FiniteGroup& g, std::vector<int> image) {
  if (static_cast<int>(image.size()) != g.size())
    throw Error(ErrorCode::SectionInvalid, "map does not cover the group");
  std::vector<char> hit(g.size(), 0);
  for (int v : image) {
    if (v < 0 || v >= g.size())
      throw Error(ErrorCode::UnresolvedReference, "image index out of range");
    if (hit[v]) throw Error(ErrorCode::NotSurjective, "map is not a bijection");
    hit[v] = 1;
  }
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (image[g.mul(a, b)] != g.mul(image[a], image[b]))
        throw Error(ErrorCode::SectionInvalid,
                    "not a homomorphism at (" + g.names[a] + ", " + g.names[b] + ")");
  return GroupAutomorphism{&g, std::move(image)};
}

std::uint64_t automorphism_order(const GroupAutomorphism& t) {
  const int n = static_cast<int>(t.image.size());
  std::vector<char> seen(n, 0);
  std::uint64_t order = 1;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    for (int x = s; !seen[x]; x = t.image[x]) { seen[x] = 1; ++len; }
    order = std::lcm(order, len);
  }
  return order;
}

Subgroup automorphism_image(const GroupAutomorphism& t, const Subgroup& h) {
  std::vector<int> img;
  img.reserve(h.members.size());
  for (int m : h.members) img.push_back(t.image[m]);
  return subgroup_from_members(*t.group, std::move(img));
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (int x = 0; x < g.size(); ++x)
    for (int m : h.members)
      if (!h.mask[g.mul(g.mul(x, m), g.inv(x))]) return false;
  return true;
}

std::vector<int> set_product(const FiniteGroup& g, const std::vector<int>& a,
                             const std::vector<int>& b) {
  std::vector<char> mask(g.size(), 0);
  for (int x : a)
    for (int y : b) mask[g.mul(x, y)] = 1;
  std::vector<int> r;
  for (int i = 0; i < g.size(); ++i)
    if (mask[i]) r.push_back(i);
  return r;
}

}  // namespace gshift
