#include "gshift/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gshift {

namespace {

// Induced shift on the blocks of a coset partition: block c1 -> c2 is an
// edge when some representative pair is an edge of the underlying shift.
// Stage shifts never lose symbols (every element has followers and
// predecessors), which keeps block indices aligned with partition blocks.
VertexShift stage_shift(const GroupShiftModel& m, const CosetPartition& part) {
  const int n = m.A().size();
  std::set<std::pair<int, int>> edges;
  for (int x = 0; x < n; ++x)
    for (int y : m.shift.out[x]) edges.insert({part.block_of[x], part.block_of[y]});
  std::vector<std::string> labels;
  for (int b = 0; b < part.count(); ++b) labels.push_back(m.A().names[part.rep[b]]);
  VertexShift s = build_vertex_shift(
      labels, std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
  if (!s.stripped.empty())
    throw Error(ErrorCode::EmptyShift, "stage shift lost coset " + s.stripped.front());
  return s;
}

mpz_class mpz_pow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

ReductionState initial_state(const GroupShiftModel& m) {
  ReductionState s;
  s.model = &m;
  s.h_cur = trivial_subgroup(m.A());
  s.cosets_cur = cosets(m.A(), s.h_cur, CosetSide::Left);
  s.shift_cur = stage_shift(m, s.cosets_cur);
  compute_fpk(s);
  return s;
}

void compute_fpk(ReductionState& s) {
  const FiniteGroup& a = s.model->A();
  // block 0 is the identity coset by the partition's construction
  std::vector<int> fm, pm;
  for (int c : s.shift_cur.out[0])
    fm.insert(fm.end(), s.cosets_cur.blocks[c].begin(), s.cosets_cur.blocks[c].end());
  for (int c : s.shift_cur.in[0])
    pm.insert(pm.end(), s.cosets_cur.blocks[c].begin(), s.cosets_cur.blocks[c].end());
  s.f = subgroup_from_members(a, fm);
  s.p = subgroup_from_members(a, pm);
  s.k = intersect(s.f, s.p);
  for (int g : s.h_cur.members)
    if (!s.k.contains(g))
      throw Error(ErrorCode::NotASubgroup, "current subgroup escapes f or p");
}

StepRecord construction1(ReductionState& s, int verify_n) {
  const FiniteGroup& a = s.model->A();
  if (s.k.size() == s.h_cur.size())
    throw Error(ErrorCode::PreconditionK1, "k equals the current subgroup");

  StepRecord rec;
  rec.type = StepType::SplitFullShift;
  rec.alphabet_before = s.shift_cur.size();

  const CosetPartition old_cosets = s.cosets_cur;
  const VertexShift old_shift = s.shift_cur;
  CosetPartition new_cosets = cosets(a, s.k, CosetSide::Left);
  VertexShift new_shift = stage_shift(*s.model, new_cosets);

  // the emitted factor alphabet: h_cur-blocks lying inside k, in block order
  // (identity block first, then ascending representatives)
  std::vector<int> factor_blocks;     // old block index per factor label
  std::map<int, int> factor_label;    // old block index -> factor label
  for (int b = 0; b < old_cosets.count(); ++b)
    if (s.k.contains(old_cosets.rep[b])) {
      factor_label[b] = static_cast<int>(factor_blocks.size());
      factor_blocks.push_back(b);
    }
  const int phi = static_cast<int>(factor_blocks.size());
  rec.factor_size = phi;
  for (int b : factor_blocks) rec.factor_names.push_back(a.names[old_cosets.rep[b]]);

  // forward: old symbol gH -> (gK, label of the h-coset of r^-1 g), with r
  // the minimal representative of gK; inverse rebuilds r * rep(label)
  rec.forward.memory = rec.forward.anticipation = 0;
  rec.inverse.memory = rec.inverse.anticipation = 0;
  std::vector<char> image_seen(static_cast<size_t>(new_cosets.count()) * phi, 0);
  for (int sym = 0; sym < old_shift.size(); ++sym) {
    const int g = old_cosets.rep[sym];
    const int q = new_cosets.block_of[g];
    const int r = new_cosets.rep[q];
    const int t_elem = a.mul(a.inv(r), g);
    auto it = factor_label.find(old_cosets.block_of[t_elem]);
    if (it == factor_label.end() || image_seen[static_cast<size_t>(q) * phi + it->second])
      throw Error(ErrorCode::SplitVerificationFailed,
                  "splitting map is not a bijection at symbol " + a.names[g]);
    image_seen[static_cast<size_t>(q) * phi + it->second] = 1;
    rec.forward.rule[{sym}] = q * phi + it->second;
    rec.inverse.rule[{q * phi + it->second}] = sym;
  }

  // exhaustive lifted-edge check: the old edge set must be exactly
  // (new edge) x (free factor coordinates)
  for (int q1 = 0; q1 < new_shift.size(); ++q1)
    for (int q2 : new_shift.out[q1])
      for (int t1 = 0; t1 < phi; ++t1)
        for (int t2 = 0; t2 < phi; ++t2) {
          const int s1 = rec.inverse.rule.at({q1 * phi + t1});
          const int s2 = rec.inverse.rule.at({q2 * phi + t2});
          if (!old_shift.edge(s1, s2))
            throw Error(ErrorCode::SplitVerificationFailed,
                        "lifted edge " + old_shift.symbols[s1] + "->" +
                            old_shift.symbols[s2] + " is missing");
        }
  for (int s1 = 0; s1 < old_shift.size(); ++s1)
    for (int s2 : old_shift.out[s1]) {
      const int c1 = rec.forward.rule.at({s1}), c2 = rec.forward.rule.at({s2});
      if (!new_shift.edge(c1 / phi, c2 / phi))
        throw Error(ErrorCode::SplitVerificationFailed,
                    "edge " + old_shift.symbols[s1] + "->" + old_shift.symbols[s2] +
                        " does not project to the quotient");
    }

  // exact word-count factorization over the verification window
  for (int n = 1; n <= verify_n; ++n)
    if (path_count(old_shift, n) !=
        path_count(new_shift, n) * mpz_pow(phi, static_cast<unsigned long>(n)))
      throw Error(ErrorCode::SplitVerificationFailed,
                  "word counts do not factor at length " + std::to_string(n));

  s.h_cur = s.k;
  s.cosets_cur = std::move(new_cosets);
  s.shift_cur = std::move(new_shift);
  compute_fpk(s);
  rec.alphabet_after = s.shift_cur.size();

  // stage follower cardinality must drop by exactly the factor size
  if (rec.alphabet_before != rec.alphabet_after * phi ||
      static_cast<int>(old_shift.out[0].size()) !=
          static_cast<int>(s.shift_cur.out[0].size()) * phi)
    throw Error(ErrorCode::SplitVerificationFailed,
                "follower cardinality did not divide by the factor size");
  return rec;
}

StepRecord construction2(ReductionState& s, bool follower_side, int verify_n) {
  const FiniteGroup& a = s.model->A();
  if (s.k.size() > s.h_cur.size())
    throw Error(ErrorCode::PreconditionK2, "k properly contains the current subgroup");
  const Subgroup& tgt = follower_side ? s.f : s.p;
  if (tgt.size() == s.h_cur.size())
    throw Error(ErrorCode::AmalgamationExhausted,
                follower_side ? "follower side is already amalgamated"
                              : "predecessor side is already amalgamated");

  StepRecord rec;
  rec.type = follower_side ? StepType::AmalgamateFollower
                           : StepType::AmalgamatePredecessor;
  rec.alphabet_before = s.shift_cur.size();

  const CosetPartition old_cosets = s.cosets_cur;
  const VertexShift old_shift = s.shift_cur;
  const int f_before = static_cast<int>(old_shift.out[0].size());
  const int p_before = static_cast<int>(old_shift.in[0].size());
  CosetPartition new_cosets = cosets(a, tgt, CosetSide::Left);
  VertexShift new_shift = stage_shift(*s.model, new_cosets);

  rec.forward.memory = rec.forward.anticipation = 0;
  if (follower_side) {
    rec.inverse.memory = 0;
    rec.inverse.anticipation = 1;
  } else {
    rec.inverse.memory = 1;
    rec.inverse.anticipation = 0;
  }

  // forward is the coset map; the inverse key pairs the image with the
  // image of the follower set (resp. predecessor set), which is a single
  // new symbol because follower sets are cosets of f at the element level
  for (int sym = 0; sym < old_shift.size(); ++sym) {
    const int q = new_cosets.block_of[old_cosets.rep[sym]];
    rec.forward.rule[{sym}] = q;
    const auto& nbrs = follower_side ? old_shift.out[sym] : old_shift.in[sym];
    std::set<int> images;
    for (int nb : nbrs) images.insert(new_cosets.block_of[old_cosets.rep[nb]]);
    if (images.size() != 1)
      throw Error(ErrorCode::AmbiguousAmalgamation,
                  "neighbor set of " + old_shift.symbols[sym] +
                      " spreads over several target cosets");
    const int q_nbr = *images.begin();
    Word key = follower_side ? Word{q, q_nbr} : Word{q_nbr, q};
    auto [it, fresh] = rec.inverse.rule.emplace(key, sym);
    if (!fresh)
      throw Error(ErrorCode::AmbiguousAmalgamation,
                  "symbols " + old_shift.symbols[it->second] + " and " +
                      old_shift.symbols[sym] + " share the two-block key");
  }
  // totality: every edge of the amalgamated shift must be a key
  for (int q1 = 0; q1 < new_shift.size(); ++q1)
    for (int q2 : new_shift.out[q1])
      if (!rec.inverse.rule.count({q1, q2}))
        throw Error(ErrorCode::AmbiguousAmalgamation,
                    "edge " + new_shift.symbols[q1] + "->" + new_shift.symbols[q2] +
                        " has no two-block preimage");

  // the two-block inverse is a bijection W(old, n) <-> W(new, n+1)
  for (int n = 1; n <= verify_n; ++n)
    if (path_count(old_shift, n) != path_count(new_shift, n + 1))
      throw Error(ErrorCode::SplitVerificationFailed,
                  "amalgamation word counts mismatch at length " + std::to_string(n));

  s.h_cur = tgt;
  s.cosets_cur = std::move(new_cosets);
  s.shift_cur = std::move(new_shift);
  compute_fpk(s);
  rec.alphabet_after = s.shift_cur.size();

  // neutrality: stage follower/predecessor cardinalities are unchanged
  if (static_cast<int>(s.shift_cur.out[0].size()) != f_before ||
      static_cast<int>(s.shift_cur.in[0].size()) != p_before)
    throw Error(ErrorCode::SplitVerificationFailed,
                "amalgamation changed a follower or predecessor cardinality");
  return rec;
}

// --- driver ----------------------------------------------------------------

DecompositionCertificate decompose_driver(const GroupShiftModel& m,
                                          DriverLimits limits) {
  ReductionState s = initial_state(m);
  DecompositionCertificate cert;
  cert.original_alphabet = m.shift.size();

  int c2_count = 0;
  bool done = false;
  for (int step = 0; step < limits.max_steps && !done; ++step) {
    if (s.k.size() > s.h_cur.size()) {
      StepRecord rec = construction1(s, limits.verify_n);
      rec.c2_before = c2_count;
      cert.emitted.push_back(rec.factor_size);
      cert.steps.push_back(std::move(rec));
    } else if (s.f.size() > s.h_cur.size()) {
      StepRecord rec = construction2(s, /*follower_side=*/true, limits.verify_n);
      rec.c2_before = c2_count++;
      cert.steps.push_back(std::move(rec));
    } else if (s.p.size() > s.h_cur.size()) {
      StepRecord rec = construction2(s, /*follower_side=*/false, limits.verify_n);
      rec.c2_before = c2_count++;
      cert.steps.push_back(std::move(rec));
    } else {
      done = true;
    }
  }
  if (!done)
    throw Error(ErrorCode::IterationLimit,
                "no termination within " + std::to_string(limits.max_steps) + " steps");

  cert.residual = s.shift_cur;
  DeterminismReport det = determinism(cert.residual);
  if (!det.forward || !det.backward)
    throw Error(ErrorCode::SplitVerificationFailed, "residual is not a permutation");
  for (const auto& cyc : det.cycles)
    cert.residual_cycle_lengths.push_back(static_cast<int>(cyc.size()));
  std::sort(cert.residual_cycle_lengths.rbegin(), cert.residual_cycle_lengths.rend());

  // conservation: the emitted sizes account exactly for the follower group
  mpz_class big_phi = 1;
  for (int e : cert.emitted) big_phi *= e;
  if (big_phi != m.f_e.size())
    throw Error(ErrorCode::SplitVerificationFailed,
                "emitted factor sizes do not multiply to |f(e)|");
  GrowthReport growth = block_entropy(m.shift, std::max(3, limits.verify_n));
  if (!growth.exact_geometric || growth.ratio_den != 1 || growth.ratio_num != big_phi)
    throw Error(ErrorCode::SplitVerificationFailed,
                "block growth is not geometric with ratio = product of factors");

  // product presentation: residual x full shifts, mixed-radix symbol packing
  // (residual most significant, then factors in step order)
  const int phi_total = static_cast<int>(big_phi.get_si());
  std::vector<int> c1_steps;  // indices into cert.steps
  for (size_t i = 0; i < cert.steps.size(); ++i)
    if (cert.steps[i].type == StepType::SplitFullShift)
      c1_steps.push_back(static_cast<int>(i));
  std::vector<int> stride(c1_steps.size(), 1);
  for (int j = static_cast<int>(c1_steps.size()) - 2; j >= 0; --j)
    stride[j] = stride[j + 1] * cert.steps[c1_steps[j + 1]].factor_size;

  {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < cert.residual.size(); ++r)
      for (int v = 0; v < phi_total; ++v) {
        std::string nm = cert.residual.symbols[r];
        int rest = v;
        for (size_t j = 0; j < c1_steps.size(); ++j) {
          const StepRecord& st = cert.steps[c1_steps[j]];
          nm += "|" + st.factor_names[rest / stride[j]];
          rest %= stride[j];
        }
        names.push_back(nm);
      }
    for (int r1 = 0; r1 < cert.residual.size(); ++r1)
      for (int r2 : cert.residual.out[r1])
        for (int v1 = 0; v1 < phi_total; ++v1)
          for (int v2 = 0; v2 < phi_total; ++v2)
            edges.emplace_back(r1 * phi_total + v1, r2 * phi_total + v2);
    cert.product = build_vertex_shift(names, edges);
    cert.product_names = cert.product.symbols;
  }

  // composed forward: walk each original symbol through the per-step maps,
  // collecting the emitted factor coordinates
  cert.forward.memory = cert.forward.anticipation = 0;
  for (int a0 = 0; a0 < m.shift.size(); ++a0) {
    int sym = a0, v = 0;
    size_t j = 0;
    for (const StepRecord& st : cert.steps) {
      const int img = st.forward.rule.at({sym});
      if (st.type == StepType::SplitFullShift) {
        v += (img % st.factor_size) * stride[j++];
        sym = img / st.factor_size;
      } else {
        sym = img;
      }
    }
    cert.forward.rule[{a0}] = sym * phi_total + v;
  }

  // composed inverse: reconstruct stage words in reverse step order; each
  // amalgamation consumes one symbol of future (follower side) or past
  // (predecessor side)
  int mem = 0, ant = 0;
  for (const StepRecord& st : cert.steps) {
    if (st.type == StepType::AmalgamateFollower) ++ant;
    if (st.type == StepType::AmalgamatePredecessor) ++mem;
  }
  cert.inverse.memory = mem;
  cert.inverse.anticipation = ant;
  const int win = mem + 1 + ant;
  for (const Word& pw : words(cert.product, win)) {
    std::vector<int> res(win), fac(win);
    for (int x = 0; x < win; ++x) {
      res[x] = pw[x] / phi_total;
      fac[x] = pw[x] % phi_total;
    }
    std::vector<int> cur = res;
    int lo = 0, hi = win - 1;
    for (auto it = cert.steps.rbegin(); it != cert.steps.rend(); ++it) {
      const StepRecord& st = *it;
      std::vector<int> prev;
      if (st.type == StepType::SplitFullShift) {
        const size_t j = static_cast<size_t>(
            std::find(c1_steps.begin(), c1_steps.end(),
                      static_cast<int>(cert.steps.rend() - it - 1)) -
            c1_steps.begin());
        prev.resize(cur.size());
        for (int x = lo; x <= hi; ++x) {
          const int t = (fac[x] / stride[j]) % st.factor_size;
          prev[x] = st.inverse.rule.at({cur[x] * st.factor_size + t});
        }
      } else if (st.type == StepType::AmalgamateFollower) {
        prev.resize(cur.size());
        for (int x = lo; x < hi; ++x) {
          auto f2 = st.inverse.rule.find({cur[x], cur[x + 1]});
          if (f2 == st.inverse.rule.end())
            throw Error(ErrorCode::SplitVerificationFailed,
                        "certificate reconstruction hit a missing two-block key");
          prev[x] = f2->second;
        }
        --hi;
      } else {
        prev.resize(cur.size());
        for (int x = lo + 1; x <= hi; ++x) {
          auto f2 = st.inverse.rule.find({cur[x - 1], cur[x]});
          if (f2 == st.inverse.rule.end())
            throw Error(ErrorCode::SplitVerificationFailed,
                        "certificate reconstruction hit a missing two-block key");
          prev[x] = f2->second;
        }
        ++lo;
      }
      cur = std::move(prev);
    }
    cert.inverse.rule[pw] = cur[mem];
  }

  CertificateCheck check = verify_certificate(m, cert, std::max(limits.verify_n, win + 1));
  if (!check.ok())
    throw Error(ErrorCode::SplitVerificationFailed, check.detail);
  return cert;
}

// --- certificate verification ---------------------------------------------------

CertificateCheck verify_certificate(const GroupShiftModel& original,
                                    const DecompositionCertificate& cert,
                                    int n_max) {
  CertificateCheck out;
  std::string detail;

  // (a) exact word counts: both the per-step composition
  //     count(n) = |residual words(n)| * prod factor^(n + c2_before)
  // and the closed form (prod factors)^(n-1) * |alphabet| must hold
  mpz_class big_phi = 1;
  for (int e : cert.emitted) big_phi *= e;
  out.word_counts = true;
  for (int n = 1; n <= n_max; ++n) {
    mpz_class lhs = path_count(original.shift, n);
    mpz_class rhs = path_count(cert.residual, n);
    for (const StepRecord& st : cert.steps)
      if (st.type == StepType::SplitFullShift)
        rhs *= mpz_pow(st.factor_size, static_cast<unsigned long>(n + st.c2_before));
    mpz_class closed = mpz_pow(big_phi, static_cast<unsigned long>(n - 1)) *
                       cert.original_alphabet;
    if (lhs != rhs || lhs != closed) {
      out.word_counts = false;
      detail += "word counts diverge at length " + std::to_string(n) + "; ";
      break;
    }
  }

  // (c) structural checks on the composed maps
  const int win = cert.inverse.window();
  out.structure =
      cert.forward.window() == 1 &&
      static_cast<int>(cert.forward.rule.size()) == original.shift.size() &&
      mpz_class(static_cast<long>(cert.inverse.rule.size())) ==
          path_count(cert.product, win) &&
      static_cast<int>(cert.product.symbols.size()) ==
          cert.residual.size() * static_cast<int>(big_phi.get_si());
  {
    DeterminismReport det = determinism(cert.residual);
    out.structure = out.structure && det.forward && det.backward;
    mpz_class anchor = cert.residual.size();
    for (const StepRecord& st : cert.steps)
      if (st.type == StepType::SplitFullShift)
        anchor *= mpz_pow(st.factor_size, static_cast<unsigned long>(1 + st.c2_before));
    out.structure = out.structure && anchor == cert.original_alphabet;
  }
  if (!out.structure) detail += "structural invariants violated; ";

  // (b) the maps compose to the identity on words, both ways, up to a
  // length kept within the enumeration budget
  out.maps_compose = true;
  const mpz_class cap = 50000;
  int n_top = win - 1;
  for (int n = win; n <= n_max; ++n) {
    if (path_count(original.shift, n) > cap || path_count(cert.product, n) > cap) break;
    n_top = n;
  }
  for (int n = win; n <= n_top && out.maps_compose; ++n) {
    for (const Word& w : words(original.shift, n)) {
      Word u = apply_block_map(cert.forward, w);
      if (!is_word(cert.product, u)) {
        out.maps_compose = false;
        detail += "forward image is not a product word; ";
        break;
      }
      Word back = apply_block_map(cert.inverse, u);
      Word expect(w.begin() + cert.inverse.memory,
                  w.end() - cert.inverse.anticipation);
      if (back != expect) {
        out.maps_compose = false;
        detail += "inverse(forward(w)) != w at length " + std::to_string(n) + "; ";
        break;
      }
    }
    for (const Word& u : words(cert.product, n)) {
      Word w = apply_block_map(cert.inverse, u);
      if (!is_word(original.shift, w)) {
        out.maps_compose = false;
        detail += "inverse image is not a word; ";
        break;
      }
      Word fw = apply_block_map(cert.forward, w);
      Word expect(u.begin() + cert.inverse.memory,
                  u.end() - cert.inverse.anticipation);
      if (fw != expect) {
        out.maps_compose = false;
        detail += "forward(inverse(u)) != u at length " + std::to_string(n) + "; ";
        break;
      }
    }
  }
  detail += "composition checked through length " + std::to_string(n_top);
  out.detail = detail;
  return out;
}

}  // namespace gshift
