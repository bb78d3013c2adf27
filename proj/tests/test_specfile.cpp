// Spec-file parsing and rendering.
//
// The renderers promise parse(render(x)) == x with byte-stable output, so
// the core test re-renders every parsed gallery entry and compares bytes.
// Error paths are pinned by code: lexer and grammar problems surface as
// SyntaxError with a position, dangling references as UnresolvedReference,
// and module validation failures as SectionInvalid wrapped with the
// offending section's header location.

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "gshift/error.hpp"
#include "gshift/gallery.hpp"
#include "gshift/group.hpp"
#include "gshift/specfile.hpp"

using namespace gshift;

namespace {

// Runs f and reports which error code came out; IoError doubles as the
// "did not throw" sentinel since no builder in here touches the filesystem.
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  return ErrorCode::IoError;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const GalleryEntry& entry(const std::string& name) {
  static const std::vector<GalleryEntry> all = gallery_entries();
  for (const GalleryEntry& e : all)
    if (e.name == name) return e;
  REQUIRE(false);
  static GalleryEntry dummy;
  return dummy;
}

}  // namespace

TEST_CASE("every gallery entry re-renders byte-identically after parsing") {
  for (const GalleryEntry& e : gallery_entries()) {
    CAPTURE(e.name);
    const SpecDocument doc = parse_spec_text(e.spec_text);
    std::string again;
    for (const auto& [n, g] : doc.groups) again += render_group(n, *g);
    for (const auto& [n, t] : doc.automorphisms)
      again += render_automorphism(n, "Z3xZ9", *t.group, t);
    for (const auto& [n, h] : doc.subgroups)
      again += render_subgroup(n, "Z3xZ9", *h.parent, h);
    for (const auto& [n, x] : doc.shifts) again += render_shift(n, x);
    for (const auto& [n, m] : doc.group_shifts)
      again += render_group_shift(n, doc.groups.at(0).first, m);
    for (const auto& [n, c] : doc.coded_systems)
      again += render_coded_system(n, doc.groups.at(0).first,
                                   doc.automorphisms.at(0).first,
                                   doc.subgroups.at(0).first);
    for (const auto& [n, g] : doc.graphs)
      again += render_generated_graph(n, g.graph,
                                      g.cert.rank.empty() ? nullptr : &g.cert);
    for (const auto& [n, m] : doc.matrices) again += render_matrix_system(n, m);
    CHECK(again == e.spec_text);
    // Rendering is stable under a second pass through the parser.
    const SpecDocument doc2 = parse_spec_text(again);
    CHECK(doc2.groups.size() == doc.groups.size());
    CHECK(doc2.graphs.size() == doc.graphs.size());
  }
}

TEST_CASE("parsed gallery objects equal their typed builders") {
  SUBCASE("sigma_a") {
    const SpecDocument doc = parse_spec_text(entry("sigma_a").spec_text);
    const GroupShiftModel built = sigma_a_model();
    REQUIRE(doc.groups.size() == 1);
    CHECK(doc.groups[0].first == "Z4xZ2");
    CHECK(*doc.groups[0].second == *built.alphabet);
    REQUIRE(doc.group_shifts.size() == 1);
    const GroupShiftModel& m = doc.group_shifts[0].second;
    CHECK(m.shift == built.shift);
    CHECK(m.f_e.members == built.f_e.members);
    CHECK(m.p_e.members == built.p_e.members);
    CHECK(m.edge_subgroup.members == built.edge_subgroup.members);
  }
  SUBCASE("dlim coded system") {
    const SpecDocument doc =
        parse_spec_text(entry("dlim_3adic_truncation").spec_text);
    const CodedSystem built = dlim_3adic_truncation(2);
    REQUIRE(doc.coded_systems.size() == 1);
    const CodedSystem& c = doc.coded_systems[0].second;
    CHECK(*c.group == *built.group);
    CHECK(c.t.image == built.t.image);
    CHECK(c.h.members == built.h.members);
    CHECK(c.shift == built.shift);
    CHECK(c.period == built.period);
    CHECK(c.itinerary == built.itinerary);
  }
  SUBCASE("q3xq3 keeps its rank certificate") {
    const SpecDocument doc = parse_spec_text(entry("q3xq3").spec_text);
    REQUIRE(doc.graphs.size() == 1);
    const GraphWithCertificate built = q3xq3_graph();
    const GraphWithCertificate& g = doc.graphs[0].second;
    CHECK(doc.has_rank_cert("q3xq3"));
    CHECK_FALSE(doc.has_rank_cert("no_such_graph"));
    CHECK(g.graph.classes.size() == built.graph.classes.size());
    CHECK(g.graph.rules.size() == built.graph.rules.size());
    CHECK(g.cert.rank.size() == built.cert.rank.size());
    CHECK(g.cert.increasing == built.cert.increasing);
  }
  SUBCASE("z2 matrix") {
    const SpecDocument doc = parse_spec_text(entry("z2_matrix").spec_text);
    REQUIRE(doc.matrices.size() == 1);
    CHECK(doc.matrices[0].second.m ==
          std::vector<std::vector<long long>>{{2, 1}, {1, 1}});
  }
}

TEST_CASE("lexer rejects malformed documents with positions") {
  auto parse_err = [](const std::string& text) {
    return code_of([&] { parse_spec_text(text); });
  };
  CHECK(parse_err("") == ErrorCode::SyntaxError);               // no sections
  CHECK(parse_err("# only a comment\n") == ErrorCode::SyntaxError);
  CHECK(parse_err("key = 1\n") == ErrorCode::SyntaxError);      // outside section
  CHECK(parse_err("  dangling\n[group G]\n") == ErrorCode::SyntaxError);
  CHECK(parse_err("[group G\nelements = e\n") == ErrorCode::SyntaxError);
  CHECK(parse_err("[group G] trailing\n") == ErrorCode::SyntaxError);
  CHECK(parse_err("[group]\n") == ErrorCode::SyntaxError);      // header arity
  CHECK(parse_err("[group G]\nno equals sign\n") == ErrorCode::SyntaxError);
  CHECK(parse_err("[group G]\n= 1\n") == ErrorCode::SyntaxError);  // empty key
  CHECK(parse_err("[mystery G]\nk = v\n") == ErrorCode::SyntaxError);
  // Positions name the line.  The first copy must be valid: sections are
  // consumed in order, so the duplicate check fires at the second header.
  const std::string tiny = "[group G]\nelements = e\ntable =\n  e\n";
  const std::string msg =
      message_of([&] { parse_spec_text(tiny + tiny); });
  CHECK(msg.find("line 5") != std::string::npos);
  CHECK(msg.find("duplicate section") != std::string::npos);
}

TEST_CASE("duplicate and missing keys inside a section") {
  const std::string dup =
      "[shift x]\nalphabet = a\nalphabet = a\nedges = a->a\n";
  CHECK(code_of([&] { parse_spec_text(dup); }) == ErrorCode::SyntaxError);
  const std::string missing = "[shift x]\nalphabet = a\n";
  const std::string msg = message_of([&] { parse_spec_text(missing); });
  CHECK(code_of([&] { parse_spec_text(missing); }) == ErrorCode::SyntaxError);
  CHECK(msg.find("missing key 'edges'") != std::string::npos);
  // Single-valued keys reject extra tokens.
  const std::string twogroups =
      render_group("G", *sigma_a_model().alphabet) +
      "[subgroup h]\ngroup = G G\nmembers = 0,0\n";
  CHECK(code_of([&] { parse_spec_text(twogroups); }) == ErrorCode::SyntaxError);
}

TEST_CASE("references resolve eagerly and in file order") {
  // Forward references are not a thing: the group must precede its users.
  const std::string fwd =
      "[group_shift m]\ngroup = G\nedges = e->e\n" +
      render_group("G", *full_shift_s3_model().alphabet);
  CHECK(code_of([&] { parse_spec_text(fwd); }) ==
        ErrorCode::UnresolvedReference);
  const std::string dangling =
      render_group("G", *full_shift_s3_model().alphabet) +
      "[coded_system c]\ngroup = G\nautomorphism = nope\nsubgroup = nope\n";
  CHECK(code_of([&] { parse_spec_text(dangling); }) ==
        ErrorCode::UnresolvedReference);
  // Unknown element names inside a resolved section are dangling references
  // too, with the candidate spelled out.
  const std::string badsym =
      render_group("G", *full_shift_s3_model().alphabet) +
      "[subgroup h]\ngroup = G\nmembers = zz\n";
  CHECK(code_of([&] { parse_spec_text(badsym); }) ==
        ErrorCode::UnresolvedReference);
}

TEST_CASE("module validation failures are wrapped with the section header") {
  // A non-associative table: Z3 with one cell swapped.
  const std::string badgroup =
      "[group G]\nelements = 0 1 2\ntable =\n  0 1 2\n  1 2 0\n  2 1 0\n";
  CHECK(code_of([&] { parse_spec_text(badgroup); }) ==
        ErrorCode::SectionInvalid);
  const std::string where = message_of([&] { parse_spec_text(badgroup); });
  CHECK(where.find("[group G]") != std::string::npos);

  const std::string z4 = render_group("Z4", cyclic_group(4));

  // x -> x+1 is a bijection of Z4 but not a homomorphism.
  const std::string notauto =
      z4 + "[automorphism t]\ngroup = Z4\nmap = 0->1 1->2 2->3 3->0\n";
  CHECK(code_of([&] { parse_spec_text(notauto); }) ==
        ErrorCode::SectionInvalid);
  // An incomplete map never reaches the builder but is just as invalid.
  const std::string partial =
      z4 + "[automorphism t]\ngroup = Z4\nmap = 0->0\n";
  CHECK(code_of([&] { parse_spec_text(partial); }) ==
        ErrorCode::SectionInvalid);
  // Mapping an element twice is a grammar-level duplicate.
  const std::string twice =
      z4 +
      "[automorphism t]\ngroup = Z4\nmap = 0->0 0->1 1->2 2->3 3->0\n";
  CHECK(code_of([&] { parse_spec_text(twice); }) == ErrorCode::SyntaxError);

  // {0, 1} is not closed in Z4.
  const std::string notsub = z4 + "[subgroup h]\ngroup = Z4\nmembers = 0 1\n";
  CHECK(code_of([&] { parse_spec_text(notsub); }) == ErrorCode::SectionInvalid);

  // Group shift without the identity self-loop.
  const std::string noloop =
      z4 + "[group_shift m]\ngroup = Z4\nedges = 0->1, 1->0\n";
  CHECK(code_of([&] { parse_spec_text(noloop); }) == ErrorCode::SectionInvalid);

  // Automorphism and subgroup must live over the referenced group itself.
  const std::string zz4 = render_group("W", cyclic_group(4));
  const std::string crossed =
      z4 + zz4 +
      "[automorphism t]\ngroup = W\nmap = 0->0 1->3 2->2 3->1\n" +
      "[subgroup h]\ngroup = W\nmembers = 0\n" +
      "[coded_system c]\ngroup = Z4\nautomorphism = t\nsubgroup = h\n";
  CHECK(code_of([&] { parse_spec_text(crossed); }) ==
        ErrorCode::SectionInvalid);
  const std::string why = message_of([&] { parse_spec_text(crossed); });
  CHECK(why.find("different group") != std::string::npos);
}

TEST_CASE("matrix sections want square integer rows") {
  CHECK(code_of([&] {
          parse_spec_text("[matrix_system m]\nrows =\n  2 1\n  1 1\n");
        }) == ErrorCode::IoError);  // sentinel: parses fine
  CHECK(code_of([&] {
          parse_spec_text("[matrix_system m]\nrows =\n  2 x\n  1 1\n");
        }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] {
          parse_spec_text("[matrix_system m]\nrows =\n  2 1 0\n  1 1 0\n");
        }) == ErrorCode::SectionInvalid);  // not square
  // [[2,0],[0,2]] has determinant 4: no inverse over the integers.
  CHECK(code_of([&] {
          parse_spec_text("[matrix_system m]\nrows =\n  2 0\n  0 2\n");
        }) == ErrorCode::SectionInvalid);
}

TEST_CASE("rank certificates are all-or-nothing") {
  // Strip the certificate lines off the rendered q3 entry to get a base.
  const GraphWithCertificate q3 = q3_graph();
  const std::string bare = render_generated_graph("q3", q3.graph, nullptr);
  CHECK(bare.find("rank") == std::string::npos);
  SpecDocument plain = parse_spec_text(bare);
  CHECK_FALSE(plain.has_rank_cert("q3"));

  const std::string with_cert =
      render_generated_graph("q3", q3.graph, &q3.cert);
  CHECK(parse_spec_text(with_cert).has_rank_cert("q3"));

  // Rank for only some classes is rejected before any math runs.
  const GraphWithCertificate two = cycle_plus_tail_graph();
  std::string full = render_generated_graph("cpt", two.graph, &two.cert);
  const auto first_rank = full.find("rank =");
  REQUIRE(first_rank != std::string::npos);
  const auto second_rank = full.find("rank =", first_rank + 1);
  REQUIRE(second_rank != std::string::npos);
  std::string partial = full;
  partial.erase(second_rank, full.find('\n', second_rank) - second_rank + 1);
  CHECK(code_of([&] { parse_spec_text(partial); }) == ErrorCode::SyntaxError);

  // Rank without a direction, and a direction that is not a direction.
  std::string nodir = with_cert;
  const auto dir = nodir.find("direction");
  REQUIRE(dir != std::string::npos);
  nodir.erase(dir, nodir.find('\n', dir) - dir + 1);
  CHECK(code_of([&] { parse_spec_text(nodir); }) == ErrorCode::SyntaxError);
  std::string sideways = with_cert;
  const auto word = sideways.find("decreasing");
  REQUIRE(word != std::string::npos);
  sideways.replace(word, 10, "sideways");
  CHECK(code_of([&] { parse_spec_text(sideways); }) == ErrorCode::SyntaxError);
}

TEST_CASE("rule carve-outs cannot be rendered") {
  GraphWithCertificate g = q3_graph();
  REQUIRE(!g.graph.rules.empty());
  g.graph.rules[0].excluded_sources.push_back(State{0, {0}});
  CHECK(code_of([&] {
          render_generated_graph("q3", g.graph, nullptr);
        }) == ErrorCode::SectionInvalid);
}

TEST_CASE("comments, blank lines, and CRLF endings are cosmetic") {
  const GalleryEntry& e = entry("sigma_a");
  std::string noisy = "# header comment\n\n";
  for (char c : e.spec_text) {
    if (c == '\n')
      noisy += "\r\n";
    else
      noisy += c;
  }
  noisy += "# trailing comment\r\n\r\n";
  const SpecDocument doc = parse_spec_text(noisy);
  REQUIRE(doc.group_shifts.size() == 1);
  CHECK(doc.group_shifts[0].second.shift ==
        parse_spec_text(e.spec_text).group_shifts[0].second.shift);
}

TEST_CASE("spec files come from disk through the same parser") {
  CHECK(code_of([&] { parse_spec_file("/nonexistent/z.spec"); }) ==
        ErrorCode::IoError);
  const std::string path = "tmp_roundtrip.spec";
  {
    std::ofstream out(path, std::ios::binary);
    out << entry("z2_matrix").spec_text;
  }
  const SpecDocument doc = parse_spec_file(path);
  REQUIRE(doc.matrices.size() == 1);
  CHECK(doc.matrices[0].first == "z2_matrix");
  std::remove(path.c_str());
}
