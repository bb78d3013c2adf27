#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gshift/group_shift.hpp"
#include "gshift/wandering.hpp"

namespace gshift {

// INI-like model description files.  Line oriented; '#' starts a comment;
// a line starting with whitespace continues the previous key's value;
// sections are "[kind name]".  The full grammar is documented in
// docs/spec-format.md.  Parsing resolves references eagerly and validates
// every object, so a parsed document only contains checked structures.
struct SpecDocument {
  std::vector<std::pair<std::string, std::shared_ptr<const FiniteGroup>>> groups;
  std::vector<std::pair<std::string, GroupAutomorphism>> automorphisms;
  std::vector<std::pair<std::string, Subgroup>> subgroups;
  std::vector<std::pair<std::string, VertexShift>> shifts;
  std::vector<std::pair<std::string, GroupShiftModel>> group_shifts;
  std::vector<std::pair<std::string, CodedSystem>> coded_systems;
  std::vector<std::pair<std::string, GraphWithCertificate>> graphs;
  std::vector<std::pair<std::string, MatrixSystem>> matrices;

  bool has_rank_cert(const std::string& graph_name) const;
};

SpecDocument parse_spec_text(const std::string& text);
SpecDocument parse_spec_file(const std::string& path);  // IoError on failure

// Canonical renderers, used by the gallery and `examples` materialization.
// parse(render(x)) reproduces x exactly; rendering is byte-stable.
std::string render_group(const std::string& name, const FiniteGroup& g);
std::string render_automorphism(const std::string& name, const std::string& group,
                                const FiniteGroup& g, const GroupAutomorphism& t);
std::string render_subgroup(const std::string& name, const std::string& group,
                            const FiniteGroup& g, const Subgroup& h);
std::string render_shift(const std::string& name, const VertexShift& x);
std::string render_group_shift(const std::string& name, const std::string& group,
                               const GroupShiftModel& m);
std::string render_coded_system(const std::string& name, const std::string& group,
                                const std::string& automorphism,
                                const std::string& subgroup);
std::string render_generated_graph(const std::string& name, const GeneratedGraph& g,
                                   const RankCertificate* cert);
std::string render_matrix_system(const std::string& name, const MatrixSystem& m);

}  // namespace gshift
