#pragma once

#include <string>

#include "gshift/shift.hpp"
#include "gshift/wandering.hpp"

namespace gshift {

// Graphviz renderings.  Output is deterministic: nodes in alphabet/state
// order, edges sorted, no timestamps.  Vertex-shift nodes carry follower
// cardinality annotations; truncation nodes are marked interior/boundary
// and colored by T/C/W part when a classification is supplied.
std::string export_dot(const VertexShift& x, const std::string& name);

std::string export_dot(const Truncation& t, const std::string& name,
                       const std::vector<Part>* parts = nullptr);

}  // namespace gshift
