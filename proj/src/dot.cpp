#include "gshift/dot.hpp"

namespace gshift {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const VertexShift& x, const std::string& name) {
  std::string s = "digraph " + quote(name) + " {\n  rankdir=LR;\n";
  for (int a = 0; a < x.size(); ++a)
    // the label newline escape is concatenated after quoting so it survives
    s += "  " + quote(x.symbols[a]) + " [label=" + quote(x.symbols[a]) +
         "+\"\\n|f|=" + std::to_string(x.out[a].size()) + "\"];\n";
  for (int a = 0; a < x.size(); ++a)
    for (int b : x.out[a])
      s += "  " + quote(x.symbols[a]) + " -> " + quote(x.symbols[b]) + ";\n";
  return s + "}\n";
}

std::string export_dot(const Truncation& t, const std::string& name,
                       const std::vector<Part>* parts) {
  std::string s = "digraph " + quote(name) + " {\n  rankdir=LR;\n";
  for (int v = 0; v < t.size(); ++v) {
    const std::string label = format_state(*t.graph, t.states[v]);
    std::string attrs = "label=" + quote(label);
    if (parts) {
      const char* color = "lightgray";  // W
      if ((*parts)[v] == Part::T) color = "lightblue";
      else if ((*parts)[v] == Part::C) color = "orange";
      attrs += ", style=" +
               std::string(t.boundary[v] ? "\"filled,dashed\"" : "filled") +
               ", fillcolor=" + quote(color);
    } else if (t.boundary[v]) {
      attrs += ", style=dashed";
    }
    if (t.boundary[v]) attrs += ", peripheries=2";
    s += "  " + quote(label) + " [" + attrs + "];\n";
  }
  for (int v = 0; v < t.size(); ++v) {
    const std::string from = format_state(*t.graph, t.states[v]);
    for (int w : t.out[v])
      s += "  " + quote(from) + " -> " +
           quote(format_state(*t.graph, t.states[w])) + ";\n";
  }
  return s + "}\n";
}

}  // namespace gshift
