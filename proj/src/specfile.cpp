#include "gshift/specfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace gshift {

namespace {

// --- low-level text utilities ---------------------------------------------------

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Split on a separator character at parenthesis depth zero.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void syntax(int line, int col, const std::string& detail) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", col " +
                                          std::to_string(col) + ": " + detail);
}

[[noreturn]] void unresolved(int line, const std::string& detail) {
  throw Error(ErrorCode::UnresolvedReference,
              "line " + std::to_string(line) + ": " + detail);
}

[[noreturn]] void invalid(int line, const std::string& detail) {
  throw Error(ErrorCode::SectionInvalid,
              "line " + std::to_string(line) + ": " + detail);
}

// --- raw sectioned structure -----------------------------------------------------

struct KeyVal {
  std::string key;
  std::vector<std::string> lines;  // first-line value (if any) + continuations
  int line_no = 0;
};

struct RawSection {
  std::string kind, name;
  int line_no = 0;
  std::vector<KeyVal> keys;

  const KeyVal* find(const std::string& key) const {
    const KeyVal* hit = nullptr;
    for (const KeyVal& kv : keys)
      if (kv.key == key) {
        if (hit) syntax(kv.line_no, 1, "duplicate key '" + key + "'");
        hit = &kv;
      }
    return hit;
  }
  const KeyVal& required(const std::string& key) const {
    const KeyVal* hit = find(key);
    if (!hit) syntax(line_no, 1, "section [" + kind + " " + name +
                                     "] is missing key '" + key + "'");
    return *hit;
  }
  std::vector<const KeyVal*> repeated(const std::string& key) const {
    std::vector<const KeyVal*> out;
    for (const KeyVal& kv : keys)
      if (kv.key == key) out.push_back(&kv);
    return out;
  }
};

std::vector<RawSection> lex_sections(const std::string& text) {
  std::vector<RawSection> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool any_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    if (trim(raw).empty()) continue;
    any_content = true;
    if (raw[0] == '[') {
      const auto close = raw.find(']');
      if (close == std::string::npos)
        syntax(line_no, static_cast<int>(raw.size()), "missing ']'");
      if (!trim(raw.substr(close + 1)).empty())
        syntax(line_no, static_cast<int>(close) + 2, "text after ']'");
      const auto parts = split_ws(raw.substr(1, close - 1));
      if (parts.size() != 2)
        syntax(line_no, 2, "section header must be '[kind name]'");
      sections.push_back({parts[0], parts[1], line_no, {}});
    } else if (std::isspace(static_cast<unsigned char>(raw[0]))) {
      if (sections.empty() || sections.back().keys.empty())
        syntax(line_no, 1, "continuation line without a key");
      sections.back().keys.back().lines.push_back(trim(raw));
    } else {
      if (sections.empty())
        syntax(line_no, 1, "key line outside any section");
      const auto eq = raw.find('=');
      if (eq == std::string::npos)
        syntax(line_no, static_cast<int>(raw.size()), "expected 'key = value'");
      KeyVal kv;
      kv.key = trim(raw.substr(0, eq));
      kv.line_no = line_no;
      if (kv.key.empty()) syntax(line_no, 1, "empty key");
      const std::string v = trim(raw.substr(eq + 1));
      if (!v.empty()) kv.lines.push_back(v);
      sections.back().keys.push_back(std::move(kv));
    }
  }
  if (!any_content)
    syntax(line_no ? line_no : 1, 1, "spec has no sections");
  if (sections.empty()) syntax(1, 1, "spec has no sections");
  return sections;
}

std::vector<std::string> all_tokens(const KeyVal& kv) {
  std::vector<std::string> out;
  for (const std::string& l : kv.lines)
    for (std::string& t : split_ws(l)) out.push_back(std::move(t));
  return out;
}

// The unique token of a single-valued key (e.g. a section reference).
std::string value_token(const KeyVal& kv) {
  const auto toks = all_tokens(kv);
  if (toks.size() != 1)
    syntax(kv.line_no, 1, "key '" + kv.key + "' needs exactly one value");
  return toks[0];
}

long long parse_int(const std::string& text, int line) {
  const std::string s = trim(text);
  size_t p = s.empty() || (s[0] != '-' && s[0] != '+') ? 0 : 1;
  if (p == s.size()) syntax(line, 1, "expected an integer, got '" + s + "'");
  for (size_t k = p; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      syntax(line, 1, "expected an integer, got '" + s + "'");
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    syntax(line, 1, "integer out of range: '" + s + "'");
  }
}

std::pair<std::string, std::string> split_arrow(const std::string& tok, int line) {
  const auto pos = tok.find("->");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= tok.size())
    syntax(line, 1, "expected 'a->b', got '" + tok + "'");
  return {tok.substr(0, pos), tok.substr(pos + 2)};
}

// Edge tokens are separated by ', ' exactly: symbol names may contain bare
// commas (product-group elements such as '0,1'), but never comma-space.
std::vector<std::string> split_comma_space(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  for (size_t hit; (hit = s.find(", ", pos)) != std::string::npos; pos = hit + 2)
    out.push_back(trim(s.substr(pos, hit - pos)));
  out.push_back(trim(s.substr(pos)));
  return out;
}

// Edge lists: every value line holds 'a->b' tokens separated by ', '.
std::vector<std::pair<std::string, std::string>> edge_tokens(const KeyVal& kv) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& l : kv.lines)
    for (const std::string& t : split_comma_space(l))
      if (!t.empty()) out.push_back(split_arrow(t, kv.line_no));
  return out;
}

int resolve_symbol(const std::vector<std::string>& names, const std::string& s,
                   int line, const std::string& what) {
  for (size_t k = 0; k < names.size(); ++k)
    if (names[k] == s) return static_cast<int>(k);
  unresolved(line, what + " '" + s + "' is not defined");
}

// --- linear expression / constraint grammar -------------------------------------

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// integer linear combination of the class variables, e.g. "3*i-j+1"
LinExpr parse_linexpr(const std::string& text,
                      const std::vector<std::string>& vars, int line) {
  LinExpr e;
  e.coef.assign(vars.size(), 0);
  const std::string s = text;
  size_t p = 0;
  auto skip = [&] { while (p < s.size() && s[p] == ' ') ++p; };
  skip();
  if (p == s.size()) syntax(line, 1, "empty expression");
  bool first = true;
  while (p < s.size()) {
    long long sign = 1;
    skip();
    if (p >= s.size()) break;
    if (s[p] == '+' || s[p] == '-') {
      sign = s[p] == '-' ? -1 : 1;
      ++p;
      skip();
    } else if (!first) {
      syntax(line, static_cast<int>(p) + 1, "expected '+' or '-' in '" + s + "'");
    }
    first = false;
    long long num = 1;
    bool have_num = false;
    if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
      num = 0;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
        num = num * 10 + (s[p++] - '0');
      have_num = true;
      skip();
      if (p < s.size() && s[p] == '*') {
        ++p;
        skip();
      } else {
        e.cst += sign * num;
        continue;
      }
    }
    const size_t start = p;
    while (p < s.size() && ident_char(s[p])) ++p;
    if (start == p)
      syntax(line, static_cast<int>(p) + 1, "expected variable in '" + s + "'");
    const std::string var = s.substr(start, p - start);
    const auto it = std::find(vars.begin(), vars.end(), var);
    if (it == vars.end())
      unresolved(line, "variable '" + var + "' in '" + s + "'");
    e.coef[it - vars.begin()] += sign * num;
    (void)have_num;
  }
  return e;
}

// map component: "expr" or "(expr)/den"
LinExpr parse_map_expr(const std::string& text,
                       const std::vector<std::string>& vars, int line) {
  const std::string s = trim(text);
  if (!s.empty() && s[0] == '(') {
    int depth = 0;
    size_t close = std::string::npos;
    for (size_t k = 0; k < s.size(); ++k) {
      if (s[k] == '(') ++depth;
      if (s[k] == ')' && --depth == 0) {
        close = k;
        break;
      }
    }
    if (close != std::string::npos && close + 1 < s.size() &&
        s[close + 1] == '/') {
      LinExpr e = parse_linexpr(s.substr(1, close - 1), vars, line);
      e.den = parse_int(s.substr(close + 2), line);
      if (e.den < 1) syntax(line, 1, "denominator must be >= 1 in '" + s + "'");
      return e;
    }
  }
  return parse_linexpr(s, vars, line);
}

std::string strip_outer_parens(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    for (size_t k = 0; k + 1 < s.size(); ++k) {
      if (s[k] == '(') ++depth;
      if (s[k] == ')' && --depth == 0) return s;  // parens close early
    }
    return trim(s.substr(1, s.size() - 2));
  }
  return s;
}

// "expr >= int", "expr == int", "expr <= int", "(expr) % m == 0"
Constraint parse_constraint(const std::string& text,
                            const std::vector<std::string>& vars, int line) {
  Constraint c;
  const std::string s = trim(text);
  if (const auto pc = s.find('%'); pc != std::string::npos) {
    c.kind = Constraint::MOD;
    c.expr = parse_linexpr(strip_outer_parens(s.substr(0, pc)), vars, line);
    const std::string rest = trim(s.substr(pc + 1));
    const auto eq = rest.find("==");
    if (eq == std::string::npos)
      syntax(line, 1, "modular constraint must read '(expr) % m == 0'");
    c.mod = parse_int(rest.substr(0, eq), line);
    if (trim(rest.substr(eq + 2)) != "0")
      syntax(line, 1, "modular constraint must compare to 0");
    if (c.mod < 2) syntax(line, 1, "modulus must be >= 2");
    return c;
  }
  size_t op_pos = std::string::npos;
  std::string op;
  for (const char* cand : {">=", "<=", "=="}) {
    const auto p = s.find(cand);
    if (p != std::string::npos && p < op_pos) {
      op_pos = p;
      op = cand;
    }
  }
  if (op_pos == std::string::npos)
    syntax(line, 1, "expected '>=', '<=' or '==' in '" + s + "'");
  LinExpr lhs = parse_linexpr(s.substr(0, op_pos), vars, line);
  LinExpr rhs = parse_linexpr(s.substr(op_pos + op.size()), vars, line);
  // fold to 'expr (>=|==) 0'
  for (size_t k = 0; k < vars.size(); ++k) lhs.coef[k] -= rhs.coef[k];
  lhs.cst -= rhs.cst;
  if (op == "<=") {
    for (auto& v : lhs.coef) v = -v;
    lhs.cst = -lhs.cst;
  }
  c.kind = op == "==" ? Constraint::EQ : Constraint::GE;
  c.expr = std::move(lhs);
  return c;
}

// "Name(1,2)" or bare "Name" for dimension-0 classes
State parse_state(const std::string& text, const GeneratedGraph& g, int line) {
  const std::string s = trim(text);
  std::string name = s;
  std::vector<long long> idx;
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') syntax(line, 1, "state '" + s + "' is missing ')'");
    name = s.substr(0, open);
    for (const std::string& part :
         split_top(s.substr(open + 1, s.size() - open - 2), ','))
      if (!part.empty()) idx.push_back(parse_int(part, line));
  }
  const int cls = g.class_index(name);
  if (cls < 0) unresolved(line, "class '" + name + "'");
  if (static_cast<int>(idx.size()) != g.classes[cls].dims())
    syntax(line, 1, "state '" + s + "' has the wrong number of indices");
  return State{cls, std::move(idx)};
}

// "Name(i,j)" header introducing variables, or bare "Name"
std::pair<std::string, std::vector<std::string>> parse_class_head(
    const std::string& text, int line) {
  const std::string s = trim(text);
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') syntax(line, 1, "class '" + s + "' is missing ')'");
    std::vector<std::string> vars;
    for (const std::string& v :
         split_top(s.substr(open + 1, s.size() - open - 2), ','))
      if (!v.empty()) vars.push_back(v);
    return {s.substr(0, open), vars};
  }
  return {s, {}};
}

// --- canonical expression rendering ----------------------------------------------

std::string render_expr(const LinExpr& e, const std::vector<std::string>& vars) {
  std::string s;
  for (size_t k = 0; k < e.coef.size(); ++k) {
    if (e.coef[k] == 0) continue;
    if (e.coef[k] > 0 && !s.empty()) s += "+";
    if (e.coef[k] == -1) s += "-";
    else if (e.coef[k] != 1) s += std::to_string(e.coef[k]) + "*";
    s += vars[k];
  }
  if (e.cst != 0 || s.empty()) {
    if (e.cst >= 0 && !s.empty()) s += "+";
    s += std::to_string(e.cst);
  }
  return s;
}

std::string render_map_expr(const LinExpr& e,
                            const std::vector<std::string>& vars) {
  const std::string body = render_expr(e, vars);
  return e.den == 1 ? body : "(" + body + ")/" + std::to_string(e.den);
}

std::string render_constraint(const Constraint& c,
                              const std::vector<std::string>& vars) {
  const std::string body = render_expr(c.expr, vars);
  switch (c.kind) {
    case Constraint::GE: return body + " >= 0";
    case Constraint::EQ: return body + " == 0";
    case Constraint::MOD: {
      const bool simple = body.find('+') == std::string::npos &&
                          body.rfind('-') == std::string::npos;
      return (simple ? body : "(" + body + ")") + " % " +
             std::to_string(c.mod) + " == 0";
    }
  }
  return body;
}

std::string render_state_text(const GeneratedGraph& g, const State& s) {
  return format_state(g, s);
}

std::string class_head(const ClassDecl& c) {
  if (c.dims() == 0) return c.name;
  std::string s = c.name + "(";
  for (int k = 0; k < c.dims(); ++k) s += (k ? "," : "") + c.vars[k];
  return s + ")";
}

// --- section assembly ---------------------------------------------------------------

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr find_group(const SpecDocument& doc, const std::string& name, int line) {
  for (const auto& [n, g] : doc.groups)
    if (n == name) return g;
  unresolved(line, "group '" + name + "'");
}

template <typename T>
const T& find_named(const std::vector<std::pair<std::string, T>>& v,
                    const std::string& name, int line, const std::string& what) {
  for (const auto& [n, x] : v)
    if (n == name) return x;
  unresolved(line, what + " '" + name + "'");
}

// Wraps module validation failures so callers always see where in the file
// the offending section starts.
template <typename F>
auto in_section(const RawSection& s, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code == ErrorCode::SyntaxError) throw;
    throw Error(ErrorCode::SectionInvalid, "[" + s.kind + " " + s.name +
                                               "] at line " +
                                               std::to_string(s.line_no) + ": " +
                                               e.what());
  }
}

void parse_group(const RawSection& s, SpecDocument& doc) {
  const std::vector<std::string> names = all_tokens(s.required("elements"));
  const KeyVal& table = s.required("table");
  std::vector<std::vector<std::string>> rows;
  for (const std::string& l : table.lines) rows.push_back(split_ws(l));
  if (rows.size() != names.size())
    syntax(table.line_no, 1,
           "table must have exactly " + std::to_string(names.size()) + " rows");
  auto g = in_section(s, [&] { return build_group_named(names, rows); });
  doc.groups.push_back({s.name, std::make_shared<const FiniteGroup>(std::move(g))});
}

void parse_automorphism(const RawSection& s, SpecDocument& doc) {
  const KeyVal& gref = s.required("group");
  GroupPtr g = find_group(doc, value_token(gref), gref.line_no);
  const KeyVal& map = s.required("map");
  std::vector<int> image(g->size(), -1);
  for (const std::string& tok : all_tokens(map)) {
    auto [from, to] = split_arrow(tok, map.line_no);
    const int a = resolve_symbol(g->names, from, map.line_no, "element");
    const int b = resolve_symbol(g->names, to, map.line_no, "element");
    if (image[a] != -1)
      syntax(map.line_no, 1, "element '" + from + "' mapped twice");
    image[a] = b;
  }
  for (int a = 0; a < g->size(); ++a)
    if (image[a] == -1)
      invalid(map.line_no, "map does not cover element '" + g->names[a] + "'");
  auto t = in_section(s, [&] { return build_automorphism(*g, std::move(image)); });
  doc.automorphisms.push_back({s.name, std::move(t)});
}

void parse_subgroup(const RawSection& s, SpecDocument& doc) {
  const KeyVal& gref = s.required("group");
  GroupPtr g = find_group(doc, value_token(gref), gref.line_no);
  const KeyVal& mem = s.required("members");
  std::vector<int> members;
  for (const std::string& tok : all_tokens(mem))
    members.push_back(resolve_symbol(g->names, tok, mem.line_no, "element"));
  auto h =
      in_section(s, [&] { return subgroup_from_members(*g, std::move(members)); });
  doc.subgroups.push_back({s.name, std::move(h)});
}

void parse_shift(const RawSection& s, SpecDocument& doc) {
  const std::vector<std::string> names = all_tokens(s.required("alphabet"));
  const KeyVal& ekv = s.required("edges");
  std::vector<std::pair<int, int>> edges;
  for (const auto& [from, to] : edge_tokens(ekv))
    edges.push_back({resolve_symbol(names, from, ekv.line_no, "symbol"),
                     resolve_symbol(names, to, ekv.line_no, "symbol")});
  auto x = in_section(s, [&] { return build_vertex_shift(names, edges); });
  doc.shifts.push_back({s.name, std::move(x)});
}

void parse_group_shift(const RawSection& s, SpecDocument& doc) {
  const KeyVal& gref = s.required("group");
  GroupPtr g = find_group(doc, value_token(gref), gref.line_no);
  const KeyVal& ekv = s.required("edges");
  std::vector<std::pair<int, int>> edges;
  for (const auto& [from, to] : edge_tokens(ekv))
    edges.push_back({resolve_symbol(g->names, from, ekv.line_no, "element"),
                     resolve_symbol(g->names, to, ekv.line_no, "element")});
  auto m = in_section(s, [&] { return validate_group_shift(g, edges); });
  doc.group_shifts.push_back({s.name, std::move(m)});
}

void parse_coded_system(const RawSection& s, SpecDocument& doc) {
  const KeyVal& gref = s.required("group");
  GroupPtr g = find_group(doc, value_token(gref), gref.line_no);
  const KeyVal& aref = s.required("automorphism");
  const GroupAutomorphism& t = find_named(doc.automorphisms, value_token(aref),
                                          aref.line_no, "automorphism");
  const KeyVal& href = s.required("subgroup");
  const Subgroup& h =
      find_named(doc.subgroups, value_token(href), href.line_no, "subgroup");
  if (t.group != g.get())
    invalid(aref.line_no, "automorphism is defined over a different group");
  if (h.parent != g.get())
    invalid(href.line_no, "subgroup is defined over a different group");
  auto c = in_section(s, [&] { return code_finite_system(g, t, h); });
  doc.coded_systems.push_back({s.name, std::move(c)});
}

void parse_generated_graph(const RawSection& s, SpecDocument& doc) {
  GraphWithCertificate gc;
  GeneratedGraph& g = gc.graph;
  for (const KeyVal* kv : s.repeated("class")) {
    if (kv->lines.empty()) syntax(kv->line_no, 1, "empty class declaration");
    const std::string& l = kv->lines.at(0);
    ClassDecl c;
    const auto colon = split_top(l, ':');
    auto [name, vars] = parse_class_head(colon.at(0), kv->line_no);
    c.name = name;
    c.vars = vars;
    if (g.class_index(c.name) >= 0)
      syntax(kv->line_no, 1, "class '" + c.name + "' declared twice");
    if (colon.size() > 2) syntax(kv->line_no, 1, "more than one ':'");
    if (colon.size() == 2)
      for (const std::string& d : split_top(colon[1], ','))
        if (!d.empty()) c.domain.push_back(parse_constraint(d, c.vars, kv->line_no));
    g.classes.push_back(std::move(c));
  }
  if (g.classes.empty()) syntax(s.line_no, 1, "graph needs at least one class");
  for (const KeyVal* kv : s.repeated("rule")) {
    if (kv->lines.empty()) syntax(kv->line_no, 1, "empty rule");
    const std::string& l = kv->lines.at(0);
    const auto arrow = l.find("->");
    if (arrow == std::string::npos) syntax(kv->line_no, 1, "rule is missing '->'");
    std::string rest = l.substr(arrow + 2);
    std::string guards;
    if (const auto when = rest.find(" when "); when != std::string::npos) {
      guards = rest.substr(when + 6);
      rest = rest.substr(0, when);
    }
    Rule r;
    auto [sname, svars] = parse_class_head(l.substr(0, arrow), kv->line_no);
    r.src = g.class_index(sname);
    if (r.src < 0) unresolved(kv->line_no, "class '" + sname + "'");
    if (svars != g.classes[r.src].vars)
      syntax(kv->line_no, 1, "rule source variables must match the class");
    const std::string dst_text = trim(rest);
    std::string dname = dst_text;
    std::vector<std::string> dargs;
    if (const auto open = dst_text.find('('); open != std::string::npos) {
      if (dst_text.back() != ')') syntax(kv->line_no, 1, "rule target missing ')'");
      dname = dst_text.substr(0, open);
      for (const std::string& a :
           split_top(dst_text.substr(open + 1, dst_text.size() - open - 2), ','))
        if (!a.empty()) dargs.push_back(a);
    }
    r.dst = g.class_index(dname);
    if (r.dst < 0) unresolved(kv->line_no, "class '" + dname + "'");
    if (static_cast<int>(dargs.size()) != g.classes[r.dst].dims())
      syntax(kv->line_no, 1, "rule target has the wrong number of components");
    for (const std::string& a : dargs)
      r.map.push_back(parse_map_expr(a, g.classes[r.src].vars, kv->line_no));
    if (!guards.empty())
      for (const std::string& c : split_top(guards, ','))
        if (!c.empty())
          r.guards.push_back(
              parse_constraint(c, g.classes[r.src].vars, kv->line_no));
    g.rules.push_back(std::move(r));
  }
  const KeyVal& base = s.required("base");
  if (base.lines.empty()) syntax(base.line_no, 1, "empty base state");
  g.base = parse_state(base.lines.at(0), g, base.line_no);
  if (const KeyVal* fx = s.find("fixed"); fx && !fx->lines.empty())
    for (const std::string& one : split_top(fx->lines.at(0), ','))
      if (!one.empty()) g.fixed.push_back(parse_state(one, g, fx->line_no));
  in_section(s, [&] {
    validate_generated_graph(g);
    return 0;
  });

  const auto ranks = s.repeated("rank");
  if (!ranks.empty()) {
    gc.cert.rank.assign(g.classes.size(), LinExpr{});
    std::vector<char> seen(g.classes.size(), 0);
    for (const KeyVal* kv : ranks) {
      if (kv->lines.empty()) syntax(kv->line_no, 1, "empty rank");
      const auto parts = split_top(kv->lines.at(0), ':');
      if (parts.size() != 2)
        syntax(kv->line_no, 1, "rank must read 'Class : expr'");
      const int cls = g.class_index(parts[0]);
      if (cls < 0) unresolved(kv->line_no, "class '" + parts[0] + "'");
      if (seen[cls]) syntax(kv->line_no, 1, "rank for '" + parts[0] + "' repeated");
      seen[cls] = 1;
      gc.cert.rank[cls] =
          parse_map_expr(parts[1], g.classes[cls].vars, kv->line_no);
    }
    for (size_t k = 0; k < seen.size(); ++k)
      if (!seen[k])
        syntax(s.line_no, 1, "rank missing for class '" + g.classes[k].name + "'");
    const KeyVal& dir = s.required("direction");
    const std::string d = dir.lines.empty() ? "" : trim(dir.lines.at(0));
    if (d != "increasing" && d != "decreasing")
      syntax(dir.line_no, 1, "direction must be 'increasing' or 'decreasing'");
    gc.cert.increasing = d == "increasing";
  }
  doc.graphs.push_back({s.name, std::move(gc)});
}

void parse_matrix_system(const RawSection& s, SpecDocument& doc) {
  const KeyVal& rkv = s.required("rows");
  std::vector<std::vector<long long>> rows;
  for (const std::string& l : rkv.lines) {
    std::vector<long long> row;
    for (const std::string& t : split_ws(l)) row.push_back(parse_int(t, rkv.line_no));
    rows.push_back(std::move(row));
  }
  auto m = in_section(s, [&] { return build_matrix_system(std::move(rows)); });
  doc.matrices.push_back({s.name, std::move(m)});
}

}  // namespace

bool SpecDocument::has_rank_cert(const std::string& graph_name) const {
  for (const auto& [n, g] : graphs)
    if (n == graph_name) return !g.cert.rank.empty();
  return false;
}

SpecDocument parse_spec_text(const std::string& text) {
  SpecDocument doc;
  std::map<std::string, int> names_by_kind;
  for (const RawSection& s : lex_sections(text)) {
    if (!names_by_kind.emplace(s.kind + " " + s.name, s.line_no).second)
      syntax(s.line_no, 1, "duplicate section [" + s.kind + " " + s.name + "]");
    if (s.kind == "group") parse_group(s, doc);
    else if (s.kind == "automorphism") parse_automorphism(s, doc);
    else if (s.kind == "subgroup") parse_subgroup(s, doc);
    else if (s.kind == "shift") parse_shift(s, doc);
    else if (s.kind == "group_shift") parse_group_shift(s, doc);
    else if (s.kind == "coded_system") parse_coded_system(s, doc);
    else if (s.kind == "generated_graph") parse_generated_graph(s, doc);
    else if (s.kind == "matrix_system") parse_matrix_system(s, doc);
    else syntax(s.line_no, 2, "unknown section kind '" + s.kind + "'");
  }
  return doc;
}

SpecDocument parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

// --- canonical renderers ----------------------------------------------------------

namespace {

void check_name_token(const std::string& n) {
  const bool bad = n.empty() || n.find("->") != std::string::npos ||
                   n.find_first_of(" \t#[],") != std::string::npos ||
                   n[0] == '>';
  if (bad)
    throw Error(ErrorCode::SectionInvalid,
                "name '" + n + "' cannot appear in a spec file");
}

void check_symbol_token(const std::string& n) {
  // symbol names additionally allow ',' (product-group element names); the
  // edge-list separator is ', ' and names never contain spaces
  const bool bad = n.empty() || n.find("->") != std::string::npos ||
                   n.find_first_of(" \t#[]") != std::string::npos || n[0] == '>';
  if (bad)
    throw Error(ErrorCode::SectionInvalid,
                "symbol '" + n + "' cannot appear in a spec file");
}

std::string edge_lines(const std::vector<std::string>& names,
                       const std::vector<std::vector<int>>& out) {
  std::string s = "edges =\n";
  for (size_t a = 0; a < out.size(); ++a) {
    if (out[a].empty()) continue;
    s += " ";
    for (size_t k = 0; k < out[a].size(); ++k) {
      s += (k ? ", " : " ") + names[a] + "->" + names[out[a][k]];
    }
    s += "\n";
  }
  return s;
}

}  // namespace

std::string render_group(const std::string& name, const FiniteGroup& g) {
  check_name_token(name);
  for (const std::string& n : g.names) check_symbol_token(n);
  std::string s = "[group " + name + "]\nelements =";
  for (const std::string& n : g.names) s += " " + n;
  s += "\ntable =\n";
  for (int i = 0; i < g.size(); ++i) {
    s += " ";
    for (int j = 0; j < g.size(); ++j) s += " " + g.names[g.mul(i, j)];
    s += "\n";
  }
  return s + "\n";
}

std::string render_automorphism(const std::string& name, const std::string& group,
                                const FiniteGroup& g, const GroupAutomorphism& t) {
  check_name_token(name);
  check_name_token(group);
  std::string s = "[automorphism " + name + "]\ngroup = " + group + "\nmap =\n";
  for (int a = 0; a < g.size(); ++a)
    s += "  " + g.names[a] + "->" + g.names[t(a)] + "\n";
  return s + "\n";
}

std::string render_subgroup(const std::string& name, const std::string& group,
                            const FiniteGroup& g, const Subgroup& h) {
  check_name_token(name);
  check_name_token(group);
  std::string s = "[subgroup " + name + "]\ngroup = " + group + "\nmembers =";
  for (int m : h.members) s += " " + g.names[m];
  return s + "\n\n";
}

std::string render_shift(const std::string& name, const VertexShift& x) {
  check_name_token(name);
  for (const std::string& n : x.symbols) check_symbol_token(n);
  std::string s = "[shift " + name + "]\nalphabet =";
  for (const std::string& n : x.symbols) s += " " + n;
  s += "\n" + edge_lines(x.symbols, x.out);
  return s + "\n";
}

std::string render_group_shift(const std::string& name, const std::string& group,
                               const GroupShiftModel& m) {
  check_name_token(name);
  check_name_token(group);
  std::string s = "[group_shift " + name + "]\ngroup = " + group + "\n";
  s += edge_lines(m.shift.symbols, m.shift.out);
  return s + "\n";
}

std::string render_coded_system(const std::string& name, const std::string& group,
                                const std::string& automorphism,
                                const std::string& subgroup) {
  for (const std::string& n : {name, group, automorphism, subgroup})
    check_name_token(n);
  return "[coded_system " + name + "]\ngroup = " + group +
         "\nautomorphism = " + automorphism + "\nsubgroup = " + subgroup + "\n\n";
}

std::string render_generated_graph(const std::string& name,
                                   const GeneratedGraph& g,
                                   const RankCertificate* cert) {
  check_name_token(name);
  for (const Rule& r : g.rules)
    if (!r.excluded_sources.empty() || !r.excluded_targets.empty())
      throw Error(ErrorCode::SectionInvalid,
                  "rule carve-outs are not representable in spec files");
  std::string s = "[generated_graph " + name + "]\n";
  for (const ClassDecl& c : g.classes) {
    check_name_token(c.name);
    s += "class = " + class_head(c);
    if (!c.domain.empty()) {
      s += " :";
      for (size_t k = 0; k < c.domain.size(); ++k)
        s += (k ? ", " : " ") + render_constraint(c.domain[k], c.vars);
    }
    s += "\n";
  }
  for (const Rule& r : g.rules) {
    const ClassDecl& sc = g.classes[r.src];
    const ClassDecl& dc = g.classes[r.dst];
    s += "rule = " + class_head(sc) + " -> " + dc.name;
    if (dc.dims() > 0) {
      s += "(";
      for (size_t k = 0; k < r.map.size(); ++k)
        s += (k ? "," : "") + render_map_expr(r.map[k], sc.vars);
      s += ")";
    }
    if (!r.guards.empty()) {
      s += " when ";
      for (size_t k = 0; k < r.guards.size(); ++k)
        s += (k ? ", " : "") + render_constraint(r.guards[k], sc.vars);
    }
    s += "\n";
  }
  s += "base = " + render_state_text(g, g.base) + "\n";
  if (!g.fixed.empty()) {
    s += "fixed =";
    for (size_t k = 0; k < g.fixed.size(); ++k)
      s += (k ? ", " : " ") + render_state_text(g, g.fixed[k]);
    s += "\n";
  }
  if (cert && !cert->rank.empty()) {
    for (size_t k = 0; k < g.classes.size(); ++k)
      s += "rank = " + g.classes[k].name + " : " +
           render_map_expr(cert->rank[k], g.classes[k].vars) + "\n";
    s += std::string("direction = ") +
         (cert->increasing ? "increasing" : "decreasing") + "\n";
  }
  return s + "\n";
}

std::string render_matrix_system(const std::string& name, const MatrixSystem& m) {
  check_name_token(name);
  std::string s = "[matrix_system " + name + "]\nrows =\n";
  for (const auto& row : m.m) {
    s += " ";
    for (long long v : row) s += " " + std::to_string(v);
    s += "\n";
  }
  return s + "\n";
}

}  // namespace gshift
