#include "ncg/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include "ncg/example_paper.hpp"

namespace ncg {

namespace {

[[noreturn]] void parse_fail(int line, std::size_t col, const std::string& expected,
                             const std::string& found) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(col + 1) + ": expected " + expected +
                                         ", found " + found);
}

std::string describe(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return "end of line";
  return "'" + std::string(1, s[pos]) + "'";
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Item {
  std::string text;
  bool quoted = false;
  std::size_t col = 0;
};

struct LineCursor {
  std::string_view s;
  std::size_t pos = 0;
  int line = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size() || s[pos] == '#';
  }
  std::string ident(const std::string& what) {
    skip_ws();
    const std::size_t start = pos;
    while (pos < s.size() && ident_char(s[pos])) ++pos;
    if (pos == start) parse_fail(line, start, what, describe(s, start));
    return std::string(s.substr(start, pos - start));
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      parse_fail(line, pos, std::string("'") + c + "'", describe(s, pos));
    ++pos;
  }
  Item item() {
    skip_ws();
    Item it;
    it.col = pos;
    if (pos < s.size() && s[pos] == '"') {
      it.quoted = true;
      ++pos;
      while (true) {
        if (pos >= s.size()) parse_fail(line, pos, "closing '\"'", "end of line");
        const char c = s[pos++];
        if (c == '"') break;
        if (c == '\\') {
          if (pos >= s.size()) parse_fail(line, pos, "escaped character", "end of line");
          it.text += s[pos++];
        } else {
          it.text += c;
        }
      }
      return it;
    }
    while (pos < s.size() && s[pos] != ',' && s[pos] != '#' && s[pos] != '"' &&
           !std::isspace(static_cast<unsigned char>(s[pos])))
      it.text += s[pos++];
    if (it.text.empty()) parse_fail(line, pos, "a value", describe(s, pos));
    return it;
  }
  std::vector<Item> items() {
    std::vector<Item> out{item()};
    while (!at_end()) {
      expect(',');
      out.push_back(item());
    }
    return out;
  }
};

int to_int(const Item& it, int line) {
  int v = 0;
  const char* b = it.text.data();
  const char* e = b + it.text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) parse_fail(line, it.col, "an integer", "'" + it.text + "'");
  return v;
}

std::vector<std::string> texts(const std::vector<Item>& items) {
  std::vector<std::string> out;
  for (const auto& it : items) out.push_back(it.text);
  return out;
}

std::vector<int> ints(const std::vector<Item>& items, int line) {
  std::vector<int> out;
  for (const auto& it : items) out.push_back(to_int(it, line));
  return out;
}

std::string single(const std::vector<Item>& items, int line) {
  if (items.size() != 1) parse_fail(line, items[1].col, "a single value", "a list");
  return items[0].text;
}

const char* kKeysAlgebra = "generators, degrees, relations, base or extra_relations";
const char* kKeysModule = "algebra, kind, relations, of or shifts";
const char* kKeysAutomorphism = "algebra or images";
const char* kKeysWindow = "lo, hi, hmax or cap";

enum class Section { None, Field, Algebra, Module, Automorphism, Window };

struct Builder {
  WorkspaceFile ws;
  Section section = Section::None;
  int section_line = 0;
  std::set<std::string> keys;
  std::set<std::string> names;

  void close() {
    switch (section) {
      case Section::Algebra: {
        auto& a = ws.algebras.back();
        if (a.base.empty()) {
          if (a.generators.empty())
            parse_fail(section_line, 0, "key generators or base in [algebra " + a.name + "]",
                       "neither");
          if (!a.extra_relations.empty())
            parse_fail(section_line, 0, "key base with extra_relations", "no base");
          if (a.degrees.empty()) a.degrees.assign(a.generators.size(), 1);
          if (a.degrees.size() != a.generators.size())
            parse_fail(section_line, 0, "one degree per generator",
                       std::to_string(a.degrees.size()) + " degrees");
        } else if (!a.generators.empty() || !a.degrees.empty() || !a.relations.empty()) {
          parse_fail(section_line, 0, "only extra_relations next to base", "generators");
        }
        break;
      }
      case Section::Module: {
        const auto& m = ws.modules.back();
        if (m.kind.empty()) parse_fail(section_line, 0, "key kind in [module " + m.name + "]", "none");
        if (m.kind != "sum" && m.algebra.empty())
          parse_fail(section_line, 0, "key algebra in [module " + m.name + "]", "none");
        if (m.kind == "sum" && m.of.empty())
          parse_fail(section_line, 0, "key of in [module " + m.name + "]", "none");
        if (m.kind == "free" && m.shifts.empty())
          parse_fail(section_line, 0, "key shifts in [module " + m.name + "]", "none");
        if (m.kind == "cyclic" && m.shifts.size() > 1)
          parse_fail(section_line, 0, "at most one shift for a cyclic module", "a list");
        if (m.kind == "sum" && !m.shifts.empty() && m.shifts.size() != m.of.size())
          parse_fail(section_line, 0, "one shift per summand", "a list of another length");
        break;
      }
      case Section::Automorphism: {
        const auto& a = ws.automorphisms.back();
        if (a.algebra.empty() || a.images.empty())
          parse_fail(section_line, 0, "keys algebra and images in [automorphism " + a.name + "]",
                     "missing keys");
        break;
      }
      default:
        break;
    }
    keys.clear();
  }

  void header(LineCursor& c) {
    close();
    c.expect('[');
    const std::size_t kcol = (c.skip_ws(), c.pos);
    const std::string kind = c.ident("a section kind");
    std::string name;
    c.skip_ws();
    if (c.pos < c.s.size() && c.s[c.pos] != ']') name = c.ident("a name");
    const std::size_t ncol = c.pos;
    c.expect(']');
    if (!c.at_end()) parse_fail(c.line, c.pos, "end of line", describe(c.s, c.pos));
    section_line = c.line;
    if (kind == "field" || kind == "window") {
      if (!name.empty()) parse_fail(c.line, ncol, "']'", "a name");
      const std::string tag = "[" + kind + "]";
      if (!names.insert(tag).second) parse_fail(c.line, kcol, "a new section", "repeated " + tag);
      section = kind == "field" ? Section::Field : Section::Window;
      return;
    }
    if (kind != "algebra" && kind != "module" && kind != "automorphism")
      parse_fail(c.line, kcol, "field, algebra, module, automorphism or window", "'" + kind + "'");
    if (name.empty()) parse_fail(c.line, ncol, "a name", describe(c.s, ncol));
    if (!names.insert(name).second) parse_fail(c.line, ncol, "a new name", "duplicate " + name);
    if (kind == "algebra") {
      section = Section::Algebra;
      ws.algebras.push_back({});
      ws.algebras.back().name = name;
      ws.algebras.back().line = c.line;
    } else if (kind == "module") {
      section = Section::Module;
      ws.modules.push_back({});
      ws.modules.back().name = name;
      ws.modules.back().line = c.line;
    } else {
      section = Section::Automorphism;
      ws.automorphisms.push_back({});
      ws.automorphisms.back().name = name;
      ws.automorphisms.back().line = c.line;
    }
  }

  void entry(LineCursor& c) {
    const std::size_t kcol = (c.skip_ws(), c.pos);
    const std::string key = c.ident("a key or '['");
    c.expect('=');
    const auto vals = c.items();
    const int ln = c.line;
    if (section == Section::None) parse_fail(ln, kcol, "a section header", "key " + key);
    if (!keys.insert(key).second) parse_fail(ln, kcol, "a new key", "repeated key " + key);
    auto unknown = [&](const char* expected) { parse_fail(ln, kcol, expected, "key " + key); };
    switch (section) {
      case Section::Field:
        if (key == "field")
          ws.field = single(vals, ln);
        else
          ws.constants.push_back({key, single(vals, ln)});
        break;
      case Section::Algebra: {
        auto& a = ws.algebras.back();
        if (key == "generators") {
          a.generators = texts(vals);
          for (std::size_t i = 0; i < vals.size(); ++i)
            if (!std::all_of(a.generators[i].begin(), a.generators[i].end(), ident_char))
              parse_fail(ln, vals[i].col, "a generator name", "'" + a.generators[i] + "'");
        } else if (key == "degrees") {
          a.degrees = ints(vals, ln);
        } else if (key == "relations") {
          a.relations = texts(vals);
        } else if (key == "base") {
          a.base = single(vals, ln);
        } else if (key == "extra_relations") {
          a.extra_relations = texts(vals);
        } else {
          unknown(kKeysAlgebra);
        }
        break;
      }
      case Section::Module: {
        auto& m = ws.modules.back();
        if (key == "algebra") {
          m.algebra = single(vals, ln);
        } else if (key == "kind") {
          m.kind = single(vals, ln);
          if (m.kind != "cyclic" && m.kind != "free" && m.kind != "sum")
            parse_fail(ln, vals[0].col, "cyclic, free or sum", "'" + m.kind + "'");
        } else if (key == "relations") {
          m.relations = texts(vals);
        } else if (key == "of") {
          m.of = texts(vals);
        } else if (key == "shifts") {
          m.shifts = ints(vals, ln);
        } else {
          unknown(kKeysModule);
        }
        break;
      }
      case Section::Automorphism: {
        auto& a = ws.automorphisms.back();
        if (key == "algebra")
          a.algebra = single(vals, ln);
        else if (key == "images")
          a.images = texts(vals);
        else
          unknown(kKeysAutomorphism);
        break;
      }
      case Section::Window: {
        const int v = to_int(vals[0], ln);
        single(vals, ln);
        if (key == "lo")
          ws.lo = v;
        else if (key == "hi")
          ws.hi = v;
        else if (key == "hmax")
          ws.hmax = v;
        else if (key == "cap")
          ws.cap = v;
        else
          unknown(kKeysWindow);
        break;
      }
      case Section::None:
        break;
    }
  }
};

[[noreturn]] void unknown_reference(int line, const std::string& what, const std::string& name) {
  throw Error(ErrorCode::UnknownReference,
              "line " + std::to_string(line) + ": " + what + " '" + name + "' is not declared");
}

void check_references(const WorkspaceFile& ws) {
  for (const auto& a : ws.algebras)
    if (!a.base.empty() && !ws.find_algebra(a.base)) unknown_reference(a.line, "algebra", a.base);
  for (const auto& m : ws.modules) {
    if (!m.algebra.empty() && !ws.find_algebra(m.algebra))
      unknown_reference(m.line, "algebra", m.algebra);
    for (const auto& o : m.of)
      if (!ws.find_module(o)) unknown_reference(m.line, "module", o);
  }
  for (const auto& a : ws.automorphisms)
    if (!ws.find_algebra(a.algebra)) unknown_reference(a.line, "algebra", a.algebra);

  // acyclicity of base chains and sums
  std::map<std::string, int> state;
  std::function<void(const std::string&, bool, int)> visit = [&](const std::string& name,
                                                                  bool module, int line) {
    const std::string key = (module ? "m:" : "a:") + name;
    int& s = state[key];
    if (s == 2) return;
    if (s == 1)
      throw Error(ErrorCode::UnknownReference,
                  "line " + std::to_string(line) + ": cyclic reference through '" + name + "'");
    s = 1;
    if (module) {
      const auto* m = ws.find_module(name);
      for (const auto& o : m->of) visit(o, true, m->line);
    } else {
      const auto* a = ws.find_algebra(name);
      if (!a->base.empty()) visit(a->base, false, a->line);
    }
    state[key] = 2;
  };
  for (const auto& a : ws.algebras) visit(a.name, false, a.line);
  for (const auto& m : ws.modules) visit(m.name, true, m.line);
  // summands of a sum live over one algebra
  std::function<std::string(const std::string&)> algebra_of = [&](const std::string& name) {
    const auto* m = ws.find_module(name);
    if (m->kind != "sum") return m->algebra;
    std::string alg;
    for (const auto& o : m->of) {
      const std::string a = algebra_of(o);
      if (!alg.empty() && a != alg)
        throw Error(ErrorCode::AlgebraMismatch, "line " + std::to_string(m->line) +
                                                    ": summands of " + name +
                                                    " live over different algebras");
      alg = a;
    }
    if (!m->algebra.empty() && m->algebra != alg)
      throw Error(ErrorCode::AlgebraMismatch,
                  "line " + std::to_string(m->line) + ": sum " + name + " is not over " +
                      m->algebra);
    return alg;
  };
  for (const auto& m : ws.modules) algebra_of(m.name);
}

template <class K>
void check_expressions(const WorkspaceFile& ws, const K& field) {
  std::map<std::string, typename K::Elem> constants;
  for (const auto& c : ws.constants) constants[c.name] = evaluate_constant(field, c.value);
  std::map<std::string, FreeAlgebraPtr<K>> frees;
  std::function<FreeAlgebraPtr<K>(const std::string&)> free_of = [&](const std::string& name) {
    auto it = frees.find(name);
    if (it != frees.end()) return it->second;
    const auto* a = ws.find_algebra(name);
    FreeAlgebraPtr<K> f = a->base.empty()
                              ? std::make_shared<const FreeAlgebra<K>>(field, a->generators,
                                                                       a->degrees)
                              : free_of(a->base);
    frees[name] = f;
    return f;
  };
  auto check = [&](const FreeAlgebraPtr<K>& free, const std::string& text, int line,
                   bool homogeneous) {
    NcPoly<K> p(free);
    try {
      p = parse_poly(free, text, constants);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line) + ": " + e.what());
    }
    if (homogeneous && !p.is_homogeneous())
      throw Error(ErrorCode::NonHomogeneous,
                  "line " + std::to_string(line) + ": \"" + text + "\" is not homogeneous");
    return p;
  };
  for (const auto& a : ws.algebras) {
    const auto free = free_of(a.name);
    for (const auto& r : a.relations) check(free, r, a.line, true);
    for (const auto& r : a.extra_relations) check(free, r, a.line, true);
  }
  for (const auto& m : ws.modules)
    if (m.kind == "cyclic")
      for (const auto& r : m.relations) check(free_of(m.algebra), r, m.line, true);
  for (const auto& a : ws.automorphisms) {
    const auto free = free_of(a.algebra);
    if (a.images.size() != free->num_generators())
      throw Error(ErrorCode::InvalidAutomorphism,
                  "line " + std::to_string(a.line) + ": one image per generator is needed");
    for (std::size_t g = 0; g < a.images.size(); ++g) {
      const auto p = check(free, a.images[g], a.line, true);
      if (!p.is_zero() && p.degree() != free->order().generator_degree(static_cast<int>(g)))
        throw Error(ErrorCode::InvalidAutomorphism,
                    "line " + std::to_string(a.line) + ": image of " + free->names()[g] +
                        " has the wrong degree");
    }
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

const WorkspaceFile::AlgebraDecl* WorkspaceFile::find_algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.name == name) return &a;
  return nullptr;
}

const WorkspaceFile::ModuleDecl* WorkspaceFile::find_module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

const WorkspaceFile::AutomorphismDecl* WorkspaceFile::find_automorphism(
    const std::string& name) const {
  for (const auto& a : automorphisms)
    if (a.name == name) return &a;
  return nullptr;
}

Window WorkspaceFile::window() const {
  Window w;
  if (lo) w.lo = *lo;
  if (hi) w.hi = *hi;
  if (hmax) w.hmax = *hmax;
  if (cap) w.cap = *cap;
  return w;
}

WorkspaceFile parse_workspace(std::string_view text) {
  Builder b;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view s = text.substr(start, end - start);
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    ++line;
    LineCursor c{s, 0, line};
    if (!c.at_end()) {
      if (s[c.pos] == '[')
        b.header(c);
      else
        b.entry(c);
    }
    start = end + 1;
  }
  b.close();
  validate_workspace(b.ws);
  return b.ws;
}

void validate_workspace(const WorkspaceFile& ws, const std::string& field) {
  check_references(ws);
  const auto spec = parse_field_spec(field.empty() ? ws.field : field);
  std::visit([&](const auto& k) { check_expressions(ws, k); }, spec);
  ws.window().validate();
}

std::string serialize_workspace(const WorkspaceFile& ws) {
  std::ostringstream o;
  auto strs = [](const std::vector<std::string>& v) { return join(v, quote); };
  auto nums = [](const std::vector<int>& v) {
    return join(v, [](int x) { return std::to_string(x); });
  };
  o << "[field]\nfield = " << quote(ws.field) << "\n";
  for (const auto& c : ws.constants) o << c.name << " = " << quote(c.value) << "\n";
  for (const auto& a : ws.algebras) {
    o << "\n[algebra " << a.name << "]\n";
    if (!a.generators.empty()) o << "generators = " << strs(a.generators) << "\n";
    if (!a.degrees.empty()) o << "degrees = " << nums(a.degrees) << "\n";
    if (!a.relations.empty()) o << "relations = " << strs(a.relations) << "\n";
    if (!a.base.empty()) o << "base = " << quote(a.base) << "\n";
    if (!a.extra_relations.empty()) o << "extra_relations = " << strs(a.extra_relations) << "\n";
  }
  for (const auto& m : ws.modules) {
    o << "\n[module " << m.name << "]\n";
    if (!m.algebra.empty()) o << "algebra = " << quote(m.algebra) << "\n";
    o << "kind = " << m.kind << "\n";
    if (!m.relations.empty()) o << "relations = " << strs(m.relations) << "\n";
    if (!m.of.empty()) o << "of = " << strs(m.of) << "\n";
    if (!m.shifts.empty()) o << "shifts = " << nums(m.shifts) << "\n";
  }
  for (const auto& a : ws.automorphisms) {
    o << "\n[automorphism " << a.name << "]\n";
    o << "algebra = " << quote(a.algebra) << "\n";
    o << "images = " << strs(a.images) << "\n";
  }
  if (ws.lo || ws.hi || ws.hmax || ws.cap) {
    o << "\n[window]\n";
    if (ws.lo) o << "lo = " << *ws.lo << "\n";
    if (ws.hi) o << "hi = " << *ws.hi << "\n";
    if (ws.hmax) o << "hmax = " << *ws.hmax << "\n";
    if (ws.cap) o << "cap = " << *ws.cap << "\n";
  }
  return o.str();
}

std::string_view builtin_workspace_text() { return generated::kExamplePaper; }

template <class K>
typename K::Elem evaluate_constant(const K& field, const std::string& text) {
  const std::string t = trim(text);
  const std::string fn = "root_of_unity(";
  if (t.rfind(fn, 0) == 0 && t.back() == ')') {
    const std::string arg = trim(t.substr(fn.size(), t.size() - fn.size() - 1));
    unsigned n = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (ec != std::errc() || p != arg.data() + arg.size() || n == 0)
      throw Error(ErrorCode::ParseError, "bad root_of_unity argument in \"" + text + "\"");
    return root_of_unity(field, n);
  }
  const auto slash = t.find('/');
  auto integer = [&](const std::string& s) {
    long long v = 0;
    const std::string u = trim(s);
    auto [p, ec] = std::from_chars(u.data(), u.data() + u.size(), v);
    if (ec != std::errc() || p != u.data() + u.size() || u.empty())
      throw Error(ErrorCode::ParseError,
                  "expected root_of_unity(n), an integer or a/b, found \"" + text + "\"");
    return field.from_int(v);
  };
  if (slash == std::string::npos) return integer(t);
  const auto den = integer(t.substr(slash + 1));
  if (field.is_zero(den)) throw Error(ErrorCode::InvalidArgument, "zero denominator in " + text);
  return field.div(integer(t.substr(0, slash)), den);
}

template <class K>
Session<K>::Session(const WorkspaceFile& ws, K field, int D)
    : ws_(ws), field_(std::move(field)), D_(D) {
  check_references(ws_);
  for (const auto& c : ws_.constants) constants_[c.name] = evaluate_constant(field_, c.value);
}

template <class K>
FreeAlgebraPtr<K> Session<K>::free_of(const std::string& name) {
  auto it = frees_.find(name);
  if (it != frees_.end()) return it->second;
  const auto* a = ws_.find_algebra(name);
  if (!a) throw Error(ErrorCode::UnknownReference, "algebra '" + name + "' is not declared");
  FreeAlgebraPtr<K> f =
      a->base.empty()
          ? std::make_shared<const FreeAlgebra<K>>(field_, a->generators, a->degrees)
          : free_of(a->base);
  frees_[name] = f;
  return f;
}

template <class K>
NcPoly<K> Session<K>::parse(const std::string& algebra, const std::string& text) {
  return parse_poly(free_of(algebra), text, constants_);
}

template <class K>
Presentation<K> Session<K>::presentation(const std::string& name) {
  const auto free = free_of(name);
  std::vector<NcPoly<K>> rels;
  std::function<void(const std::string&)> collect = [&](const std::string& n) {
    const auto* a = ws_.find_algebra(n);
    if (!a->base.empty()) collect(a->base);
    for (const auto& r : a->relations) rels.push_back(parse_poly(free, r, constants_));
    for (const auto& r : a->extra_relations) rels.push_back(parse_poly(free, r, constants_));
  };
  collect(name);
  return Presentation<K>(free, std::move(rels));
}

template <class K>
PresentedPtr<K> Session<K>::algebra(const std::string& name) {
  auto it = algebras_.find(name);
  if (it != algebras_.end()) return it->second;
  auto alg = PresentedAlgebra<K>::build(presentation(name), D_, name);
  algebras_[name] = alg;
  return alg;
}

template <class K>
std::vector<ModulePtr<K>> Session<K>::summands(const std::string& name) {
  const auto* m = ws_.find_module(name);
  if (!m || m->kind != "sum") return {module(name)};
  std::vector<ModulePtr<K>> parts;
  for (std::size_t i = 0; i < m->of.size(); ++i) {
    auto p = module(m->of[i]);
    if (!m->shifts.empty() && m->shifts[i] != 0) p = shift_module<K>(p, m->shifts[i]);
    parts.push_back(p);
  }
  return parts;
}

template <class K>
ModulePtr<K> Session<K>::module(const std::string& name) {
  auto it = modules_.find(name);
  if (it != modules_.end()) return it->second;
  const auto* m = ws_.find_module(name);
  if (!m && ws_.find_algebra(name)) {
    // an algebra name stands for its regular module
    auto R = regular_module<K>(algebra(name), 0, name);
    modules_[name] = R;
    return R;
  }
  if (!m) throw Error(ErrorCode::UnknownReference, "module '" + name + "' is not declared");
  ModulePtr<K> M;
  if (m->kind == "cyclic") {
    auto alg = algebra(m->algebra);
    std::vector<NcPoly<K>> gens;
    for (const auto& r : m->relations) gens.push_back(parse(m->algebra, r));
    M = cyclic_module<K>(alg, gens, name);
    if (!m->shifts.empty() && m->shifts[0] != 0) M = shift_module<K>(M, m->shifts[0]);
  } else if (m->kind == "free") {
    M = free_graded_module<K>(algebra(m->algebra), m->shifts, name);
  } else {
    M = direct_sum<K>(summands(name), name);
  }
  modules_[name] = M;
  return M;
}

template <class K>
GradedAutomorphism<K> Session<K>::automorphism(const std::string& name) {
  const auto* a = ws_.find_automorphism(name);
  if (!a) throw Error(ErrorCode::UnknownReference, "automorphism '" + name + "' is not declared");
  std::vector<NcPoly<K>> images;
  for (const auto& t : a->images) images.push_back(parse(a->algebra, t));
  return GradedAutomorphism<K>(algebra(a->algebra), std::move(images));
}

template PrimeField::Elem evaluate_constant<PrimeField>(const PrimeField&, const std::string&);
template RationalField::Elem evaluate_constant<RationalField>(const RationalField&,
                                                              const std::string&);
template class Session<PrimeField>;
template class Session<RationalField>;

}  // namespace ncg
