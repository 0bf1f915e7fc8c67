#pragma once

#include <filesystem>
#include <fstream>

#include "modgraph/theorems.hpp"

namespace modgraph {
namespace io {

/// Line-oriented tokenizer: '#' starts a comment, tokens are separated by
/// whitespace and commas; ';', '=', '(' and ')' are their own tokens.
struct Lines {
  std::vector<std::pair<int, std::vector<std::string>>> rows;

  static Lines split(const std::string& text) {
    Lines out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (auto pos = line.find('#'); pos != std::string::npos)
        line = line.substr(0, pos);
      std::vector<std::string> toks;
      std::string cur;
      int depth = 0;  // inside braces, nothing splits
      auto flush = [&] {
        if (!cur.empty()) toks.push_back(cur);
        cur.clear();
      };
      for (char c : line) {
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') --depth;
        if (depth == 0 &&
            (std::isspace(static_cast<unsigned char>(c)) || c == ',')) {
          flush();
        } else if (depth == 0 && (c == ';' || c == '(' || c == ')')) {
          flush();
          toks.push_back(std::string(1, c));
        } else {
          cur += c;
        }
      }
      flush();
      if (!toks.empty()) out.rows.emplace_back(no, std::move(toks));
    }
    return out;
  }
};

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
  fail("ParseError", "line " + std::to_string(line) + ": " + msg);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), "ParseError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  check(out.good(), "ParseError", "cannot write '" + path + "'");
  out << text;
}

/// Involution classes after a header token: `a a* ; b b* ; c`.
inline std::vector<std::vector<Id>> parse_classes(
    const std::vector<std::string>& toks, std::size_t from, int line) {
  std::vector<std::vector<Id>> classes;
  std::vector<Id> cur;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (toks[i] == ";") {
      if (!cur.empty()) classes.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(toks[i]);
    }
  }
  if (!cur.empty()) classes.push_back(cur);
  if (classes.empty()) parse_fail(line, "empty involution class list");
  return classes;
}

struct ParsedGraph {
  std::string name = "G";
  Graph graph;
  bool colored = false;
  InvolutiveSet colors;
  IdMap<Id> zeta;
};

/// The graph file format:
///   graph G
///   arcs: a a* ; b b*
///   vertices: v w
///   nbhd v: a b*
///   boundary: a* b          # omitted = safe
///   colors: c c* ; d        # colored graphs only
///   color a = c
inline ParsedGraph parse_graph(const std::string& text) {
  ParsedGraph out;
  std::vector<std::vector<Id>> arc_classes;
  IdMap<Id> incidence;
  std::vector<Id> vertices;
  std::optional<IdSet> boundary;
  bool saw_arcs = false;
  for (const auto& [no, t] : Lines::split(text).rows) {
    if (t[0] == "graph") {
      if (t.size() != 2) parse_fail(no, "expected: graph <name>");
      out.name = t[1];
    } else if (t[0] == "arcs:") {
      arc_classes = parse_classes(t, 1, no);
      saw_arcs = true;
    } else if (t[0] == "vertices:") {
      for (std::size_t i = 1; i < t.size(); ++i) vertices.push_back(t[i]);
    } else if (t[0] == "nbhd") {
      if (t.size() < 2 || t[1].back() != ':')
        parse_fail(no, "expected: nbhd <vertex>: <darts>");
      const Id v = t[1].substr(0, t[1].size() - 1);
      vertices.push_back(v);
      for (std::size_t i = 2; i < t.size(); ++i) {
        if (incidence.count(t[i]))
          parse_fail(no, "dart '" + t[i] + "' listed twice");
        incidence[t[i]] = v;
      }
    } else if (t[0] == "boundary:") {
      boundary.emplace();
      for (std::size_t i = 1; i < t.size(); ++i) boundary->insert(t[i]);
    } else if (t[0] == "colors:") {
      out.colored = true;
      out.colors = InvolutiveSet::make(parse_classes(t, 1, no));
    } else if (t[0] == "color") {
      if (t.size() != 4 || t[2] != "=")
        parse_fail(no, "expected: color <arc> = <color>");
      out.colored = true;
      out.zeta[t[1]] = t[3];
    } else {
      parse_fail(no, "unknown directive '" + t[0] + "'");
    }
  }
  if (!saw_arcs && vertices.empty()) fail("ParseError", "empty graph file");
  out.graph = build_graph(arc_classes, incidence, vertices,
                          boundary ? &*boundary : nullptr);
  if (out.colored) {
    ColoredGraph cg{out.graph, out.zeta};
    cg.validate(out.colors);
  }
  return out;
}

inline std::string serialize_graph(const std::string& name, const Graph& g,
                                   const InvolutiveSet* colors = nullptr,
                                   const IdMap<Id>* zeta = nullptr) {
  std::ostringstream os;
  os << "graph " << name << "\n";
  std::vector<std::string> cls;
  for (const auto& [x, y] : g.arcs.orbits()) cls.push_back(x + " " + y);
  if (!cls.empty()) os << "arcs: " << join(cls, " ; ") << "\n";
  IdSet isolated = g.vertices;
  for (const auto& [d, v] : g.incidence) isolated.erase(v);
  if (!isolated.empty()) os << "vertices: " << join(isolated, " ") << "\n";
  for (const auto& v : g.vertices) {
    const IdSet nb = g.nbhd(v);
    if (!nb.empty()) os << "nbhd " << v << ": " << join(nb, " ") << "\n";
  }
  os << "boundary: " << join(g.boundary, " ") << "\n";
  if (colors) {
    std::vector<std::string> cc;
    for (const auto& [x, y] : colors->orbits())
      cc.push_back(x == y ? x : x + " " + y);
    os << "colors: " << join(cc, " ; ") << "\n";
    for (const auto& [a, c] : *zeta) os << "color " << a << " = " << c << "\n";
  }
  return os.str();
}

/// `W={a,b} B={...} bd={...}` from a token stream.
inline EmbeddingClass parse_class_tokens(const std::vector<std::string>& t,
                                         std::size_t from, int no) {
  EmbeddingClass c;
  auto read_set = [&](const std::string& tok, const std::string& prefix) {
    check(tok.rfind(prefix, 0) == 0 && tok.back() == '}',
          "ParseError", "line " + std::to_string(no) + ": expected " + prefix);
    IdSet out;
    std::string body = tok.substr(prefix.size(), tok.size() - prefix.size() - 1);
    std::string cur;
    for (char ch : body + ",") {
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        if (!cur.empty()) out.insert(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return out;
  };
  if (t.size() != from + 3) parse_fail(no, "expected W={..} B={..} bd={..}");
  c.W = read_set(t[from], "W={");
  c.B = read_set(t[from + 1], "B={");
  c.bd = read_set(t[from + 2], "bd={");
  return c;
}

inline std::string serialize_class(const EmbeddingClass& c) { return c.str(); }

struct ParsedMap {
  std::string name = "f";
  std::string source_name, target_name;
  IdMap<Id> phi0;
  IdMap<EmbeddingClass> phi1;
};

/// The map file format:
///   map f : G -> H
///   phi0: a -> x, a* -> x*
///   phi1 v: W={..} B={..} bd={..}
inline ParsedMap parse_map(const std::string& text) {
  ParsedMap out;
  for (const auto& [no, t] : Lines::split(text).rows) {
    if (t[0] == "map") {
      if (t.size() != 6 || t[2] != ":" || t[4] != "->")
        parse_fail(no, "expected: map <name> : <G> -> <H>");
      out.name = t[1];
      out.source_name = t[3];
      out.target_name = t[5];
    } else if (t[0] == "phi0:") {
      for (std::size_t i = 1; i + 2 < t.size(); i += 3) {
        if (t[i + 1] != "->") parse_fail(no, "expected: phi0: a -> b, ...");
        out.phi0[t[i]] = t[i + 2];
      }
    } else if (t[0] == "phi1") {
      if (t.size() < 2 || t[1].back() != ':')
        parse_fail(no, "expected: phi1 <vertex>: W={..} B={..} bd={..}");
      const Id v = t[1].substr(0, t[1].size() - 1);
      out.phi1[v] = parse_class_tokens(t, 2, no);
    } else {
      parse_fail(no, "unknown directive '" + t[0] + "'");
    }
  }
  return out;
}

inline std::string serialize_map(const std::string& name,
                                 const std::string& src, const std::string& dst,
                                 const GraphicalMap& m) {
  std::ostringstream os;
  os << "map " << name << " : " << src << " -> " << dst << "\n";
  std::vector<std::string> pairs;
  for (const auto& [a, b] : m.phi0) pairs.push_back(a + " -> " + b);
  os << "phi0: " << join(pairs, ", ") << "\n";
  for (const auto& [v, c] : m.phi1) os << "phi1 " << v << ": " << c.str() << "\n";
  return os.str();
}

/// Decorated graph literal (one line, used in operad gamma tables):
///   shape[x~x* ; y~y*] inc[x@w y@w] col[x:c ...] f[s->x* ...] dec[w=e ...]
inline DecoratedGraph parse_decorated(const std::vector<std::string>& t,
                                      std::size_t from, std::size_t to,
                                      int no) {
  DecoratedGraph d;
  std::vector<std::vector<Id>> classes;
  IdMap<Id> inc;
  std::vector<Id> vertices;
  for (std::size_t i = from; i < to; ++i) {
    const std::string& tok = t[i];
    const auto open = tok.find('[');
    if (open == std::string::npos || tok.back() != ']')
      parse_fail(no, "expected section[...] in decorated literal");
    const std::string section = tok.substr(0, open);
    const std::string body = tok.substr(open + 1, tok.size() - open - 2);
    std::vector<std::string> pieces;
    std::string cur;
    for (char c : body + " ") {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
        if (!cur.empty()) pieces.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    for (const auto& piece : pieces) {
      if (section == "shape") {
        auto tilde = piece.find('~');
        if (tilde == std::string::npos) parse_fail(no, "expected x~y");
        classes.push_back({piece.substr(0, tilde), piece.substr(tilde + 1)});
      } else if (section == "inc") {
        auto at = piece.find('@');
        if (at == std::string::npos) parse_fail(no, "expected dart@vertex");
        inc[piece.substr(0, at)] = piece.substr(at + 1);
        vertices.push_back(piece.substr(at + 1));
      } else if (section == "col") {
        auto colon = piece.find(':');
        if (colon == std::string::npos) parse_fail(no, "expected arc:color");
        d.shape.zeta[piece.substr(0, colon)] = piece.substr(colon + 1);
      } else if (section == "f") {
        auto arrow = piece.find("->");
        if (arrow == std::string::npos) parse_fail(no, "expected slot->arc");
        d.boundary[piece.substr(0, arrow)] = piece.substr(arrow + 2);
      } else if (section == "dec") {
        auto eq = piece.find('=');
        if (eq == std::string::npos) parse_fail(no, "expected vertex=element");
        d.dec[piece.substr(0, eq)] = piece.substr(eq + 1);
        vertices.push_back(piece.substr(0, eq));
      } else if (section == "vertices") {
        vertices.push_back(piece);
      } else {
        parse_fail(no, "unknown literal section '" + section + "'");
      }
    }
  }
  IdSet bd;
  for (const auto& [s, b] : d.boundary) bd.insert(b);
  d.shape.graph = build_graph(classes, inc, vertices, &bd);
  return d;
}

inline std::string serialize_decorated(const DecoratedGraph& d) {
  std::ostringstream os;
  std::vector<std::string> parts;
  for (const auto& [x, y] : d.shape.graph.arcs.orbits())
    parts.push_back(x + "~" + y);
  os << "shape[" << join(parts, " ") << "]";
  parts.clear();
  for (const auto& [a, v] : d.shape.graph.incidence) parts.push_back(a + "@" + v);
  if (!parts.empty()) os << " inc[" << join(parts, " ") << "]";
  parts.clear();
  for (const auto& [a, c] : d.shape.zeta) parts.push_back(a + ":" + c);
  os << " col[" << join(parts, " ") << "]";
  parts.clear();
  for (const auto& [s, b] : d.boundary) parts.push_back(s + "->" + b);
  if (!parts.empty()) os << " f[" << join(parts, " ") << "]";
  parts.clear();
  for (const auto& [v, e] : d.dec) parts.push_back(v + "=" + e);
  if (!parts.empty()) os << " dec[" << join(parts, " ") << "]";
  return os.str();
}

struct ParsedOperad {
  bool is_free = false;
  std::string free_on;  // graph file path for free operads
  InvolutiveSet colors;
  std::map<std::vector<Id>, std::vector<Id>> fibers;
  // declared fiber objects by class (slot names kept for diagnostics)
  GammaTable table;
};

/// Operad file format:
///   colors: c c* ; d
///   fiber (s1:c, s2:d): e1 e2
///   gamma shape[..] col[..] ... = e
///   free-on <graph-file>
inline ParsedOperad parse_operad(const std::string& text) {
  ParsedOperad out;
  for (const auto& [no, t] : Lines::split(text).rows) {
    if (t[0] == "colors:") {
      out.colors = InvolutiveSet::make(parse_classes(t, 1, no));
    } else if (t[0] == "free-on") {
      if (t.size() != 2) parse_fail(no, "expected: free-on <graph-file>");
      out.is_free = true;
      out.free_on = t[1];
    } else if (t[0] == "fiber") {
      // fiber ( s1:c s2:d ) : e1 e2
      std::size_t i = 1;
      if (i >= t.size() || t[i] != "(") parse_fail(no, "expected fiber (...)");
      ++i;
      std::vector<Id> key;
      for (; i < t.size() && t[i] != ")"; ++i) {
        auto colon = t[i].find(':');
        if (colon == std::string::npos) parse_fail(no, "expected slot:color");
        key.push_back(t[i].substr(colon + 1));
      }
      if (i >= t.size()) parse_fail(no, "unterminated fiber object");
      ++i;  // skip ')'
      if (i < t.size() && t[i].rfind(":", 0) == 0) ++i;
      std::sort(key.begin(), key.end());
      std::vector<Id>& fib = out.fibers[key];
      for (; i < t.size(); ++i)
        if (t[i] != ":") fib.push_back(t[i]);
    } else if (t[0] == "gamma") {
      std::size_t eq = t.size();
      for (std::size_t i = t.size(); i-- > 0;)
        if (t[i] == "=") {
          eq = i;
          break;
        }
      if (eq + 2 != t.size()) parse_fail(no, "expected: gamma <literal> = <e>");
      out.table.entries.emplace_back(parse_decorated(t, 1, eq, no), t[eq + 1]);
    } else {
      parse_fail(no, "unknown directive '" + t[0] + "'");
    }
  }
  return out;
}

/// Materialize a parsed operad; free operads are tabulated at the given
/// bounds (mandatory for them).
inline TabulatedOperad realize_operad(const ParsedOperad& p,
                                      const std::string& base_dir,
                                      std::size_t arity_bound,
                                      std::size_t vertex_bound) {
  if (p.is_free) {
    std::filesystem::path gp =
        std::filesystem::path(base_dir) / p.free_on;
    ParsedGraph g = parse_graph(read_file(gp.string()));
    return tabulate_free(g.graph, arity_bound, vertex_bound);
  }
  return table_operad(p.colors, p.fibers, p.table);
}

// ---------------------------------------------------------------------
// Presheaf directories

struct LoadedPresheaf {
  std::shared_ptr<Site> site;
  Presheaf x;
};

/// Directory layout:
///   site.txt          mode U|JK, vertex-bound N, object <name> <file>
///   <name>.graph      one per object
///   <name>.set        values <name>: e1 e2 ...
///   <a>__<b>__<i>.fn  action tables, one per site morphism
inline LoadedPresheaf load_presheaf(const std::string& dir) {
  namespace fs = std::filesystem;
  LoadedPresheaf out;
  SiteMode mode = SiteMode::U;
  std::size_t vbound = 3;
  std::vector<std::pair<std::string, Graph>> objs;
  for (const auto& [no, t] : Lines::split(read_file(dir + "/site.txt")).rows) {
    if (t[0] == "mode") {
      if (t.size() != 2 || (t[1] != "U" && t[1] != "JK"))
        parse_fail(no, "mode must be U or JK");
      mode = t[1] == "U" ? SiteMode::U : SiteMode::JK;
    } else if (t[0] == "vertex-bound") {
      if (t.size() != 2) parse_fail(no, "expected: vertex-bound <n>");
      vbound = std::stoul(t[1]);
    } else if (t[0] == "object") {
      if (t.size() != 3) parse_fail(no, "expected: object <name> <file>");
      ParsedGraph g = parse_graph(read_file(dir + "/" + t[2]));
      objs.emplace_back(t[1], g.graph);
    } else {
      parse_fail(no, "unknown site directive '" + t[0] + "'");
    }
  }
  out.site = std::make_shared<Site>(build_site(mode, objs, vbound));
  out.x.site = out.site;
  for (const auto& n : out.site->names) {
    std::vector<Id> vals;
    for (const auto& [no, t] :
         Lines::split(read_file(dir + "/" + n + ".set")).rows) {
      std::size_t i = 0;
      if (t[0] == "values") i = 2;  // "values <name>:"
      for (; i < t.size(); ++i)
        if (t[i] != ":") vals.push_back(t[i]);
    }
    out.x.values[n] = std::move(vals);
  }
  for (const auto& a : out.site->names)
    for (const auto& b : out.site->names) {
      const auto& hs = out.site->hom(a, b);
      std::vector<IdMap<Id>> tables(hs.size());
      for (std::size_t i = 0; i < hs.size(); ++i) {
        const std::string fn =
            dir + "/" + a + "__" + b + "__" + std::to_string(i) + ".fn";
        check(fs::exists(fn), "MissingCoreObject",
              "missing action table '" + fn + "'");
        for (const auto& [no, t] : Lines::split(read_file(fn)).rows) {
          if (t[0] == "action") continue;
          if (t.size() != 3 || t[1] != "->")
            parse_fail(no, "expected: <e> -> <e'>");
          tables[i][t[0]] = t[2];
        }
      }
      out.x.action[{a, b}] = std::move(tables);
    }
  out.x.validate();
  return out;
}

inline void emit_presheaf(const std::string& dir, const Presheaf& x) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const Site& site = *x.site;
  std::ostringstream st;
  st << "mode " << (site.mode == SiteMode::U ? "U" : "JK") << "\n";
  st << "vertex-bound " << site.vertex_bound << "\n";
  for (const auto& n : site.names) {
    st << "object " << n << " " << n << ".graph\n";
    write_file(dir + "/" + n + ".graph",
               serialize_graph(n, site.objects.at(n)));
    write_file(dir + "/" + n + ".set",
               "values " + n + ": " + join(x.at(n), " ") + "\n");
  }
  write_file(dir + "/site.txt", st.str());
  for (const auto& a : site.names)
    for (const auto& b : site.names) {
      const auto& hs = site.hom(a, b);
      for (std::size_t i = 0; i < hs.size(); ++i) {
        std::ostringstream os;
        os << "action " << a << " " << b << " " << i << "\n";
        for (const auto& [e, img] : x.action.at({a, b}).at(i))
          os << e << " -> " << img << "\n";
        write_file(dir + "/" + a + "__" + b + "__" + std::to_string(i) + ".fn",
                   os.str());
      }
    }
}

}  // namespace io
}  // namespace modgraph
