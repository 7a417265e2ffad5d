#include "posetlab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace posetlab {

namespace {

// Strips comments, splits into whitespace tokens, keeps 1-based line numbers.
struct Lines {
  std::vector<std::pair<int, std::vector<std::string>>> rows;

  explicit Lines(std::istream& in) {
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ss(line);
      std::vector<std::string> toks;
      std::string t;
      while (ss >> t) toks.push_back(t);
      if (!toks.empty()) rows.emplace_back(no, std::move(toks));
    }
  }
};

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("FileNotFound", path);
  return in;
}

int parse_int(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError(line_no, "expected an integer, got '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected an integer, got '" + s + "'");
  }
}

}  // namespace

Poset parse_poset(std::istream& in) {
  Lines lines(in);
  if (lines.rows.empty()) throw ParseError(1, "empty poset file");
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
  bool saw_header = false, saw_elements = false;
  for (auto& [no, toks] : lines.rows) {
    if (toks[0] == "poset") {
      if (saw_header) throw ParseError(no, "duplicate poset header");
      if (toks.size() != 2) throw ParseError(no, "expected: poset <name>");
      name = toks[1];
      saw_header = true;
    } else if (toks[0] == "elements:") {
      if (!saw_header) throw ParseError(no, "elements before poset header");
      if (saw_elements) throw ParseError(no, "duplicate elements line");
      labels.assign(toks.begin() + 1, toks.end());
      saw_elements = true;
    } else if (toks[0] == "cover") {
      if (!saw_elements) throw ParseError(no, "cover before elements line");
      if (toks.size() != 3) throw ParseError(no, "expected: cover <a> <b>");
      edges.emplace_back(toks[1], toks[2]);
    } else {
      throw ParseError(no, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!saw_header) throw ParseError(1, "missing poset header");
  if (!saw_elements) throw ParseError(1, "missing elements line");
  return Poset::from_covers(name, labels, edges);
}

Poset parse_poset_text(const std::string& text) {
  std::istringstream in(text);
  return parse_poset(in);
}

Poset load_poset(const std::string& path) {
  auto in = open_file(path);
  return parse_poset(in);
}

std::string poset_to_text(const Poset& p) {
  std::ostringstream out;
  out << "poset " << p.name() << "\n";
  out << "elements:";
  for (const auto& l : p.labels()) out << " " << l;
  out << "\n";
  for (auto [a, b] : p.covers()) out << "cover " << p.label(a) << " " << p.label(b) << "\n";
  return out.str();
}

std::string matrix_literal(const Matrix& m) {
  std::ostringstream out;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out << "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << int(m.at(i, j));
    }
  }
  return out.str();
}

Matrix parse_matrix_literal(const std::string& text, int rows, int cols, Field f, int line_no) {
  Matrix m(rows, cols, f);
  std::vector<std::string> row_strs;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      row_strs.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  row_strs.push_back(cur);
  if (int(row_strs.size()) != rows) throw ParseError(line_no, "expected " + std::to_string(rows) + " matrix rows");
  for (int i = 0; i < rows; ++i) {
    std::istringstream ss(row_strs[size_t(i)]);
    for (int j = 0; j < cols; ++j) {
      long v;
      if (!(ss >> v)) throw ParseError(line_no, "expected " + std::to_string(cols) + " entries per row");
      long r = v % long(f.p);
      if (r < 0) r += f.p;
      m.set(i, j, uint8_t(r));
    }
    long extra;
    if (ss >> extra) throw ParseError(line_no, "too many entries in matrix row");
  }
  return m;
}

PmodPtr parse_module(std::istream& in, PosetPtr p) {
  Lines lines(in);
  Field f;
  std::vector<int> dims(size_t(p->n()), 0);
  std::vector<std::tuple<int, int, int, std::string>> map_lines;  // a, b, line, literal
  bool saw_field = false, saw_over = false;
  for (auto& [no, toks] : lines.rows) {
    if (toks[0] == "field") {
      if (toks.size() != 2) throw ParseError(no, "expected: field <p>");
      unsigned v = unsigned(parse_int(toks[1], no));
      if (!is_prime(v) || v > 255) throw ParseError(no, "field characteristic must be a prime < 256");
      f = Field(v);
      saw_field = true;
    } else if (toks[0] == "over") {
      if (toks.size() != 2) throw ParseError(no, "expected: over <poset-name>");
      if (toks[1] != p->name()) throw ParseError(no, "module is over '" + toks[1] + "', poset is '" + p->name() + "'");
      saw_over = true;
    } else if (toks[0] == "dim") {
      if (toks.size() != 3) throw ParseError(no, "expected: dim <el> <n>");
      int a;
      try {
        a = p->index_of(toks[1]);
      } catch (const UnknownLabel&) {
        throw ParseError(no, "unknown element '" + toks[1] + "'");
      }
      dims[size_t(a)] = parse_int(toks[2], no);
      if (dims[size_t(a)] < 0) throw ParseError(no, "negative dimension");
    } else if (toks[0] == "map") {
      if (toks.size() < 4 || toks[3] != ":") throw ParseError(no, "expected: map <a> <b> : <matrix>");
      int a, b;
      try {
        a = p->index_of(toks[1]);
        b = p->index_of(toks[2]);
      } catch (const UnknownLabel& e) {
        throw ParseError(no, e.what());
      }
      if (p->cover_index(a, b) < 0) throw ParseError(no, toks[1] + " -< " + toks[2] + " is not a cover edge");
      std::string lit;
      for (size_t i = 4; i < toks.size(); ++i) {
        if (i > 4) lit += " ";
        lit += toks[i];
      }
      map_lines.emplace_back(a, b, no, lit);
    } else {
      throw ParseError(no, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!saw_field) throw ParseError(1, "missing field line");
  if (!saw_over) throw ParseError(1, "missing over line");

  std::vector<Matrix> maps;
  for (auto [a, b] : p->covers()) maps.push_back(Matrix(dims[size_t(b)], dims[size_t(a)], f));
  for (auto& [a, b, no, lit] : map_lines) {
    int e = p->cover_index(a, b);
    maps[size_t(e)] = parse_matrix_literal(lit, dims[size_t(b)], dims[size_t(a)], f, no);
  }
  return share(PersistenceModule(std::move(p), f, std::move(dims), std::move(maps)));
}

PmodPtr parse_module_text(const std::string& text, PosetPtr p) {
  std::istringstream in(text);
  return parse_module(in, std::move(p));
}

PmodPtr load_module(const std::string& path, PosetPtr p) {
  auto in = open_file(path);
  return parse_module(in, std::move(p));
}

std::string module_to_text(const PersistenceModule& m) {
  const Poset& p = *m.poset();
  std::ostringstream out;
  out << "field " << m.field().p << "\n";
  out << "over " << p.name() << "\n";
  for (int a = 0; a < p.n(); ++a)
    if (m.dim(a)) out << "dim " << p.label(a) << " " << m.dim(a) << "\n";
  for (size_t e = 0; e < p.covers().size(); ++e) {
    auto [a, b] = p.covers()[e];
    const Matrix& mat = m.cover_map(int(e));
    if (mat.rows() == 0 || mat.cols() == 0 || mat.is_zero()) continue;
    out << "map " << p.label(a) << " " << p.label(b) << " : " << matrix_literal(mat) << "\n";
  }
  return out.str();
}

Diagram parse_diagram(std::istream& in) {
  Lines lines(in);
  if (lines.rows.empty()) throw ParseError(1, "empty diagram file");
  Diagram d;
  bool saw_header = false, saw_elements = false;
  auto vid = [&](const std::string& l, int no) {
    for (size_t i = 0; i < d.vertices.size(); ++i)
      if (d.vertices[i] == l) return int(i);
    throw ParseError(no, "unknown vertex '" + l + "'");
  };
  for (auto& [no, toks] : lines.rows) {
    if (toks[0] == "diagram") {
      if (toks.size() != 2) throw ParseError(no, "expected: diagram <name>");
      d.name = toks[1];
      saw_header = true;
    } else if (toks[0] == "elements:") {
      d.vertices.assign(toks.begin() + 1, toks.end());
      saw_elements = true;
    } else if (toks[0] == "arrow" || toks[0] == "line" || toks[0] == "darrow" || toks[0] == "dline") {
      if (!saw_elements) throw ParseError(no, "edge before elements line");
      if (toks.size() < 3) throw ParseError(no, "expected two endpoints");
      Diagram::Edge e;
      e.u = vid(toks[1], no);
      e.v = vid(toks[2], no);
      if (toks[0] == "arrow") {
        e.kind = Diagram::Edge::Arrow;
        if (toks.size() != 3) throw ParseError(no, "arrow takes two endpoints");
      } else if (toks[0] == "line") {
        e.kind = Diagram::Edge::Line;
        if (toks.size() == 4) e.orient = toks[3];
        else if (toks.size() != 3) throw ParseError(no, "expected: line a b <f|b>");
      } else if (toks[0] == "darrow") {
        e.kind = Diagram::Edge::DoubleArrow;
        if (toks.size() != 4) throw ParseError(no, "expected: darrow a b <m>");
        e.m = parse_int(toks[3], no);
      } else {
        e.kind = Diagram::Edge::DoubleLine;
        if (toks.size() == 4) e.orient = toks[3];
        else if (toks.size() != 3) throw ParseError(no, "expected: dline a b <pattern>");
      }
      d.edges.push_back(std::move(e));
    } else {
      throw ParseError(no, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!saw_header) throw ParseError(1, "missing diagram header");
  if (!saw_elements) throw ParseError(1, "missing elements line");
  return d;
}

Diagram parse_diagram_text(const std::string& text) {
  std::istringstream in(text);
  return parse_diagram(in);
}

Diagram load_diagram(const std::string& path) {
  auto in = open_file(path);
  return parse_diagram(in);
}

std::string poset_to_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph \"" << p.name() << "\" {\n";
  out << "  rankdir=BT;\n";
  for (int a = 0; a < p.n(); ++a) out << "  \"" << p.label(a) << "\";\n";
  for (auto [a, b] : p.covers()) out << "  \"" << p.label(a) << "\" -> \"" << p.label(b) << "\";\n";
  out << "}\n";
  return out.str();
}

std::string gldim_to_json(const Poset& p, const GldimResult& r, bool with_timings, double elapsed_ms) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["poset"] = p.name();
  j["gldim"] = r.gldim;
  nlohmann::ordered_json witness = nlohmann::ordered_json::array();
  for (int a : r.witness.elements()) witness.push_back(p.label(a));
  j["witness_interval"] = witness;
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const auto& [s, d] : r.per_interval) {
    nlohmann::ordered_json entry;
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (int a : s.elements()) labels.push_back(p.label(a));
    entry["S"] = labels;
    entry["intresdim"] = d;
    per.push_back(entry);
  }
  j["per_interval"] = per;
  j["timings_ms"] = nlohmann::ordered_json::object();
  if (with_timings) j["timings_ms"]["total"] = elapsed_ms;
  return j.dump();
}

}  // namespace posetlab
