#pragma once

#include <iosfwd>
#include <string>

#include "posetlab/intres.hpp"
#include "posetlab/pmod.hpp"

namespace posetlab {

// Poset text format (UTF-8, line oriented, '#' comments):
//   poset <name>
//   elements: id1 id2 ...
//   cover <a> <b>        # a -< b; transitive edges accepted and reduced
Poset parse_poset(std::istream& in);
Poset parse_poset_text(const std::string& text);
Poset load_poset(const std::string& path);
std::string poset_to_text(const Poset& p);

// Module text format (.pmod):
//   field <p>
//   over <poset-name>
//   dim <el> <n>
//   map <a> <b> : r00 r01; r10 r11    # shape dims(b) x dims(a)
// Omitted dims are 0; omitted maps are zero matrices of the right shape.
PmodPtr parse_module(std::istream& in, PosetPtr p);
PmodPtr parse_module_text(const std::string& text, PosetPtr p);
PmodPtr load_module(const std::string& path, PosetPtr p);
std::string module_to_text(const PersistenceModule& m);

// Diagram files for the expand command:
//   diagram <name>
//   elements: a b ...
//   arrow a b
//   line a b <f|b>
//   darrow a b <m>
//   dline a b <pattern of f/b, one per internal edge>
Diagram parse_diagram(std::istream& in);
Diagram parse_diagram_text(const std::string& text);
Diagram load_diagram(const std::string& path);

// Hasse diagram as DOT, edges oriented low to high.
std::string poset_to_dot(const Poset& p);

std::string matrix_literal(const Matrix& m);
Matrix parse_matrix_literal(const std::string& text, int rows, int cols, Field f, int line_no);

std::string gldim_to_json(const Poset& p, const GldimResult& r, bool with_timings, double elapsed_ms);

}  // namespace posetlab
