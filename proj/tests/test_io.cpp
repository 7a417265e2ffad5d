#include <doctest.h>

#include <random>

#include "posetlab/io.hpp"
#include "testutil.hpp"

using namespace posetlab;
using testutil::Rng;

TEST_CASE("poset text roundtrip") {
  const char* text =
      "# a commutative square\n"
      "poset square\n"
      "elements: a b c d\n"
      "cover a b\n"
      "cover a c\n"
      "cover b d\n"
      "cover c d\n"
      "cover a d   # transitive, dropped\n";
  Poset p = parse_poset_text(text);
  CHECK(p.n() == 4);
  CHECK(p.covers().size() == 4);
  Poset q = parse_poset_text(poset_to_text(p));
  CHECK(p.same_structure(q));
  CHECK(p.name() == q.name());

  Rng rng(113);
  for (int t = 0; t < 10; ++t) {
    Poset r = testutil::random_connected_poset(rng, 2 + int(rng() % 6));
    CHECK(parse_poset_text(poset_to_text(r)).same_structure(r));
  }
}

TEST_CASE("poset parse errors carry line numbers") {
  try {
    parse_poset_text("poset p\nelements: a b\nfrobnicate a b\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_poset_text("elements: a\n"), ParseError);
  CHECK_THROWS_AS(parse_poset_text("poset p\ncover a b\n"), ParseError);
  CHECK_THROWS_AS(parse_poset_text("poset p\nelements: a b\ncover a b\ncover b a\n"), CycleDetected);
}

TEST_CASE("module text roundtrip") {
  PosetPtr p = share(parse_poset_text("poset square\nelements: a b c d\ncover a b\ncover a c\ncover b d\ncover c d\n"));
  const char* text =
      "field 2\n"
      "over square\n"
      "dim a 1\n"
      "dim b 2\n"
      "dim d 1\n"
      "map a b : 1; 0\n"
      "map b d : 1 1\n";
  PmodPtr m = parse_module_text(text, p);
  CHECK(m->dim(0) == 1);
  CHECK(m->dim(1) == 2);
  CHECK(m->dim(2) == 0);
  CHECK(m->cover_map(0, 1).rows() == 2);
  PmodPtr again = parse_module_text(module_to_text(*m), p);
  CHECK(*again == *m);

  Rng rng(127);
  for (int t = 0; t < 10; ++t) {
    PosetPtr q = share(testutil::random_connected_poset(rng, 2 + int(rng() % 5), "q"));
    PmodPtr r = testutil::random_interval_sum(rng, q, Field(2), 3, 8).module;
    CHECK(*parse_module_text(module_to_text(*r), q) == *r);
  }
}

TEST_CASE("module parse errors") {
  PosetPtr p = share(parse_poset_text("poset c\nelements: x y\ncover x y\n"));
  try {
    parse_module_text("field 2\nover c\ndim x 1\ndim y 1\nmap x y : 1 1\n", p);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);  // wrong entry count
  }
  CHECK_THROWS_AS(parse_module_text("field 4\nover c\n", p), ParseError);
  CHECK_THROWS_AS(parse_module_text("field 2\nover other\n", p), ParseError);
  CHECK_THROWS_AS(parse_module_text("field 2\nover c\ndim z 1\n", p), ParseError);
  CHECK_THROWS_AS(parse_module_text("field 2\nover c\nmap y x : 1\n", p), ParseError);
}

TEST_CASE("matrix literals") {
  Field f3(3);
  Matrix m = parse_matrix_literal("1 0; 2 1", 2, 2, f3, 1);
  CHECK(m.at(1, 0) == 2);
  CHECK(parse_matrix_literal(matrix_literal(m), 2, 2, f3, 1) == m);
  CHECK_THROWS_AS(parse_matrix_literal("1 0", 2, 1, f3, 7), ParseError);
}

TEST_CASE("dot export") {
  Poset p = testutil::chain_poset(2);
  std::string dot = poset_to_dot(p);
  CHECK(dot.find("\"v0\" -> \"v1\"") != std::string::npos);
  CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("diagram files") {
  const char* text =
      "diagram gadget\n"
      "elements: s m t p\n"
      "arrow s m\n"
      "darrow m t 3\n"
      "line t p f\n"
      "dline s p fb\n";
  Diagram d = parse_diagram_text(text);
  CHECK(d.vertices.size() == 4);
  CHECK(d.edges.size() == 4);
  Poset p = expand_diagram(d);
  CHECK(p.n() == 6);  // one inner point for the darrow, one for the dline

  CHECK_THROWS_AS(parse_diagram_text("diagram d\nelements: a b\nwedge a b\n"), ParseError);
}

TEST_CASE("gldim json shape") {
  PosetPtr p = share(testutil::star_poset(3, ~0u, "star3"));
  GldimResult r = intresgldim(p, Field(2));
  std::string js = gldim_to_json(*p, r, false, 0.0);
  CHECK(js.find("\"schema_version\":1") != std::string::npos);
  CHECK(js.find("\"poset\":\"star3\"") != std::string::npos);
  CHECK(js.find("\"gldim\":1") != std::string::npos);
  CHECK(js.find("\"witness_interval\"") != std::string::npos);
  CHECK(js.find("\"per_interval\"") != std::string::npos);
  CHECK(js.find("\"timings_ms\":{}") != std::string::npos);
}
