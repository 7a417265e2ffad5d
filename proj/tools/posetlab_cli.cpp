#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "posetlab/intres.hpp"
#include "posetlab/io.hpp"

using namespace posetlab;
using nlohmann::ordered_json;

namespace {

int default_threads() {
  if (const char* env = std::getenv("POSETLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string labels_of(const Poset& p, const Bitset& s) {
  std::string out = "{";
  bool first = true;
  for (int a : s.elements()) {
    if (!first) out += ",";
    out += p.label(a);
    first = false;
  }
  return out + "}";
}

ordered_json label_array(const Poset& p, const Bitset& s) {
  ordered_json arr = ordered_json::array();
  for (int a : s.elements()) arr.push_back(p.label(a));
  return arr;
}

ordered_json multiplicities_json(const Poset& p, const std::vector<std::pair<Bitset, int>>& mults) {
  ordered_json arr = ordered_json::array();
  for (const auto& [s, m] : mults) {
    ordered_json e;
    e["S"] = label_array(p, s);
    e["mult"] = m;
    arr.push_back(e);
  }
  return arr;
}

void print_multiplicities(const Poset& p, const std::vector<std::pair<Bitset, int>>& mults) {
  for (const auto& [s, m] : mults) std::cout << "  " << labels_of(p, s) << " x " << m << "\n";
}

struct Options {
  std::vector<std::string> files;
  unsigned field = 2;
  bool json = false;
  bool timings = false;
  int threads = default_threads();
  long seed = 0;  // reserved for test harnesses; math commands are deterministic
  std::string sub, segment, at, via, route = "auto";
  bool auto_contract = false;
  bool op = false;
  int max_len = 0;
};

InteriorSystem make_system(PosetPtr p, const Options& opt) {
  if (opt.sub.empty()) throw DomainError("MissingFlag", "--sub a,b,c is required");
  return interior_system(p, p->make_set_by_labels(split_csv(opt.sub)));
}

int cmd_check(const Options& opt) {
  if (opt.files.empty()) throw DomainError("MissingFile", "check needs a .poset file, optionally a .pmod file");
  PosetPtr p = share(load_poset(opt.files[0]));
  std::cout << "poset " << p->name() << ": ok (" << p->n() << " elements, " << p->covers().size()
            << " cover edges)\n";
  if (opt.files.size() > 1) {
    PmodPtr m = load_module(opt.files[1], p);
    CommutativityReport rep = check_commutativity(*m);
    if (!rep.ok)
      throw NonCommutativeModule("path composites differ between " + p->label(rep.a) + " and " + p->label(rep.b));
    std::cout << "module: ok (total dimension " << m->total_dim() << ", commutative)\n";
  }
  return 0;
}

int cmd_intervals(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  auto ints = enumerate_intervals(*p);
  if (opt.json) {
    ordered_json j;
    j["schema_version"] = 1;
    j["poset"] = p->name();
    j["count"] = ints.size();
    ordered_json arr = ordered_json::array();
    for (const auto& s : ints) arr.push_back(label_array(*p, s));
    j["intervals"] = arr;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << ints.size() << " intervals\n";
    for (const auto& s : ints) std::cout << "  " << labels_of(*p, s) << "\n";
  }
  return 0;
}

int cmd_gldim(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  Field f{opt.field};
  auto t0 = std::chrono::steady_clock::now();

  auto run = [&](PosetPtr q) -> std::pair<GldimResult, std::vector<ContractionStep>> {
    if (opt.via == "formula") {
      GldimResult r;
      r.gldim = gldim_closed_form(*q);
      r.witness = q->empty_set();
      return {r, {}};
    }
    if (opt.via == "contract") {
      ContractionResult c = gldim_via_contraction(q, f, opt.threads);
      return {c.result, c.steps};
    }
    return {intresgldim(q, f, opt.threads), {}};
  };

  auto [r, steps] = run(p);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  bool op_checked = false;
  if (opt.op) {
    PosetPtr po = share(p->opposite());
    auto [ro, steps_o] = run(po);
    if (ro.gldim != r.gldim)
      throw InternalCheckFailed("gldim differs from the opposite poset: " + std::to_string(r.gldim) + " vs " +
                                std::to_string(ro.gldim));
    op_checked = true;
  }

  if (opt.json) {
    std::cout << gldim_to_json(*p, r, opt.timings, ms) << "\n";
  } else {
    std::cout << r.gldim << "\n";
    if (op_checked) std::cout << "opposite poset agrees: gldim " << r.gldim << "\n";
    if (r.witness.any()) std::cout << "witness interval: " << labels_of(*p, r.witness) << "\n";
    for (const auto& s : steps) {
      std::cout << "contracted segment";
      for (const auto& l : s.segment) std::cout << " " << l;
      std::cout << " (poset now " << s.remaining << " elements)\n";
    }
  }
  return 0;
}

int cmd_cover(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  PmodPtr m = load_module(opt.files.at(1), p);
  IntervalCover c = interval_cover(m, enumerate_intervals(*p));
  if (opt.json) {
    ordered_json j;
    j["schema_version"] = 1;
    j["poset"] = p->name();
    j["multiplicities"] = multiplicities_json(*p, c.multiplicities);
    j["kernel_total_dim"] = c.kernel_module->total_dim();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "interval cover:\n";
    print_multiplicities(*p, c.multiplicities);
    std::cout << "kernel total dimension: " << c.kernel_module->total_dim() << "\n";
  }
  return 0;
}

int cmd_resolve(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  PmodPtr m = load_module(opt.files.at(1), p);
  IntervalResolution r = interval_resolution(m, enumerate_intervals(*p), opt.max_len);
  if (opt.json) {
    ordered_json j;
    j["schema_version"] = 1;
    j["poset"] = p->name();
    j["intresdim"] = r.dim;
    ordered_json terms = ordered_json::array();
    for (const auto& c : r.covers) terms.push_back(multiplicities_json(*p, c.multiplicities));
    j["terms"] = terms;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "intresdim " << r.dim << "\n";
    for (size_t i = 0; i < r.covers.size(); ++i) {
      std::cout << "term " << i << ":\n";
      print_multiplicities(*p, r.covers[i].multiplicities);
    }
  }
  return 0;
}

int cmd_functor(const Options& opt) {
  const std::string& which = opt.files.at(0);
  PosetPtr p = share(load_poset(opt.files.at(1)));
  InteriorSystem is = make_system(p, opt);
  PmodPtr result;
  if (which == "res") {
    PmodPtr m = load_module(opt.files.at(2), p);
    result = restrict_module(is, *m);
  } else if (which == "ind") {
    PmodPtr m = load_module(opt.files.at(2), is.subposet);
    result = induct(is, *m);
  } else if (which == "cont") {
    PmodPtr m = load_module(opt.files.at(2), p);
    ContractRoute route = ContractRoute::Nu;
    if (opt.route == "colim") route = ContractRoute::Colimit;
    else if (opt.route == "auto") route = ContractRoute::Nu;  // the fast path; --route colim for the general one
    result = contract(is, *m, route);
  } else if (which == "coind") {
    PmodPtr m = load_module(opt.files.at(2), is.subposet);
    result = coinduct(is, *m);
  } else {
    throw DomainError("UnknownFunctor", which + " (expected res|ind|cont|coind)");
  }
  std::cout << module_to_text(*result);
  return 0;
}

int cmd_interior(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  InteriorSystem is = make_system(p, opt);
  if (opt.json) {
    ordered_json j;
    j["schema_version"] = 1;
    j["poset"] = p->name();
    j["sub"] = label_array(*p, is.sub);
    ordered_json fl = ordered_json::object();
    for (int a = 0; a < p->n(); ++a) fl[p->label(a)] = p->label(is.floor[a]);
    j["floor"] = fl;
    ordered_json fib = ordered_json::object();
    for (int y : is.sub.elements()) fib[p->label(y)] = label_array(*p, is.fiber_of[y]);
    j["fibers"] = fib;
    j["aligned"] = is.aligned;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "interior system on " << labels_of(*p, is.sub) << "\n";
    for (int a = 0; a < p->n(); ++a) std::cout << "  floor(" << p->label(a) << ") = " << p->label(is.floor[a]) << "\n";
    for (int y : is.sub.elements())
      std::cout << "  fiber(" << p->label(y) << ") = " << labels_of(*p, is.fiber_of[y]) << "\n";
    std::cout << "aligned: " << (is.aligned ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_aligned(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  InteriorSystem is = make_system(p, opt);
  if (opt.json) {
    ordered_json j;
    j["schema_version"] = 1;
    j["aligned"] = is.aligned;
    ordered_json nu = ordered_json::object();
    if (is.aligned)
      for (int y : is.sub.elements()) nu[p->label(y)] = p->label(is.nu[y]);
    j["nu"] = nu;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (is.aligned ? "aligned" : "not aligned") << "\n";
    if (is.aligned)
      for (int y : is.sub.elements()) std::cout << "  nu(" << p->label(y) << ") = " << p->label(is.nu[y]) << "\n";
  }
  return 0;
}

int cmd_contract(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  if (opt.auto_contract) {
    ContractionResult r = gldim_via_contraction(p, Field{opt.field}, opt.threads);
    std::cout << poset_to_text(*r.reduced);
    return 0;
  }
  if (opt.segment.empty()) throw DomainError("MissingFlag", "--segment l1,...,ln or --auto is required");
  auto labels = split_csv(opt.segment);
  AnSegment seg;
  for (const auto& l : labels) seg.elements.push_back(p->index_of(l));
  bool asc = true;
  for (size_t i = 0; i + 1 < seg.elements.size(); ++i)
    if (p->cover_index(seg.elements[i], seg.elements[i + 1]) < 0) asc = false;
  seg.equioriented = asc;
  std::cout << poset_to_text(contract_segment(*p, seg));
  return 0;
}

int cmd_reflect(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  if (opt.at.empty()) throw DomainError("MissingFlag", "--at <element> is required");
  std::cout << poset_to_text(reflect(*p, p->index_of(opt.at)));
  return 0;
}

int cmd_decompose(const Options& opt) {
  PosetPtr p = share(load_poset(opt.files.at(0)));
  PmodPtr m = load_module(opt.files.at(1), p);
  SummandList s = split_interval_summands(m);
  if (opt.json) {
    ordered_json j;
    j["schema_version"] = 1;
    j["summands"] = multiplicities_json(*p, s.multiplicities);
    j["residual_total_dim"] = s.residual->total_dim();
    j["interval_decomposable"] = s.residual->is_zero();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "interval summands:\n";
    print_multiplicities(*p, s.multiplicities);
    if (s.residual->is_zero())
      std::cout << "residual: 0 (interval-decomposable)\n";
    else
      std::cout << "residual: total dimension " << s.residual->total_dim() << " (not interval-decomposable)\n";
  }
  return 0;
}

int cmd_dot(const Options& opt) {
  std::cout << poset_to_dot(load_poset(opt.files.at(0)));
  return 0;
}

int cmd_expand(const Options& opt) {
  std::cout << poset_to_text(expand_diagram(load_diagram(opt.files.at(0))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posetlab: persistence modules over finite posets"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  app.add_option("--field", opt.field, "prime field characteristic (default 2)");
  app.add_flag("--json", opt.json, "machine readable output");
  app.add_flag("--timings", opt.timings, "include timings in --json output");
  app.add_option("--threads", opt.threads, "worker threads (default: POSETLAB_THREADS or 1)");
  app.add_option("--seed", opt.seed, "reserved for test harnesses");

  auto add_files = [&](CLI::App* c, int n, const char* what) {
    c->add_option("files", opt.files, what)->expected(n);
  };

  auto* check = app.add_subcommand("check", "validate a poset file and optionally a module file");
  check->add_option("files", opt.files, "poset file, optional module file")->expected(1, 2);
  auto* intervals = app.add_subcommand("intervals", "list all intervals");
  add_files(intervals, 1, "poset file");
  auto* gldim = app.add_subcommand("gldim", "interval resolution global dimension");
  add_files(gldim, 1, "poset file");
  gldim->add_option("--via", opt.via, "formula | contract");
  gldim->add_flag("--op", opt.op, "also compute the opposite poset and require equality");
  auto* cover = app.add_subcommand("cover", "minimal interval cover of a module");
  add_files(cover, 2, "poset file, module file");
  auto* resolve = app.add_subcommand("resolve", "interval resolution of a module");
  add_files(resolve, 2, "poset file, module file");
  resolve->add_option("--max-len", opt.max_len, "resolution length guard");
  auto* functor = app.add_subcommand("functor", "apply res|ind|cont|coind along an interior system");
  functor->add_option("files", opt.files, "functor name, poset file, module file")->expected(3);
  functor->add_option("--sub", opt.sub, "comma separated subposet elements")->required();
  functor->add_option("--route", opt.route, "cont route: auto | colim");
  auto* interior = app.add_subcommand("interior", "floor map and fibers of a subposet");
  add_files(interior, 1, "poset file");
  interior->add_option("--sub", opt.sub, "comma separated subposet elements")->required();
  auto* aligned = app.add_subcommand("aligned", "alignment check for an interior system");
  add_files(aligned, 1, "poset file");
  aligned->add_option("--sub", opt.sub, "comma separated subposet elements")->required();
  auto* contract = app.add_subcommand("contract", "contract a segment (or all qualifying ones)");
  add_files(contract, 1, "poset file");
  contract->add_option("--segment", opt.segment, "comma separated segment elements");
  contract->add_flag("--auto", opt.auto_contract, "contract all qualifying segments");
  auto* reflect = app.add_subcommand("reflect", "reverse all arrows at a sink or source");
  add_files(reflect, 1, "poset file");
  reflect->add_option("--at", opt.at, "element to reflect at");
  auto* decompose = app.add_subcommand("decompose", "split off interval summands");
  add_files(decompose, 2, "poset file, module file");
  auto* dot = app.add_subcommand("dot", "DOT export of the Hasse diagram");
  add_files(dot, 1, "poset file");
  auto* expand = app.add_subcommand("expand", "expand a diagram file into a poset");
  add_files(expand, 1, "diagram file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!is_prime(opt.field) || opt.field > 255) throw DomainError("InvalidField", "p must be a prime < 256");
    if (check->parsed()) return cmd_check(opt);
    if (intervals->parsed()) return cmd_intervals(opt);
    if (gldim->parsed()) return cmd_gldim(opt);
    if (cover->parsed()) return cmd_cover(opt);
    if (resolve->parsed()) return cmd_resolve(opt);
    if (functor->parsed()) return cmd_functor(opt);
    if (interior->parsed()) return cmd_interior(opt);
    if (aligned->parsed()) return cmd_aligned(opt);
    if (contract->parsed()) return cmd_contract(opt);
    if (reflect->parsed()) return cmd_reflect(opt);
    if (decompose->parsed()) return cmd_decompose(opt);
    if (dot->parsed()) return cmd_dot(opt);
    if (expand->parsed()) return cmd_expand(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
