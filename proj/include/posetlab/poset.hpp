#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "posetlab/bitset.hpp"
#include "posetlab/errors.hpp"

namespace posetlab {

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

// Finite poset with dense element ids 0..n-1 assigned in input order.
// The order matrix is the reflexive transitive closure of the input edges;
// covers are its transitive reduction. Immutable after construction.
class Poset {
public:
  static Poset from_covers(const std::string& name, const std::vector<std::string>& labels,
                           const std::vector<std::pair<std::string, std::string>>& edges);
  static Poset from_cover_ids(const std::string& name, const std::vector<std::string>& labels,
                              const std::vector<std::pair<int, int>>& edges);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_[a]; }
  int index_of(const std::string& label) const;  // throws UnknownLabel

  bool leq(int a, int b) const { return up_[a].test(b); }
  bool lt(int a, int b) const { return a != b && leq(a, b); }

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& up_covers(int a) const { return up_covers_[a]; }
  const std::vector<int>& down_covers(int a) const { return down_covers_[a]; }
  int cover_index(int a, int b) const;  // -1 when a -< b is not a cover

  // Structural equality (labels and order); the name is ignored.
  bool same_structure(const Poset& o) const { return labels_ == o.labels_ && covers_ == o.covers_; }

  Bitset empty_set() const { return Bitset(n_); }
  Bitset full_set() const;
  Bitset singleton(int a) const;
  Bitset make_set(const std::vector<int>& ids) const;
  Bitset make_set_by_labels(const std::vector<std::string>& ls) const;

  const Bitset& upset_of(int a) const { return up_[a]; }
  const Bitset& downset_of(int a) const { return down_[a]; }
  Bitset upset(const Bitset& s) const;
  Bitset downset(const Bitset& s) const;

  bool is_convex(const Bitset& s) const;
  bool is_connected(const Bitset& s) const;  // via chains of comparable pairs
  bool is_interval(const Bitset& s) const { return is_convex(s) && is_connected(s); }
  std::vector<Bitset> components(const Bitset& s) const;

  Bitset min_set(const Bitset& s) const;
  Bitset max_set(const Bitset& s) const;

  // Generalized cover relation between a subset and single elements.
  Bitset covers_above(const Bitset& s) const;
  Bitset covers_below(const Bitset& s) const;

  enum class BracketKind { Closed, LeftOpen, RightOpen };
  Bitset bracket(const Bitset& a, const Bitset& b, BracketKind kind) const;

  Poset opposite() const;
  Poset full_subposet(const Bitset& keep, const std::string& name) const;

  int indeg(int a) const { return int(down_covers_[a].size()); }
  int outdeg(int a) const { return int(up_covers_[a].size()); }
  int deg(int a) const { return indeg(a) + outdeg(a); }
  Bitset sources() const;
  Bitset sinks() const;
  Bitset leaves() const;

  bool connected() const { return is_connected(full_set()); }

private:
  Poset() = default;

  std::string name_;
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Bitset> up_;    // up_[a] = { b : a <= b }
  std::vector<Bitset> down_;  // down_[a] = { b : b <= a }
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_covers_, down_covers_;
};

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

// Interval with its cached extremal antichains.
struct Interval {
  Bitset members;
  Bitset mins, maxs;
};
Interval make_interval(const Poset& p, const Bitset& members);  // throws NotInterval

// All non-empty intervals in canonical order: ascending cardinality, then
// lexicographic on sorted ids. Grown from singletons by cover-adjacent
// extension; agrees with the brute-force filter over all subsets.
std::vector<Bitset> enumerate_intervals(const Poset& p);

struct DegreeStats {
  std::vector<int> indeg, outdeg;
  Bitset sources, sinks, leaves;
};
DegreeStats degree_stats(const Poset& p);

// Path in the Hasse diagram whose interior vertices have total degree 2;
// end vertices have segment-side degree 1 (outdeg 1 when the segment leaves
// upward, indeg 1 when downward). Equioriented segments are stored ascending.
struct AnSegment {
  std::vector<int> elements;
  bool equioriented = false;
  int size() const { return int(elements.size()); }
};

std::vector<AnSegment> find_an_segments(const Poset& p, int min_len);

// Segments eligible for contraction: length >= 4 and either equioriented or
// with a leaf stored last. Not restricted to maximal segments (a qualifying
// equioriented run may sit inside a longer winding one); ordered by
// descending size, then by elements.
std::vector<AnSegment> find_contractible_segments(const Poset& p);

// Removes elements 4..n of the segment, keeping the induced order. Requires
// n >= 4 and either an equioriented segment or a leaf at the final position.
Poset contract_segment(const Poset& p, const AnSegment& seg);

// Reverses all Hasse arrows at a sink or source.
Poset reflect(const Poset& p, int a);

// Full subposet whose inclusion has a right adjoint (the floor map).
struct InteriorSystem {
  PosetPtr ambient;
  Bitset sub;                    // Q as an ambient subset
  std::vector<int> floor;        // ambient id -> ambient id of floor
  std::vector<Bitset> fiber_of;  // indexed by ambient id, nonempty only on Q
  bool aligned = false;
  std::vector<int> nu;           // ambient id of max of each fiber (aligned only), indexed by ambient id
  PosetPtr subposet;             // induced poset on Q
  std::vector<int> to_sub;       // ambient id -> Q id (-1 off Q)
  std::vector<int> to_ambient;   // Q id -> ambient id

  Bitset sub_to_ambient_set(const Bitset& s_in_q) const;
  Bitset ambient_to_sub_set(const Bitset& s_in_p) const;
};

InteriorSystem interior_system(PosetPtr p, const Bitset& q);

// Union of the fibers over a subset S of Q (ambient coordinates).
Bitset ceil_preimage(const InteriorSystem& is, const Bitset& s);

// { x in Q : T cap fiber(x) is non-empty and an upset of fiber(x) }, an
// ambient subset of Q. Convex in Q; asserted. Requires an aligned system.
Bitset tbar(const InteriorSystem& is, const Bitset& t);

// Diagram notation: a graph whose edges are single arrows, orientable single
// lines, equioriented chains of chosen length, and orientable chains.
struct Diagram {
  std::string name;
  std::vector<std::string> vertices;
  struct Edge {
    enum Kind { Arrow, Line, DoubleArrow, DoubleLine } kind;
    int u = 0, v = 0;
    int m = 2;           // chain vertex count for DoubleArrow
    std::string orient;  // Line: "f"|"b"; DoubleLine: one f/b per internal edge
  };
  std::vector<Edge> edges;
};

Poset expand_diagram(const Diagram& d);

}  // namespace posetlab
