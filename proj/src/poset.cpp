#include "posetlab/poset.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace posetlab {

Poset Poset::from_covers(const std::string& name, const std::vector<std::string>& labels,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, int> idx;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw DuplicateLabel("empty label");
    if (!idx.emplace(labels[i], int(i)).second) throw DuplicateLabel(labels[i]);
  }
  std::vector<std::pair<int, int>> e;
  e.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw UnknownLabel(a);
    if (ib == idx.end()) throw UnknownLabel(b);
    e.emplace_back(ia->second, ib->second);
  }
  return from_cover_ids(name, labels, e);
}

Poset Poset::from_cover_ids(const std::string& name, const std::vector<std::string>& labels,
                            const std::vector<std::pair<int, int>>& edges) {
  Poset p;
  p.name_ = name;
  p.n_ = int(labels.size());
  p.labels_ = labels;
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty()) throw DuplicateLabel("empty label");
      if (!seen.insert(l).second) throw DuplicateLabel(l);
    }
  }

  const int n = p.n_;
  p.up_.assign(n, Bitset(n));
  for (int a = 0; a < n; ++a) p.up_[a].set(a);
  for (auto [a, b] : edges) {
    if (a == b) throw CycleDetected(labels[a]);
    p.up_[a].set(b);
  }
  // Reflexive transitive closure, then antisymmetry check.
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (p.up_[a].test(k)) p.up_[a] = p.up_[a] | p.up_[k];
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (p.up_[a].test(b) && p.up_[b].test(a))
        throw CycleDetected(labels[a] + " <-> " + labels[b]);

  p.down_.assign(n, Bitset(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.up_[a].test(b)) p.down_[b].set(a);

  // Transitive reduction: a -< b iff a < b with nothing strictly between.
  p.up_covers_.assign(n, {});
  p.down_covers_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !p.up_[a].test(b)) continue;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z)
        if (z != a && z != b && p.up_[a].test(z) && p.up_[z].test(b)) cover = false;
      if (cover) {
        p.covers_.emplace_back(a, b);
        p.up_covers_[a].push_back(b);
        p.down_covers_[b].push_back(a);
      }
    }
  std::sort(p.covers_.begin(), p.covers_.end());
  for (auto& v : p.up_covers_) std::sort(v.begin(), v.end());
  for (auto& v : p.down_covers_) std::sort(v.begin(), v.end());
  return p;
}

int Poset::index_of(const std::string& label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  throw UnknownLabel(label);
}

int Poset::cover_index(int a, int b) const {
  auto it = std::lower_bound(covers_.begin(), covers_.end(), std::make_pair(a, b));
  if (it != covers_.end() && *it == std::make_pair(a, b)) return int(it - covers_.begin());
  return -1;
}

Bitset Poset::full_set() const {
  Bitset s(n_);
  for (int i = 0; i < n_; ++i) s.set(i);
  return s;
}

Bitset Poset::singleton(int a) const {
  Bitset s(n_);
  s.set(a);
  return s;
}

Bitset Poset::make_set(const std::vector<int>& ids) const {
  Bitset s(n_);
  for (int a : ids) s.set(a);
  return s;
}

Bitset Poset::make_set_by_labels(const std::vector<std::string>& ls) const {
  Bitset s(n_);
  for (const auto& l : ls) s.set(index_of(l));
  return s;
}

Bitset Poset::upset(const Bitset& s) const {
  Bitset r(n_);
  for (int a = 0; a < n_; ++a)
    if (s.test(a)) r = r | up_[a];
  return r;
}

Bitset Poset::downset(const Bitset& s) const {
  Bitset r(n_);
  for (int a = 0; a < n_; ++a)
    if (s.test(a)) r = r | down_[a];
  return r;
}

bool Poset::is_convex(const Bitset& s) const {
  // Not convex iff some z outside s sits strictly between two members.
  for (int z = 0; z < n_; ++z) {
    if (s.test(z)) continue;
    Bitset below = down_[z] & s;
    below.reset(z);
    if (below.none()) continue;
    Bitset above = up_[z] & s;
    above.reset(z);
    if (above.any()) return false;
  }
  return true;
}

bool Poset::is_connected(const Bitset& s) const {
  // The empty set is connected by convention.
  auto elems = s.elements();
  if (elems.size() <= 1) return true;
  std::vector<int> stack = {elems[0]};
  Bitset seen(n_);
  seen.set(elems[0]);
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b : elems)
      if (!seen.test(b) && (leq(a, b) || leq(b, a))) {
        seen.set(b);
        stack.push_back(b);
      }
  }
  return seen.count() == int(elems.size());
}

std::vector<Bitset> Poset::components(const Bitset& s) const {
  std::vector<Bitset> out;
  Bitset left = s;
  while (left.any()) {
    int start = left.elements().front();
    Bitset comp(n_);
    comp.set(start);
    std::vector<int> stack = {start};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : left.elements())
        if (!comp.test(b) && (leq(a, b) || leq(b, a))) {
          comp.set(b);
          stack.push_back(b);
        }
    }
    out.push_back(comp);
    left = left.minus(comp);
  }
  return out;
}

Bitset Poset::min_set(const Bitset& s) const {
  Bitset r(n_);
  for (int a : s.elements()) {
    Bitset below = down_[a] & s;
    below.reset(a);
    if (below.none()) r.set(a);
  }
  return r;
}

Bitset Poset::max_set(const Bitset& s) const {
  Bitset r(n_);
  for (int a : s.elements()) {
    Bitset above = up_[a] & s;
    above.reset(a);
    if (above.none()) r.set(a);
  }
  return r;
}

Bitset Poset::covers_above(const Bitset& s) const {
  Bitset u = upset(s);
  Bitset r(n_);
  for (int y : u.minus(s).elements()) {
    bool ok = true;
    for (int z : u.elements())
      if (lt(z, y) && !s.test(z)) { ok = false; break; }
    if (ok) r.set(y);
  }
  return r;
}

Bitset Poset::covers_below(const Bitset& s) const {
  Bitset d = downset(s);
  Bitset r(n_);
  for (int y : d.minus(s).elements()) {
    bool ok = true;
    for (int z : d.elements())
      if (lt(y, z) && !s.test(z)) { ok = false; break; }
    if (ok) r.set(y);
  }
  return r;
}

Bitset Poset::bracket(const Bitset& a, const Bitset& b, BracketKind kind) const {
  switch (kind) {
    case BracketKind::Closed: return upset(a) & downset(b);
    case BracketKind::LeftOpen: return upset(a).minus(upset(b));
    case BracketKind::RightOpen: return downset(b).minus(downset(a));
  }
  return Bitset(n_);
}

Poset Poset::opposite() const {
  std::vector<std::pair<int, int>> rev;
  rev.reserve(covers_.size());
  for (auto [a, b] : covers_) rev.emplace_back(b, a);
  return from_cover_ids(name_ + ".op", labels_, rev);
}

Poset Poset::full_subposet(const Bitset& keep, const std::string& name) const {
  auto ids = keep.elements();
  std::vector<std::string> labels;
  labels.reserve(ids.size());
  for (int a : ids) labels.push_back(labels_[a]);
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = 0; j < ids.size(); ++j)
      if (i != j && leq(ids[i], ids[j])) edges.emplace_back(int(i), int(j));
  return from_cover_ids(name, labels, edges);
}

Bitset Poset::sources() const {
  Bitset r(n_);
  for (int a = 0; a < n_; ++a)
    if (indeg(a) == 0) r.set(a);
  return r;
}

Bitset Poset::sinks() const {
  Bitset r(n_);
  for (int a = 0; a < n_; ++a)
    if (outdeg(a) == 0) r.set(a);
  return r;
}

Bitset Poset::leaves() const {
  Bitset r(n_);
  for (int a = 0; a < n_; ++a)
    if (deg(a) == 1) r.set(a);
  return r;
}

Interval make_interval(const Poset& p, const Bitset& members) {
  if (members.none() || !p.is_interval(members)) throw NotInterval();
  return Interval{members, p.min_set(members), p.max_set(members)};
}

std::vector<Bitset> enumerate_intervals(const Poset& p) {
  const int n = p.n();
  std::vector<Bitset> all;
  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<Bitset> level;
  for (int a = 0; a < n; ++a) {
    Bitset s = p.singleton(a);
    level.push_back(s);
    seen.insert(s);
    all.push_back(s);
  }
  // Every interval of size m+1 is an interval of size m plus one
  // cover-adjacent extremal element, so levelwise growth is exhaustive.
  while (!level.empty()) {
    std::vector<Bitset> next;
    for (const Bitset& s : level) {
      Bitset adj(n);
      for (int a : s.elements()) {
        for (int b : p.up_covers(a)) adj.set(b);
        for (int b : p.down_covers(a)) adj.set(b);
      }
      for (int z : adj.minus(s).elements()) {
        Bitset cand = s;
        cand.set(z);
        if (seen.count(cand)) continue;
        if (!p.is_interval(cand)) continue;
        seen.insert(cand);
        next.push_back(cand);
        all.push_back(cand);
      }
    }
    level = std::move(next);
  }
  std::sort(all.begin(), all.end(), Bitset::canonical_less);
  return all;
}

DegreeStats degree_stats(const Poset& p) {
  DegreeStats d;
  d.indeg.resize(p.n());
  d.outdeg.resize(p.n());
  for (int a = 0; a < p.n(); ++a) {
    d.indeg[a] = p.indeg(a);
    d.outdeg[a] = p.outdeg(a);
  }
  d.sources = p.sources();
  d.sinks = p.sinks();
  d.leaves = p.leaves();
  return d;
}

namespace {

bool hasse_adjacent(const Poset& p, int a, int b) {
  return p.cover_index(a, b) >= 0 || p.cover_index(b, a) >= 0;
}

// End condition at path position (end, inner): the segment-side degree of the
// end vertex must be exactly 1.
bool end_ok(const Poset& p, int end, int inner) {
  if (p.cover_index(end, inner) >= 0) return p.outdeg(end) == 1;
  return p.indeg(end) == 1;
}

bool path_qualifies(const Poset& p, const std::vector<int>& path) {
  const int n = int(path.size());
  for (int i = 1; i + 1 < n; ++i)
    if (p.deg(path[i]) != 2) return false;
  if (!end_ok(p, path.front(), path[1])) return false;
  if (!end_ok(p, path.back(), path[n - 2])) return false;
  Bitset members(p.n());
  for (int a : path) members.set(a);
  return p.is_interval(members);
}

bool path_equioriented_up(const Poset& p, const std::vector<int>& path) {
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (p.cover_index(path[i], path[i + 1]) < 0) return false;
  return true;
}

}  // namespace

namespace {

// All qualifying segments (canonical direction, reversals deduped), longest
// first; not yet filtered for maximality.
std::vector<std::vector<int>> qualifying_paths(const Poset& p, int min_len) {
  std::vector<std::vector<int>> qualifying;
  std::vector<int> path;

  // DFS over simple Hasse paths; a vertex may become interior only if its
  // total degree is 2.
  auto extend = [&](auto&& self) -> void {
    if (int(path.size()) >= min_len && path_qualifies(p, path)) qualifying.push_back(path);
    int last = path.back();
    if (path.size() >= 2 && p.deg(last) != 2) return;  // cannot become interior
    for (int b = 0; b < p.n(); ++b) {
      if (!hasse_adjacent(p, last, b)) continue;
      if (std::find(path.begin(), path.end(), b) != path.end()) continue;
      path.push_back(b);
      self(self);
      path.pop_back();
    }
  };
  for (int a = 0; a < p.n(); ++a) {
    path = {a};
    extend(extend);
  }

  std::vector<std::vector<int>> canon;
  for (auto& q : qualifying) {
    std::vector<int> rev(q.rbegin(), q.rend());
    std::vector<int> chosen;
    if (path_equioriented_up(p, q))
      chosen = q;
    else if (path_equioriented_up(p, rev))
      chosen = rev;
    else
      chosen = q.front() < q.back() ? q : rev;
    canon.push_back(chosen);
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return canon;
}

}  // namespace

std::vector<AnSegment> find_an_segments(const Poset& p, int min_len) {
  if (min_len < 2) throw DomainError("InvalidMinLen", "min_len must be >= 2");
  auto canon = qualifying_paths(p, min_len);

  // Keep only maximal ones (member set not strictly contained in another).
  std::vector<Bitset> sets;
  for (auto& c : canon) {
    Bitset s(p.n());
    for (int a : c) s.set(a);
    sets.push_back(s);
  }
  std::vector<AnSegment> segs;
  for (size_t i = 0; i < canon.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < canon.size() && maximal; ++j)
      if (i != j && sets[i].subset_of(sets[j]) && sets[i] != sets[j]) maximal = false;
    if (maximal) segs.push_back(AnSegment{canon[i], path_equioriented_up(p, canon[i])});
  }
  std::sort(segs.begin(), segs.end(), [](const AnSegment& a, const AnSegment& b) { return a.elements < b.elements; });
  return segs;
}

std::vector<AnSegment> find_contractible_segments(const Poset& p) {
  std::vector<AnSegment> out;
  for (auto& c : qualifying_paths(p, 4)) {
    if (path_equioriented_up(p, c)) {
      out.push_back(AnSegment{c, true});
      continue;
    }
    if (p.deg(c.back()) == 1)
      out.push_back(AnSegment{c, false});
    else if (p.deg(c.front()) == 1) {
      std::vector<int> rev(c.rbegin(), c.rend());
      out.push_back(AnSegment{rev, false});
    }
  }
  std::sort(out.begin(), out.end(), [](const AnSegment& a, const AnSegment& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() > b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

Poset contract_segment(const Poset& p, const AnSegment& seg) {
  const auto& ell = seg.elements;
  if (int(ell.size()) < 4) throw SegmentTooShort("need at least 4 elements");
  for (size_t i = 0; i + 1 < ell.size(); ++i)
    if (!hasse_adjacent(p, ell[i], ell[i + 1])) throw HypothesisUnmet("not a Hasse path");
  bool equi = path_equioriented_up(p, ell);
  bool leaf_end = p.deg(ell.back()) == 1;
  if (!equi && !leaf_end) throw HypothesisUnmet("segment neither equioriented nor leaf-ended");
  Bitset keep = p.full_set();
  for (size_t i = 3; i < ell.size(); ++i) keep.reset(ell[i]);
  return p.full_subposet(keep, p.name());
}

Poset reflect(const Poset& p, int a) {
  bool sink = p.outdeg(a) == 0 && p.indeg(a) > 0;
  bool source = p.indeg(a) == 0 && p.outdeg(a) > 0;
  if (!sink && !source) throw NotExtremal(p.label(a));
  std::vector<std::pair<int, int>> edges;
  for (auto [x, y] : p.covers()) {
    if (x == a || y == a)
      edges.emplace_back(y, x);
    else
      edges.emplace_back(x, y);
  }
  return Poset::from_cover_ids(p.name(), p.labels(), edges);
}

Bitset InteriorSystem::sub_to_ambient_set(const Bitset& s_in_q) const {
  Bitset r(ambient->n());
  for (int i : s_in_q.elements()) r.set(to_ambient[i]);
  return r;
}

Bitset InteriorSystem::ambient_to_sub_set(const Bitset& s_in_p) const {
  Bitset r(subposet->n());
  for (int a : s_in_p.elements()) {
    if (to_sub[a] < 0) throw DomainError("NotInSubposet", ambient->label(a));
    r.set(to_sub[a]);
  }
  return r;
}

namespace {

bool filtered(const Poset& p, const Bitset& s) {
  auto elems = s.elements();
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j) {
      Bitset common = p.upset_of(elems[i]) & p.upset_of(elems[j]) & s;
      if (common.none()) return false;
    }
  return true;
}

}  // namespace

InteriorSystem interior_system(PosetPtr p, const Bitset& q) {
  if (q.none()) throw NotInteriorSystem("empty subposet");
  const int n = p->n();
  InteriorSystem is;
  is.ambient = p;
  is.sub = q;
  is.floor.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    Bitset below = p->downset_of(x) & q;
    if (below.none()) throw NotInteriorSystem(p->label(x) + " has no lower bound in the subposet");
    Bitset maxs = p->max_set(below);
    if (maxs.count() != 1) throw NotInteriorSystem(p->label(x) + " has no greatest lower bound in the subposet");
    is.floor[x] = maxs.elements().front();
  }
  is.fiber_of.assign(n, Bitset(n));
  for (int x = 0; x < n; ++x) is.fiber_of[is.floor[x]].set(x);

  // Alignment by both characterizations; they must agree.
  bool cond_a = true;
  for (int y : q.elements()) {
    Bitset down_fiber(n);  // all x with floor(x) <= y
    for (int x = 0; x < n; ++x)
      if (p->leq(is.floor[x], y)) down_fiber.set(x);
    if (!filtered(*p, down_fiber)) { cond_a = false; break; }
  }
  bool al1 = true, al2 = true;
  for (int y : q.elements()) {
    Bitset down_fiber(n);
    for (int x = 0; x < n; ++x)
      if (p->leq(is.floor[x], y)) down_fiber.set(x);
    if (!(down_fiber == p->downset(is.fiber_of[y]))) al1 = false;
    if (!filtered(*p, is.fiber_of[y])) al2 = false;
  }
  if (cond_a != (al1 && al2))
    throw InternalCheckFailed("alignment characterizations disagree");
  is.aligned = cond_a;

  if (is.aligned) {
    is.nu.assign(n, -1);
    for (int y : q.elements()) {
      Bitset m = p->max_set(is.fiber_of[y]);
      if (m.count() != 1) throw InternalCheckFailed("aligned fiber without maximum");
      is.nu[y] = m.elements().front();
    }
  }

  is.subposet = share(p->full_subposet(q, p->name() + ".sub"));
  is.to_sub.assign(n, -1);
  auto ids = q.elements();
  is.to_ambient.resize(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) {
    is.to_sub[ids[i]] = int(i);
    is.to_ambient[i] = ids[i];
  }
  return is;
}

Bitset ceil_preimage(const InteriorSystem& is, const Bitset& s) {
  Bitset r(is.ambient->n());
  for (int x = 0; x < is.ambient->n(); ++x)
    if (s.test(is.floor[x])) r.set(x);
  return r;
}

Bitset tbar(const InteriorSystem& is, const Bitset& t) {
  if (!is.aligned) throw NotAligned();
  const Poset& p = *is.ambient;
  if (t.none() || !p.is_interval(t)) throw NotInterval();
  Bitset r(p.n());
  for (int y : is.sub.elements()) {
    Bitset tf = t & is.fiber_of[y];
    if (tf.none()) continue;
    bool upset_in_fiber = true;
    for (int a : tf.elements())
      for (int b : is.fiber_of[y].elements())
        if (p.leq(a, b) && !tf.test(b)) { upset_in_fiber = false; break; }
    if (upset_in_fiber) r.set(y);
  }
  if (!is.subposet->is_convex(is.ambient_to_sub_set(r)))
    throw InternalCheckFailed("tbar not convex in the subposet");
  return r;
}

Poset expand_diagram(const Diagram& d) {
  std::vector<std::string> labels = d.vertices;
  std::unordered_set<std::string> used(labels.begin(), labels.end());
  std::vector<std::pair<std::string, std::string>> edges;

  auto fresh = [&](const std::string& base) {
    std::string l = base;
    while (used.count(l)) l += "_";
    used.insert(l);
    labels.push_back(l);
    return l;
  };

  for (const auto& e : d.edges) {
    const std::string& u = d.vertices.at(e.u);
    const std::string& v = d.vertices.at(e.v);
    switch (e.kind) {
      case Diagram::Edge::Arrow:
        edges.emplace_back(u, v);
        break;
      case Diagram::Edge::Line:
        if (e.orient == "f")
          edges.emplace_back(u, v);
        else if (e.orient == "b")
          edges.emplace_back(v, u);
        else
          throw UnorientedLine(u + " - " + v);
        break;
      case Diagram::Edge::DoubleArrow: {
        if (e.m < 2) throw InvalidLength(u + " => " + v);
        std::string prev = u;
        for (int k = 1; k <= e.m - 2; ++k) {
          std::string mid = fresh(u + "_" + v + "_" + std::to_string(k));
          edges.emplace_back(prev, mid);
          prev = mid;
        }
        edges.emplace_back(prev, v);
        break;
      }
      case Diagram::Edge::DoubleLine: {
        const int m = int(e.orient.size()) + 1;
        if (e.orient.empty()) throw UnorientedLine(u + " -- " + v);
        if (m < 2) throw InvalidLength(u + " -- " + v);
        for (char c : e.orient)
          if (c != 'f' && c != 'b') throw UnorientedLine(u + " -- " + v + ": bad pattern");
        std::string prev = u;
        for (int k = 1; k <= m - 1; ++k) {
          std::string next = (k == m - 1) ? v : fresh(u + "_" + v + "_" + std::to_string(k));
          if (e.orient[size_t(k - 1)] == 'f')
            edges.emplace_back(prev, next);
          else
            edges.emplace_back(next, prev);
          prev = next;
        }
        break;
      }
    }
  }
  return Poset::from_covers(d.name, labels, edges);
}

}  // namespace posetlab
