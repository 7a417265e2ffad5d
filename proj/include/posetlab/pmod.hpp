#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "posetlab/matrix.hpp"
#include "posetlab/poset.hpp"

namespace posetlab {

class PersistenceModule;
using PmodPtr = std::shared_ptr<const PersistenceModule>;

// Functor from a finite poset to finite dimensional GF(p)-vector spaces: one
// dimension per element, one matrix per Hasse cover edge a -< b of shape
// dims(b) x dims(a), acting on column vectors. Immutable after construction.
class PersistenceModule {
public:
  PersistenceModule(PosetPtr poset, Field field, std::vector<int> dims, std::vector<Matrix> cover_maps);

  const PosetPtr& poset() const { return poset_; }
  const Field& field() const { return field_; }
  int dim(int a) const { return dims_[a]; }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& cover_map(int cover_index) const { return maps_[cover_index]; }
  const Matrix& cover_map(int a, int b) const;

  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  bool operator==(const PersistenceModule& o) const;

private:
  PosetPtr poset_;
  Field field_;
  std::vector<int> dims_;
  std::vector<Matrix> maps_;  // parallel to poset_->covers()
};

PmodPtr share(PersistenceModule m);

// Natural transformation between modules over the same poset and field.
struct Morphism {
  PmodPtr source, target;
  std::vector<Matrix> comps;  // per element, dims_target(a) x dims_source(a)

  const Matrix& at(int a) const { return comps[a]; }
};

Morphism identity_morphism(PmodPtr m);
Morphism zero_morphism(PmodPtr source, PmodPtr target);
Morphism compose(const Morphism& second, const Morphism& first);  // second o first
Morphism add(const Morphism& a, const Morphism& b);
Morphism scale(const Morphism& a, uint8_t c);
bool is_natural(const Morphism& phi);

// --- constructors ---------------------------------------------------------

PmodPtr zero_module(PosetPtr p, Field f);

// Indicator module of a convex subset; a direct sum of interval modules, one
// per connected component. Throws NotInterval when s is not convex.
PmodPtr interval_module(PosetPtr p, const Bitset& s, Field f);

PmodPtr simple_module(PosetPtr p, int a, Field f);      // indicator of {a}
PmodPtr projective_module(PosetPtr p, int a, Field f);  // indicator of the upset of a
PmodPtr injective_module(PosetPtr p, int a, Field f);   // indicator of the downset of a

struct DirectSum {
  PmodPtr module;
  std::vector<Morphism> injections;
  std::vector<Morphism> projections;
};
DirectSum direct_sum(const std::vector<PmodPtr>& parts);
// Variant with explicit context; an empty list yields the zero module.
DirectSum direct_sum(PosetPtr p, Field f, const std::vector<PmodPtr>& parts);

// --- structure checks -----------------------------------------------------

struct CommutativityReport {
  bool ok = true;
  int a = -1, b = -1;  // first failing comparable pair
};

// Path independence of composites. The canonical path from a to b steps to
// the smallest-id cover successor below b; every alternative first step is
// validated against it, which covers all paths by first-step exchanges.
CommutativityReport check_commutativity(const PersistenceModule& m);

// Exhaustive variant comparing every directed Hasse path (small posets only).
CommutativityReport check_commutativity_all_paths(const PersistenceModule& m);

// Composite along the canonical path; identity when a == b.
Matrix path_map(const PersistenceModule& m, int a, int b);

// --- hom spaces, kernels, sums --------------------------------------------

// Deterministic basis of the space of natural transformations M -> N.
std::vector<Morphism> hom_basis(PmodPtr m, PmodPtr n);
int hom_dim(const PersistenceModule& m, const PersistenceModule& n);

struct SubquotientPart {
  PmodPtr module;
  Morphism map;  // inclusion (kernel, image) or projection (cokernel)
};
SubquotientPart kernel(const Morphism& phi);
SubquotientPart cokernel(const Morphism& phi);
SubquotientPart image(const Morphism& phi);

// --- colimits and limits ---------------------------------------------------

struct ColimitData {
  int dim = 0;
  std::vector<Matrix> cocone;         // per element of the subset, dim x dims(a); empty off the subset
  std::vector<Matrix> section_parts;  // per element, dims(a) x dim; sum of cocone[a]*section_parts[a] = id
};
struct LimitData {
  int dim = 0;
  std::vector<Matrix> cone;  // per element, dims(a) x dim
};

// Colimit of the restriction of m to a convex subset (presented by cover
// relations inside the subset). Pass the full set for the plain colimit.
ColimitData colimit_over(const PersistenceModule& m, const Bitset& subset);
LimitData limit_over(const PersistenceModule& m, const Bitset& subset);

ColimitData colimit(const PersistenceModule& m);
LimitData limit(const PersistenceModule& m);

// --- the four functors for a full subposet / interior system ---------------

// Restriction to the induced subposet of an interior system's Q.
PmodPtr restrict_module(const InteriorSystem& is, const PersistenceModule& m);
// Restriction to an arbitrary non-empty subset; builds the induced subposet
// (maps are path composites in the ambient poset).
PmodPtr restrict_module(PmodPtr ambient_module, const Bitset& q);
// Variant reusing an already-built subposet with its id mapping.
PmodPtr restrict_module(PmodPtr ambient_module, PosetPtr subposet, const std::vector<int>& to_ambient);

// Pullback along the floor map: (Ind m)(a) = m(floor(a)).
PmodPtr induct(const InteriorSystem& is, const PersistenceModule& m_over_q);
Morphism induct(const InteriorSystem& is, const Morphism& phi_over_q);

enum class ContractRoute { Auto, Nu, Colimit };

// Left adjoint of induction. Over an aligned system it is the pullback along
// nu (the fiber maxima); in general each value is the colimit over the down
// set of fibers. With Auto the nu route is taken when aligned. Requesting Nu
// on a non-aligned system throws NotAligned.
PmodPtr contract(const InteriorSystem& is, const PersistenceModule& m_over_p,
                 ContractRoute route = ContractRoute::Auto);

// Right adjoint of restriction: pointwise limit over Q cap a^up.
PmodPtr coinduct(const InteriorSystem& is, const PersistenceModule& m_over_q);

// True iff m(floor(a) <= a) is invertible for every a; cross-checked against
// the unit m -> Ind(Cont m) being an isomorphism.
bool in_essential_image(const InteriorSystem& is, const PersistenceModule& m_over_p);

// --- interval summands ------------------------------------------------------

struct SummandList {
  std::vector<std::pair<Bitset, int>> multiplicities;  // canonical interval order
  PmodPtr residual;
};

// Greedy splitting: walk intervals in canonical order; whenever the pairing
// Hom(I_S, M) x Hom(M, I_S) -> End(I_S) = k is nonzero, split off one copy of
// I_S through the resulting idempotent and continue on the complement.
SummandList split_interval_summands(PmodPtr m, const std::vector<Bitset>& intervals);
SummandList split_interval_summands(PmodPtr m);

bool is_interval_decomposable(PmodPtr m);

// Multiplicity of I_S as a direct summand, read off as the rank of the
// composition pairing; an independent cross-check for the splitter.
int summand_multiplicity(const PersistenceModule& m, const Bitset& s);

// Dimension filter plus search for a pointwise invertible natural map. The
// search enumerates the hom space over small fields; instances beyond the
// enumeration cap fall back to randomized probing.
bool modules_isomorphic(PmodPtr m, PmodPtr n, uint64_t search_cap = 1u << 16);

}  // namespace posetlab
