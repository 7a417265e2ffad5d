#pragma once

#include <string>
#include <vector>

#include "posetlab/pmod.hpp"

namespace posetlab {

// Irreducible morphism between interval modules ending at I_S, given by the
// indicator map of the intersection. Surjective arrows enlarge S by the part
// below a cover of S; injective arrows cut S down to a component under a
// minimal element.
struct IrreducibleArrow {
  Bitset source;  // S_alpha
  Bitset target;  // S
  bool surjective = false;
  Morphism mor;
};

// All irreducible arrows into I_S, surjective ones first, then canonical
// interval order on the source.
std::vector<IrreducibleArrow> irreducible_arrows(PosetPtr p, const Bitset& s, Field f);

// Basis of Hom(I_S, I_T) described combinatorially: one indicator morphism
// per connected component of S cap T with no cover leaving it upward into
// T minus S and none entering it from S minus T below.
std::vector<Bitset> interval_hom_components(const Poset& p, const Bitset& s, const Bitset& t);

// Kernel of the combined map  (+)_alpha I_{S_alpha} -> I_S; zero module when
// there are no arrows.
PmodPtr gamma_module(PosetPtr p, const Bitset& s, Field f);

struct IntervalCover {
  std::vector<std::pair<Bitset, int>> multiplicities;  // canonical interval order
  Morphism cover_map;                                  // sum of interval modules onto the module
  PmodPtr kernel_module;
  Morphism kernel_inclusion;
};

// Minimal right approximation by interval modules. The multiplicity of I_S is
// dim Hom(I_S, M) minus the dimension of the subspace of maps factoring
// through a different interval module; coset representatives assemble the
// cover, which is checked surjective.
IntervalCover interval_cover(PmodPtr m, const std::vector<Bitset>& intervals);

struct IntervalResolution {
  std::vector<IntervalCover> covers;  // covers of M, ker, ker of that, ...
  int dim = 0;                        // index of the last nonzero term; 0 for the zero module
};

IntervalResolution interval_resolution(PmodPtr m, const std::vector<Bitset>& intervals, int max_len = 0);
int intresdim(PmodPtr m, const std::vector<Bitset>& intervals, int max_len = 0);

struct GldimResult {
  int gldim = 0;
  Bitset witness;                                      // first interval attaining the sup
  std::vector<std::pair<Bitset, int>> per_interval;    // (S, intresdim Gamma_S)
};

// Interval resolution global dimension: the sup over intervals S of the
// interval resolution dimension of Gamma_S. Per-interval jobs may run on a
// worker pool; results are merged in canonical order.
GldimResult intresgldim(PosetPtr p, Field f = Field(), int threads = 1);

// Closed-form value for tree-type posets: number of Hasse leaves minus 2.
int tree_gldim(const Poset& p);

// Closed forms where one exists (trees by leaf count, Hasse cycles by sink
// count); throws NoClosedForm otherwise.
int gldim_closed_form(const Poset& p);

// Boolean-lattice resolution of Gamma_S over a tree-type poset, built from
// the minimal leaves of S and the covers above S. Independent of the cover
// engine. The construction only enumerates arrows removable one generator at
// a time; `valid` records whether that enumeration reproduced the true arrow
// set and the complex was exact.
struct KoszulResolution {
  bool valid = false;
  std::string note;
  std::vector<int> gamma_dims;                              // pointwise dims of ker of the first map
  std::vector<std::vector<std::pair<Bitset, int>>> terms;   // summand multisets of the resolution terms
  int dim = 0;
};
KoszulResolution tree_koszul_resolution(PosetPtr p, const Bitset& s, Field f);

struct ContractionStep {
  std::vector<std::string> segment;  // labels, contraction removed all but the first three
  int remaining = 0;
};
struct ContractionResult {
  GldimResult result;
  std::vector<ContractionStep> steps;
  PosetPtr reduced;
};

// Repeatedly contracts qualifying segments (length >= 4, equioriented or
// leaf-ended), then evaluates the global dimension on the reduced poset.
ContractionResult gldim_via_contraction(PosetPtr p, Field f = Field(), int threads = 1);

struct IndResolutionReport {
  bool ok = false;
  int dim_before = 0, dim_after = 0;
  std::string detail;
};

// Resolves M over Q, transports every term along induction, and checks the
// independently computed resolution of Ind M agrees termwise.
IndResolutionReport verify_ind_preserves_resolution(const InteriorSystem& is, PmodPtr m_over_q);

// Minimality of the global dimension: deleting any single element (split
// into components when the deletion disconnects) strictly lowers it.
bool is_minimal_gldim(const Poset& p, int d, Field f = Field());

}  // namespace posetlab
