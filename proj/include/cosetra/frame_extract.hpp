#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "cosetra/measurability.hpp"

namespace cosetra {

// A choice of one atom a_xy below each rectangle x;1;y with a_xx = x and
// a_yx = a_xy^. A scaffold additionally has a_xz <= a_xy;a_yz throughout.
// Entries are algebra atom indices, addressed by positions into E.atoms.
struct SemiScaffold {
  std::vector<int> order;               // I-positions, the chosen linear order
  std::vector<std::vector<int>> entry;  // [x][y], -1 off E
  bool is_scaffold = false;

  int at(int x, int y) const { return entry[x][y]; }
};

// The default order is ascending atom index; pass a permutation of the
// positions to override. Entry for x<y (in the order) is the least-index
// atom below the rectangle.
SemiScaffold build_semi_scaffold(const AtomStructure& a,
                                 const std::vector<MeasurableAtomRecord>& records,
                                 const EquivalenceE& e,
                                 const std::vector<int>& order = {});

struct ScaffoldSearchStats {
  std::uint64_t nodes = 0;        // partial assignments visited
  std::uint64_t leaves = 0;       // complete semi-scaffolds reached
  std::uint64_t space = 1;        // product of the per-pair choice counts
  bool exhausted = false;         // search ran to completion without success
};

// Exhaustive backtracking over the atom choices per pair, pruning with the
// scaffold condition on ordered triples as soon as a triple is complete.
// Returns the first scaffold in lexicographic choice order, or nullopt after
// exhausting the space.
std::optional<SemiScaffold> find_scaffold(
    const AtomStructure& a, const std::vector<MeasurableAtomRecord>& records,
    const EquivalenceE& e, const std::vector<int>& order = {},
    ScaffoldSearchStats* stats = nullptr);

// Data of one related pair (x,y): the stabilizers of a_xy and the aligned
// coset systems carrying the quotient isomorphism (coset xi of H maps to
// coset xi of K).
struct TriplePairData {
  Subgroup h;  // in groups[x]
  Subgroup k;  // in groups[y]
  std::vector<Mask> h_cosets;
  std::vector<Mask> k_cosets;

  int kappa() const { return static_cast<int>(h_cosets.size()); }
  int h_index_of(Mask coset) const;
};

// A group triple (G, phi, C): disjoint groups indexed by I, quotient
// isomorphisms per E-pair, and a shifting coset per E_3 triple. This is the
// synthesis-side counterpart of a measurable algebra.
struct GroupTriple {
  std::vector<GroupPtr> groups;
  std::vector<std::vector<bool>> related;           // E over positions
  std::vector<std::vector<TriplePairData>> pairs;   // [x][y]; valid iff related
  std::map<std::tuple<int, int, int>, Mask> shifting;  // C_xyz in groups[x]

  int count() const { return static_cast<int>(groups.size()); }
  bool in_e(int x, int y) const { return related[x][y]; }
  bool in_e3(int x, int y, int z) const { return related[x][y] && related[y][z]; }
  const TriplePairData& pair(int x, int y) const { return pairs[x][y]; }
  Mask product_subgroup_mask(int x, int y, int z) const;  // H_xy;H_xz
  Mask shifting_coset(int x, int y, int z) const;  // defaults to the identity coset
  QuotientIso phi(int x, int y) const;
  std::vector<std::tuple<int, int, int>> e3_triples() const;
};

struct SemiFrameReport {
  struct Condition {
    std::string name;
    bool pass = true;
    std::string witness;
  };
  std::vector<Condition> conditions;
  bool all_pass() const;
  std::string render() const;
};

// Checks the semi-frame conditions: (i) diagonal isomorphisms are identity
// automorphisms of G_x/{e}; (ii) phi_yx is the inverse of phi_xy with the
// swapped subgroups and aligned systems; (iii) phi_xy[H_xy;H_xz] =
// K_xy;H_yz; (iv) induced isomorphisms compose up to the inner automorphism
// of the shifting coset. Structural defects are reported, not thrown.
SemiFrameReport verify_semi_frame(const GroupTriple& f);

// Builds the group triple of a measurable algebra along a semi-scaffold:
// stabilizers and canonical quotient isomorphisms of the scaffold atoms,
// converse-convention systems for the mirrored pairs, and the least
// qualifying shifting coset per triple. The result is validated with
// verify_semi_frame before being returned.
GroupTriple extract_semi_frame(const AtomStructure& a,
                               const std::vector<MeasurableAtomRecord>& records,
                               const EquivalenceE& e, const SemiScaffold& s);

// Enumerates every index zeta with H_{xz,zeta};a_xz <= a_xy;a_yz and checks
// that all of them determine the same shifting coset.
bool shifting_coset_well_defined(const AtomStructure& a,
                                 const std::vector<MeasurableAtomRecord>& records,
                                 const EquivalenceE& e, const SemiScaffold& s,
                                 int x, int y, int z);

struct FrameRecord {
  GroupTriple triple;
  bool frame = false;
};

// frame = every shifting coset is the identity coset and the induced
// isomorphisms compose on the nose.
FrameRecord frame_record(const GroupTriple& f);

}  // namespace cosetra
