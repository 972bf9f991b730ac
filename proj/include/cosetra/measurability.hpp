#pragma once

#include "cosetra/group_core.hpp"
#include "cosetra/ra_kernel.hpp"

namespace cosetra {

// A measurable subidentity atom x together with its group of permutations:
// the atoms below the square x;1;x, multiplied by relative product. Group
// element 0 is x itself; the rest follow in ascending atom-index order.
struct MeasurableAtomRecord {
  int atom = -1;           // algebra atom index of x
  Element square;          // x;1;x
  GroupPtr group;          // the permutation group on x
  std::vector<int> atom_of_element;  // group element index -> algebra atom
  int measure = 0;         // |group|

  int element_of_atom(int algebra_atom) const;
  // Element of the algebra spanned by a set of group elements.
  Element element_of_mask(const AtomStructure& a, Mask group_elements) const;
  Mask mask_of_element(const AtomStructure& a, const Element& e) const;
};

// Atoms f with f^;f below the identity.
Mask functional_atoms(const AtomStructure& a);

// One record per measurable subidentity atom: x is measurable exactly when
// every atom below its square is functional. Throws
// InternalConsistencyError if the functional atoms below a square fail to
// multiply as a group (the input is then not a relation algebra).
std::vector<MeasurableAtomRecord> measurable_atoms(const AtomStructure& a);

// True when the measurable atoms sum to the identity element.
bool is_measurable_algebra(const AtomStructure& a);

// The equivalence relation E on the measurable atoms: x E y iff the
// rectangle x;1;y is nonzero. Validated reflexive/symmetric/transitive.
struct EquivalenceE {
  std::vector<int> atoms;                 // I: algebra atom index per position
  std::vector<std::vector<bool>> related; // positions x,y
  std::vector<std::vector<int>> classes;  // positions, each sorted

  int count() const { return static_cast<int>(atoms.size()); }
  bool pair(int x, int y) const { return related[x][y]; }
  int position_of_atom(int algebra_atom) const;
};

EquivalenceE equivalence_E(const AtomStructure& a,
                           const std::vector<MeasurableAtomRecord>& records);

// Stabilizers and regularity data of 0 < a <= x;1;y.
struct StabilizerData {
  Element a;
  int x = -1, y = -1;            // algebra atom indices of the sides
  Subgroup left_stabilizer;      // L_a in G_x
  Subgroup right_stabilizer;     // R_a in G_y
  Mask left_atoms = 0;           // X_a: group elements of G_x below a;a^
  Mask right_atoms = 0;          // Y_a: group elements of G_y below a^;a
  bool left_regular = false;     // X_a == L_a
  bool right_regular = false;    // Y_a == R_a

  bool regular() const { return left_regular && right_regular; }
};

StabilizerData stabilizer_data(const AtomStructure& a,
                               const MeasurableAtomRecord& gx,
                               const MeasurableAtomRecord& gy,
                               const Element& e);

// f;a for f a group element of G_x (Side::Left) or a;g for g in G_y
// (Side::Right).
Element translate(const AtomStructure& a, const MeasurableAtomRecord& rec,
                  const Element& e, int group_element, Side side);
// The common translation by a full stabilizer coset; errors if the mask is
// not a coset of the corresponding stabilizer.
Element translate_coset(const AtomStructure& a, const MeasurableAtomRecord& rec,
                        const Element& e, Mask coset, Side side);

// The canonical quotient isomorphism G_x/L_a -> G_y/R_a of a regular element
// with normal stabilizers, with the target coset system reindexed so that
// coset xi of L_a and coset xi of R_a satisfy L_xi;a = a;R_xi (and coset 0 is
// the stabilizer on both sides).
QuotientIso quotient_iso_of_regular(const AtomStructure& a,
                                    const MeasurableAtomRecord& gx,
                                    const MeasurableAtomRecord& gy,
                                    const Element& e);

// A left-regular element below a nonzero a <= x;1;y: the product of the
// translations f;a over a maximal union Z of L_a-cosets inside X_a that
// contains the identity and keeps the product nonzero.
Element find_left_regular_below(const AtomStructure& a,
                                const MeasurableAtomRecord& gx,
                                const MeasurableAtomRecord& gy,
                                const Element& e);

struct RegularDecomposition {
  bool regular = false;
  Element atom;        // an atom a below b
  Subgroup stabilizer; // M = L_b (not necessarily normal)
  int coset_index = -1;  // gamma with b = sum of M_gamma;a
};

// Writes a regular b <= x;1;y as the sum of one stabilizer-coset orbit of an
// atom below it; returns regular = false if b is not regular.
RegularDecomposition regular_decomposition(const AtomStructure& a,
                                           const MeasurableAtomRecord& gx,
                                           const MeasurableAtomRecord& gy,
                                           const Element& b);

// Line-oriented analysis report: measurable atoms with measures, E-classes,
// per-pair atom counts, regularity census.
std::string measurability_report(const AtomStructure& a);

}  // namespace cosetra
