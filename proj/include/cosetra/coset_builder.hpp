#pragma once

#include <functional>

#include "cosetra/frame_extract.hpp"

namespace cosetra {

// A binary relation over the disjoint union U of the groups of a triple,
// stored as a bit matrix. Base labels are "x.g" with x the index position
// and g the group element.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int base_size) : base_(base_size), rows_(base_size, 0) {}

  int base_size() const { return base_; }
  bool pair(int u, int v) const { return has_bit(rows_[u], v); }
  void add_pair(int u, int v) { rows_[u] |= bit(v); }
  Mask row(int u) const { return rows_[u]; }

  Relation composed_with(const Relation& other) const;
  Relation transposed() const;
  Relation united_with(const Relation& other) const;
  bool subset_of(const Relation& other) const;
  bool empty() const;
  std::size_t pair_count() const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.base_ == b.base_ && a.rows_ == b.rows_;
  }

 private:
  int base_ = 0;
  std::vector<Mask> rows_;
};

// One atom of the synthesized algebra: a pair (x,y) in E and a coset index
// alpha below kappa_xy.
struct CosetAtomIndex {
  int x = 0, y = 0, alpha = 0;
  friend bool operator==(const CosetAtomIndex&, const CosetAtomIndex&) = default;
};

// An algebra built from a group triple, together with the concrete relation
// realizing each atom and the base bookkeeping.
struct BuiltAlgebra {
  StructurePtr structure;
  std::vector<CosetAtomIndex> atoms;     // structure atom order
  std::vector<Relation> relations;       // per structure atom
  std::vector<int> base_offset;          // per index position
  int base_size = 0;

  int atom_of(int x, int y, int alpha) const;
  std::string base_label(int u) const;

 private:
  friend BuiltAlgebra build_algebra_impl(const GroupTriple&, bool);
  std::vector<std::pair<int, int>> base_decode;  // u -> (x, g)
};

// The relation R_{xy,alpha} = union over xi of H_{xy,xi} x (K_{xy,xi};K_{xy,alpha}).
Relation atomic_relation(const GroupTriple& f, const CosetAtomIndex& idx);

// The algebra C[F] with the shifted composition: composition of atoms by the
// coset formula (empty when the middle indices differ), converse by coset
// inverse, identity atoms the (x,x,0). The result need not satisfy the
// relation algebra axioms; callers decide with verify_ra_axioms. Requires
// the triple to pass verify_semi_frame.
BuiltAlgebra build_coset_algebra(const GroupTriple& f);

// The group relation algebra G[F] of a frame: same atoms, composition
// computed by genuine relational composition of the realizing relations.
// Requires frame_record(f).frame.
BuiltAlgebra build_group_algebra(const GroupTriple& f);

struct OtimesDiscrepancy {
  int left_atom = -1, right_atom = -1;
  Mask otimes_atoms = 0;
  Mask compose_atoms = 0;
  // Set when the set composition is not a union of atomic relations at all.
  bool structural = false;
};

// Compares, for every atom pair, the shifted composition against the
// set-theoretic composition of the realizing relations. Empty exactly when
// the two operations agree (always, for frames).
std::vector<OtimesDiscrepancy> compare_otimes_composition(const GroupTriple& f,
                                                          const BuiltAlgebra& built);

std::string render_rel(const BuiltAlgebra& built);

struct GenerationBounds {
  int max_index_count = 1;
  int max_group_order = 3;
  // Enumerate non-identity shifting cosets as well.
  bool include_shifts = true;
  // Stop after this many emitted semi-frames (0 = no limit).
  std::uint64_t limit = 0;
};

struct GenerationMeta {
  std::uint64_t candidate = 0;   // ordinal among enumerated candidates
  std::uint64_t emitted = 0;     // ordinal among emitted semi-frames
  std::string description;
};

// Enumerates group triples within the bounds (groups drawn from the cyclic /
// symmetric / direct-product constructors, all index-respecting subgroup and
// isomorphism choices, all shifting cosets), filters them through
// verify_semi_frame, and hands each surviving triple to the consumer in a
// fixed deterministic order. The consumer returns false to stop early.
void generate_triples(
    const GenerationBounds& bounds,
    const std::function<bool(const GroupTriple&, const GenerationMeta&)>& consumer);

}  // namespace cosetra
