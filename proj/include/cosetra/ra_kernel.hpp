#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosetra/common.hpp"

namespace cosetra {

class AtomStructure;
using StructurePtr = std::shared_ptr<const AtomStructure>;

// An element of a finite relation algebra presented by atoms: a set of atom
// indices plus the id of the owning structure. Plain value; all algebra
// operations live on AtomStructure.
struct Element {
  Mask atoms = 0;
  std::uint32_t sid = 0;

  friend bool operator==(const Element& a, const Element& b) {
    if (a.sid != b.sid)
      throw StructureMismatchError("comparing elements of different structures");
    return a.atoms == b.atoms;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
};

// A finite relation algebra given by its atoms: converse as a permutation of
// atom indices, the set of subidentity atoms, and a dense composition table
// comp(i,j) = set of atoms below i;j. Immutable after construction and safe
// to share across threads.
class AtomStructure {
 public:
  // Validates container invariants (sizes, ranges, converse an involution,
  // identity atoms nonempty and converse-fixed). The composition table is
  // taken literally; whether it satisfies the relation algebra laws is the
  // business of verify_ra_axioms.
  static StructurePtr make(std::vector<std::string> names,
                           std::vector<int> converse, Mask identity_atoms,
                           std::vector<Mask> composition);

  int atom_count() const { return n_; }
  std::uint32_t id() const { return id_; }
  const std::string& atom_name(int i) const { return names_[i]; }
  const std::vector<std::string>& atom_names() const { return names_; }
  int converse_atom(int i) const { return conv_[i]; }
  Mask composition_atoms(int i, int j) const { return comp_[i * n_ + j]; }
  Mask identity_atoms() const { return identity_; }
  Mask universe_atoms() const { return full_mask(n_); }

  Element element(Mask atoms) const;
  Element zero() const { return Element{0, id_}; }
  Element one() const { return Element{universe_atoms(), id_}; }
  Element identity_element() const { return Element{identity_, id_}; }
  Element atom(int i) const;

  bool is_atom(const Element& a) const;
  bool is_zero(const Element& a) const;
  bool leq(const Element& a, const Element& b) const;

  Element join(const Element& a, const Element& b) const;
  Element meet(const Element& a, const Element& b) const;
  Element complement(const Element& a) const;

  Element relative_product(const Element& a, const Element& b) const;
  Element converse_of(const Element& a) const;
  // x;1;y for subidentity arguments x, y.
  Element rectangle(const Element& x, const Element& y) const;
  // The set of atom indices below a. Exists so client code never touches the
  // representation directly.
  Mask atoms_below(const Element& a) const;

  // Throws StructureMismatchError unless e belongs to this structure.
  void check_owned(const Element& e) const;

  std::string render(const Element& a) const;

 private:
  AtomStructure() = default;

  int n_ = 0;
  std::uint32_t id_ = 0;
  std::vector<std::string> names_;
  std::vector<int> conv_;
  Mask identity_ = 0;
  std::vector<Mask> comp_;
};

enum class AxiomMode { AtomLevel, ElementLevel };

struct AxiomCheckOptions {
  AxiomMode mode = AxiomMode::ElementLevel;
  // Element-level loops run exhaustively only on structures with at most
  // this many atoms; larger structures fall back to the fixed-seed sample.
  int exhaustive_threshold = 12;
  // Even below the threshold, full pair/triple loops are abandoned for the
  // sample once they would exceed these iteration budgets.
  std::uint64_t pair_budget = std::uint64_t{1} << 26;
  std::uint64_t triple_budget = std::uint64_t{1} << 27;
  bool force_exhaustive = false;
  std::uint64_t seed = 0x5eedc0de5eedc0deull;
  std::uint64_t sample_pairs = 200000;
  std::uint64_t sample_triples = 200000;
};

struct AxiomVerdict {
  std::string axiom;   // "R1".."R10", "R11", "PS"
  std::string law;     // human-readable name
  bool pass = true;
  // Minimal witness: the atom indices (or element masks) where the law broke.
  std::vector<int> witness_atoms;
  std::vector<Mask> witness_elements;
  std::string detail;
  std::string coverage;  // "structural", "atoms", "elements(exhaustive)", ...
};

struct AxiomReport {
  std::vector<AxiomVerdict> verdicts;
  bool all_pass() const;
  const AxiomVerdict* find(std::string_view axiom) const;
};

// Checks the relation algebra axioms of the composition table. AtomLevel
// runs the complete atom-table checks (associativity, identity law,
// involutions, triangle symmetry); ElementLevel additionally replays the
// axioms literally over element tuples, exhaustively within the budget and
// by fixed-seed sampling beyond it. Failures are report entries, not errors.
AxiomReport verify_ra_axioms(const AtomStructure& a,
                             const AxiomCheckOptions& options = {});

std::string render_axiom_report(const AtomStructure& a, const AxiomReport& r);

}  // namespace cosetra
