#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cosetra/common.hpp"

namespace cosetra {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A finite group as an explicit multiplication table over element indices
// 0..order-1. Immutable after validation; element sets are 64-bit masks, so
// the order is capped at 64.
class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses; names the first
  // violating triple otherwise.
  static GroupPtr from_table(const std::vector<std::vector<int>>& table,
                             std::vector<std::string> labels = {});
  static GroupPtr cyclic(int n);
  // Symmetric group on 1..n points, n <= 4.
  static GroupPtr symmetric(int n);
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

  int order() const { return m_; }
  std::uint32_t id() const { return id_; }
  int mul(int f, int g) const { return mul_[f * m_ + g]; }
  int inverse(int f) const { return inv_[f]; }
  int identity() const { return e_; }
  const std::string& label(int f) const { return labels_[f]; }
  Mask all() const { return full_mask(m_); }

  // True when both tables are identical as labeled tables (same order, same
  // mul entries); labels themselves are not compared.
  bool same_table(const FiniteGroup& other) const;

 private:
  FiniteGroup() = default;
  int m_ = 0;
  std::uint32_t id_ = 0;
  int e_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
};

// Set arithmetic on element masks.
Mask set_product(const FiniteGroup& g, Mask a, Mask b);
Mask set_inverse(const FiniteGroup& g, Mask a);
Mask set_conjugate(const FiniteGroup& g, Mask a, int f);  // f^-1 a f

struct Subgroup {
  GroupPtr parent;
  Mask members = 0;

  int index() const;  // [parent : members]
};

// Closure of the generators (plus the identity) under product and inverse.
Subgroup subgroup_from(const GroupPtr& parent, Mask generators);
// Validates that members actually form a subgroup.
Subgroup subgroup_of(const GroupPtr& parent, Mask members);
bool is_subgroup(const FiniteGroup& g, Mask members);
bool is_normal(const Subgroup& h);

enum class Side { Left, Right };

// A full coset decomposition of the parent group. Coset 0 is the subgroup
// itself; the factory orders the rest by least member, but consumers that
// align two systems may reorder (keeping coset 0 fixed).
struct CosetSystem {
  Subgroup subgroup;
  Side side = Side::Left;
  std::vector<Mask> cosets;
  std::vector<int> representatives;

  int count() const { return static_cast<int>(cosets.size()); }
  // Index of the coset containing g; -1 if none.
  int index_of(int g) const;
  int index_of_coset(Mask coset) const;
};

CosetSystem coset_system(const Subgroup& h, Side side);
Mask coset_of(const FiniteGroup& g, Mask subgroup, int rep, Side side);

// {h.k : h in H, k in K}, verified to be a subgroup. Requires the same
// parent; with neither factor normal the product set may fail closure, which
// is an error.
Subgroup product_subgroup(const Subgroup& h, const Subgroup& k);

// An isomorphism between quotients by normal subgroups, represented by a
// source coset system and the aligned target system: coset i of H maps to
// coset i of K. Coset 0 is the subgroup on both sides.
class QuotientIso {
 public:
  QuotientIso(Subgroup h, Subgroup k, CosetSystem source_system,
              CosetSystem target_system);

  const Subgroup& source_subgroup() const { return h_; }
  const Subgroup& target_subgroup() const { return k_; }
  const GroupPtr& source_parent() const { return h_.parent; }
  const GroupPtr& target_parent() const { return k_.parent; }
  const CosetSystem& source_system() const { return src_; }
  const CosetSystem& target_system() const { return dst_; }
  int count() const { return src_.count(); }

  // Image of a single coset of H (given as a mask), as a coset mask of K.
  Mask apply(Mask h_coset) const;
  Mask apply_inverse(Mask k_coset) const;
  // Image of a union of H-cosets.
  Mask image_of_union(Mask s) const;
  Mask preimage_of_union(Mask s) const;

  QuotientIso inverse() const;
  // this, then next.
  QuotientIso compose(const QuotientIso& next) const;
  bool same_map(const QuotientIso& other) const;

 private:
  Subgroup h_, k_;
  CosetSystem src_, dst_;
};

// Builds a quotient isomorphism from images prescribed on coset
// representatives, then verifies it. Non-bijective maps are errors.
QuotientIso quotient_iso(const Subgroup& h, const Subgroup& k,
                         const std::vector<std::pair<int, int>>& rep_map);

// Witness pair of source coset indices on homomorphism failure.
struct QuotientIsoCheck {
  bool ok = true;
  int witness_xi = -1, witness_eta = -1;
  std::string detail;
};
QuotientIsoCheck verify_quotient_iso(const QuotientIso& phi);

// The isomorphism induced on the coarser quotients G/M -> G'/N, where M is a
// normal subgroup extending H and N is the union of the phi-images of the
// H-cosets inside M. Errors if that union is not a subgroup.
QuotientIso induce_on_coarser(const QuotientIso& phi, Mask coarser_m);

// The automorphism W |-> C^-1;W;C of (G/H) determined by a coset C of the
// normal subgroup H.
QuotientIso inner_automorphism(const GroupPtr& g, Mask h_normal, Mask coset_c);
QuotientIso identity_automorphism(const GroupPtr& g, Mask h_normal);

// The quotient group G/H as an explicit table, cosets in the order of the
// given side's canonical system. Used to cross-check that left and right
// systems of a normal subgroup give the same labeled table.
GroupPtr quotient_group(const GroupPtr& g, Mask h_normal, Side side);

}  // namespace cosetra
