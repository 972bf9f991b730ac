#pragma once

#include "cosetra/group_core.hpp"
#include "cosetra/ra_kernel.hpp"

namespace cosetra {

// The full algebra of binary relations on an m-point set, presented by its
// atoms (the singleton relations). Diagonal atoms are named e<p>, the others
// a<p>_<q>.
StructurePtr full_set_algebra(int points);

// The complex algebra of a finite group: one atom per group element,
// composition by the group table, converse by inversion, identity {e}.
StructurePtr group_complex_algebra(const GroupPtr& g);

// Direct product of two atom structures: disjoint union of the atoms, all
// cross compositions zero.
StructurePtr direct_product_algebra(const AtomStructure& a,
                                    const AtomStructure& b);

}  // namespace cosetra
