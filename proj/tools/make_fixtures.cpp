// Regenerates the fixture corpus under fixtures/. Deterministic: running it
// twice produces byte-identical files (the freshness test relies on this).

#include <filesystem>
#include <iostream>

#include "cosetra/gtr_io.hpp"
#include "cosetra/ra_io.hpp"
#include "cosetra/reference_algebras.hpp"

using namespace cosetra;

namespace {

StructurePtr mutated_re2(const std::vector<std::tuple<int, int, int>>& drop,
                         const std::vector<std::tuple<int, int, int>>& adds,
                         Mask identity_override, std::vector<int> converse = {}) {
  auto base = full_set_algebra(2);
  const int n = 4;
  std::vector<Mask> comp(16);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) comp[i * n + j] = base->composition_atoms(i, j);
  for (auto [i, j, k] : drop) comp[i * n + j] &= ~bit(k);
  for (auto [i, j, k] : adds) comp[i * n + j] |= bit(k);
  if (converse.empty())
    for (int i = 0; i < n; ++i) converse.push_back(base->converse_atom(i));
  return AtomStructure::make(base->atom_names(), converse,
                             identity_override ? identity_override
                                               : base->identity_atoms(),
                             comp);
}

GroupTriple z4_pair_frame() {
  GroupTriple f;
  auto g = FiniteGroup::cyclic(4);
  f.groups = {g, g};
  f.related = {{true, true}, {true, true}};
  f.pairs.assign(2, std::vector<TriplePairData>(2));
  for (int x = 0; x < 2; ++x) {
    TriplePairData pd;
    pd.h = Subgroup{g, bit(0)};
    pd.k = pd.h;
    pd.h_cosets = coset_system(pd.h, Side::Left).cosets;
    pd.k_cosets = pd.h_cosets;
    f.pairs[x][x] = pd;
  }
  TriplePairData fwd;
  fwd.h = Subgroup{g, bit(0) | bit(2)};
  fwd.k = fwd.h;
  fwd.h_cosets = coset_system(fwd.h, Side::Left).cosets;
  fwd.k_cosets = fwd.h_cosets;
  f.pairs[0][1] = fwd;
  f.pairs[1][0] = fwd;
  for (auto [x, y, z] : f.e3_triples())
    f.shifting[{x, y, z}] = f.product_subgroup_mask(x, y, z);
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  auto cm = [](GroupPtr g) { return group_complex_algebra(g); };

  save_ra(*full_set_algebra(2), dir / "re2.ra", "full algebra on 2 points");
  save_ra(*full_set_algebra(3), dir / "re3.ra", "full algebra on 3 points");
  save_ra(*full_set_algebra(4), dir / "re4.ra", "full algebra on 4 points");
  save_ra(*cm(FiniteGroup::cyclic(2)), dir / "cm_z2.ra", "complex algebra of Z2");
  save_ra(*cm(FiniteGroup::cyclic(3)), dir / "cm_z3.ra", "complex algebra of Z3");
  save_ra(*cm(FiniteGroup::cyclic(4)), dir / "cm_z4.ra", "complex algebra of Z4");
  save_ra(*cm(FiniteGroup::cyclic(6)), dir / "cm_z6.ra", "complex algebra of Z6");
  save_ra(*cm(FiniteGroup::symmetric(3)), dir / "cm_s3.ra",
          "complex algebra of S3");
  save_ra(*cm(FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                          FiniteGroup::cyclic(2))),
          dir / "cm_v4.ra", "complex algebra of Z2 x Z2");
  save_ra(*direct_product_algebra(*cm(FiniteGroup::cyclic(2)),
                                  *cm(FiniteGroup::cyclic(3))),
          dir / "prod_z2_z3.ra", "direct product Cm(Z2) x Cm(Z3)");
  save_ra(*direct_product_algebra(*cm(FiniteGroup::cyclic(2)),
                                  *cm(FiniteGroup::cyclic(2))),
          dir / "prod_z2_z2.ra", "direct product Cm(Z2) x Cm(Z2)");

  // {identity, diversity} on three points: not measurable.
  save_ra(*AtomStructure::make({"e", "d"}, {0, 1}, bit(0),
                               {bit(0), bit(1), bit(1), bit(0) | bit(1)}),
          dir / "diversity.ra", "identity-diversity algebra on 3 points");

  // Mutations of re2, one targeted law each. Atom indices in re2:
  // e0=0, a0_1=1, a1_0=2, e1=3.
  const int e0 = 0, s = 1, t = 2, e1 = 3;
  save_ra(*mutated_re2({}, {{s, s, s}, {t, s, s}, {s, t, s},
                            {t, t, t}, {s, t, t}, {t, s, t}}, 0),
          dir / "mut_r4_assoc.ra", "re2 with an extra Peircean orbit: breaks R4");
  save_ra(*mutated_re2({}, {}, bit(e0)), dir / "mut_r5_identity.ra",
          "re2 with e1 dropped from the identity: breaks R5");
  save_ra(*mutated_re2({}, {}, 0, {0, 1, 2, 3}), dir / "mut_r7_involution.ra",
          "re2 with converse fixing each pair atom: breaks R7");
  save_ra(*mutated_re2({{s, t, e0}}, {}, 0), dir / "mut_r10_tarski.ra",
          "re2 without the cycle (a0_1,a1_0,e0): breaks R10");
  save_ra(*mutated_re2({{t, s, e1}}, {}, 0), dir / "mut_r11_cycle.ra",
          "re2 without the cycle (a1_0,a0_1,e1): breaks the cycle law");

  save_gtr(z4_pair_frame(), dir / "z4_pair.gtr",
           "two Z4 indices over the subgroup {0,2}");
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
