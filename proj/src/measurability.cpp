#include "cosetra/measurability.hpp"

#include <algorithm>
#include <sstream>

namespace cosetra {

int MeasurableAtomRecord::element_of_atom(int algebra_atom) const {
  for (int i = 0; i < measure; ++i)
    if (atom_of_element[i] == algebra_atom) return i;
  return -1;
}

Element MeasurableAtomRecord::element_of_mask(const AtomStructure& a,
                                              Mask group_elements) const {
  Mask out = 0;
  for (int f : bits(group_elements)) out |= bit(atom_of_element[f]);
  return a.element(out);
}

Mask MeasurableAtomRecord::mask_of_element(const AtomStructure& a,
                                           const Element& e) const {
  a.check_owned(e);
  Mask out = 0;
  for (int i : bits(e.atoms)) {
    const int f = element_of_atom(i);
    if (f < 0)
      throw PreconditionError("element is not below the square of this atom");
    out |= bit(f);
  }
  return out;
}

Mask functional_atoms(const AtomStructure& a) {
  Mask out = 0;
  for (int f = 0; f < a.atom_count(); ++f) {
    const Mask conv_f_f = a.composition_atoms(a.converse_atom(f), f);
    if ((conv_f_f & ~a.identity_atoms()) == 0) out |= bit(f);
  }
  return out;
}

std::vector<MeasurableAtomRecord> measurable_atoms(const AtomStructure& a) {
  std::vector<MeasurableAtomRecord> out;
  const Mask functional = functional_atoms(a);
  for (int x : bits(a.identity_atoms())) {
    const Element square = a.rectangle(a.atom(x), a.atom(x));
    const Mask below = a.atoms_below(square);
    if (below & ~functional) continue;  // a non-functional atom under the square
    MeasurableAtomRecord rec;
    rec.atom = x;
    rec.square = square;
    rec.measure = popcount(below);
    // Identity first, the rest ascending.
    rec.atom_of_element.push_back(x);
    for (int f : bits(below))
      if (f != x) rec.atom_of_element.push_back(f);
    const int m = rec.measure;
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<std::string> labels;
    for (int i = 0; i < m; ++i) labels.push_back(a.atom_name(rec.atom_of_element[i]));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Mask prod = a.composition_atoms(rec.atom_of_element[i],
                                              rec.atom_of_element[j]);
        if (popcount(prod) != 1 || (prod & ~below))
          throw InternalConsistencyError(
              "functional atoms below the square of " + a.atom_name(x) +
              " do not compose to single atoms; input is not a relation algebra");
        int k = 0;
        while (rec.atom_of_element[k] != lowest_bit(prod)) ++k;
        table[i][j] = k;
      }
    try {
      rec.group = FiniteGroup::from_table(table, std::move(labels));
    } catch (const ValidationError& e) {
      throw InternalConsistencyError(
          std::string("atoms below the square of ") + a.atom_name(x) +
          " do not form a group: " + e.what());
    }
    if (rec.group->identity() != 0)
      throw InternalConsistencyError("group identity of " + a.atom_name(x) +
                                     " is not the atom itself");
    out.push_back(std::move(rec));
  }
  return out;
}

bool is_measurable_algebra(const AtomStructure& a) {
  Mask covered = 0;
  for (const auto& rec : measurable_atoms(a)) covered |= bit(rec.atom);
  return covered == a.identity_atoms();
}

int EquivalenceE::position_of_atom(int algebra_atom) const {
  for (int i = 0; i < count(); ++i)
    if (atoms[i] == algebra_atom) return i;
  return -1;
}

EquivalenceE equivalence_E(const AtomStructure& a,
                           const std::vector<MeasurableAtomRecord>& records) {
  EquivalenceE e;
  for (const auto& rec : records) e.atoms.push_back(rec.atom);
  const int k = e.count();
  e.related.assign(k, std::vector<bool>(k, false));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      const Element rect = a.rectangle(a.atom(e.atoms[x]), a.atom(e.atoms[y]));
      e.related[x][y] = !a.is_zero(rect);
    }
  for (int x = 0; x < k; ++x)
    if (!e.related[x][x])
      throw InternalConsistencyError("E is not reflexive at " +
                                     a.atom_name(e.atoms[x]));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (e.related[x][y] != e.related[y][x])
        throw InternalConsistencyError("E is not symmetric");
      for (int z = 0; z < k; ++z)
        if (e.related[x][y] && e.related[y][z] && !e.related[x][z])
          throw InternalConsistencyError("E is not transitive");
    }
  std::vector<bool> seen(k, false);
  for (int x = 0; x < k; ++x) {
    if (seen[x]) continue;
    std::vector<int> cls;
    for (int y = 0; y < k; ++y)
      if (e.related[x][y]) {
        cls.push_back(y);
        seen[y] = true;
      }
    e.classes.push_back(std::move(cls));
  }
  return e;
}

namespace {

void check_frame(const AtomStructure& a, const MeasurableAtomRecord& gx,
                 const MeasurableAtomRecord& gy, const Element& e) {
  const Element rect = a.rectangle(a.atom(gx.atom), a.atom(gy.atom));
  if (a.is_zero(e) || !a.leq(e, rect))
    throw PreconditionError(
        "element must be nonzero and below the rectangle of its frame pair");
}

}  // namespace

StabilizerData stabilizer_data(const AtomStructure& a,
                               const MeasurableAtomRecord& gx,
                               const MeasurableAtomRecord& gy,
                               const Element& e) {
  check_frame(a, gx, gy, e);
  StabilizerData out;
  out.a = e;
  out.x = gx.atom;
  out.y = gy.atom;
  Mask left = 0, right = 0;
  for (int f = 0; f < gx.measure; ++f)
    if (translate(a, gx, e, f, Side::Left) == e) left |= bit(f);
  for (int g = 0; g < gy.measure; ++g)
    if (translate(a, gy, e, g, Side::Right) == e) right |= bit(g);
  out.left_stabilizer = subgroup_of(gx.group, left);
  out.right_stabilizer = subgroup_of(gy.group, right);
  const Element aac = a.relative_product(e, a.converse_of(e));
  const Element caa = a.relative_product(a.converse_of(e), e);
  out.left_atoms = gx.mask_of_element(a, aac);
  out.right_atoms = gy.mask_of_element(a, caa);
  out.left_regular = out.left_atoms == left;
  out.right_regular = out.right_atoms == right;
  return out;
}

Element translate(const AtomStructure& a, const MeasurableAtomRecord& rec,
                  const Element& e, int group_element, Side side) {
  a.check_owned(e);
  if (group_element < 0 || group_element >= rec.measure)
    throw PreconditionError("translator out of range");
  const Element f = a.atom(rec.atom_of_element[group_element]);
  return side == Side::Left ? a.relative_product(f, e)
                            : a.relative_product(e, f);
}

Element translate_coset(const AtomStructure& a, const MeasurableAtomRecord& rec,
                        const Element& e, Mask coset, Side side) {
  if (coset == 0) throw PreconditionError("empty translator coset");
  Mask stab = 0;
  for (int f = 0; f < rec.measure; ++f)
    if (translate(a, rec, e, f, side) == e) stab |= bit(f);
  // Left translations are constant exactly on left cosets f;L_a, right
  // translations on right cosets R_a;g.
  const int rep = lowest_bit(coset);
  const Mask full = coset_of(*rec.group, stab, rep, side);
  if (full != coset)
    throw PreconditionError("translator set is not a full stabilizer coset");
  return translate(a, rec, e, rep, side);
}

QuotientIso quotient_iso_of_regular(const AtomStructure& a,
                                    const MeasurableAtomRecord& gx,
                                    const MeasurableAtomRecord& gy,
                                    const Element& e) {
  StabilizerData sd = stabilizer_data(a, gx, gy, e);
  if (!sd.regular())
    throw PreconditionError("quotient isomorphism requires a regular element");
  if (!is_normal(sd.left_stabilizer) || !is_normal(sd.right_stabilizer))
    throw PreconditionError("quotient isomorphism requires normal stabilizers");

  CosetSystem left = coset_system(sd.left_stabilizer, Side::Left);
  CosetSystem right_canonical = coset_system(sd.right_stabilizer, Side::Right);
  if (left.count() != right_canonical.count())
    throw InternalConsistencyError("stabilizers of different index");

  // Reindex the right system so that L_xi;a = a;R_xi.
  CosetSystem right = right_canonical;
  std::vector<bool> used(right.count(), false);
  for (int xi = 0; xi < left.count(); ++xi) {
    const Element lt = translate(a, gx, e, left.representatives[xi], Side::Left);
    int match = -1;
    for (int eta = 0; eta < right_canonical.count(); ++eta) {
      if (used[eta]) continue;
      const Element rt =
          translate(a, gy, e, right_canonical.representatives[eta], Side::Right);
      if (rt == lt) {
        match = eta;
        break;
      }
    }
    if (match < 0)
      throw InternalConsistencyError(
          "left translation has no matching right translation");
    used[match] = true;
    right.cosets[xi] = right_canonical.cosets[match];
    right.representatives[xi] = right_canonical.representatives[match];
  }
  QuotientIso phi(sd.left_stabilizer, sd.right_stabilizer, std::move(left),
                  std::move(right));
  auto check = verify_quotient_iso(phi);
  if (!check.ok)
    throw InternalConsistencyError("canonical map is not an isomorphism: " +
                                   check.detail);
  return phi;
}

Element find_left_regular_below(const AtomStructure& a,
                                const MeasurableAtomRecord& gx,
                                const MeasurableAtomRecord& gy,
                                const Element& e) {
  StabilizerData sd = stabilizer_data(a, gx, gy, e);
  // X_a is a union of left cosets of L_a; collect the ones inside it.
  CosetSystem sys = coset_system(sd.left_stabilizer, Side::Left);
  std::vector<Mask> cosets_in_x;   // coset 0 (the stabilizer) excluded
  for (int i = 1; i < sys.count(); ++i)
    if ((sys.cosets[i] & sd.left_atoms) == sys.cosets[i])
      cosets_in_x.push_back(sys.cosets[i]);
  const int k = static_cast<int>(cosets_in_x.size());
  if (k > 20)
    throw PreconditionError("coset count in X_a exceeds the search budget");

  // Translation by each coset, as an atom mask.
  std::vector<Mask> trans(k);
  for (int i = 0; i < k; ++i)
    trans[i] =
        translate_coset(a, gx, e, cosets_in_x[i], Side::Left).atoms;

  // Product over a subset S of cosets (the stabilizer coset, i.e. a itself,
  // is always in). Memoized over subsets: prod[S] = prod[S\low] & trans[low].
  const std::uint64_t subsets = std::uint64_t{1} << k;
  std::vector<Mask> prod(subsets);
  prod[0] = e.atoms;
  int best_popcount = 0;
  std::uint64_t best = 0;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    const int low = lowest_bit(s);
    prod[s] = prod[s & (s - 1)] & trans[low];
    if (prod[s] != 0) {
      const int pc = popcount(s);
      if (pc > best_popcount) {
        best_popcount = pc;
        best = s;
      }
    }
  }
  const Element out = a.element(prod[best]);
  // The construction guarantees a nonzero left-regular element below a.
  StabilizerData check = stabilizer_data(a, gx, gy, out);
  if (!check.left_regular)
    throw InternalConsistencyError(
        "maximal product is not left-regular; input is not a relation algebra");
  return out;
}

RegularDecomposition regular_decomposition(const AtomStructure& a,
                                           const MeasurableAtomRecord& gx,
                                           const MeasurableAtomRecord& gy,
                                           const Element& b) {
  check_frame(a, gx, gy, b);
  const Element rect = a.rectangle(a.atom(gx.atom), a.atom(gy.atom));
  if (a.is_zero(rect))
    throw PreconditionError("rectangle holds no atoms");
  RegularDecomposition out;
  out.atom = a.atom(lowest_bit(b.atoms));
  StabilizerData sd = stabilizer_data(a, gx, gy, b);
  out.stabilizer = sd.left_stabilizer;
  CosetSystem sys = coset_system(sd.left_stabilizer, Side::Left);
  for (int gamma = 0; gamma < sys.count(); ++gamma) {
    Mask sum = 0;
    for (int f : bits(sys.cosets[gamma]))
      sum |= translate(a, gx, out.atom, f, Side::Left).atoms;
    if (sum == b.atoms) {
      out.regular = true;
      out.coset_index = gamma;
      return out;
    }
  }
  out.regular = false;
  return out;
}

std::string measurability_report(const AtomStructure& a) {
  std::ostringstream out;
  const auto records = measurable_atoms(a);
  out << "measurable_atoms: " << records.size() << "\n";
  for (const auto& rec : records)
    out << "atom: " << a.atom_name(rec.atom) << "\nmeasure: " << rec.measure
        << "\n";
  out << "measurable_algebra: " << (is_measurable_algebra(a) ? "yes" : "no")
      << "\n";
  if (!is_measurable_algebra(a)) return out.str();
  const auto e = equivalence_E(a, records);
  out << "e_classes: " << e.classes.size() << "\n";
  for (std::size_t c = 0; c < e.classes.size(); ++c) {
    out << "class " << c << ":";
    for (int pos : e.classes[c]) out << " " << a.atom_name(e.atoms[pos]);
    out << "\n";
  }
  std::uint64_t regulars = 0, elements = 0;
  for (int x = 0; x < e.count(); ++x)
    for (int y = 0; y < e.count(); ++y) {
      if (!e.pair(x, y)) continue;
      const Element rect = a.rectangle(a.atom(e.atoms[x]), a.atom(e.atoms[y]));
      StabilizerData atom_sd =
          stabilizer_data(a, records[x], records[y],
                          a.atom(lowest_bit(rect.atoms)));
      out << "pair " << a.atom_name(e.atoms[x]) << " " << a.atom_name(e.atoms[y])
          << ": atoms " << popcount(rect.atoms) << " kappa "
          << atom_sd.left_stabilizer.index() << "\n";
      // Regularity census over all nonzero elements below the rectangle,
      // bounded to rectangles holding at most 16 atoms.
      const Mask below = rect.atoms;
      std::vector<int> idx;
      for (int i : bits(below)) idx.push_back(i);
      if (idx.size() > 16) continue;
      const std::uint64_t total = std::uint64_t{1} << idx.size();
      for (std::uint64_t s = 1; s < total; ++s) {
        Mask m = 0;
        for (std::size_t i = 0; i < idx.size(); ++i)
          if ((s >> i) & 1) m |= bit(idx[i]);
        StabilizerData sd = stabilizer_data(a, records[x], records[y], a.element(m));
        ++elements;
        if (sd.regular()) ++regulars;
      }
    }
  out << "nonzero_rectangle_elements: " << elements << "\n";
  out << "regular_elements: " << regulars << "\n";
  return out.str();
}

}  // namespace cosetra
