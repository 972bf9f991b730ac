#include "cosetra/reference_algebras.hpp"

namespace cosetra {

StructurePtr full_set_algebra(int points) {
  if (points <= 0 || points * points > kMaxAtoms)
    throw ValidationError("point count out of range for the atom cap");
  const int n = points * points;
  auto enc = [&](int p, int q) { return p * points + q; };
  std::vector<std::string> names(n);
  std::vector<int> conv(n);
  Mask identity = 0;
  for (int p = 0; p < points; ++p)
    for (int q = 0; q < points; ++q) {
      names[enc(p, q)] = p == q ? "e" + std::to_string(p)
                                : "a" + std::to_string(p) + "_" + std::to_string(q);
      conv[enc(p, q)] = enc(q, p);
      if (p == q) identity |= bit(enc(p, q));
    }
  std::vector<Mask> comp(static_cast<std::size_t>(n) * n, 0);
  for (int p = 0; p < points; ++p)
    for (int q = 0; q < points; ++q)
      for (int r = 0; r < points; ++r)
        for (int s = 0; s < points; ++s)
          if (q == r) comp[enc(p, q) * n + enc(r, s)] = bit(enc(p, s));
  return AtomStructure::make(std::move(names), std::move(conv), identity,
                             std::move(comp));
}

StructurePtr group_complex_algebra(const GroupPtr& g) {
  const int n = g->order();
  std::vector<std::string> names(n);
  std::vector<int> conv(n);
  for (int i = 0; i < n; ++i) {
    names[i] = g->label(i);
    conv[i] = g->inverse(i);
  }
  std::vector<Mask> comp(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) comp[i * n + j] = bit(g->mul(i, j));
  return AtomStructure::make(std::move(names), std::move(conv),
                             bit(g->identity()), std::move(comp));
}

StructurePtr direct_product_algebra(const AtomStructure& a,
                                    const AtomStructure& b) {
  const int na = a.atom_count(), nb = b.atom_count();
  if (na + nb > kMaxAtoms)
    throw ValidationError("direct product exceeds the atom cap");
  const int n = na + nb;
  std::vector<std::string> names(n);
  std::vector<int> conv(n);
  for (int i = 0; i < na; ++i) {
    names[i] = "l." + a.atom_name(i);
    conv[i] = a.converse_atom(i);
  }
  for (int i = 0; i < nb; ++i) {
    names[na + i] = "r." + b.atom_name(i);
    conv[na + i] = na + b.converse_atom(i);
  }
  const Mask identity = a.identity_atoms() | (b.identity_atoms() << na);
  std::vector<Mask> comp(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) comp[i * n + j] = a.composition_atoms(i, j);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      comp[(na + i) * n + (na + j)] = b.composition_atoms(i, j) << na;
  return AtomStructure::make(std::move(names), std::move(conv), identity,
                             std::move(comp));
}

}  // namespace cosetra
