#include "cosetra/coset_builder.hpp"

#include <algorithm>
#include <sstream>

namespace cosetra {

Relation Relation::composed_with(const Relation& other) const {
  if (base_ != other.base_)
    throw StructureMismatchError("relations over different bases");
  Relation out(base_);
  for (int u = 0; u < base_; ++u) {
    Mask acc = 0;
    for (int v : bits(rows_[u])) acc |= other.rows_[v];
    out.rows_[u] = acc;
  }
  return out;
}

Relation Relation::transposed() const {
  Relation out(base_);
  for (int u = 0; u < base_; ++u)
    for (int v : bits(rows_[u])) out.rows_[v] |= bit(u);
  return out;
}

Relation Relation::united_with(const Relation& other) const {
  if (base_ != other.base_)
    throw StructureMismatchError("relations over different bases");
  Relation out(base_);
  for (int u = 0; u < base_; ++u) out.rows_[u] = rows_[u] | other.rows_[u];
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  if (base_ != other.base_)
    throw StructureMismatchError("relations over different bases");
  for (int u = 0; u < base_; ++u)
    if (rows_[u] & ~other.rows_[u]) return false;
  return true;
}

bool Relation::empty() const {
  for (int u = 0; u < base_; ++u)
    if (rows_[u]) return false;
  return true;
}

std::size_t Relation::pair_count() const {
  std::size_t n = 0;
  for (int u = 0; u < base_; ++u) n += popcount(rows_[u]);
  return n;
}

int BuiltAlgebra::atom_of(int x, int y, int alpha) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == CosetAtomIndex{x, y, alpha}) return static_cast<int>(i);
  return -1;
}

std::string BuiltAlgebra::base_label(int u) const {
  return std::to_string(base_decode[u].first) + "." +
         std::to_string(base_decode[u].second);
}

Relation atomic_relation(const GroupTriple& f, const CosetAtomIndex& idx) {
  int base = 0;
  std::vector<int> offset(f.count());
  for (int x = 0; x < f.count(); ++x) {
    offset[x] = base;
    base += f.groups[x]->order();
  }
  Relation out(base);
  const auto& pd = f.pair(idx.x, idx.y);
  const FiniteGroup& gy = *f.groups[idx.y];
  for (int xi = 0; xi < pd.kappa(); ++xi) {
    const Mask cols = set_product(gy, pd.k_cosets[xi], pd.k_cosets[idx.alpha]);
    for (int h : bits(pd.h_cosets[xi]))
      for (int c : bits(cols)) out.add_pair(offset[idx.x] + h, offset[idx.y] + c);
  }
  return out;
}

namespace {

// The shifted composition of two atoms, as a mask of target coset indices
// gamma for the pair (x,z).
Mask otimes_atoms(const GroupTriple& f, int x, int y, int alpha, int z, int beta) {
  const auto& xy = f.pair(x, y);
  const auto& yz = f.pair(y, z);
  const auto& xz = f.pair(x, z);
  const Mask prod =
      set_product(*f.groups[y], xy.k_cosets[alpha], yz.h_cosets[beta]);
  // Pull the coset of K_xy;H_yz back through phi_xy: the union of the
  // H_xy-cosets whose aligned K-coset lies inside it.
  Mask pre = 0;
  for (int xi = 0; xi < xy.kappa(); ++xi)
    if ((xy.k_cosets[xi] & ~prod) == 0) pre |= xy.h_cosets[xi];
  const Mask shifted = set_product(*f.groups[x], pre, f.shifting_coset(x, y, z));
  Mask out = 0;
  for (int gamma = 0; gamma < xz.kappa(); ++gamma)
    if ((xz.h_cosets[gamma] & ~shifted) == 0) out |= bit(gamma);
  return out;
}

}  // namespace

BuiltAlgebra build_algebra_impl(const GroupTriple& f, bool group_mode) {
  BuiltAlgebra out;
  out.base_size = 0;
  for (int x = 0; x < f.count(); ++x) {
    out.base_offset.push_back(out.base_size);
    out.base_size += f.groups[x]->order();
    for (int g = 0; g < f.groups[x]->order(); ++g)
      out.base_decode.emplace_back(x, g);
  }
  for (int x = 0; x < f.count(); ++x)
    for (int y = 0; y < f.count(); ++y) {
      if (!f.in_e(x, y)) continue;
      for (int alpha = 0; alpha < f.pair(x, y).kappa(); ++alpha)
        out.atoms.push_back({x, y, alpha});
    }
  const int n = static_cast<int>(out.atoms.size());
  if (n > kMaxAtoms)
    throw ValidationError("triple would build more than " +
                          std::to_string(kMaxAtoms) + " atoms");

  std::vector<std::string> names;
  std::vector<int> conv(n);
  Mask identity = 0;
  for (int i = 0; i < n; ++i) {
    const auto& [x, y, alpha] = out.atoms[i];
    names.push_back("r" + std::to_string(x) + "_" + std::to_string(y) + "_" +
                    std::to_string(alpha));
    if (x == y && alpha == 0) identity |= bit(i);
    out.relations.push_back(atomic_relation(f, out.atoms[i]));
  }
  // Converse sends (x,y,alpha) to (y,x,beta) with H_{xy,beta} the coset
  // inverse of H_{xy,alpha}.
  for (int i = 0; i < n; ++i) {
    const auto& [x, y, alpha] = out.atoms[i];
    const auto& pd = f.pair(x, y);
    const int beta = pd.h_index_of(set_inverse(*f.groups[x], pd.h_cosets[alpha]));
    if (beta < 0) throw InternalConsistencyError("coset inverse is not a coset");
    const int j = out.atom_of(y, x, beta);
    if (j < 0) throw InternalConsistencyError("converse atom missing");
    conv[i] = j;
  }

  std::vector<Mask> comp(static_cast<std::size_t>(n) * n, 0);
  if (!group_mode) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& [x, y, alpha] = out.atoms[i];
        const auto& [w, z, beta] = out.atoms[j];
        if (y != w) continue;
        Mask cell = 0;
        for (int gamma : bits(otimes_atoms(f, x, y, alpha, z, beta))) {
          const int t = out.atom_of(x, z, gamma);
          if (t < 0) throw InternalConsistencyError("composition target missing");
          cell |= bit(t);
        }
        comp[static_cast<std::size_t>(i) * n + j] = cell;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Relation composite = out.relations[i].composed_with(out.relations[j]);
        Mask cell = 0;
        Relation covered(out.base_size);
        for (int t = 0; t < n; ++t)
          if (out.relations[t].subset_of(composite)) {
            cell |= bit(t);
            covered = covered.united_with(out.relations[t]);
          }
        if (!(covered == composite))
          throw InternalConsistencyError(
              "set composition is not a union of atomic relations; "
              "triple is not a frame");
        comp[static_cast<std::size_t>(i) * n + j] = cell;
      }
  }
  out.structure =
      AtomStructure::make(std::move(names), std::move(conv), identity, std::move(comp));
  return out;
}

BuiltAlgebra build_coset_algebra(const GroupTriple& f) {
  auto report = verify_semi_frame(f);
  if (!report.all_pass())
    throw PreconditionError("triple is not a semi-frame:\n" + report.render());
  return build_algebra_impl(f, false);
}

BuiltAlgebra build_group_algebra(const GroupTriple& f) {
  auto record = frame_record(f);
  if (!record.frame)
    throw PreconditionError("triple is not a frame");
  return build_algebra_impl(f, true);
}

std::vector<OtimesDiscrepancy> compare_otimes_composition(
    const GroupTriple& f, const BuiltAlgebra& built) {
  std::vector<OtimesDiscrepancy> out;
  const AtomStructure& a = *built.structure;
  const int n = a.atom_count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Mask otimes = a.composition_atoms(i, j);
      const Relation composite =
          built.relations[i].composed_with(built.relations[j]);
      Mask compose_atoms = 0;
      Relation covered(built.base_size);
      for (int t = 0; t < n; ++t)
        if (built.relations[t].subset_of(composite)) {
          compose_atoms |= bit(t);
          covered = covered.united_with(built.relations[t]);
        }
      const bool structural = !(covered == composite);
      if (structural || compose_atoms != otimes)
        out.push_back({i, j, otimes, compose_atoms, structural});
    }
  (void)f;
  return out;
}

std::string render_rel(const BuiltAlgebra& built) {
  std::ostringstream out;
  for (std::size_t i = 0; i < built.atoms.size(); ++i) {
    const auto& [x, y, alpha] = built.atoms[i];
    out << "rel " << x << " " << y << " " << alpha << ":\n";
    const Relation& r = built.relations[i];
    for (int u = 0; u < r.base_size(); ++u)
      for (int v : bits(r.row(u)))
        out << "pair " << built.base_label(u) << " " << built.base_label(v)
            << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Generation

namespace {

struct CatalogEntry {
  GroupPtr group;
  std::string name;
};

std::vector<CatalogEntry> group_catalog(int max_order) {
  std::vector<CatalogEntry> out;
  for (int n = 1; n <= max_order; ++n) {
    out.push_back({FiniteGroup::cyclic(n), "c" + std::to_string(n)});
    if (n == 4) out.push_back({FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                           FiniteGroup::cyclic(2)),
                               "c2xc2"});
    if (n == 6) out.push_back({FiniteGroup::symmetric(3), "s3"});
    if (n == 8) {
      out.push_back({FiniteGroup::direct_product(FiniteGroup::cyclic(4),
                                                 FiniteGroup::cyclic(2)),
                     "c4xc2"});
      out.push_back(
          {FiniteGroup::direct_product(
               FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                           FiniteGroup::cyclic(2)),
               FiniteGroup::cyclic(2)),
           "c2xc2xc2"});
    }
  }
  if (max_order >= 24) out.push_back({FiniteGroup::symmetric(4), "s4"});
  return out;
}

std::vector<Mask> normal_subgroups(const GroupPtr& g) {
  std::vector<Mask> out;
  const std::uint64_t total = std::uint64_t{1} << g->order();
  for (std::uint64_t m = 1; m < total; ++m)
    if (is_subgroup(*g, m) && is_normal(Subgroup{g, m})) out.push_back(m);
  return out;
}

// All isomorphisms between the quotients (g1,h1) and (g2,h2), as aligned
// target coset lists (index 0 stays the subgroup).
std::vector<std::vector<Mask>> quotient_isos(const GroupPtr& g1, Mask h1,
                                             const GroupPtr& g2, Mask h2) {
  CosetSystem s1 = coset_system(Subgroup{g1, h1}, Side::Left);
  CosetSystem s2 = coset_system(Subgroup{g2, h2}, Side::Left);
  std::vector<std::vector<Mask>> out;
  if (s1.count() != s2.count()) return out;
  const int q = s1.count();
  std::vector<int> image(q, -1);
  std::vector<bool> used(q, false);
  image[0] = 0;
  used[0] = true;

  auto mul_index = [](const FiniteGroup& g, const CosetSystem& s, int i, int j) {
    return s.index_of_coset(set_product(g, s.cosets[i], s.cosets[j]));
  };

  auto consistent = [&](int upto) {
    for (int i = 0; i <= upto; ++i)
      for (int j = 0; j <= upto; ++j) {
        const int k = mul_index(*g1, s1, i, j);
        if (k > upto && image[k] < 0) continue;
        if (image[k] < 0) continue;
        if (mul_index(*g2, s2, image[i], image[j]) != image[k]) return false;
      }
    return true;
  };

  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == q) {
      std::vector<Mask> aligned(q);
      for (int i = 0; i < q; ++i) aligned[i] = s2.cosets[image[i]];
      out.push_back(std::move(aligned));
      return;
    }
    for (int t = 0; t < q; ++t) {
      if (used[t]) continue;
      image[pos] = t;
      used[t] = true;
      if (consistent(pos)) self(self, pos + 1);
      image[pos] = -1;
      used[t] = false;
    }
  };
  rec(rec, 1);
  return out;
}

// Set partitions of {0..k-1} in restricted-growth-string order.
std::vector<std::vector<int>> set_partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(k, 0);
  auto rec = [&](auto&& self, int pos, int maxv) -> void {
    if (pos == k) {
      out.push_back(rgs);
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[pos] = v;
      self(self, pos + 1, std::max(maxv, v));
    }
  };
  rec(rec, 1, 0);
  return out;
}

struct PairChoice {
  Mask h, k;
  std::vector<Mask> h_cosets, k_cosets;
};

}  // namespace

void generate_triples(
    const GenerationBounds& bounds,
    const std::function<bool(const GroupTriple&, const GenerationMeta&)>& consumer) {
  const auto catalog = group_catalog(bounds.max_group_order);
  GenerationMeta meta;

  for (int k = 1; k <= bounds.max_index_count; ++k) {
    for (const auto& rgs : set_partitions(k)) {
      std::vector<std::vector<bool>> related(k, std::vector<bool>(k, false));
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) related[x][y] = rgs[x] == rgs[y];

      // Assign a catalog group per index.
      std::vector<int> pick(k, 0);
      auto next_pick = [&]() {
        for (int i = k - 1; i >= 0; --i) {
          if (++pick[i] < static_cast<int>(catalog.size())) return true;
          pick[i] = 0;
        }
        return false;
      };
      do {
        GroupTriple f;
        f.related = related;
        for (int i = 0; i < k; ++i) f.groups.push_back(catalog[pick[i]].group);
        f.pairs.assign(k, std::vector<TriplePairData>(k));
        // Diagonal pairs: trivial subgroups, identity isomorphism.
        for (int x = 0; x < k; ++x) {
          TriplePairData pd;
          pd.h = Subgroup{f.groups[x], bit(f.groups[x]->identity())};
          pd.k = pd.h;
          CosetSystem sys = coset_system(pd.h, Side::Left);
          pd.h_cosets = sys.cosets;
          pd.k_cosets = sys.cosets;
          f.pairs[x][x] = pd;
        }

        // Off-diagonal slots x<y within a class.
        std::vector<std::pair<int, int>> slots;
        for (int x = 0; x < k; ++x)
          for (int y = x + 1; y < k; ++y)
            if (related[x][y]) slots.emplace_back(x, y);

        std::vector<std::vector<PairChoice>> options(slots.size());
        bool feasible = true;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          auto [x, y] = slots[s];
          for (Mask h : normal_subgroups(f.groups[x]))
            for (Mask kk : normal_subgroups(f.groups[y])) {
              for (auto& aligned : quotient_isos(f.groups[x], h, f.groups[y], kk)) {
                PairChoice pc;
                pc.h = h;
                pc.k = kk;
                pc.h_cosets =
                    coset_system(Subgroup{f.groups[x], h}, Side::Left).cosets;
                pc.k_cosets = aligned;
                options[s].push_back(std::move(pc));
              }
            }
          if (options[s].empty()) feasible = false;
        }
        if (!feasible) continue;

        std::vector<std::size_t> sel(slots.size(), 0);
        auto emit_with_shifts = [&]() -> bool {
          for (std::size_t s = 0; s < slots.size(); ++s) {
            auto [x, y] = slots[s];
            const auto& pc = options[s][sel[s]];
            TriplePairData fwd;
            fwd.h = Subgroup{f.groups[x], pc.h};
            fwd.k = Subgroup{f.groups[y], pc.k};
            fwd.h_cosets = pc.h_cosets;
            fwd.k_cosets = pc.k_cosets;
            f.pairs[x][y] = fwd;
            TriplePairData rev;
            rev.h = fwd.k;
            rev.k = fwd.h;
            rev.h_cosets = fwd.k_cosets;
            rev.k_cosets = fwd.h_cosets;
            f.pairs[y][x] = rev;
          }
          ++meta.candidate;

          // Per-triple qualifying shifting cosets: condition (iv) is local
          // to each triple once the pair data is fixed.
          const auto triples = f.e3_triples();
          std::vector<std::vector<Mask>> qualifying(triples.size());
          for (std::size_t t = 0; t < triples.size(); ++t) {
            auto [x, y, z] = triples[t];
            const Mask m = f.product_subgroup_mask(x, y, z);
            if (!is_subgroup(*f.groups[x], m)) break;
            CosetSystem cs = coset_system(subgroup_of(f.groups[x], m), Side::Left);
            for (const Mask c : cs.cosets) {
              if (!bounds.include_shifts && c != m) continue;
              f.shifting.clear();
              // Prime every triple with the identity coset, then this one.
              for (auto [p, q, r] : triples)
                f.shifting[{p, q, r}] = f.product_subgroup_mask(p, q, r);
              f.shifting[{x, y, z}] = c;
              GroupTriple probe = f;
              auto rep = verify_semi_frame(probe);
              bool this_ok = true;
              for (const auto& cond : rep.conditions)
                if (!cond.pass && cond.name == "(iv) composition" &&
                    cond.witness.find("(" + std::to_string(x) + "," +
                                      std::to_string(y) + "," +
                                      std::to_string(z) + ")") != std::string::npos)
                  this_ok = false;
              if (this_ok) qualifying[t].push_back(c);
            }
          }
          bool any_empty = false;
          for (const auto& q : qualifying) any_empty |= q.empty();
          if (any_empty) return true;

          // Every combination of qualifying shifting cosets.
          std::vector<std::size_t> csel(triples.size(), 0);
          while (true) {
            f.shifting.clear();
            for (std::size_t t = 0; t < triples.size(); ++t)
              f.shifting[triples[t]] = qualifying[t][csel[t]];
            auto rep = verify_semi_frame(f);
            if (rep.all_pass()) {
              ++meta.emitted;
              std::ostringstream desc;
              desc << "I=" << k << " groups=[";
              for (int i = 0; i < k; ++i)
                desc << (i ? "," : "") << catalog[pick[i]].name;
              desc << "]";
              for (std::size_t s = 0; s < slots.size(); ++s) {
                auto [x, y] = slots[s];
                desc << " H" << x << y << "=" << std::hex
                     << options[s][sel[s]].h << std::dec;
              }
              for (std::size_t t = 0; t < triples.size(); ++t) {
                auto [x, y, z] = triples[t];
                desc << " C" << x << y << z << "=" << std::hex
                     << qualifying[t][csel[t]] << std::dec;
              }
              meta.description = desc.str();
              if (!consumer(f, meta)) return false;
              if (bounds.limit && meta.emitted >= bounds.limit) return false;
            }
            std::size_t t = 0;
            while (t < triples.size() && ++csel[t] == qualifying[t].size()) {
              csel[t] = 0;
              ++t;
            }
            if (t == triples.size()) break;
          }
          return true;
        };

        while (true) {
          if (!emit_with_shifts()) return;
          std::size_t s = 0;
          while (s < slots.size() && ++sel[s] == options[s].size()) {
            sel[s] = 0;
            ++s;
          }
          if (s == slots.size()) break;
        }
      } while (next_pick());
    }
  }
}

}  // namespace cosetra
