#include "cosetra/frame_extract.hpp"

#include <algorithm>
#include <sstream>

namespace cosetra {

namespace {

std::vector<int> default_order(const EquivalenceE& e,
                               const std::vector<int>& requested) {
  const int k = e.count();
  if (requested.empty()) {
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    return order;
  }
  if (static_cast<int>(requested.size()) != k)
    throw PreconditionError("atom order must list every measurable atom once");
  std::vector<bool> seen(k, false);
  for (int p : requested) {
    if (p < 0 || p >= k || seen[p])
      throw PreconditionError("atom order is not a permutation of the index set");
    seen[p] = true;
  }
  return requested;
}

// rank[x] = place of position x in the chosen order.
std::vector<int> ranks(const std::vector<int>& order) {
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  return rank;
}

}  // namespace

SemiScaffold build_semi_scaffold(const AtomStructure& a,
                                 const std::vector<MeasurableAtomRecord>& records,
                                 const EquivalenceE& e,
                                 const std::vector<int>& order_in) {
  const int k = e.count();
  SemiScaffold s;
  s.order = default_order(e, order_in);
  const auto rank = ranks(s.order);
  s.entry.assign(k, std::vector<int>(k, -1));
  for (int x = 0; x < k; ++x) s.entry[x][x] = e.atoms[x];
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (x == y || !e.pair(x, y) || rank[x] > rank[y]) continue;
      const Element rect = a.rectangle(a.atom(e.atoms[x]), a.atom(e.atoms[y]));
      if (a.is_zero(rect))
        throw InternalConsistencyError("empty rectangle on an E-pair");
      const int axy = lowest_bit(rect.atoms);
      s.entry[x][y] = axy;
      s.entry[y][x] = a.converse_atom(axy);
    }
  if (records.size() != static_cast<std::size_t>(k))
    throw PreconditionError("records do not match the equivalence");
  // Conditions (i)-(iii) by construction; re-check them anyway.
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (!e.pair(x, y)) continue;
      const int axy = s.entry[x][y];
      const Element rect = a.rectangle(a.atom(e.atoms[x]), a.atom(e.atoms[y]));
      if (!a.leq(a.atom(axy), rect) || s.entry[y][x] != a.converse_atom(axy))
        throw InternalConsistencyError("semi-scaffold conditions violated");
    }
  s.is_scaffold = false;
  return s;
}

std::optional<SemiScaffold> find_scaffold(
    const AtomStructure& a, const std::vector<MeasurableAtomRecord>& records,
    const EquivalenceE& e, const std::vector<int>& order_in,
    ScaffoldSearchStats* stats_out) {
  const int k = e.count();
  SemiScaffold s = build_semi_scaffold(a, records, e, order_in);
  const auto rank = ranks(s.order);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      if (x != y) s.entry[x][y] = -1;

  // Pairs x<y in rank order, lexicographic, so each slot closes exactly the
  // triples whose last pair it is.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int x = s.order[i], y = s.order[j];
      if (e.pair(x, y)) slots.emplace_back(x, y);
    }
  std::vector<std::vector<int>> choices(slots.size());
  ScaffoldSearchStats stats;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto [x, y] = slots[i];
    const Element rect = a.rectangle(a.atom(e.atoms[x]), a.atom(e.atoms[y]));
    for (int atom : bits(rect.atoms)) choices[i].push_back(atom);
    stats.space *= choices[i].size();
  }

  // The scaffold condition need only be checked on rank-ordered triples.
  auto triple_ok = [&](int x, int y, int z) {
    const Element axy = a.atom(s.entry[x][y]);
    const Element ayz = a.atom(s.entry[y][z]);
    return a.leq(a.atom(s.entry[x][z]), a.relative_product(axy, ayz));
  };
  auto assigned = [&](int x, int y) { return s.entry[x][y] >= 0; };

  std::optional<SemiScaffold> found;
  auto rec = [&](auto&& self, std::size_t slot) -> bool {
    ++stats.nodes;
    if (slot == slots.size()) {
      ++stats.leaves;
      return true;
    }
    auto [x, y] = slots[slot];
    for (int atom : choices[slot]) {
      s.entry[x][y] = atom;
      s.entry[y][x] = a.converse_atom(atom);
      bool ok = true;
      // Check every rank-ordered triple this assignment completes.
      for (int w = 0; ok && w < k; ++w) {
        if (w == x || w == y) continue;
        const int rw = rank[w], rx = rank[x], ry = rank[y];
        if (rw < rx && e.pair(w, x) && assigned(w, x) && assigned(w, y) &&
            !triple_ok(w, x, y))
          ok = false;
        if (rx < rw && rw < ry && e.pair(x, w) && assigned(x, w) &&
            assigned(w, y) && !triple_ok(x, w, y))
          ok = false;
        if (ry < rw && e.pair(y, w) && assigned(y, w) && assigned(x, w) &&
            !triple_ok(x, y, w))
          ok = false;
      }
      if (ok && self(self, slot + 1)) return true;
    }
    s.entry[x][y] = -1;
    s.entry[y][x] = -1;
    return false;
  };
  if (rec(rec, 0)) {
    s.is_scaffold = true;
    found = s;
  } else {
    stats.exhausted = true;
  }
  if (stats_out) *stats_out = stats;
  return found;
}

int TriplePairData::h_index_of(Mask coset) const {
  for (int i = 0; i < kappa(); ++i)
    if (h_cosets[i] == coset) return i;
  return -1;
}

Mask GroupTriple::product_subgroup_mask(int x, int y, int z) const {
  return set_product(*groups[x], pair(x, y).h.members, pair(x, z).h.members);
}

Mask GroupTriple::shifting_coset(int x, int y, int z) const {
  auto it = shifting.find({x, y, z});
  if (it != shifting.end()) return it->second;
  return product_subgroup_mask(x, y, z);
}

QuotientIso GroupTriple::phi(int x, int y) const {
  const TriplePairData& pd = pair(x, y);
  CosetSystem src;
  src.subgroup = pd.h;
  src.side = Side::Left;
  src.cosets = pd.h_cosets;
  for (Mask c : pd.h_cosets) src.representatives.push_back(lowest_bit(c));
  CosetSystem dst;
  dst.subgroup = pd.k;
  dst.side = Side::Right;
  dst.cosets = pd.k_cosets;
  for (Mask c : pd.k_cosets) dst.representatives.push_back(lowest_bit(c));
  return QuotientIso(pd.h, pd.k, std::move(src), std::move(dst));
}

std::vector<std::tuple<int, int, int>> GroupTriple::e3_triples() const {
  std::vector<std::tuple<int, int, int>> out;
  for (int x = 0; x < count(); ++x)
    for (int y = 0; y < count(); ++y)
      for (int z = 0; z < count(); ++z)
        if (in_e3(x, y, z)) out.emplace_back(x, y, z);
  return out;
}

bool SemiFrameReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.pass; });
}

std::string SemiFrameReport::render() const {
  std::ostringstream out;
  for (const auto& c : conditions) {
    out << c.name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.pass) out << "  (" << c.witness << ")";
    out << "\n";
  }
  return out.str();
}

namespace {

struct ConditionSink {
  SemiFrameReport& report;
  SemiFrameReport::Condition& open(std::string name) {
    report.conditions.push_back({std::move(name), true, ""});
    return report.conditions.back();
  }
};

}  // namespace

SemiFrameReport verify_semi_frame(const GroupTriple& f) {
  SemiFrameReport report;
  ConditionSink sink{report};
  const int k = f.count();

  auto& structural = sink.open("structure");
  auto fail = [](SemiFrameReport::Condition& c, const std::string& w) {
    if (c.pass) {
      c.pass = false;
      c.witness = w;
    }
  };
  auto pair_name = [&](int x, int y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  };
  auto triple_name = [&](int x, int y, int z) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," +
           std::to_string(z) + ")";
  };

  // Structural sanity: pair data present, subgroups normal, systems partition
  // the parents, alignment is a quotient isomorphism.
  for (int x = 0; x < k && structural.pass; ++x)
    for (int y = 0; y < k && structural.pass; ++y) {
      if (!f.in_e(x, y)) continue;
      const auto& pd = f.pair(x, y);
      if (!pd.h.parent || !pd.k.parent ||
          pd.h.parent->id() != f.groups[x]->id() ||
          pd.k.parent->id() != f.groups[y]->id()) {
        fail(structural, "pair " + pair_name(x, y) + " has missing or foreign data");
        break;
      }
      if (!is_subgroup(*f.groups[x], pd.h.members) ||
          !is_subgroup(*f.groups[y], pd.k.members) ||
          !is_normal(pd.h) || !is_normal(pd.k)) {
        fail(structural, "pair " + pair_name(x, y) + " subgroups not normal");
        break;
      }
      try {
        auto check = verify_quotient_iso(f.phi(x, y));
        if (!check.ok)
          fail(structural, "pair " + pair_name(x, y) + ": " + check.detail);
      } catch (const Error& err) {
        fail(structural, "pair " + pair_name(x, y) + ": " + err.what());
      }
    }
  for (auto [x, y, z] : f.e3_triples()) {
    if (!structural.pass) break;
    const Mask m = f.product_subgroup_mask(x, y, z);
    const Mask c = f.shifting_coset(x, y, z);
    if (!is_subgroup(*f.groups[x], m))
      fail(structural, "product subgroup at " + triple_name(x, y, z) +
                           " is not a subgroup");
    else if (coset_of(*f.groups[x], m, lowest_bit(c), Side::Left) != c)
      fail(structural, "shifting set at " + triple_name(x, y, z) +
                           " is not a coset of the product subgroup");
  }
  if (!structural.pass) {
    // The remaining conditions would be ill-typed on a defective triple.
    return report;
  }

  // (i) Diagonal isomorphisms are the identity automorphisms of G_x/{e}.
  auto& c1 = sink.open("(i) diagonal identity");
  for (int x = 0; x < k; ++x) {
    const auto& pd = f.pair(x, x);
    if (pd.h.members != bit(f.groups[x]->identity()) ||
        pd.k.members != bit(f.groups[x]->identity())) {
      fail(c1, "H/K at " + pair_name(x, x) + " is not the trivial subgroup");
      continue;
    }
    if (pd.h_cosets != pd.k_cosets)
      fail(c1, "phi at " + pair_name(x, x) + " moves a singleton coset");
  }

  // (ii) phi_yx is the inverse of phi_xy with swapped subgroups.
  auto& c2 = sink.open("(ii) converse pairing");
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (!f.in_e(x, y)) continue;
      const auto& xy = f.pair(x, y);
      const auto& yx = f.pair(y, x);
      if (yx.h.members != xy.k.members || yx.k.members != xy.h.members) {
        fail(c2, "subgroups of " + pair_name(y, x) + " are not the swap of " +
                     pair_name(x, y));
        continue;
      }
      if (!f.phi(y, x).same_map(f.phi(x, y).inverse()))
        fail(c2, "phi" + pair_name(y, x) + " != phi" + pair_name(x, y) + "^-1");
    }

  // (iii) phi_xy[H_xy;H_xz] = K_xy;H_yz.
  auto& c3 = sink.open("(iii) subgroup image");
  for (auto [x, y, z] : f.e3_triples()) {
    const Mask lhs = f.phi(x, y).image_of_union(f.product_subgroup_mask(x, y, z));
    const Mask rhs = set_product(*f.groups[y], f.pair(x, y).k.members,
                                 f.pair(y, z).h.members);
    if (lhs != rhs) fail(c3, "triple " + triple_name(x, y, z));
  }

  // (iv) induced isomorphisms compose up to the shifting inner automorphism.
  auto& c4 = sink.open("(iv) composition");
  if (c3.pass) {
    for (auto [x, y, z] : f.e3_triples()) {
      try {
        const Mask m = f.product_subgroup_mask(x, y, z);
        QuotientIso hat_xy = induce_on_coarser(f.phi(x, y), m);
        const Mask p = hat_xy.target_subgroup().members;  // K_xy;H_yz
        QuotientIso hat_yz = induce_on_coarser(f.phi(y, z), p);
        QuotientIso lhs = hat_xy.compose(hat_yz);
        QuotientIso hat_xz = induce_on_coarser(f.phi(x, z), m);
        QuotientIso tau =
            inner_automorphism(f.groups[x], m, f.shifting_coset(x, y, z));
        QuotientIso rhs = tau.compose(hat_xz);
        if (!lhs.same_map(rhs)) fail(c4, "triple " + triple_name(x, y, z));
      } catch (const Error& err) {
        fail(c4, "triple " + triple_name(x, y, z) + ": " + err.what());
      }
    }
  } else {
    fail(c4, "skipped: condition (iii) failed");
  }
  return report;
}

namespace {

// Shared helper: the canonical pair data of a scaffold atom a_xy, following
// the converse convention for the mirrored pair.
struct Extraction {
  const AtomStructure& a;
  const std::vector<MeasurableAtomRecord>& records;
  const EquivalenceE& e;
  const SemiScaffold& s;
  GroupTriple f;

  Extraction(const AtomStructure& a_, const std::vector<MeasurableAtomRecord>& r_,
             const EquivalenceE& e_, const SemiScaffold& s_)
      : a(a_), records(r_), e(e_), s(s_) {
    const int k = e.count();
    f.groups.resize(k);
    for (int x = 0; x < k; ++x) f.groups[x] = records[x].group;
    f.related.assign(k, std::vector<bool>(k, false));
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) f.related[x][y] = e.pair(x, y);
    f.pairs.assign(k, std::vector<TriplePairData>(k));
    const auto rank = ranks(s.order);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) {
        if (!e.pair(x, y) || rank[x] > rank[y]) continue;
        fill_pair(x, y);
      }
  }

  void fill_pair(int x, int y) {
    const Element axy = a.atom(s.at(x, y));
    QuotientIso phi = quotient_iso_of_regular(a, records[x], records[y], axy);
    TriplePairData fwd;
    fwd.h = phi.source_subgroup();
    fwd.k = phi.target_subgroup();
    fwd.h_cosets = phi.source_system().cosets;
    fwd.k_cosets = phi.target_system().cosets;
    f.pairs[x][y] = fwd;
    if (x != y) {
      // Converse convention: H_yx = K_xy with the same indexing, K_yx = H_xy.
      TriplePairData rev;
      rev.h = fwd.k;
      rev.k = fwd.h;
      rev.h_cosets = fwd.k_cosets;
      rev.k_cosets = fwd.h_cosets;
      f.pairs[y][x] = rev;
    }
  }

  // Atom a_{xy,alpha} as an element.
  Element scaffold_atom(int x, int y, int alpha) const {
    return translate_coset(a, records[x], a.atom(s.at(x, y)),
                           f.pair(x, y).h_cosets[alpha], Side::Left);
  }

  // Indices zeta with H_{xz,zeta};a_xz <= a_xy;a_yz.
  std::vector<int> qualifying(int x, int y, int z) const {
    const Element prod = a.relative_product(a.atom(s.at(x, y)), a.atom(s.at(y, z)));
    std::vector<int> out;
    for (int zeta = 0; zeta < f.pair(x, z).kappa(); ++zeta)
      if (a.leq(scaffold_atom(x, z, zeta), prod)) out.push_back(zeta);
    return out;
  }
};

}  // namespace

GroupTriple extract_semi_frame(const AtomStructure& a,
                               const std::vector<MeasurableAtomRecord>& records,
                               const EquivalenceE& e, const SemiScaffold& s) {
  Extraction ctx(a, records, e, s);
  for (auto [x, y, z] : ctx.f.e3_triples()) {
    const auto qualifying = ctx.qualifying(x, y, z);
    if (qualifying.empty())
      throw InternalConsistencyError(
          "no translation of the scaffold atom fits under the product");
    const int zeta = qualifying.front();
    const Mask c = set_product(*ctx.f.groups[x], ctx.f.pair(x, y).h.members,
                               ctx.f.pair(x, z).h_cosets[zeta]);
    ctx.f.shifting[{x, y, z}] = c;
  }
  auto report = verify_semi_frame(ctx.f);
  if (!report.all_pass())
    throw InternalConsistencyError("extracted triple fails validation:\n" +
                                   report.render());
  return ctx.f;
}

bool shifting_coset_well_defined(const AtomStructure& a,
                                 const std::vector<MeasurableAtomRecord>& records,
                                 const EquivalenceE& e, const SemiScaffold& s,
                                 int x, int y, int z) {
  if (!e.pair(x, y) || !e.pair(y, z))
    throw PreconditionError("triple is not in E_3");
  Extraction ctx(a, records, e, s);
  const auto qualifying = ctx.qualifying(x, y, z);
  if (qualifying.empty())
    throw InternalConsistencyError(
        "no translation of the scaffold atom fits under the product");
  Mask first = 0;
  for (std::size_t i = 0; i < qualifying.size(); ++i) {
    const Mask c = set_product(*ctx.f.groups[x], ctx.f.pair(x, y).h.members,
                               ctx.f.pair(x, z).h_cosets[qualifying[i]]);
    if (i == 0)
      first = c;
    else if (c != first)
      return false;
  }
  return true;
}

FrameRecord frame_record(const GroupTriple& f) {
  FrameRecord out;
  out.triple = f;
  out.frame = true;
  for (auto [x, y, z] : f.e3_triples()) {
    if (f.shifting_coset(x, y, z) != f.product_subgroup_mask(x, y, z)) {
      out.frame = false;
      return out;
    }
    const Mask m = f.product_subgroup_mask(x, y, z);
    QuotientIso hat_xy = induce_on_coarser(f.phi(x, y), m);
    QuotientIso hat_yz =
        induce_on_coarser(f.phi(y, z), hat_xy.target_subgroup().members);
    QuotientIso hat_xz = induce_on_coarser(f.phi(x, z), m);
    if (!hat_xy.compose(hat_yz).same_map(hat_xz)) {
      out.frame = false;
      return out;
    }
  }
  return out;
}

}  // namespace cosetra
