#include "cosetra/group_core.hpp"

#include <algorithm>
#include <atomic>

namespace cosetra {

namespace {

std::uint32_t next_group_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}

void check_same_parent(const Subgroup& a, const Subgroup& b) {
  if (a.parent->id() != b.parent->id())
    throw StructureMismatchError("subgroups of different parent groups");
}

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                 std::vector<std::string> labels) {
  const int m = static_cast<int>(table.size());
  if (m <= 0 || m > kMaxAtoms)
    throw ValidationError("group order must be in 1.." + std::to_string(kMaxAtoms));
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(table[i].size()) != m)
      throw ValidationError("multiplication table is not square at row " +
                            std::to_string(i));
    for (int j = 0; j < m; ++j)
      if (table[i][j] < 0 || table[i][j] >= m)
        throw ValidationError("table entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") out of range");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw ValidationError("multiplication is not associative at (" +
                                std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ")");
  int e = -1;
  for (int i = 0; i < m; ++i) {
    bool neutral = true;
    for (int j = 0; j < m; ++j)
      if (table[i][j] != j || table[j][i] != j) neutral = false;
    if (neutral) {
      e = i;
      break;
    }
  }
  if (e < 0) throw ValidationError("table has no two-sided identity element");
  std::vector<int> inv(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      if (table[i][j] == e && table[j][i] == e) {
        inv[i] = j;
        break;
      }
    if (inv[i] < 0)
      throw ValidationError("element " + std::to_string(i) +
                            " has no two-sided inverse");
  }
  if (labels.empty())
    for (int i = 0; i < m; ++i) labels.push_back("g" + std::to_string(i));
  if (static_cast<int>(labels.size()) != m)
    throw ValidationError("label list does not match group order");

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->m_ = m;
  g->id_ = next_group_id();
  g->e_ = e;
  g->mul_.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g->mul_[i * m + j] = table[i][j];
  g->inv_ = std::move(inv);
  g->labels_ = std::move(labels);
  return g;
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n <= 0 || n > kMaxAtoms) throw ValidationError("cyclic order out of range");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("z" + std::to_string(i));
  return from_table(t, std::move(labels));
}

GroupPtr FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4)
    throw ValidationError("symmetric group supported for 1 <= n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // Identity permutation first: next_permutation starts there already.
  const int m = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) -
                            perms.begin());
  };
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<int> q(n);
      for (int point = 0; point < n; ++point) q[point] = perms[i][perms[j][point]];
      t[i][j] = index_of(q);
    }
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    std::string s = "p";
    for (int point = 0; point < n; ++point) s += std::to_string(perms[i][point]);
    labels.push_back(s);
  }
  return from_table(t, std::move(labels));
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int ma = a->order(), mb = b->order();
  if (ma * mb > kMaxAtoms)
    throw ValidationError("direct product exceeds the order cap");
  const int m = ma * mb;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  auto enc = [&](int x, int y) { return x * mb + y; };
  for (int x1 = 0; x1 < ma; ++x1)
    for (int y1 = 0; y1 < mb; ++y1)
      for (int x2 = 0; x2 < ma; ++x2)
        for (int y2 = 0; y2 < mb; ++y2)
          t[enc(x1, y1)][enc(x2, y2)] = enc(a->mul(x1, x2), b->mul(y1, y2));
  std::vector<std::string> labels;
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) labels.push_back(a->label(x) + "." + b->label(y));
  return from_table(t, std::move(labels));
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
  return m_ == other.m_ && mul_ == other.mul_;
}

Mask set_product(const FiniteGroup& g, Mask a, Mask b) {
  Mask out = 0;
  for (int f : bits(a))
    for (int h : bits(b)) out |= bit(g.mul(f, h));
  return out;
}

Mask set_inverse(const FiniteGroup& g, Mask a) {
  Mask out = 0;
  for (int f : bits(a)) out |= bit(g.inverse(f));
  return out;
}

Mask set_conjugate(const FiniteGroup& g, Mask a, int f) {
  Mask out = 0;
  for (int h : bits(a)) out |= bit(g.mul(g.mul(g.inverse(f), h), f));
  return out;
}

int Subgroup::index() const {
  return parent->order() / popcount(members);
}

bool is_subgroup(const FiniteGroup& g, Mask members) {
  if (!has_bit(members, g.identity())) return false;
  for (int f : bits(members)) {
    if (!has_bit(members, g.inverse(f))) return false;
    for (int h : bits(members))
      if (!has_bit(members, g.mul(f, h))) return false;
  }
  return true;
}

Subgroup subgroup_from(const GroupPtr& parent, Mask generators) {
  if (generators & ~parent->all())
    throw ValidationError("generators out of range");
  Mask closure = bit(parent->identity());
  Mask frontier = closure | generators;
  while (frontier != closure) {
    closure = frontier;
    for (int f : bits(closure)) {
      frontier |= bit(parent->inverse(f));
      for (int h : bits(closure)) frontier |= bit(parent->mul(f, h));
    }
  }
  return Subgroup{parent, closure};
}

Subgroup subgroup_of(const GroupPtr& parent, Mask members) {
  if (!is_subgroup(*parent, members))
    throw ValidationError("member set is not a subgroup");
  return Subgroup{parent, members};
}

bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = *h.parent;
  for (int f = 0; f < g.order(); ++f)
    if (set_conjugate(g, h.members, f) != h.members) return false;
  return true;
}

Mask coset_of(const FiniteGroup& g, Mask subgroup, int rep, Side side) {
  Mask out = 0;
  for (int h : bits(subgroup))
    out |= bit(side == Side::Left ? g.mul(rep, h) : g.mul(h, rep));
  return out;
}

int CosetSystem::index_of(int g) const {
  for (int i = 0; i < count(); ++i)
    if (has_bit(cosets[i], g)) return i;
  return -1;
}

int CosetSystem::index_of_coset(Mask coset) const {
  for (int i = 0; i < count(); ++i)
    if (cosets[i] == coset) return i;
  return -1;
}

CosetSystem coset_system(const Subgroup& h, Side side) {
  const FiniteGroup& g = *h.parent;
  CosetSystem sys;
  sys.subgroup = h;
  sys.side = side;
  Mask covered = 0;
  // Coset 0 is the subgroup itself; the rest in order of least member.
  while (covered != g.all()) {
    const int rep = lowest_bit(g.all() & ~covered);
    const Mask c = coset_of(g, h.members, rep, side);
    sys.cosets.push_back(c);
    sys.representatives.push_back(rep);
    covered |= c;
  }
  return sys;
}

Subgroup product_subgroup(const Subgroup& h, const Subgroup& k) {
  check_same_parent(h, k);
  const Mask prod = set_product(*h.parent, h.members, k.members);
  if (!is_subgroup(*h.parent, prod))
    throw ValidationError(
        "product set is not a subgroup (neither factor normal enough)");
  return Subgroup{h.parent, prod};
}

QuotientIso::QuotientIso(Subgroup h, Subgroup k, CosetSystem source_system,
                         CosetSystem target_system)
    : h_(std::move(h)), k_(std::move(k)), src_(std::move(source_system)),
      dst_(std::move(target_system)) {
  if (!is_normal(h_) || !is_normal(k_))
    throw PreconditionError("quotient isomorphism requires normal subgroups");
  if (src_.count() != dst_.count())
    throw ValidationError("coset systems of different index");
  if (src_.cosets[0] != h_.members || dst_.cosets[0] != k_.members)
    throw ValidationError("coset 0 must be the subgroup on both sides");
}

Mask QuotientIso::apply(Mask h_coset) const {
  const int i = src_.index_of_coset(h_coset);
  if (i < 0) throw PreconditionError("mask is not a coset of the source subgroup");
  return dst_.cosets[i];
}

Mask QuotientIso::apply_inverse(Mask k_coset) const {
  const int i = dst_.index_of_coset(k_coset);
  if (i < 0) throw PreconditionError("mask is not a coset of the target subgroup");
  return src_.cosets[i];
}

Mask QuotientIso::image_of_union(Mask s) const {
  Mask out = 0;
  for (int i = 0; i < src_.count(); ++i)
    if (src_.cosets[i] & s) {
      if ((src_.cosets[i] & s) != src_.cosets[i])
        throw PreconditionError("mask is not a union of source cosets");
      out |= dst_.cosets[i];
    }
  return out;
}

Mask QuotientIso::preimage_of_union(Mask s) const {
  Mask out = 0;
  for (int i = 0; i < dst_.count(); ++i)
    if (dst_.cosets[i] & s) {
      if ((dst_.cosets[i] & s) != dst_.cosets[i])
        throw PreconditionError("mask is not a union of target cosets");
      out |= src_.cosets[i];
    }
  return out;
}

QuotientIso QuotientIso::inverse() const {
  return QuotientIso(k_, h_, dst_, src_);
}

QuotientIso QuotientIso::compose(const QuotientIso& next) const {
  if (k_.parent->id() != next.h_.parent->id() || k_.members != next.h_.members)
    throw StructureMismatchError(
        "composition requires matching middle quotient");
  CosetSystem aligned = next.dst_;
  aligned.cosets.clear();
  aligned.representatives.clear();
  for (int i = 0; i < src_.count(); ++i) {
    const Mask mid = dst_.cosets[i];
    const Mask out = next.apply(mid);
    aligned.cosets.push_back(out);
    aligned.representatives.push_back(lowest_bit(out));
  }
  return QuotientIso(h_, next.k_, src_, aligned);
}

bool QuotientIso::same_map(const QuotientIso& other) const {
  if (h_.parent->id() != other.h_.parent->id() || h_.members != other.h_.members)
    return false;
  if (k_.parent->id() != other.k_.parent->id() || k_.members != other.k_.members)
    return false;
  for (int i = 0; i < src_.count(); ++i)
    if (other.apply(src_.cosets[i]) != dst_.cosets[i]) return false;
  return true;
}

QuotientIso quotient_iso(const Subgroup& h, const Subgroup& k,
                         const std::vector<std::pair<int, int>>& rep_map) {
  CosetSystem src = coset_system(h, Side::Left);
  CosetSystem dst;
  dst.subgroup = k;
  dst.side = Side::Left;
  dst.cosets.assign(src.count(), 0);
  dst.representatives.assign(src.count(), -1);
  Mask covered = 0;
  for (auto [a, b] : rep_map) {
    if (a < 0 || a >= h.parent->order() || b < 0 || b >= k.parent->order())
      throw ValidationError("representative out of range in quotient map");
    const int i = src.index_of(a);
    const Mask img = coset_of(*k.parent, k.members, b, Side::Left);
    if (dst.cosets[i] != 0 && dst.cosets[i] != img)
      throw ValidationError("conflicting images for one source coset");
    if (dst.cosets[i] == 0 && (covered & img))
      throw ValidationError("quotient map is not injective on cosets");
    dst.cosets[i] = img;
    dst.representatives[i] = lowest_bit(img);
    covered |= img;
  }
  for (int i = 0; i < src.count(); ++i)
    if (dst.cosets[i] == 0)
      throw ValidationError("quotient map leaves a source coset without image");
  QuotientIso phi(h, k, std::move(src), std::move(dst));
  auto check = verify_quotient_iso(phi);
  if (!check.ok) throw ValidationError("not a quotient isomorphism: " + check.detail);
  return phi;
}

QuotientIsoCheck verify_quotient_iso(const QuotientIso& phi) {
  QuotientIsoCheck out;
  const auto& src = phi.source_system();
  const auto& dst = phi.target_system();
  const FiniteGroup& gs = *phi.source_parent();
  const FiniteGroup& gt = *phi.target_parent();
  if (dst.cosets[0] != phi.target_subgroup().members) {
    out.ok = false;
    out.detail = "identity coset is not mapped to the identity coset";
    return out;
  }
  for (int xi = 0; xi < src.count(); ++xi)
    for (int eta = 0; eta < src.count(); ++eta) {
      const Mask sprod = set_product(gs, src.cosets[xi], src.cosets[eta]);
      const Mask tprod = set_product(gt, dst.cosets[xi], dst.cosets[eta]);
      const int mu = src.index_of_coset(sprod);
      if (mu < 0 || dst.cosets[mu] != tprod) {
        out.ok = false;
        out.witness_xi = xi;
        out.witness_eta = eta;
        out.detail = "coset product not preserved at (" + std::to_string(xi) +
                     "," + std::to_string(eta) + ")";
        return out;
      }
    }
  return out;
}

QuotientIso induce_on_coarser(const QuotientIso& phi, Mask coarser_m) {
  const GroupPtr& gs = phi.source_parent();
  if ((phi.source_subgroup().members & ~coarser_m) != 0)
    throw PreconditionError("coarser subgroup must contain the source subgroup");
  Subgroup m = subgroup_of(gs, coarser_m);
  if (!is_normal(m)) throw PreconditionError("coarser subgroup must be normal");
  const Mask n_mask = phi.image_of_union(coarser_m);
  if (!is_subgroup(*phi.target_parent(), n_mask))
    throw ValidationError(
        "image of the coarser subgroup is not a subgroup of the target");
  Subgroup n = subgroup_of(phi.target_parent(), n_mask);
  CosetSystem src = coset_system(m, Side::Left);
  CosetSystem dst;
  dst.subgroup = n;
  dst.side = Side::Left;
  for (const Mask c : src.cosets) {
    const Mask img = phi.image_of_union(c);
    dst.cosets.push_back(img);
    dst.representatives.push_back(lowest_bit(img));
  }
  QuotientIso out(m, n, std::move(src), std::move(dst));
  auto check = verify_quotient_iso(out);
  if (!check.ok)
    throw ValidationError("induced map is not an isomorphism: " + check.detail);
  return out;
}

QuotientIso inner_automorphism(const GroupPtr& g, Mask h_normal, Mask coset_c) {
  Subgroup h = subgroup_of(g, h_normal);
  if (!is_normal(h)) throw PreconditionError("inner automorphism needs a normal subgroup");
  CosetSystem src = coset_system(h, Side::Left);
  if (src.index_of_coset(coset_c) < 0)
    throw PreconditionError("the determining set is not a coset of the subgroup");
  const Mask c_inv = set_inverse(*g, coset_c);
  CosetSystem dst = src;
  for (int i = 0; i < src.count(); ++i) {
    const Mask img = set_product(*g, set_product(*g, c_inv, src.cosets[i]), coset_c);
    dst.cosets[i] = img;
    dst.representatives[i] = lowest_bit(img);
  }
  return QuotientIso(h, h, std::move(src), std::move(dst));
}

QuotientIso identity_automorphism(const GroupPtr& g, Mask h_normal) {
  return inner_automorphism(g, h_normal, h_normal);
}

GroupPtr quotient_group(const GroupPtr& g, Mask h_normal, Side side) {
  Subgroup h = subgroup_of(g, h_normal);
  if (!is_normal(h)) throw PreconditionError("quotient group needs a normal subgroup");
  CosetSystem sys = coset_system(h, side);
  const int m = sys.count();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Mask prod = set_product(*g, sys.cosets[i], sys.cosets[j]);
      const int k = sys.index_of_coset(prod);
      if (k < 0)
        throw InternalConsistencyError("coset product is not a coset");
      t[i][j] = k;
    }
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i)
    labels.push_back("[" + g->label(sys.representatives[i]) + "]");
  return FiniteGroup::from_table(t, std::move(labels));
}

}  // namespace cosetra
