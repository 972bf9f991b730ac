#include "cosetra/ra_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace cosetra {

namespace {

std::uint32_t next_structure_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace

StructurePtr AtomStructure::make(std::vector<std::string> names,
                                 std::vector<int> converse, Mask identity_atoms,
                                 std::vector<Mask> composition) {
  const int n = static_cast<int>(names.size());
  if (n <= 0 || n > kMaxAtoms)
    throw ValidationError("atom count must be in 1.." + std::to_string(kMaxAtoms));
  if (static_cast<int>(converse.size()) != n)
    throw ValidationError("converse map must list one image per atom");
  if (composition.size() != static_cast<std::size_t>(n) * n)
    throw ValidationError("composition table must be " + std::to_string(n) + "x" +
                          std::to_string(n));
  const Mask universe = full_mask(n);
  for (int i = 0; i < n; ++i) {
    if (names[i].empty())
      throw ValidationError("atom " + std::to_string(i) + " has an empty name");
    for (int j = 0; j < n; ++j)
      if (i != j && names[i] == names[j])
        throw ValidationError("duplicate atom name '" + names[i] + "'");
    if (converse[i] < 0 || converse[i] >= n)
      throw ValidationError("converse image of atom " + std::to_string(i) +
                            " out of range");
  }
  for (int i = 0; i < n; ++i)
    if (converse[converse[i]] != i)
      throw ValidationError("converse map is not an involution at atom " +
                            std::to_string(i));
  if (identity_atoms == 0)
    throw ValidationError("identity atom set is empty");
  if (identity_atoms & ~universe)
    throw ValidationError("identity atom set references atoms out of range");
  for (int k : bits(identity_atoms))
    if (converse[k] != k)
      throw ValidationError("identity atom " + std::to_string(k) +
                            " is not fixed by converse");
  for (auto m : composition)
    if (m & ~universe)
      throw ValidationError("composition table references atoms out of range");

  auto s = std::shared_ptr<AtomStructure>(new AtomStructure());
  s->n_ = n;
  s->id_ = next_structure_id();
  s->names_ = std::move(names);
  s->conv_ = std::move(converse);
  s->identity_ = identity_atoms;
  s->comp_ = std::move(composition);
  return s;
}

void AtomStructure::check_owned(const Element& e) const {
  if (e.sid != id_)
    throw StructureMismatchError("element does not belong to this structure");
  if (e.atoms & ~universe_atoms())
    throw StructureMismatchError("element references atoms out of range");
}

Element AtomStructure::element(Mask atoms) const {
  if (atoms & ~universe_atoms())
    throw ValidationError("element mask references atoms out of range");
  return Element{atoms, id_};
}

Element AtomStructure::atom(int i) const {
  if (i < 0 || i >= n_) throw ValidationError("atom index out of range");
  return Element{bit(i), id_};
}

bool AtomStructure::is_atom(const Element& a) const {
  check_owned(a);
  return popcount(a.atoms) == 1;
}

bool AtomStructure::is_zero(const Element& a) const {
  check_owned(a);
  return a.atoms == 0;
}

bool AtomStructure::leq(const Element& a, const Element& b) const {
  check_owned(a);
  check_owned(b);
  return (a.atoms & ~b.atoms) == 0;
}

Element AtomStructure::join(const Element& a, const Element& b) const {
  check_owned(a);
  check_owned(b);
  return Element{a.atoms | b.atoms, id_};
}

Element AtomStructure::meet(const Element& a, const Element& b) const {
  check_owned(a);
  check_owned(b);
  return Element{a.atoms & b.atoms, id_};
}

Element AtomStructure::complement(const Element& a) const {
  check_owned(a);
  return Element{universe_atoms() & ~a.atoms, id_};
}

Element AtomStructure::relative_product(const Element& a,
                                        const Element& b) const {
  check_owned(a);
  check_owned(b);
  Mask out = 0;
  for (int i : bits(a.atoms))
    for (int j : bits(b.atoms)) out |= comp_[i * n_ + j];
  return Element{out, id_};
}

Element AtomStructure::converse_of(const Element& a) const {
  check_owned(a);
  Mask out = 0;
  for (int i : bits(a.atoms)) out |= bit(conv_[i]);
  return Element{out, id_};
}

Element AtomStructure::rectangle(const Element& x, const Element& y) const {
  check_owned(x);
  check_owned(y);
  if ((x.atoms & ~identity_) || (y.atoms & ~identity_))
    throw PreconditionError("rectangle sides must be subidentity elements");
  return relative_product(relative_product(x, one()), y);
}

Mask AtomStructure::atoms_below(const Element& a) const {
  check_owned(a);
  return a.atoms;
}

std::string AtomStructure::render(const Element& a) const {
  check_owned(a);
  if (a.atoms == 0) return "0";
  std::string out;
  for (int i : bits(a.atoms)) {
    if (!out.empty()) out += "+";
    out += names_[i];
  }
  return out;
}

bool AxiomReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const AxiomVerdict& v) { return v.pass; });
}

const AxiomVerdict* AxiomReport::find(std::string_view axiom) const {
  for (const auto& v : verdicts)
    if (v.axiom == axiom) return &v;
  return nullptr;
}

namespace {

// Element composition over masks. For the element-level loops two caches
// keep the hot paths table-driven: per-atom row unions (n <= 12) and the
// full mask-by-mask composition table (n <= 9).
class ElementOps {
 public:
  explicit ElementOps(const AtomStructure& a) : a_(a), n_(a.atom_count()) {}

  void enable_row_cache() {
    if (n_ > 12 || !rows_.empty()) return;
    const std::size_t width = std::size_t{1} << n_;
    rows_.assign(static_cast<std::size_t>(n_) * width, 0);
    for (int i = 0; i < n_; ++i)
      for (std::size_t y = 1; y < width; ++y) {
        const int j = lowest_bit(y);
        rows_[i * width + y] =
            rows_[i * width + (y & (y - 1))] | a_.composition_atoms(i, j);
      }
    cv_.assign(width, 0);
    for (std::size_t x = 1; x < width; ++x) {
      const int i = lowest_bit(x);
      cv_[x] = cv_[x & (x - 1)] | bit(a_.converse_atom(i));
    }
  }

  void enable_full_table() {
    if (n_ > 9 || !table_.empty()) return;
    enable_row_cache();
    const std::size_t width = std::size_t{1} << n_;
    table_.assign(width * width, 0);
    for (std::size_t x = 0; x < width; ++x)
      for (std::size_t y = 0; y < width; ++y) {
        Mask out = 0;
        for (int i : bits(x)) out |= rows_[i * width + y];
        table_[(x << n_) | y] = out;
      }
  }

  Mask compose(Mask x, Mask y) const {
    if (!table_.empty()) return table_[(x << n_) | y];
    if (!rows_.empty()) {
      const std::size_t width = std::size_t{1} << n_;
      Mask out = 0;
      for (int i : bits(x)) out |= rows_[i * width + y];
      return out;
    }
    Mask out = 0;
    for (int i : bits(x))
      for (int j : bits(y)) out |= a_.composition_atoms(i, j);
    return out;
  }
  Mask converse(Mask x) const {
    if (!cv_.empty()) return cv_[x];
    Mask out = 0;
    for (int i : bits(x)) out |= bit(a_.converse_atom(i));
    return out;
  }
  Mask universe() const { return a_.universe_atoms(); }
  Mask identity() const { return a_.identity_atoms(); }
  Mask complement(Mask x) const { return universe() & ~x; }
  int n() const { return n_; }

 private:
  const AtomStructure& a_;
  int n_;
  std::vector<Mask> rows_;
  std::vector<Mask> cv_;
  std::vector<Mask> table_;
};

struct Checker {
  const AtomStructure& a;
  const AxiomCheckOptions& opt;
  ElementOps ops;
  AxiomReport report;

  Checker(const AtomStructure& a_, const AxiomCheckOptions& o)
      : a(a_), opt(o), ops(a_) {}

  AxiomVerdict& add(std::string axiom, std::string law, std::string coverage) {
    report.verdicts.push_back(
        AxiomVerdict{std::move(axiom), std::move(law), true, {}, {}, "", std::move(coverage)});
    return report.verdicts.back();
  }

  void fail_atoms(AxiomVerdict& v, std::vector<int> atoms, std::string detail) {
    if (!v.pass) return;  // keep the first (minimal) witness
    v.pass = false;
    v.witness_atoms = std::move(atoms);
    v.detail = std::move(detail);
  }

  void fail_elements(AxiomVerdict& v, std::vector<Mask> els, std::string detail) {
    if (!v.pass) return;
    v.pass = false;
    v.witness_elements = std::move(els);
    v.detail = std::move(detail);
  }

  // ---- atom-level checks ----

  void atom_structural() {
    // R1-R3, R8, R9: addition is set union and composition/converse are
    // extended from atoms by complete distributivity, so the Boolean axioms
    // and both distributive laws hold for every table. Recorded as
    // structural; the element-level pass replays them literally anyway.
    for (auto [ax, law] : {std::pair{"R1", "commutative law for addition"},
                           {"R2", "associative law for addition"},
                           {"R3", "Huntington's law"},
                           {"R8", "distributive law for relative multiplication"},
                           {"R9", "distributive law for converse"}})
      add(ax, law, "structural");
  }

  void atom_r4() {
    auto& v = add("R4", "associative law for relative multiplication", "atoms");
    const int n = ops.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Mask ij = a.composition_atoms(i, j);
        for (int k = 0; k < n; ++k) {
          Mask lhs = 0;
          for (int l : bits(ij)) lhs |= a.composition_atoms(l, k);
          Mask rhs = 0;
          for (int m : bits(a.composition_atoms(j, k)))
            rhs |= a.composition_atoms(i, m);
          if (lhs != rhs) {
            fail_atoms(v, {i, j, k},
                       "(" + a.atom_name(i) + ";" + a.atom_name(j) + ");" +
                           a.atom_name(k) + " != " + a.atom_name(i) + ";(" +
                           a.atom_name(j) + ";" + a.atom_name(k) + ")");
            return;
          }
        }
      }
  }

  void atom_r5() {
    auto& v = add("R5", "identity law for relative multiplication", "atoms");
    for (int i = 0; i < ops.n(); ++i) {
      Mask right = 0;
      for (int k : bits(a.identity_atoms())) right |= a.composition_atoms(i, k);
      if (right != bit(i)) {
        fail_atoms(v, {i}, a.atom_name(i) + ";1' != " + a.atom_name(i));
        return;
      }
    }
  }

  void atom_r6() {
    auto& v = add("R6", "first involution law", "atoms");
    for (int i = 0; i < ops.n(); ++i)
      if (a.converse_atom(a.converse_atom(i)) != i) {
        fail_atoms(v, {i}, "converse applied twice moves " + a.atom_name(i));
        return;
      }
  }

  void atom_r7() {
    auto& v = add("R7", "second involution law", "atoms");
    const int n = ops.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Mask lhs = ops.converse(a.composition_atoms(i, j));
        const Mask rhs = a.composition_atoms(a.converse_atom(j), a.converse_atom(i));
        if (lhs != rhs) {
          fail_atoms(v, {i, j},
                     "(" + a.atom_name(i) + ";" + a.atom_name(j) +
                         ")^ != " + a.atom_name(a.converse_atom(j)) + ";" +
                         a.atom_name(a.converse_atom(i)));
          return;
        }
      }
  }

  void atom_r10() {
    auto& v = add("R10", "Tarski's law", "atoms");
    const int n = ops.n();
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        const Mask w =
            ops.compose(bit(a.converse_atom(r)), ops.complement(a.composition_atoms(r, s)));
        if (has_bit(w, s)) {
          fail_atoms(v, {r, s},
                     a.atom_name(r) + "^;-(" + a.atom_name(r) + ";" + a.atom_name(s) +
                         ") is not below -" + a.atom_name(s));
          return;
        }
      }
  }

  void atom_r11_and_ps() {
    auto& v11 = add("R11", "cycle law", "atoms");
    auto& vps = add("PS", "Peircean triangle symmetry", "atoms");
    const int n = ops.n();
    for (int i = 0; i < n && (v11.pass || vps.pass); ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const bool p0 = has_bit(a.composition_atoms(i, j), k);
          const bool p1 = has_bit(a.composition_atoms(a.converse_atom(i), k), j);
          const bool p2 = has_bit(a.composition_atoms(k, a.converse_atom(j)), i);
          if (p0 && !p1)
            fail_atoms(v11, {i, j, k},
                       a.atom_name(k) + " <= " + a.atom_name(i) + ";" + a.atom_name(j) +
                           " but " + a.atom_name(j) + " is not below " +
                           a.atom_name(a.converse_atom(i)) + ";" + a.atom_name(k));
          if (p0 != p1 || p0 != p2)
            fail_atoms(vps, {i, j, k},
                       "triangle rotations of (" + a.atom_name(i) + "," +
                           a.atom_name(j) + "," + a.atom_name(k) + ") disagree");
        }
  }

  // ---- element-level literal checks ----

  struct LoopPlan {
    bool exhaustive;
    std::uint64_t count;  // iterations when sampled
  };

  LoopPlan plan(int arity) const {
    const int n = ops.n();
    if (n <= opt.exhaustive_threshold) {
      const long double total = std::pow(2.0L, static_cast<long double>(n) * arity);
      const std::uint64_t budget = arity >= 3 ? opt.triple_budget : opt.pair_budget;
      // Forcing lifts the budget but stays under an absolute guard.
      const long double cap =
          opt.force_exhaustive ? std::pow(2.0L, 40) : static_cast<long double>(budget);
      if (total <= cap) return {true, 0};
    }
    return {false, arity >= 3 ? opt.sample_triples : opt.sample_pairs};
  }

  template <typename F>
  void for_pairs(const LoopPlan& p, std::mt19937_64& rng, F&& body) {
    const Mask u = ops.universe();
    if (p.exhaustive) {
      for (Mask x = 0;; ++x) {
        for (Mask y = 0;; ++y) {
          if (!body(x, y)) return;
          if (y == u) break;
        }
        if (x == u) break;
      }
    } else {
      for (std::uint64_t t = 0; t < p.count; ++t)
        if (!body(rng() & u, rng() & u)) return;
    }
  }

  template <typename F>
  void for_triples(const LoopPlan& p, std::mt19937_64& rng, F&& body) {
    const Mask u = ops.universe();
    if (p.exhaustive) {
      for (Mask x = 0;; ++x) {
        for (Mask y = 0;; ++y) {
          for (Mask z = 0;; ++z) {
            if (!body(x, y, z)) return;
            if (z == u) break;
          }
          if (y == u) break;
        }
        if (x == u) break;
      }
    } else {
      // Always revisit the atom triples, then sample.
      const int n = ops.n();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (!body(bit(i), bit(j), bit(k))) return;
      for (std::uint64_t t = 0; t < p.count; ++t)
        if (!body(rng() & u, rng() & u, rng() & u)) return;
    }
  }

  static std::string cov(const LoopPlan& p) {
    return p.exhaustive ? "elements(exhaustive)"
                        : "elements(sampled " + std::to_string(p.count) + ")";
  }

  void element_level() {
    std::mt19937_64 rng(opt.seed);
    const auto p2 = plan(2);
    const auto p3 = plan(3);
    if (p2.exhaustive || p3.exhaustive) ops.enable_row_cache();
    if (p3.exhaustive) ops.enable_full_table();

    auto& v1 = add("R1", "commutative law for addition", cov(p2));
    auto& v3 = add("R3", "Huntington's law", cov(p2));
    auto& v5 = add("R5", "identity law for relative multiplication", cov(p2));
    auto& v6 = add("R6", "first involution law", cov(p2));
    auto& v7 = add("R7", "second involution law", cov(p2));
    auto& v9 = add("R9", "distributive law for converse", cov(p2));
    auto& v10 = add("R10", "Tarski's law", cov(p2));
    for_pairs(p2, rng, [&](Mask x, Mask y) {
      const Mask xy = x | y, yx = y | x;
      if (xy != yx) fail_elements(v1, {x, y}, "r+s != s+r");
      const Mask hunt =
          ops.complement(ops.complement(x) | y) | ops.complement(ops.complement(x) | ops.complement(y));
      if (hunt != y) fail_elements(v3, {x, y}, "-(-r+s) + -(-r+-s) != s");
      if (ops.compose(x, ops.identity()) != x)
        fail_elements(v5, {x}, "r;1' != r");
      if (ops.converse(ops.converse(x)) != x)
        fail_elements(v6, {x}, "r^^ != r");
      if (ops.converse(ops.compose(x, y)) != ops.compose(ops.converse(y), ops.converse(x)))
        fail_elements(v7, {x, y}, "(r;s)^ != s^;r^");
      if (ops.converse(x | y) != (ops.converse(x) | ops.converse(y)))
        fail_elements(v9, {x, y}, "(r+s)^ != r^+s^");
      const Mask t = ops.compose(ops.converse(x), ops.complement(ops.compose(x, y)));
      if ((t | ops.complement(y)) != ops.complement(y))
        fail_elements(v10, {x, y}, "r^;-(r;s) + -s != -s");
      return v1.pass || v3.pass || v5.pass || v6.pass || v7.pass || v9.pass || v10.pass;
    });

    auto& v2 = add("R2", "associative law for addition", cov(p3));
    auto& v4 = add("R4", "associative law for relative multiplication", cov(p3));
    auto& v8 = add("R8", "distributive law for relative multiplication", cov(p3));
    auto& v11 = add("R11", "cycle law", cov(p3));
    for_triples(p3, rng, [&](Mask x, Mask y, Mask z) {
      const Mask l = x | (y | z), r = (x | y) | z;
      if (l != r) fail_elements(v2, {x, y, z}, "r+(s+t) != (r+s)+t");
      if (ops.compose(x, ops.compose(y, z)) != ops.compose(ops.compose(x, y), z))
        fail_elements(v4, {x, y, z}, "r;(s;t) != (r;s);t");
      if (ops.compose(x | y, z) != (ops.compose(x, z) | ops.compose(y, z)))
        fail_elements(v8, {x, y, z}, "(r+s);t != r;t + s;t");
      if ((ops.compose(x, y) & z) == 0 && (ops.compose(ops.converse(x), z) & y) != 0)
        fail_elements(v11, {x, y, z}, "(r;s).t = 0 but (r^;t).s != 0");
      return v2.pass || v4.pass || v8.pass || v11.pass;
    });
  }

  AxiomReport run() {
    atom_structural();
    atom_r4();
    atom_r5();
    atom_r6();
    atom_r7();
    atom_r10();
    atom_r11_and_ps();
    if (opt.mode == AxiomMode::ElementLevel) element_level();
    return std::move(report);
  }
};

}  // namespace

AxiomReport verify_ra_axioms(const AtomStructure& a,
                             const AxiomCheckOptions& options) {
  Checker c(a, options);
  return c.run();
}

std::string render_axiom_report(const AtomStructure& a, const AxiomReport& r) {
  std::ostringstream out;
  for (const auto& v : r.verdicts) {
    out << v.axiom << " (" << v.law << ") [" << v.coverage << "]: "
        << (v.pass ? "pass" : "FAIL");
    if (!v.pass) {
      out << "  witness:";
      for (int i : v.witness_atoms) out << " " << a.atom_name(i);
      for (Mask m : v.witness_elements) out << " {" << a.render(a.element(m)) << "}";
      out << "  (" << v.detail << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cosetra
