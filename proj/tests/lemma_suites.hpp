#pragma once

// Exhaustive property suites for the stabilizer, partition, product,
// translation and quotient-isomorphism laws, quantified over all measurable
// pairs and all qualifying elements of a fixture. Shared by the unit tests
// and the acceptance suite.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cosetra/measurability.hpp"

namespace lemma_suites {

using namespace cosetra;

struct SuiteOutcome {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_witness;
};

class Runner {
 public:
  explicit Runner(const AtomStructure& a)
      : a_(a), records_(measurable_atoms(a)), e_(equivalence_E(a, records_)) {}

  std::vector<SuiteOutcome> run() {
    for (int x = 0; x < e_.count(); ++x)
      for (int y = 0; y < e_.count(); ++y) {
        if (!e_.pair(x, y)) continue;
        pair_suites(x, y);
      }
    for (auto [x, y, z] : e3())
      triple_suites(x, y, z);
    identity_theorem();
    std::vector<SuiteOutcome> out;
    out.reserve(outcomes_.size());
    for (auto& [name, oc] : outcomes_) out.push_back(oc);
    return out;
  }

 private:
  const AtomStructure& a_;
  std::vector<MeasurableAtomRecord> records_;
  EquivalenceE e_;
  std::map<std::string, SuiteOutcome> outcomes_;

  SuiteOutcome& suite(const std::string& name) {
    auto& oc = outcomes_[name];
    if (oc.name.empty()) oc.name = name;
    return oc;
  }

  void record(const std::string& name, bool ok, const std::string& witness) {
    auto& oc = suite(name);
    ++oc.cases;
    if (!ok) {
      ++oc.failures;
      if (oc.first_witness.empty()) oc.first_witness = witness;
    }
  }

  std::vector<std::tuple<int, int, int>> e3() const {
    std::vector<std::tuple<int, int, int>> out;
    for (int x = 0; x < e_.count(); ++x)
      for (int y = 0; y < e_.count(); ++y)
        for (int z = 0; z < e_.count(); ++z)
          if (e_.pair(x, y) && e_.pair(y, z)) out.emplace_back(x, y, z);
    return out;
  }

  // All nonzero elements below the rectangle of the pair, with their data.
  struct PairContext {
    const MeasurableAtomRecord* gx;
    const MeasurableAtomRecord* gy;
    Element rect;
    std::vector<Element> elements;
    std::vector<StabilizerData> data;
  };

  PairContext context(int x, int y) const {
    PairContext c;
    c.gx = &records_[x];
    c.gy = &records_[y];
    c.rect = a_.rectangle(a_.atom(e_.atoms[x]), a_.atom(e_.atoms[y]));
    for (Mask s = c.rect.atoms; s; s = (s - 1) & c.rect.atoms) {
      const Element el = a_.element(s);
      c.elements.push_back(el);
      c.data.push_back(stabilizer_data(a_, *c.gx, *c.gy, el));
    }
    return c;
  }

  std::string w(const Element& e) { return "{" + a_.render(e) + "}"; }

  // The translations of a by the cosets of its left stabilizer.
  std::vector<Element> left_translations(const PairContext& c, const Element& a,
                                         const Subgroup& stab) const {
    std::vector<Element> out;
    for (const Mask coset : coset_system(stab, Side::Left).cosets)
      out.push_back(translate_coset(a_, *c.gx, a, coset, Side::Left));
    return out;
  }

  void pair_suites(int x, int y) {
    const PairContext c = context(x, y);
    const std::size_t n = c.elements.size();

    for (std::size_t i = 0; i < n; ++i) {
      const Element& el = c.elements[i];
      const StabilizerData& sd = c.data[i];

      // First Partition: translations of a left-regular element are nonzero,
      // pairwise disjoint, and union to the rectangle.
      if (sd.left_regular) {
        const auto trans = left_translations(c, el, sd.left_stabilizer);
        bool ok = true;
        Mask seen = 0;
        for (const Element& t : trans) {
          if (a_.is_zero(t) || (t.atoms & seen)) ok = false;
          seen |= t.atoms;
        }
        ok = ok && seen == c.rect.atoms;
        record("first partition", ok, w(el));
      }

      // Atomic Partition: an atom's translations are exactly the atoms below
      // the rectangle.
      if (a_.is_atom(el)) {
        const auto trans = left_translations(c, el, sd.left_stabilizer);
        Mask seen = 0;
        bool ok = true;
        for (const Element& t : trans) {
          if (!a_.is_atom(t) || (t.atoms & seen)) ok = false;
          seen |= t.atoms;
        }
        ok = ok && seen == c.rect.atoms;
        record("atomic partition", ok, w(el));
      }

      // First Translation: translations of a left-regular element are
      // left-regular with conjugated (left case) or equal (right case)
      // stabilizers.
      if (sd.left_regular) {
        for (int f = 0; f < c.gx->measure; ++f) {
          const Element t = translate(a_, *c.gx, el, f, Side::Left);
          const auto td = stabilizer_data(a_, *c.gx, *c.gy, t);
          const Mask expect =
              set_product(*c.gx->group,
                          set_product(*c.gx->group, bit(f),
                                      sd.left_stabilizer.members),
                          bit(c.gx->group->inverse(f)));
          record("translation stabilizers",
                 td.left_regular && td.left_stabilizer.members == expect,
                 w(el) + " f=" + std::to_string(f));
        }
        for (int g = 0; g < c.gy->measure; ++g) {
          const Element t = translate(a_, *c.gy, el, g, Side::Right);
          const auto td = stabilizer_data(a_, *c.gx, *c.gy, t);
          record("translation stabilizers",
                 td.left_regular &&
                     td.left_stabilizer.members == sd.left_stabilizer.members,
                 w(el) + " g=" + std::to_string(g));
        }
      }

      // Second Translation: with a normal stabilizer, the left-regular
      // elements sharing the stabilizer of a are exactly its translations;
      // without normality, some translation has a different stabilizer.
      if (sd.left_regular) {
        if (is_normal(sd.left_stabilizer)) {
          const auto trans = left_translations(c, el, sd.left_stabilizer);
          for (std::size_t j = 0; j < n; ++j) {
            if (!c.data[j].left_regular) continue;
            const bool same_stab = c.data[j].left_stabilizer.members ==
                                   sd.left_stabilizer.members;
            bool is_translation = false;
            for (const Element& t : trans)
              if (t == c.elements[j]) is_translation = true;
            record("translation characterization", same_stab == is_translation,
                   w(el) + " vs " + w(c.elements[j]));
          }
        } else {
          bool some_conjugate_moves = false;
          for (int f = 0; f < c.gx->measure; ++f) {
            const Element t = translate(a_, *c.gx, el, f, Side::Left);
            const auto td = stabilizer_data(a_, *c.gx, *c.gy, t);
            if (td.left_stabilizer.members != sd.left_stabilizer.members)
              some_conjugate_moves = true;
          }
          record("translation characterization", some_conjugate_moves, w(el));
        }
      }
    }

    // Pairwise suites.
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.data[i].left_regular) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!c.data[j].left_regular) continue;
        const Element &ea = c.elements[i], &eb = c.elements[j];
        const StabilizerData &da = c.data[i], &db = c.data[j];
        const Element meet = a_.meet(ea, eb);

        // Second Partition: for a <= b, each translation of b is the union
        // of the translations of a over the block of cosets inside.
        if (a_.leq(ea, eb)) {
          const auto sys_a = coset_system(da.left_stabilizer, Side::Left);
          const auto sys_b = coset_system(db.left_stabilizer, Side::Left);
          bool ok = true;
          for (const Mask cb : sys_b.cosets) {
            Mask expect = 0;
            for (const Mask ca : sys_a.cosets)
              if ((ca & ~cb) == 0)
                expect |= translate_coset(a_, *c.gx, ea, ca, Side::Left).atoms;
            if (translate_coset(a_, *c.gx, eb, cb, Side::Left).atoms != expect)
              ok = false;
          }
          record("partition refinement", ok, w(ea) + " <= " + w(eb));
        }

        // First Product: nonzero meets of left-regular elements are
        // left-regular with intersected stabilizers.
        if (!a_.is_zero(meet)) {
          const auto dm = stabilizer_data(a_, *c.gx, *c.gy, meet);
          record("meet stabilizers",
                 dm.left_regular &&
                     dm.left_stabilizer.members ==
                         (da.left_stabilizer.members & db.left_stabilizer.members),
                 w(ea) + " . " + w(eb));
        }

        // Second Product: with normal left stabilizers, the meet is nonzero
        // exactly when a;a^;b = b;b^;a, and the coset translations of the
        // meet multiply out the translations of the factors.
        if (is_normal(da.left_stabilizer) && is_normal(db.left_stabilizer)) {
          const Element lhs = a_.relative_product(
              a_.relative_product(ea, a_.converse_of(ea)), eb);
          const Element rhs = a_.relative_product(
              a_.relative_product(eb, a_.converse_of(eb)), ea);
          record("meet criterion", (lhs == rhs) == !a_.is_zero(meet),
                 w(ea) + " vs " + w(eb));
          if (!a_.is_zero(meet)) {
            const Mask pmask = set_product(*c.gx->group,
                                           da.left_stabilizer.members,
                                           db.left_stabilizer.members);
            bool ok = true;
            // Cosets of L_a and L_b inside the product subgroup.
            for (const Mask ca :
                 coset_system(da.left_stabilizer, Side::Left).cosets) {
              if (ca & ~pmask) continue;
              for (const Mask cb :
                   coset_system(db.left_stabilizer, Side::Left).cosets) {
                if (cb & ~pmask) continue;
                const Mask inter = ca & cb;
                if (!inter) {
                  ok = false;
                  continue;
                }
                const Element left =
                    translate_coset(a_, *c.gx, meet, inter, Side::Left);
                const Element right =
                    a_.meet(translate_coset(a_, *c.gx, ea, ca, Side::Left),
                            translate_coset(a_, *c.gx, eb, cb, Side::Left));
                if (left != right) ok = false;
              }
            }
            record("translation product", ok, w(ea) + " . " + w(eb));
          }
        }
      }
    }

    // Suites for regular elements with normal stabilizers.
    for (std::size_t i = 0; i < n; ++i) {
      const Element& el = c.elements[i];
      const StabilizerData& sd = c.data[i];
      if (!sd.regular() || !is_normal(sd.left_stabilizer) ||
          !is_normal(sd.right_stabilizer))
        continue;

      // A left and a right translation overlap only when they are equal.
      {
        bool ok = true;
        for (int f = 0; f < c.gx->measure && ok; ++f)
          for (int g = 0; g < c.gy->measure; ++g) {
            const Element lt = translate(a_, *c.gx, el, f, Side::Left);
            const Element rt = translate(a_, *c.gy, el, g, Side::Right);
            if (!a_.is_zero(a_.meet(lt, rt)) != (lt == rt)) {
              ok = false;
              break;
            }
          }
        record("translation overlap", ok, w(el));
      }

      const QuotientIso phi = quotient_iso_of_regular(a_, *c.gx, *c.gy, el);

      // The isomorphism of a translation is the inner twist of
      // the isomorphism of the element.
      for (const Mask coset :
           coset_system(sd.left_stabilizer, Side::Left).cosets) {
        const Element t = translate_coset(a_, *c.gx, el, coset, Side::Left);
        const QuotientIso phi_t = quotient_iso_of_regular(a_, *c.gx, *c.gy, t);
        const QuotientIso tau = inner_automorphism(
            c.gx->group, sd.left_stabilizer.members, coset);
        record("translation isomorphism",
               phi_t.same_map(tau.compose(phi)), w(el));
      }

      // The converse determines the inverse isomorphism with
      // swapped stabilizers.
      {
        const Element conv = a_.converse_of(el);
        const auto dc = stabilizer_data(a_, *c.gy, *c.gx, conv);
        const bool stab_ok =
            dc.left_stabilizer.members == sd.right_stabilizer.members &&
            dc.right_stabilizer.members == sd.left_stabilizer.members;
        const QuotientIso phi_conv =
            quotient_iso_of_regular(a_, *c.gy, *c.gx, conv);
        record("converse isomorphism",
               stab_ok && phi_conv.same_map(phi.inverse()), w(el));
      }

      // Refinement: for regular a <= b, the isomorphism of a induces the
      // isomorphism of b.
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !c.data[j].regular()) continue;
        if (!is_normal(c.data[j].left_stabilizer) ||
            !is_normal(c.data[j].right_stabilizer))
          continue;
        if (!a_.leq(el, c.elements[j])) continue;
        const QuotientIso phi_b =
            quotient_iso_of_regular(a_, *c.gx, *c.gy, c.elements[j]);
        bool ok = true;
        try {
          const QuotientIso induced =
              induce_on_coarser(phi, c.data[j].left_stabilizer.members);
          ok = induced.same_map(phi_b);
        } catch (const Error&) {
          ok = false;
        }
        record("refinement", ok, w(el) + " <= " + w(c.elements[j]));
      }
    }
  }

  void triple_suites(int x, int y, int z) {
    const PairContext cxy = context(x, y);
    const PairContext cyz = context(y, z);
    const PairContext cxz = context(x, z);

    auto regular_normal = [&](const PairContext& c) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < c.elements.size(); ++i)
        if (c.data[i].regular() && is_normal(c.data[i].left_stabilizer) &&
            is_normal(c.data[i].right_stabilizer))
          out.push_back(i);
      return out;
    };

    // Relative products of regular elements, over all qualifying pairs.
    for (std::size_t i : regular_normal(cxy))
      for (std::size_t j : regular_normal(cyz)) {
        const Element &ea = cxy.elements[i], &eb = cyz.elements[j];
        const Element prod = a_.relative_product(ea, eb);
        const auto dp = stabilizer_data(a_, *cxy.gx, *cyz.gy, prod);
        const Mask p = set_product(*cxy.gy->group,
                                   cxy.data[i].right_stabilizer.members,
                                   cyz.data[j].left_stabilizer.members);
        const QuotientIso phi_a =
            quotient_iso_of_regular(a_, *cxy.gx, *cxy.gy, ea);
        const QuotientIso phi_b =
            quotient_iso_of_regular(a_, *cyz.gx, *cyz.gy, eb);
        const Mask expected_left = phi_a.preimage_of_union(p);
        const Mask expected_right = phi_b.image_of_union(p);
        bool ok = dp.regular() && is_normal(dp.left_stabilizer) &&
                  dp.left_stabilizer.members == expected_left &&
                  dp.right_stabilizer.members == expected_right;
        if (ok) {
          const QuotientIso phi_ab =
              quotient_iso_of_regular(a_, *cxy.gx, *cyz.gy, prod);
          const QuotientIso hat_a = induce_on_coarser(phi_a, expected_left);
          const QuotientIso hat_b = induce_on_coarser(phi_b, p);
          ok = phi_ab.same_map(hat_a.compose(hat_b));
        }
        record("relative product", ok, w(ea) + " ; " + w(eb));
      }

    // Stabilizer-image identities over all atom triples.
    for (int ai : bits(cxy.rect.atoms))
      for (int bi : bits(cyz.rect.atoms))
        for (int ci : bits(cxz.rect.atoms)) {
          const Element ea = a_.atom(ai), eb = a_.atom(bi), ec = a_.atom(ci);
          const auto da = stabilizer_data(a_, *cxy.gx, *cxy.gy, ea);
          const auto db = stabilizer_data(a_, *cyz.gx, *cyz.gy, eb);
          const auto dc = stabilizer_data(a_, *cxz.gx, *cxz.gy, ec);
          const QuotientIso phi_a =
              quotient_iso_of_regular(a_, *cxy.gx, *cxy.gy, ea);
          const QuotientIso phi_b =
              quotient_iso_of_regular(a_, *cyz.gx, *cyz.gy, eb);
          const QuotientIso phi_c =
              quotient_iso_of_regular(a_, *cxz.gx, *cxz.gy, ec);
          const auto gx = cxy.gx->group;
          const auto gy = cxy.gy->group;
          const auto gz = cyz.gy->group;
          const Mask la_lc = set_product(*gx, da.left_stabilizer.members,
                                         dc.left_stabilizer.members);
          const Mask ra_lb = set_product(*gy, da.right_stabilizer.members,
                                         db.left_stabilizer.members);
          const Mask rb_rc = set_product(*gz, db.right_stabilizer.members,
                                         dc.right_stabilizer.members);
          const auto dp = stabilizer_data(
              a_, *cxy.gx, *cyz.gy, a_.relative_product(ea, eb));
          const bool ok = phi_a.image_of_union(la_lc) == ra_lb &&
                          phi_b.image_of_union(ra_lb) == rb_rc &&
                          phi_c.image_of_union(la_lc) == rb_rc &&
                          dp.left_stabilizer.members == la_lc &&
                          dp.right_stabilizer.members == rb_rc;
          record("stabilizer images", ok,
                 w(ea) + " " + w(eb) + " " + w(ec));
        }
  }

  void identity_theorem() {
    for (int x = 0; x < e_.count(); ++x) {
      const auto& rec = records_[x];
      const Element atom = a_.atom(rec.atom);
      const auto sd = stabilizer_data(a_, rec, rec, atom);
      bool ok = sd.regular() && sd.left_stabilizer.members == bit(0) &&
                sd.right_stabilizer.members == bit(0);
      if (ok) {
        const QuotientIso phi = quotient_iso_of_regular(a_, rec, rec, atom);
        ok = phi.same_map(identity_automorphism(rec.group, bit(0)));
      }
      record("identity isomorphism", ok, a_.atom_name(rec.atom));
    }
  }
};

inline std::vector<SuiteOutcome> run_lemma_suites(const AtomStructure& a) {
  return Runner(a).run();
}

inline std::string render_outcomes(const std::vector<SuiteOutcome>& outcomes) {
  std::ostringstream out;
  for (const auto& oc : outcomes) {
    out << oc.name << ": " << oc.cases << " cases, " << oc.failures
        << " failures";
    if (!oc.first_witness.empty()) out << " (first: " << oc.first_witness << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace lemma_suites
