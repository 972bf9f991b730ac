// Acceptance suite: one test case per criterion, each printing a single
// pass/fail line. Budgets and tolerances are pinned here, not configurable.

#include "doctest.h"

#include <chrono>
#include <iostream>

#include "cosetra/cli.hpp"
#include "cosetra/gtr_io.hpp"
#include "cosetra/ra_io.hpp"
#include "cosetra/repr_check.hpp"
#include "cosetra/reference_algebras.hpp"
#include "lemma_suites.hpp"
#include "test_support.hpp"

using namespace cosetra;
using namespace testsupport;

namespace {

const std::filesystem::path kFixtures = COSETRA_FIXTURE_DIR;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void verdict_line(int criterion, const std::string& name, bool pass,
                  const std::string& note = "") {
  std::cout << "criterion " << criterion << " (" << name
            << "): " << (pass ? "PASS" : "FAIL");
  if (!note.empty()) std::cout << " [" << note << "]";
  std::cout << "\n";
}

int cli_status(const std::string& command, const std::filesystem::path& input) {
  cli::RunConfig config;
  config.command = command;
  config.inputs.push_back(input.string());
  std::ostringstream out, err;
  return cli::run(config, out, err);
}

// Small fixtures (at most 12 atoms), by name.
std::vector<std::pair<std::string, StructurePtr>> small_fixtures() {
  auto cm = [](GroupPtr g) { return group_complex_algebra(g); };
  std::vector<std::pair<std::string, StructurePtr>> out;
  out.emplace_back("Re(2)", full_set_algebra(2));
  out.emplace_back("Re(3)", full_set_algebra(3));
  out.emplace_back("Cm(Z2)", cm(FiniteGroup::cyclic(2)));
  out.emplace_back("Cm(Z3)", cm(FiniteGroup::cyclic(3)));
  out.emplace_back("Cm(Z4)", cm(FiniteGroup::cyclic(4)));
  out.emplace_back("Cm(Z6)", cm(FiniteGroup::cyclic(6)));
  out.emplace_back("Cm(S3)", cm(FiniteGroup::symmetric(3)));
  out.emplace_back("Cm(V4)",
                   cm(FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                  FiniteGroup::cyclic(2))));
  out.emplace_back("Cm(Z8)", cm(FiniteGroup::cyclic(8)));
  out.emplace_back("Cm(D4)", cm(dihedral4()));
  out.emplace_back("Cm(Q8)", cm(quaternion8()));
  out.emplace_back(
      "Cm(Z2)xCm(Z3)",
      direct_product_algebra(*cm(FiniteGroup::cyclic(2)),
                             *cm(FiniteGroup::cyclic(3))));
  out.emplace_back(
      "Cm(Z2)xCm(Z2)",
      direct_product_algebra(*cm(FiniteGroup::cyclic(2)),
                             *cm(FiniteGroup::cyclic(2))));
  return out;
}

// A two-index frame over a group with H = K a given normal subgroup and the
// identity quotient isomorphism.
GroupTriple pair_frame(GroupPtr g, Mask h_mask) {
  GroupTriple f;
  f.groups = {g, g};
  f.related = {{true, true}, {true, true}};
  f.pairs.assign(2, std::vector<TriplePairData>(2));
  for (int x = 0; x < 2; ++x) {
    TriplePairData pd;
    pd.h = Subgroup{g, bit(g->identity())};
    pd.k = pd.h;
    pd.h_cosets = coset_system(pd.h, Side::Left).cosets;
    pd.k_cosets = pd.h_cosets;
    f.pairs[x][x] = pd;
  }
  TriplePairData fwd;
  fwd.h = Subgroup{g, h_mask};
  fwd.k = fwd.h;
  fwd.h_cosets = coset_system(fwd.h, Side::Left).cosets;
  fwd.k_cosets = fwd.h_cosets;
  f.pairs[0][1] = fwd;
  f.pairs[1][0] = fwd;
  for (auto [x, y, z] : f.e3_triples())
    f.shifting[{x, y, z}] = f.product_subgroup_mask(x, y, z);
  return f;
}

GroupTriple extract_of(const AtomStructure& a) {
  const auto records = measurable_atoms(a);
  const auto e = equivalence_E(a, records);
  const auto s = build_semi_scaffold(a, records, e);
  return extract_semi_frame(a, records, e, s);
}

// Frames exercised by the synthesis criteria: extracted from the fixtures
// plus hand-built pair frames.
std::vector<GroupTriple> frame_corpus() {
  std::vector<GroupTriple> out;
  for (const auto& [name, a] : small_fixtures()) out.push_back(extract_of(*a));
  out.push_back(pair_frame(FiniteGroup::cyclic(4), bit(0) | bit(2)));
  out.push_back(pair_frame(FiniteGroup::cyclic(8),
                           bit(0) | bit(2) | bit(4) | bit(6)));
  auto s3 = FiniteGroup::symmetric(3);
  Mask a3 = 0;  // the alternating subgroup: identity and the two 3-cycles
  for (int f = 0; f < 6; ++f)
    if (s3->mul(f, s3->mul(f, f)) == s3->identity()) a3 |= bit(f);
  out.push_back(pair_frame(s3, a3));
  // Trivial H over S3: the off-diagonal quotients are all of S3, so the
  // induced isomorphisms and inner twists run through a non-abelian group.
  out.push_back(pair_frame(s3, bit(s3->identity())));
  return out;
}

}  // namespace

TEST_CASE("criterion 1: axiom soundness") {
  Timer timer;
  bool ok = true;

  for (const char* name : {"re2.ra", "re3.ra", "cm_z2.ra", "cm_z3.ra",
                           "cm_z4.ra", "cm_s3.ra"}) {
    const int status = cli_status("check", kFixtures / name);
    CHECK(status == 0);
    ok &= status == 0;
  }

  // Every algebra emitted by build from a frame passes.
  for (const auto& f : frame_corpus()) {
    REQUIRE(frame_record(f).frame);
    const auto built = build_group_algebra(f);
    const auto report = verify_ra_axioms(*built.structure);
    CHECK(report.all_pass());
    ok &= report.all_pass();
  }

  // Five mutation fixtures, one per targeted law, each with a minimal
  // witness of at most three atoms.
  const std::vector<std::pair<std::string, std::string>> mutations = {
      {"mut_r4_assoc.ra", "R4"},
      {"mut_r5_identity.ra", "R5"},
      {"mut_r7_involution.ra", "R7"},
      {"mut_r10_tarski.ra", "R10"},
      {"mut_r11_cycle.ra", "R11"}};
  for (const auto& [file, law] : mutations) {
    CAPTURE(file);
    const int status = cli_status("check", kFixtures / file);
    CHECK(status == 1);
    ok &= status == 1;
    auto a = load_ra(kFixtures / file);
    const auto report = verify_ra_axioms(*a);
    const auto* verdict = report.find(law);
    REQUIRE(verdict != nullptr);
    CHECK_FALSE(verdict->pass);
    const bool witnessed =
        !verdict->witness_atoms.empty() || !verdict->witness_elements.empty();
    CHECK(witnessed);
    CHECK(verdict->witness_atoms.size() <= 3);
    ok &= !verdict->pass && witnessed;
  }

  const double elapsed = timer.seconds();
  CHECK(elapsed < 5.0);
  ok &= elapsed < 5.0;
  verdict_line(1, "axiom soundness", ok,
               "runtime " + std::to_string(elapsed) + "s < 5s");
}

TEST_CASE("criterion 2: measurability census") {
  bool ok = true;
  const std::vector<std::pair<GroupPtr, std::string>> groups = {
      {FiniteGroup::cyclic(2), "Z2"},
      {FiniteGroup::cyclic(3), "Z3"},
      {FiniteGroup::cyclic(4), "Z4"},
      {FiniteGroup::symmetric(3), "S3"}};
  for (const auto& [g, name] : groups) {
    CAPTURE(name);
    auto a = group_complex_algebra(g);
    const auto records = measurable_atoms(*a);
    REQUIRE(records.size() == 1);
    CHECK(records[0].measure == g->order());
    CHECK(records[0].group->same_table(*g));
    ok &= records.size() == 1 && records[0].measure == g->order() &&
          records[0].group->same_table(*g);
  }
  for (int n = 1; n <= 4; ++n) {
    auto a = full_set_algebra(n);
    const auto records = measurable_atoms(*a);
    CHECK(static_cast<int>(records.size()) == n);
    ok &= static_cast<int>(records.size()) == n;
    for (const auto& r : records) {
      CHECK(r.measure == 1);
      ok &= r.measure == 1;
    }
  }
  verdict_line(2, "measurability census", ok, "exact equality");
}

TEST_CASE("criterion 3: lemma suites") {
  Timer timer;
  bool ok = true;
  std::uint64_t total_cases = 0;
  for (const auto& [name, a] : small_fixtures()) {
    CAPTURE(name);
    REQUIRE(a->atom_count() <= 12);
    for (const auto& oc : lemma_suites::run_lemma_suites(*a)) {
      CAPTURE(oc.name);
      CAPTURE(oc.first_witness);
      CHECK(oc.failures == 0);
      ok &= oc.failures == 0;
      total_cases += oc.cases;
    }
  }
  const double elapsed = timer.seconds();
  CHECK(elapsed < 60.0);
  ok &= elapsed < 60.0;
  verdict_line(3, "lemma suites", ok,
               std::to_string(total_cases) + " cases, runtime " +
                   std::to_string(elapsed) + "s < 60s");
}

TEST_CASE("criterion 4: semi-frame extraction") {
  bool ok = true;
  for (const auto& [name, a] : small_fixtures()) {
    CAPTURE(name);
    REQUIRE(is_measurable_algebra(*a));
    const auto records = measurable_atoms(*a);
    const auto e = equivalence_E(*a, records);
    const auto s = build_semi_scaffold(*a, records, e);
    const auto f = extract_semi_frame(*a, records, e, s);
    const auto report = verify_semi_frame(f);
    CHECK(report.all_pass());
    ok &= report.all_pass();
    for (auto [x, y, z] : f.e3_triples()) {
      const bool well =
          shifting_coset_well_defined(*a, records, e, s, x, y, z);
      CHECK(well);
      ok &= well;
    }
  }
  verdict_line(4, "semi-frame extraction", ok);
}

TEST_CASE("criterion 5: representation round-trip") {
  bool ok = true;
  for (const auto& [name, a] : small_fixtures()) {
    CAPTURE(name);
    const auto report = roundtrip(a);
    CHECK(report.pass);
    CHECK(report.iso.exhaustive);
    ok &= report.pass && report.iso.exhaustive;
  }
  // Larger instances: exhaustive Peircean checks, sampled element checks.
  std::vector<StructurePtr> larger;
  larger.push_back(full_set_algebra(4));
  larger.push_back(
      build_group_algebra(
          pair_frame(FiniteGroup::cyclic(8), bit(0) | bit(2) | bit(4) | bit(6)))
          .structure);
  for (auto a : larger) {
    CAPTURE(a->atom_count());
    REQUIRE(a->atom_count() > 12);
    REQUIRE(a->atom_count() <= 64);
    const auto report = roundtrip(a);
    CHECK(report.pass);
    CHECK_FALSE(report.iso.exhaustive);
    CHECK(report.peircean.pass);
    ok &= report.pass && !report.iso.exhaustive;
  }
  // Closed loop over the generated catalog: every synthesized algebra that
  // passes the axioms round-trips through extraction and resynthesis.
  GenerationBounds bounds;
  bounds.max_index_count = 1;
  bounds.max_group_order = 6;
  std::uint64_t loops = 0;
  generate_triples(bounds, [&](const GroupTriple& f, const GenerationMeta&) {
    const auto built = build_coset_algebra(f);
    AxiomCheckOptions opt;
    opt.mode = AxiomMode::AtomLevel;
    if (!verify_ra_axioms(*built.structure, opt).all_pass()) return true;
    const auto report = roundtrip(built.structure);
    CHECK(report.pass);
    ok &= report.pass;
    ++loops;
    return true;
  });
  CHECK(loops > 0);
  verdict_line(5, "representation round-trip", ok,
               std::to_string(loops) + " generated round-trips");
}

TEST_CASE("criterion 6: frame pathway") {
  bool ok = true;
  for (const auto& f : frame_corpus()) {
    REQUIRE(frame_record(f).frame);
    const auto built = build_group_algebra(f);
    const auto discrepancies = compare_otimes_composition(f, built);
    CHECK(discrepancies.empty());
    ok &= discrepancies.empty();
    const auto verdict = decide_representable(built.structure);
    CHECK(verdict.kind == Representability::GroupRepresentable);
    ok &= verdict.kind == Representability::GroupRepresentable;
    // Witness relations compose set-theoretically to match the table.
    REQUIRE(verdict.witness.has_value());
    const auto& witness = *verdict.witness;
    bool witness_ok = true;
    for (std::size_t i = 0; i < witness.relations.size(); ++i)
      for (std::size_t j = 0; j < witness.relations.size(); ++j) {
        const Relation composite =
            witness.relations[i].composed_with(witness.relations[j]);
        Relation expected(witness.base_size);
        for (int t :
             bits(witness.structure->composition_atoms(static_cast<int>(i),
                                                       static_cast<int>(j))))
          expected = expected.united_with(witness.relations[t]);
        if (!(composite == expected)) witness_ok = false;
      }
    CHECK(witness_ok);
    ok &= witness_ok;
  }
  verdict_line(6, "frame pathway", ok);
}

TEST_CASE("criterion 7: scaffold criterion") {
  Timer timer;
  bool ok = true;

  // Every fixture with a scaffold validates its group-algebra witness.
  for (const auto& [name, a] : small_fixtures()) {
    CAPTURE(name);
    const auto verdict = decide_representable(a);
    CHECK(verdict.kind == Representability::GroupRepresentable);
    CHECK(verdict.witness.has_value());
    ok &= verdict.kind == Representability::GroupRepresentable &&
          verdict.witness.has_value();
  }

  // Generator sweep at the stated bounds: one index, group order up to 8,
  // all subgroup and shifting choices.
  GenerationBounds bounds;
  bounds.max_index_count = 1;
  bounds.max_group_order = 8;
  std::uint64_t emitted = 0, ra_passing = 0, with_scaffold = 0, coset_only = 0;
  generate_triples(bounds, [&](const GroupTriple& f, const GenerationMeta&) {
    ++emitted;
    const auto built = build_coset_algebra(f);
    AxiomCheckOptions opt;
    opt.mode = AxiomMode::AtomLevel;
    if (!verify_ra_axioms(*built.structure, opt).all_pass()) return true;
    ++ra_passing;
    const auto verdict = decide_representable(built.structure);
    if (verdict.kind == Representability::GroupRepresentable) {
      ++with_scaffold;
      CHECK(verdict.search.nodes > 0);
    } else if (verdict.kind == Representability::CosetOnly) {
      ++coset_only;
      CHECK(verdict.search.exhausted);
    }
    return true;
  });
  CHECK(emitted > 0);
  CHECK(ra_passing >= 1);
  CHECK(with_scaffold >= 1);
  ok &= emitted > 0 && ra_passing >= 1 && with_scaffold >= 1;

  const double elapsed = timer.seconds();
  CHECK(elapsed < 600.0);
  ok &= elapsed < 600.0;

  // Both verdict branches exercised across the catalog. The coset_only
  // branch cannot fire here: with a single measurable index every
  // semi-scaffold is vacuously a scaffold, and at the supported sizes (at
  // most 64 atoms) the scaffold search provably always succeeds. Recorded as
  // an honest failure; see the project notes.
  CHECK_MESSAGE(coset_only >= 1,
                "coset_only branch not exercisable within the stated bounds: "
                "a one-index catalog has no scaffold-free relation algebras");
  ok &= coset_only >= 1;

  verdict_line(7, "scaffold criterion", ok,
               "emitted " + std::to_string(emitted) + ", ra " +
                   std::to_string(ra_passing) + ", scaffolds " +
                   std::to_string(with_scaffold) + ", coset_only " +
                   std::to_string(coset_only) + ", runtime " +
                   std::to_string(elapsed) + "s < 600s");
}

TEST_CASE("criterion 8: constructive regularity") {
  bool ok = true;
  for (const auto& [name, a] : small_fixtures()) {
    CAPTURE(name);
    const auto records = measurable_atoms(*a);
    const auto e = equivalence_E(*a, records);
    for (int x = 0; x < e.count(); ++x)
      for (int y = 0; y < e.count(); ++y) {
        if (!e.pair(x, y)) continue;
        const Element rect =
            a->rectangle(a->atom(e.atoms[x]), a->atom(e.atoms[y]));
        for (Mask s = rect.atoms; s; s = (s - 1) & rect.atoms) {
          const Element el = a->element(s);
          // Maximal-product construction: a left-regular element below el.
          const Element b = find_left_regular_below(*a, records[x], records[y], el);
          const auto bd = stabilizer_data(*a, records[x], records[y], b);
          const bool below_ok =
              !a->is_zero(b) && a->leq(b, el) && bd.left_regular;
          CHECK(below_ok);
          ok &= below_ok;

          // Decomposition agrees with regularity, reproduces the element
          // exactly, and uses the left stabilizer as the subgroup.
          const auto sd = stabilizer_data(*a, records[x], records[y], el);
          const auto d = regular_decomposition(*a, records[x], records[y], el);
          CHECK(d.regular == sd.regular());
          CHECK(sd.left_regular == sd.regular());
          ok &= d.regular == sd.regular() && sd.left_regular == sd.regular();
          if (d.regular) {
            CHECK(d.stabilizer.members == sd.left_stabilizer.members);
            const auto sys = coset_system(d.stabilizer, Side::Left);
            Mask sum = 0;
            for (int fel : bits(sys.cosets[d.coset_index]))
              sum |= translate(*a, records[x], d.atom, fel, Side::Left).atoms;
            CHECK(sum == el.atoms);
            ok &= sum == el.atoms &&
                  d.stabilizer.members == sd.left_stabilizer.members;
          }
        }
      }
  }
  verdict_line(8, "constructive regularity", ok);
}
