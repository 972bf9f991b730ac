#include "cosetra/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cosetra/gtr_io.hpp"
#include "cosetra/ra_io.hpp"
#include "cosetra/repr_check.hpp"

namespace cosetra::cli {

namespace {

namespace fs = std::filesystem;

int thread_cap() {
  if (const char* env = std::getenv("COSETRA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void header(std::ostream& out, const RunConfig& c, const std::string& input,
            std::uint64_t digest) {
  out << "# cosetra " << kVersion << "\n";
  out << "# command: " << c.command << "\n";
  if (!input.empty()) {
    out << "# input: " << fs::path(input).filename().string() << "\n";
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << digest;
    out << "# digest: " << hex.str() << "\n";
  }
  out << "# seed: " << c.seed << "\n";
  out << "# threads: " << thread_cap() << "\n";
}

AxiomCheckOptions axiom_options(const RunConfig& c) {
  AxiomCheckOptions opt;
  opt.mode = AxiomMode::ElementLevel;
  opt.exhaustive_threshold = c.sample ? 0 : c.threshold;
  opt.force_exhaustive = c.exhaustive;
  opt.seed = c.seed;
  return opt;
}

IsoCheckOptions iso_options(const RunConfig& c) {
  IsoCheckOptions opt;
  opt.exhaustive_threshold = c.sample ? 0 : c.threshold;
  opt.seed = c.seed;
  return opt;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  auto a = load_ra(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  const auto report = verify_ra_axioms(*a, axiom_options(c));
  out << render_axiom_report(*a, report);
  out << "result: " << (report.all_pass() ? "pass" : "fail") << "\n";
  return report.all_pass() ? 0 : 1;
}

// Analysis commands refuse tables that fail the complete atom-level checks.
bool gate_axioms(const AtomStructure& a, std::ostream& out) {
  AxiomCheckOptions opt;
  opt.mode = AxiomMode::AtomLevel;
  const auto report = verify_ra_axioms(a, opt);
  if (report.all_pass()) return true;
  out << "result: fail (input is not a relation algebra)\n";
  out << render_axiom_report(a, report);
  return false;
}

int cmd_measure(const RunConfig& c, std::ostream& out) {
  auto a = load_ra(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  if (!gate_axioms(*a, out)) return 1;
  out << measurability_report(*a);
  return is_measurable_algebra(*a) ? 0 : 1;
}

int cmd_extract(const RunConfig& c, std::ostream& out) {
  auto a = load_ra(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  if (!gate_axioms(*a, out)) return 1;
  if (!is_measurable_algebra(*a)) {
    out << "result: fail (not a measurable algebra)\n";
    return 1;
  }
  const auto records = measurable_atoms(*a);
  const auto e = equivalence_E(*a, records);
  const auto s = build_semi_scaffold(*a, records, e, c.order);
  const auto triple = extract_semi_frame(*a, records, e, s);
  const auto gtr = render_gtr(triple, "extracted by cosetra " + std::string(kVersion));
  out << "indices: " << triple.count() << "\n";
  for (int x = 0; x < triple.count(); ++x)
    out << "group " << x << ": order " << triple.groups[x]->order() << "\n";
  if (!c.out_dir.empty()) {
    const fs::path dest = fs::path(c.out_dir) /
                          (fs::path(c.inputs[0]).stem().string() + ".gtr");
    write_file(dest, gtr);
    out << "wrote: " << dest.filename().string() << "\n";
  } else {
    out << gtr;
  }
  out << "result: pass\n";
  return 0;
}

int cmd_build(const RunConfig& c, std::ostream& out) {
  auto f = load_gtr(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  const auto sf = verify_semi_frame(f);
  out << sf.render();
  if (!sf.all_pass()) {
    out << "result: fail (not a semi-frame)\n";
    return 1;
  }
  const bool frame = frame_record(f).frame;
  out << "frame: " << (frame ? "yes" : "no") << "\n";
  const auto built = frame ? build_group_algebra(f) : build_coset_algebra(f);
  out << "atoms: " << built.structure->atom_count() << "\n";
  out << "base: " << built.base_size << "\n";
  AxiomCheckOptions opt;
  opt.mode = AxiomMode::AtomLevel;
  const bool is_ra = verify_ra_axioms(*built.structure, opt).all_pass();
  out << "relation_algebra: " << (is_ra ? "yes" : "no") << "\n";
  if (!c.out_dir.empty()) {
    const std::string stem = fs::path(c.inputs[0]).stem().string();
    save_ra(*built.structure, fs::path(c.out_dir) / (stem + ".ra"),
            "built by cosetra " + std::string(kVersion));
    write_file(fs::path(c.out_dir) / (stem + ".rel"), render_rel(built));
    out << "wrote: " << stem << ".ra " << stem << ".rel\n";
  }
  out << "result: " << (is_ra ? "pass" : "fail (semi-frame, not a relation algebra)")
      << "\n";
  return is_ra ? 0 : 1;
}

int cmd_roundtrip(const RunConfig& c, std::ostream& out) {
  auto a = load_ra(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  const auto report = roundtrip(a, iso_options(c), c.order);
  if (!report.pass) {
    out << "result: fail (stage " << report.failed_stage << ")\n";
    return 1;
  }
  out << "indices: " << report.triple.count() << "\n";
  for (int x = 0; x < report.triple.count(); ++x)
    out << "group " << x << ": order " << report.triple.groups[x]->order()
        << "\n";
  out << "built_atoms: " << report.built.structure->atom_count() << "\n";
  out << "peircean: pass\n";
  out << "isomorphism: " << (report.iso.exhaustive ? "exhaustive" : "sampled")
      << " pairs " << report.iso.pairs_checked << "\n";
  out << "result: pass\n";
  return 0;
}

int cmd_represent(const RunConfig& c, std::ostream& out) {
  auto a = load_ra(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  if (!gate_axioms(*a, out)) return 1;
  const auto verdict = decide_representable(a, iso_options(c), c.order);
  out << render_verdict(*a, verdict);
  if (verdict.witness && !c.out_dir.empty()) {
    const std::string stem = fs::path(c.inputs[0]).stem().string();
    const fs::path dest = fs::path(c.out_dir) / (stem + ".witness.rel");
    write_file(dest, render_rel(*verdict.witness));
    out << "witness_file: " << dest.filename().string() << "\n";
  }
  return verdict.kind == Representability::GroupRepresentable ? 0 : 1;
}

int cmd_scaffold(const RunConfig& c, std::ostream& out) {
  auto a = load_ra(c.inputs.at(0));
  header(out, c, c.inputs[0], file_digest(c.inputs[0]));
  if (!gate_axioms(*a, out)) return 1;
  if (!is_measurable_algebra(*a)) {
    out << "result: fail (not a measurable algebra)\n";
    return 1;
  }
  const auto records = measurable_atoms(*a);
  const auto e = equivalence_E(*a, records);
  ScaffoldSearchStats stats;
  const auto s = find_scaffold(*a, records, e, c.order, &stats);
  out << "search_space: " << stats.space << "\n";
  out << "search_nodes: " << stats.nodes << "\n";
  if (!s) {
    out << "scaffold: absent\n";
    out << "result: fail\n";
    return 1;
  }
  out << "scaffold:";
  const int k = e.count();
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      if (e.pair(x, y)) out << " " << a->atom_name(s->at(x, y));
  out << "\nresult: pass\n";
  return 0;
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  header(out, c, "", 0);
  GenerationBounds bounds;
  bounds.max_index_count = c.gen_max_indices;
  bounds.max_group_order = c.gen_max_order;
  bounds.include_shifts = !c.gen_no_shifts;
  bounds.limit = c.gen_limit;
  std::uint64_t ras = 0, frames = 0, scaffolds = 0, emitted = 0;
  generate_triples(bounds, [&](const GroupTriple& f, const GenerationMeta& meta) {
    ++emitted;
    out << "triple " << meta.emitted << ": " << meta.description;
    BuiltAlgebra built = build_coset_algebra(f);
    AxiomCheckOptions opt;
    opt.mode = AxiomMode::AtomLevel;
    const bool is_ra = verify_ra_axioms(*built.structure, opt).all_pass();
    out << " atoms=" << built.structure->atom_count()
        << " ra=" << (is_ra ? "yes" : "no");
    if (is_ra) {
      ++ras;
      const bool frame = frame_record(f).frame;
      if (frame) ++frames;
      out << " frame=" << (frame ? "yes" : "no");
      const auto records = measurable_atoms(*built.structure);
      const auto e = equivalence_E(*built.structure, records);
      ScaffoldSearchStats stats;
      const auto s = find_scaffold(*built.structure, records, e, {}, &stats);
      if (s) ++scaffolds;
      out << " scaffold=" << (s ? "yes" : "no");
    }
    out << "\n";
    if (!c.out_dir.empty()) {
      const std::string stem = "triple" + std::to_string(meta.emitted);
      save_gtr(f, fs::path(c.out_dir) / (stem + ".gtr"), meta.description);
      if (is_ra)
        save_ra(*built.structure, fs::path(c.out_dir) / (stem + ".ra"),
                meta.description);
    }
    return true;
  });
  out << "emitted: " << emitted << "\n";
  out << "relation_algebras: " << ras << "\n";
  out << "frames: " << frames << "\n";
  out << "scaffolds: " << scaffolds << "\n";
  out << "result: pass\n";
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.threshold < 1) throw Error("threshold must be at least 1");
    if (config.command != "gen" && config.inputs.empty())
      throw Error("command '" + config.command + "' needs an input file");
    if (!config.out_dir.empty()) fs::create_directories(config.out_dir);
    if (config.command == "check") return cmd_check(config, out);
    if (config.command == "measure") return cmd_measure(config, out);
    if (config.command == "extract") return cmd_extract(config, out);
    if (config.command == "build") return cmd_build(config, out);
    if (config.command == "roundtrip") return cmd_roundtrip(config, out);
    if (config.command == "represent") return cmd_represent(config, out);
    if (config.command == "scaffold") return cmd_scaffold(config, out);
    if (config.command == "gen") return cmd_gen(config, out);
    err << "unknown command '" << config.command << "'\n";
    return 2;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cosetra::cli
