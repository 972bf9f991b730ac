#pragma once

#include <filesystem>
#include <string>

#include "cosetra/ra_kernel.hpp"

namespace cosetra {

// Line-oriented text format for atom structures ('#' starts a comment):
//   atoms <n>
//   names <w0> ... <w{n-1}>          (optional; defaults a0..a{n-1})
//   converse <p0> ... <p{n-1}>
//   identity <i1> ...
//   cycle <i> <j> <k>                (one line per triple with k <= i;j)
// Pairs without a cycle line compose to zero. Structural violations are
// rejected with line-numbered diagnostics; the composition table itself is
// loaded literally so that defective tables can be diagnosed by the axiom
// verifier.
StructurePtr load_ra(const std::filesystem::path& file);
StructurePtr parse_ra(const std::string& text, const std::string& origin);

std::string render_ra(const AtomStructure& a, const std::string& comment = "");
void save_ra(const AtomStructure& a, const std::filesystem::path& file,
             const std::string& comment = "");

std::uint64_t file_digest(const std::filesystem::path& file);

}  // namespace cosetra
