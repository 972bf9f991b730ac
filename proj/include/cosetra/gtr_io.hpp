#pragma once

#include <filesystem>

#include "cosetra/frame_extract.hpp"

namespace cosetra {

// Group-triple text format ('#' comments):
//   indices <k>
//   group <x> <constructor>        cyclic <n> | symmetric <n> |
//                                  product <c1> <c2> | grp <path> |
//                                  table <m> <m*m row-major entries>
//   eclass <x1> <x2> ...           one line per class, covering 0..k-1
//   H <x> <y> <members...>         for x != y in E (one orientation suffices;
//   K <x> <y> <members...>         the mirrored pair follows the converse
//   phi <x> <y> <a:b ...>          convention when omitted)
//   C <x> <y> <z> <representative> omitted lines default to the identity coset
// Diagonal pairs are implicit (trivial subgroups, identity isomorphism).
GroupTriple load_gtr(const std::filesystem::path& file);
GroupTriple parse_gtr(const std::string& text, const std::string& origin,
                      const std::filesystem::path& base_dir = {});

std::string render_gtr(const GroupTriple& f, const std::string& comment = "");
void save_gtr(const GroupTriple& f, const std::filesystem::path& file,
              const std::string& comment = "");

// .grp format: 'order <m>', optional 'labels ...', then m rows of m indices.
GroupPtr load_grp(const std::filesystem::path& file);
std::string render_grp(const FiniteGroup& g);

}  // namespace cosetra
