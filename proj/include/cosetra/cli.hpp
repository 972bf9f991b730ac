#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cosetra/common.hpp"

namespace cosetra::cli {

// One batch invocation. Exit status 0 = all checks passed, 1 = a verdict of
// failure or absence, 2 = input error.
struct RunConfig {
  std::string command;  // check measure extract build roundtrip represent
                        // scaffold gen
  std::vector<std::string> inputs;
  std::vector<int> order;          // atom order on the measurable index set
  int threshold = 12;              // exhaustiveness threshold (atoms)
  std::uint64_t seed = 0x5eedc0de5eedc0deull;
  std::string out_dir;             // where emitted files go; empty = stdout only
  bool exhaustive = false;         // force exhaustive element checks
  bool sample = false;             // force sampled element checks

  // gen bounds
  int gen_max_indices = 1;
  int gen_max_order = 3;
  std::uint64_t gen_limit = 0;
  bool gen_no_shifts = false;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cosetra::cli
