#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cosetra/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cosetra - finite relation algebras, measurable atoms, coset "
               "semi-frames"};
  app.require_subcommand(1);

  cosetra::cli::RunConfig config;
  std::string order_csv;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--order", order_csv,
                    "comma-separated atom order on the measurable index set");
    cmd->add_option("--threshold", config.threshold,
                    "exhaustiveness threshold in atoms (default 12)");
    cmd->add_option("--seed", config.seed, "sample seed (echoed in reports)");
    cmd->add_option("--out", config.out_dir, "directory for emitted files");
    cmd->add_flag("--exhaustive", config.exhaustive,
                  "force exhaustive element checks");
    cmd->add_flag("--sample", config.sample, "force sampled element checks");
    return cmd;
  };
  auto add_input = [&](CLI::App* cmd) {
    config.inputs.resize(1);
    cmd->add_option("input", config.inputs[0], "input file")->required();
    return cmd;
  };

  for (const char* name : {"check", "measure", "extract", "build", "roundtrip",
                           "represent", "scaffold"}) {
    auto* cmd = add_common(app.add_subcommand(name));
    add_input(cmd);
  }
  auto* gen = add_common(app.add_subcommand("gen"));
  gen->add_option("--max-indices", config.gen_max_indices,
                  "largest measurable index set to enumerate");
  gen->add_option("--max-order", config.gen_max_order, "largest group order");
  gen->add_option("--limit", config.gen_limit, "stop after this many triples");
  gen->add_flag("--no-shifts", config.gen_no_shifts,
                "identity shifting cosets only");

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  if (!order_csv.empty()) {
    std::size_t pos = 0;
    while (pos < order_csv.size()) {
      const std::size_t comma = order_csv.find(',', pos);
      const std::string tok = order_csv.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        config.order.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        std::cerr << "bad --order entry '" << tok << "'\n";
        return 2;
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return cosetra::cli::run(config, std::cout, std::cerr);
}
