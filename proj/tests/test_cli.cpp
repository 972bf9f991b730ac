#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cosetra/cli.hpp"
#include "cosetra/gtr_io.hpp"
#include "cosetra/ra_io.hpp"
#include "test_support.hpp"

using namespace cosetra;
using namespace testsupport;

namespace {

const std::filesystem::path kFixtures = COSETRA_FIXTURE_DIR;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::string& command, const std::string& input = "",
              const std::string& out_dir = "",
              const std::vector<int>& order = {}) {
  cli::RunConfig config;
  config.command = command;
  if (!input.empty()) config.inputs.push_back(input);
  config.out_dir = out_dir;
  config.order = order;
  std::ostringstream out, err;
  const int status = cli::run(config, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check: fixtures pass, mutations fail, garbage is an input error") {
  for (const char* good : {"re2.ra", "re3.ra", "cm_z2.ra", "cm_z3.ra",
                           "cm_z4.ra", "cm_s3.ra"}) {
    const auto r = invoke("check", (kFixtures / good).string());
    CAPTURE(good);
    CHECK(r.status == 0);
    CHECK(r.out.find("result: pass") != std::string::npos);
  }
  for (const char* bad :
       {"mut_r4_assoc.ra", "mut_r5_identity.ra", "mut_r7_involution.ra",
        "mut_r10_tarski.ra", "mut_r11_cycle.ra"}) {
    const auto r = invoke("check", (kFixtures / bad).string());
    CAPTURE(bad);
    CHECK(r.status == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(r.out.find("witness") != std::string::npos);
  }
  const auto dir = scratch_dir("cli");
  {
    std::ofstream f(dir / "corrupt.ra");
    f << "atoms 3\nconverse 0 1\nidentity 0\n";  // converse row too short
  }
  const auto r = invoke("check", (dir / "corrupt.ra").string());
  CHECK(r.status == 2);
  CHECK(r.err.find("input error") != std::string::npos);
}

TEST_CASE("report headers carry version, seed and digest") {
  const auto r = invoke("check", (kFixtures / "re2.ra").string());
  CHECK(r.out.find("# cosetra ") != std::string::npos);
  CHECK(r.out.find("# seed: ") != std::string::npos);
  CHECK(r.out.find("# digest: ") != std::string::npos);
  CHECK(r.out.find("# input: re2.ra") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* cmd : {"check", "measure", "roundtrip", "represent"}) {
    const auto r1 = invoke(cmd, (kFixtures / "cm_s3.ra").string());
    const auto r2 = invoke(cmd, (kFixtures / "cm_s3.ra").string());
    CAPTURE(cmd);
    CHECK(r1.out == r2.out);
    CHECK(r1.status == r2.status);
  }
}

TEST_CASE("measure") {
  const auto r = invoke("measure", (kFixtures / "cm_z4.ra").string());
  CHECK(r.status == 0);
  CHECK(r.out.find("measurable_atoms: 1") != std::string::npos);
  CHECK(r.out.find("measure: 4") != std::string::npos);
  const auto nm = invoke("measure", (kFixtures / "diversity.ra").string());
  CHECK(nm.status == 1);
  const auto bad = invoke("measure", (kFixtures / "mut_r11_cycle.ra").string());
  CHECK(bad.status == 1);
  CHECK(bad.out.find("not a relation algebra") != std::string::npos);
}

TEST_CASE("extract and build round through files") {
  const auto dir = scratch_dir("cli_extract");
  const auto ex = invoke("extract", (kFixtures / "cm_s3.ra").string(),
                         dir.string());
  CHECK(ex.status == 0);
  REQUIRE(std::filesystem::exists(dir / "cm_s3.gtr"));
  auto f = load_gtr(dir / "cm_s3.gtr");
  CHECK(f.count() == 1);

  const auto built = invoke("build", (dir / "cm_s3.gtr").string(), dir.string());
  CHECK(built.status == 0);
  CHECK(built.out.find("frame: yes") != std::string::npos);
  CHECK(built.out.find("relation_algebra: yes") != std::string::npos);
  REQUIRE(std::filesystem::exists(dir / "cm_s3.ra"));
  REQUIRE(std::filesystem::exists(dir / "cm_s3.rel"));
  const auto check_built = invoke("check", (dir / "cm_s3.ra").string());
  CHECK(check_built.status == 0);
}

TEST_CASE("build on the z4 pair fixture") {
  const auto dir = scratch_dir("cli_build");
  const auto r = invoke("build", (kFixtures / "z4_pair.gtr").string(),
                        dir.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("atoms: 12") != std::string::npos);
  CHECK(r.out.find("base: 8") != std::string::npos);
  const auto check_built = invoke("check", (dir / "z4_pair.ra").string());
  CHECK(check_built.status == 0);
}

TEST_CASE("roundtrip command") {
  CHECK(invoke("roundtrip", (kFixtures / "cm_s3.ra").string()).status == 0);
  CHECK(invoke("roundtrip", (kFixtures / "prod_z2_z3.ra").string()).status == 0);
  CHECK(invoke("roundtrip", (kFixtures / "diversity.ra").string()).status == 1);
}

TEST_CASE("represent command") {
  const auto dir = scratch_dir("cli_repr");
  const auto r = invoke("represent", (kFixtures / "cm_z3.ra").string(),
                        dir.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict: group_representable") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "cm_z3.witness.rel"));
  const auto nm = invoke("represent", (kFixtures / "diversity.ra").string());
  CHECK(nm.status == 1);
  CHECK(nm.out.find("verdict: not_measurable") != std::string::npos);
}

TEST_CASE("scaffold command") {
  const auto r = invoke("scaffold", (kFixtures / "re3.ra").string());
  CHECK(r.status == 0);
  CHECK(r.out.find("scaffold:") != std::string::npos);
  CHECK(r.out.find("search_space:") != std::string::npos);
}

TEST_CASE("order override is honored") {
  const auto r = invoke("extract", (kFixtures / "re2.ra").string(), "", {1, 0});
  CHECK(r.status == 0);
  const auto bad = invoke("extract", (kFixtures / "re2.ra").string(), "", {0, 0});
  CHECK(bad.status == 2);
}

TEST_CASE("gen catalog") {
  cli::RunConfig config;
  config.command = "gen";
  config.gen_max_indices = 1;
  config.gen_max_order = 3;
  std::ostringstream out, err;
  const int status = cli::run(config, out, err);
  CHECK(status == 0);
  CHECK(out.str().find("emitted: 6") != std::string::npos);
  CHECK(out.str().find("relation_algebras: 3") != std::string::npos);
  CHECK(out.str().find("scaffolds: 3") != std::string::npos);
}

TEST_CASE("unknown command") {
  const auto r = invoke("frobnicate", (kFixtures / "re2.ra").string());
  CHECK(r.status == 2);
}
