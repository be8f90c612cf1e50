// Reference data against committed golden files. Set MWAVE_UPDATE_GOLDEN=1 to rewrite them.
#include "cli_harness.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>

using namespace mwave;
using namespace mwave::test;

namespace {

struct GoldenCase {
  const char* file;
  std::vector<std::string> args;
};

const std::vector<GoldenCase>& cases() {
  static const std::vector<GoldenCase> all = {
      {"components_v1.5_t5.csv", {"components", "--vk", "1.0", "--v", "1.5", "--t", "5", "--points", "400"}},
      {"components_v1.0_t5.csv", {"components", "--vk", "1.0", "--v", "1.0", "--t", "5", "--points", "400"}},
      {"components_v0.5_t5.csv", {"components", "--vk", "1.0", "--v", "0.5", "--t", "5", "--points", "400"}},
      {"profile_v1.0_t10.csv", {"profile", "--vk", "1.0", "--v", "1.0", "--t", "10", "--points", "400"}},
      {"profile_v1.2_t10.csv", {"profile", "--vk", "1.0", "--v", "1.2", "--t", "10", "--points", "400"}},
      {"profile_v2.0_t10.csv", {"profile", "--vk", "1.0", "--v", "2.0", "--t", "10", "--points", "400"}},
      {"cornu.csv", {"cornu", "--theta-min", "-3", "--theta-max", "3", "--points", "241"}},
      {"profile_v0.8_t10.csv", {"profile", "--vk", "1.0", "--v", "0.8", "--t", "10", "--points", "400"}},
      {"profile_sudden_t10.csv", {"profile", "--vk", "1.0", "--sudden", "--t", "10", "--points", "400"}},
      {"visibility_t100.csv", {"visibility", "--vk", "0.1,1.0", "--t", "100"}},
  };
  return all;
}

std::string golden_path(const char* file) { return std::string(MWAVE_GOLDEN_DIR) + "/" + file; }

}  // namespace

TEST_CASE("output matches the golden files") {
  const bool update = std::getenv("MWAVE_UPDATE_GOLDEN") != nullptr;
  for (const GoldenCase& c : cases()) {
    CAPTURE(c.file);
    const CliRun r = run_cli(c.args);
    REQUIRE(r.code == 0);
    if (update) {
      std::ofstream(golden_path(c.file)) << without_timestamp(r.out);
      continue;
    }
    std::ifstream f(golden_path(c.file));
    REQUIRE(f.good());
    const ParsedTable expected = read_table(f);
    const ParsedTable actual = parse(r.out);
    CHECK(actual.manifest == expected.manifest);
    CHECK(actual.columns == expected.columns);
    REQUIRE(actual.rows.rows() == expected.rows.rows());
    REQUIRE(actual.rows.cols() == expected.rows.cols());
    const Eigen::ArrayXXd diff = (actual.rows - expected.rows).array().abs();
    const Eigen::ArrayXXd scale = expected.rows.array().abs().max(1e-3);
    CHECK((diff <= 1e-9 * scale).all());
  }
}
