#include "qale/cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qale;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qale");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"verify", "nonsense"}).code == kExitUsage);
  CHECK(run({"analyze", "/no/such/config.json"}).code == kExitUsage);
  CHECK(run({"region", "--m", "2", "--n", "3"}).code == kExitUsage);
  CHECK(run({"region", "--beta-range", "1,0"}).code == kExitUsage);
  CHECK(run({"decay", "--example", "torus"}).code == kExitUsage);
  CHECK(run({"decay", "--example", "eh", "--ray", "1,0,0"}).code == kExitUsage);

  const auto dir = std::filesystem::temp_directory_path() / "qale_cli_test";
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  };
  CHECK(run({"analyze", write("bad_cis.json",
                              R"j({"name":"x","dimension":1,"generators":[[["cis(1/0)"]]]})j")})
            .code == kExitUsage);
  const auto malformed = run({"analyze", write("malformed.json", "{\n\"name\": 1,\n")});
  CHECK(malformed.code == kExitUsage);
  CHECK(malformed.err.find("ParseError") != std::string::npos);
  CHECK(run({"analyze", write("nonunitary.json",
                              R"j({"name":"x","dimension":1,"generators":[[["[2, 0]"]]]})j")})
            .code == kExitUsage);
  CHECK(run({"analyze", write("nonunitary2.json",
                              R"j({"name":"x","dimension":1,"generators":[[[2, 0]]]})j")})
            .code == kExitUsage);
}

TEST_CASE("analyze reports") {
  const auto r = run({"analyze", "c3_z22"});
  CHECK(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "analyze");
  CHECK(j["pass"] == true);
  CHECK(j["schema_version"] == 1);
  CHECK(j["config"]["name"] == "c3_z22");
  CHECK(run({"analyze", "c3_z22"}).out == r.out);

  const auto z23 = run({"analyze", "c4_z23"});
  CHECK(z23.code == kExitPass);
  CHECK(!nlohmann::json::parse(z23.out)["flags"].empty());
}

TEST_CASE("region CSV") {
  const auto none = run({"region", "--m", "3", "--n", "1", "--grid", "5"});
  REQUIRE(none.code == kExitPass);
  const auto lines = csv_lines(none.out);
  REQUIRE(lines.size() == 26);
  CHECK(lines[0] == "beta,gamma,inside_sufficient,inside_conjectured");
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(fields(lines[i]).at(2) == "0");

  const auto one = run({"region", "--m", "3", "--n", "2", "--beta-range", "-2,-2",
                        "--gamma-range", "-0.1,-0.1"});
  REQUIRE(one.code == kExitPass);
  const auto l = csv_lines(one.out);
  REQUIRE(l.size() == 2);
  CHECK(fields(l[1]).at(2) == "1");
}

TEST_CASE("verify and decay are deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "laplacian", "--draws", "5"},
        std::vector<std::string>{"verify", "region", "--draws", "50", "--seed", "3"},
        std::vector<std::string>{"decay", "--example", "eh", "--count", "8"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == kExitPass);
    CHECK(a.out == b.out);
  }
}
