#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("CHOICETREE_CLI");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  const int status = std::system((cli() + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "choicetree_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("sample-tree writes a spanning tree as json") {
  const auto out = scratch("tree.json");
  CHECK(run("sample-tree -n 6 -k 2 --seed 3 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["n"] == 6);
  CHECK(j["k"] == 2);
  CHECK(j["edges"].size() == 5);
}

TEST_CASE("histogram output and replay") {
  const auto a = scratch("h1.csv"), b = scratch("h2.csv");
  const std::string args = "sample-tree -n 4 -k 2 --algo wilson --replicas 500 --seed 9 --format csv --out ";
  CHECK(run(args + a.string()) == 0);
  CHECK(run(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run(args + b.string() + " --serial") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("other samplers run") {
  CHECK(run("sample-walk -n 20 -k 2 --horizon 50 --out " + scratch("w.csv").string()) == 0);
  CHECK(run("sample-le -n 20 -k 2 --horizon 50 --out " + scratch("le.csv").string()) == 0);
  CHECK(run("sample-rayleigh -k 2 --t-max 3 --out " + scratch("r.csv").string()) == 0);
  CHECK(run("sample-sticks --branches 5 --beta 2 --gamma 1 --out " + scratch("s.json").string()) == 0);
}

TEST_CASE("bad input exits 2") {
  CHECK(run("sample-tree -n 1") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("experiment no-such-experiment") == 2);
  CHECK(run("sample-sticks --beta 1 --gamma 3") == 2);
}

TEST_CASE("experiment exit status") {
  CHECK(run("experiment urn-martingale --replicas 2000 --seed 1") == 0);
  CHECK(run("experiment tree-equality --replicas 20000 --seed 1") == 0);
  // three trees per law leave nothing to test
  CHECK(run("experiment tree-equality --replicas 3") == 2);
}
