#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgt/cli.hpp"
#include "sgt/construct.hpp"
#include "sgt/matrix.hpp"

using namespace sgt;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sgt_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("plan reports the gap") {
  const Run r = run({"plan", "--n", "25", "--d", "2", "--nu", "0", "--wmax", "3"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "t=15"));
  CHECK(has_line(r.out, "lower_bound_tests=13"));
  CHECK(has_line(r.out, "gap=2"));
  CHECK(r.out.find("lower_bound=12.2474487139") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"plan", "--n", "25"}).code == 2);
  CHECK(run({"plan", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--in", scratch("missing.gtm").string(), "--d", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("build, verify and decode go through files") {
  const fs::path ks = scratch("ks.gtm");
  Run r = run({"build", "--n", "25", "--d", "2", "--wmax", "3", "--out", ks.string()});
  REQUIRE(r.code == 0);
  const GtmFile file = read_gtm_file(ks);
  CHECK(file.matrix == ks_build(Field(5), 2, 3, 25));
  CHECK(file.get("kind") == "KautzSingleton");

  CHECK(run({"verify", "--in", ks.string(), "--d", "2", "--exact"}).code == 0);
  CHECK(run({"verify", "--in", ks.string(), "--d", "2"}).code == 0);
  r = run({"verify", "--in", ks.string(), "--d", "3", "--exact"});
  CHECK(r.code == 1);
  CHECK(r.out.find("witness_column=") != std::string::npos);
  CHECK(run({"verify", "--in", ks.string(), "--d", "3"}).code == 1);

  const fs::path y = scratch("y.txt");
  {
    std::ofstream out(y);
    write_outcome(out, or_columns(file.matrix, std::vector<std::size_t>{3, 17}));
  }
  r = run({"decode", "--in", ks.string(), "--y", y.string(), "--nu", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "3 17\n");
  r = run({"decode", "--in", ks.string(), "--y", y.string(), "--list"});
  CHECK(r.out == "3 17\n");
}

TEST_CASE("identity verify") {
  const fs::path i4 = scratch("i4.gtm");
  write_gtm_file(i4, CodeMatrix::identity(4));
  CHECK(run({"verify", "--in", i4.string(), "--d", "3", "--nu", "0", "--exact"}).code == 0);
}

TEST_CASE("budget exhaustion exits 3") {
  const fs::path f = scratch("ks11.gtm");
  write_gtm_file(f, ks_build(Field(11), 2, 6, 121));
  CHECK(run({"verify", "--in", f.string(), "--d", "5", "--exact", "--budget", "10"}).code == 3);
}

TEST_CASE("explicit kinds and random search") {
  const fs::path f = scratch("rnd.gtm");
  Run r = run({"build", "--kind", "random", "--n", "50", "--d", "1", "--t", "20", "--w", "4", "--seed", "3", "--out",
               f.string()});
  CHECK(r.code == 0);
  CHECK(run({"verify", "--in", f.string(), "--d", "1", "--exact"}).code == 0);
  r = run({"build", "--kind", "ks", "--q", "7", "--kq", "2", "--tq", "5", "--n", "49", "--out", f.string()});
  CHECK(r.code == 0);
  CHECK(read_gtm_file(f).matrix.tests() == 35);
  CHECK(run({"build", "--kind", "ks", "--q", "6", "--kq", "2", "--tq", "5", "--n", "36", "--out", f.string()}).code ==
        2);
}

TEST_CASE("simulate") {
  const fs::path f = scratch("list.gtm");
  REQUIRE(run({"build", "--n", "49", "--d", "2", "--nu", "1", "--list-l", "1", "--out", f.string()}).code == 0);
  Run r = run({"simulate", "--in", f.string(), "--nu", "1", "--active", "2", "--errors", "1", "--decoder", "list",
               "--trials", "300", "--seed", "4", "--format", "kv"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "trials_run=300"));
  CHECK(has_line(r.out, "failure_count=0"));
  // beyond the guarantee without --force is a parameter error
  CHECK(run({"simulate", "--in", f.string(), "--nu", "1", "--active", "2", "--errors", "2", "--trials", "10"}).code == 2);
  r = run({"simulate", "--in", f.string(), "--nu", "0", "--active", "4", "--errors", "3", "--trials", "300", "--force"});
  CHECK(r.code == 1);
}

TEST_CASE("bounds sweep is CSV") {
  const Run r = run({"bounds", "--n", "25", "--d", "2", "--wmax", "3", "--sweep", "n", "--from", "25", "--to", "100",
                     "--step", "25"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  CHECK(header ==
        "parameter,value,n,d,nu,constraint,constraint_value,lower_bound,lower_bound_tests,rule,achievable_t,plan_kind,gap");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  CHECK(r.out.find("n,25,25,2,0,wmax,3,12.24744871391589,13,private-pairs,15,KautzSingleton,2") != std::string::npos);
}

TEST_CASE("bench") {
  const Run r = run({"bench", "--n", "49", "--d", "2", "--wmax", "3", "--reps", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("list_decode_seconds=") != std::string::npos);
}
