#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgen/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cgen::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cgen_test_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("golden text output") {
    auto r = run({"gen", "kcombs-dc", "--k", "2", "--n", "3", "--threshold", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "k=0\n\nk=1\n1\n2\n3\nk=2\n1,2\n1,3\n2,3\n");
    r = run({"gen", "kcombs-revol", "--k", "2", "--n", "3"});
    CHECK(r.out == "k=0\n\nk=1\n3\n2\n1\nk=2\n3,2\n2,1\n3,1\n");
    r = run({"gen", "kcombs-revol-int", "--k", "2", "--n", "4"});
    CHECK(r.out == "k=0\n0\nk=1\n0\n1\n2\n3\nk=2\n0\n1\n2\n3\n4\n5\n");
    r = run({"gen", "kcombs-seq", "--k", "0", "--elems", "5,7"});
    CHECK(r.code == 0);
    CHECK(r.out == "k=0\n\n");
  }

  TEST_CASE("csv output") {
    const auto r = run({"gen", "kperms", "--k", "2", "--elems", "4,9", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "0,0\n1,0,4\n1,1,9\n2,0,4,9\n2,1,9,4\n");
  }

  TEST_CASE("nested output") {
    const auto r = run({"gen", "nccg-dc", "--k", "2", "--d", "2", "--n", "3", "--threshold", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("inner") != std::string::npos);
    CHECK(r.out.find("[2,3],[1,2]") != std::string::npos);
  }

  TEST_CASE("count") {
    auto r = run({"count", "kperms", "--k", "3", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1,4,12,24") != std::string::npos);
    r = run({"count", "nccg-dc", "--k", "2", "--d", "2", "--n", "5", "--check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1,10,45") != std::string::npos);
  }

  TEST_CASE("verify") {
    auto r = run({"verify", "revolving-door", "--k", "4", "--n", "10", "--sweep"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"pass\":false") == std::string::npos);
    r = run({"verify", "revolving-door", "--gen", "kcombs-seq", "--k", "3", "--n", "5"});
    CHECK(r.code == 1);
    CHECK(r.out.find("\"pass\":false") != std::string::npos);
    for (std::string prop : {"rank-consistency", "oracle", "fusion", "determinism", "preallocation"}) {
      r = run({"verify", prop, "--k", "3", "--n", "7", "--d", "2", "--threshold", "2"});
      CHECK_MESSAGE(r.code == 0, prop << ": " << r.out << r.err);
    }
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"gen", "nope", "--k", "1", "--n", "2"}).code == 2);
    CHECK(run({"gen", "kcombs-revol", "--k", "2", "--elems", "1,2,3"}).code == 2);
    CHECK(run({"gen", "kcombs-dc", "--k", "2", "--elems", "1,1"}).code == 2);
    CHECK(run({"gen", "nccg-dc", "--k", "2", "--d", "1", "--n", "3"}).code == 2);
    CHECK(run({"gen", "kcombs-revol-int", "--k", "40", "--n", "70"}).code == 3);
    CHECK(run({"count", "kcombs-dc", "--k", "40", "--n", "70"}).code == 3);
    CHECK(run({"gen", "nccg-dc", "--k", "2", "--d", "2", "--n", "3", "--format", "cgbt", "-o",
               temp_path("nested.cgbt")})
              .code == 2);
    CHECK(run({"dump", temp_path("does_not_exist")}).code != 0);
  }

  TEST_CASE("cgbt round trip matches text across worker counts") {
    const auto text = run({"gen", "kcombs-dc", "--k", "3", "--n", "12", "--threshold", "2"}).out;
    std::string first_bytes;
    for (std::string w : {"1", "2", "4", "8"}) {
      const auto path = temp_path("w" + w + ".cgbt");
      REQUIRE(run({"gen", "kcombs-dc", "--k", "3", "--n", "12", "--threshold", "2", "--workers", w,
                   "--format", "cgbt", "-o", path})
                  .code == 0);
      std::ifstream in(path, std::ios::binary);
      std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (first_bytes.empty()) first_bytes = bytes;
      CHECK(bytes == first_bytes);
      const auto dumped = run({"dump", path});
      CHECK(dumped.code == 0);
      CHECK(dumped.out == text);
      std::remove(path.c_str());
    }
  }
}
