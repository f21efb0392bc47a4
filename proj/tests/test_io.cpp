#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "domino/io.hpp"

using namespace domino;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(DOMINO_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "domino_io_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

const char* kDoubling = R"({"letters":["0"],"rules":[{"lhs":"0","rhs":"00"}]})";
const char* kSquare = R"({"letters":["0"],"rules":[{"lhs":"0","rhs":"0000"}]})";
const char* kContradiction = R"({"vertices":3,"alphabet":["x"],"edges":[[0,1,"next"],[1,2,"next"]],
  "forbidden":[{"colors":["x"],"edges":[]}]})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("substitution round trip") {
  const Substitution s = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"b", "a"}, {"b", "b"}});
  const Substitution back = io::substitution_from_json(io::to_json(s));
  CHECK(io::to_json(back) == io::to_json(s));
  CHECK(back.rules().size() == 3);
  const auto j = io::json::parse(R"({"letters":["a"],"rules":[{"lhs":"a","rhs":["a","a"]}],
    "expansion":{"lambda":2,"v":{"a":1}}})");
  const Substitution e = io::substitution_from_json(j);
  REQUIRE(e.expansion());
  CHECK(e.expansion()->lambda == 2.0);
}

TEST_CASE("instance round trip") {
  const auto inst = io::instance_from_json(io::json::parse(kContradiction));
  CHECK(inst.vertex_count == 3);
  CHECK(inst.edges.size() == 2);
  CHECK(inst.edges[0].label == kNextLabel);
  const auto again = io::instance_from_json(io::to_json(inst));
  CHECK(io::to_json(again) == io::to_json(inst));
  CHECK(io::edge_label_from_json(io::json(7)) == 7);
  CHECK(io::edge_label_to_json(kNextLabel) == "next");
}

TEST_CASE("NN set and patterns") {
  const auto fs = io::nn_forbidden_from_json(io::json::parse(
      R"({"alphabet":["x","y"],"forbidden":[{"edge":"next","a":"x","b":"y"},{"edge":3,"a":"y","b":"y"}]})"));
  CHECK(fs.forbids(kNextLabel, 0, 1));
  CHECK(fs.forbids(3, 1, 1));
  CHECK_FALSE(fs.forbids(3, 0, 0));
  CHECK(io::nn_forbidden_from_json(io::to_json(fs)).forbidden == fs.forbidden);
  CHECK_THROWS_AS(io::nn_forbidden_from_json(io::json::parse(
                      R"({"alphabet":["x"],"forbidden":[{"edge":"next","a":"x","b":"q"}]})")),
                  io::InputError);
  const auto pats = io::orbit_patterns_from_json(io::json::parse(
      R"({"patterns":[{"vertices":[[0,0],[0,1]],"edges":[[0,1,"next"]],"colors":[0,1]}]})"));
  REQUIRE(pats.size() == 1);
  CHECK(pats[0].colors == std::vector<int>{0, 1});
}

TEST_CASE("input errors name the source") {
  try {
    io::read_json_file("/nonexistent/x.json");
    FAIL("expected InputError");
  } catch (const io::InputError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/x.json") != std::string::npos);
  }
  const fs::path bad = scratch("bad.json", "{\"letters\": [");
  try {
    io::read_json_file(bad);
    FAIL("expected InputError");
  } catch (const io::InputError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(io::instance_from_json(io::json::parse(R"({"vertices":2,"alphabet":["x"],"edges":[[0,5,"next"]],"forbidden":[]})")),
                  io::InputError);
}

}

TEST_SUITE("cli") {

TEST_CASE("eig") {
  const Run r = cli("eig -i " + scratch("dbl.json", kDoubling).string());
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda 2\n") != std::string::npos);
}

TEST_CASE("expand is deterministic") {
  const fs::path s = scratch("sq.json", kSquare);
  const Run a = cli("expand -i " + s.string() + " --word 0 --steps 2");
  CHECK(a.code == 0);
  CHECK(a.out == std::string(16, '0') + "\n");
  CHECK(cli("expand -i " + s.string() + " --word 0 --steps 2").out == a.out);
}

TEST_CASE("ball stats") {
  const Run r = cli("ball --radius 2 --stats");
  CHECK(r.code == 0);
  CHECK(r.out.find("|C_1|=48 a-type=8 b-type=40") != std::string::npos);
  CHECK(r.out.find("|C_2|=1632") != std::string::npos);
  CHECK(cli("ball --radius 9").code == 2);
}

TEST_CASE("solve") {
  const fs::path p = scratch("contra.json", kContradiction);
  const Run r = cli("solve -i " + p.string());
  CHECK(r.code == 0);
  CHECK(io::json::parse(r.out)["status"] == "UNSAT");
  const Run s = cli("solve -i " + p.string() + " --radius 2");
  CHECK(s.code == 0);
  CHECK(io::json::parse(s.out)["unsat_radius"] == 0);
}

TEST_CASE("render and orbit") {
  const fs::path s = scratch("sq.json", kSquare);
  const Run svg = cli("render -i " + s.string() + " --depth 2");
  CHECK(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
  const Run dot = cli("orbit -i " + s.string() + " --depth 2 --format dot");
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
}

TEST_CASE("lift and reduce-surface") {
  const fs::path s = scratch("sq.json", kSquare);
  const fs::path f = scratch("nn.json", R"({"alphabet":["x","y"],"forbidden":[{"edge":"next","a":"x","b":"x"}]})");
  const Run lift = cli("lift -i " + s.string() + " --forbidden " + f.string() + " --depth 3");
  REQUIRE(lift.code == 0);
  const auto j = io::json::parse(lift.out);
  CHECK(j["power"] == 1);
  CHECK(j["shapes"].size() == 4);
  const fs::path pats = scratch("pats.json",
      R"({"patterns":[{"vertices":[[0,0],[0,1]],"edges":[[0,1,"next"]],"colors":[0,1]}]})");
  const Run red = cli("reduce-surface -i " + pats.string() + " --radius 2");
  REQUIRE(red.code == 0);
  const auto k = io::json::parse(red.out);
  CHECK(k["patterns"].size() == 1);
  CHECK(k["skipped"] == 0);
}

TEST_CASE("failure exit codes") {
  const Run missing = cli("eig -i /tmp/domino_missing_file.json");
  CHECK(missing.code == 1);
  CHECK(missing.out.find("/tmp/domino_missing_file.json") != std::string::npos);
  const Run bad = cli("eig -i " + scratch("bad.json", "{\"letters\": [").string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("byte") != std::string::npos);
  CHECK(cli("eig --no-such-flag").code == 2);
  CHECK(cli("").code == 2);
  const Run small = cli("alphabet -i " + scratch("dbl.json", kDoubling).string());
  CHECK(small.code == 1);
  CHECK(small.out.find("not above 2") != std::string::npos);
}

}
