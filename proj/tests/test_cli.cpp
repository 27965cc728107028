#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "fracto/spacefile.hpp"
#include "fracto/zline.hpp"

using namespace fracto;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(FRACTO_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const json& doc) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << doc.dump(2);
  return path;
}

json zline_doc(int n, const std::vector<int>& perm) {
  json p = json::array();
  for (int v : perm) p.push_back(v);
  return json{{"n", 2},
              {"size", n},
              {"convexities",
               json::array({json{{"id", "G1"}, {"kind", "interval"}},
                            json{{"id", "G2"},
                                 {"kind", "permuted_interval"},
                                 {"perm", p}}})}};
}

}  // namespace

TEST_CASE("validate accepts a clean space and rejects a broken one") {
  std::string good = write_temp("cli_good.json", zline_doc(6, {2, 0, 4, 1, 5, 3}));
  RunResult ok = run("validate --space " + good);
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.out)["status"] == "pass");

  json broken = zline_doc(4, {0, 1, 2, 3});
  json hull = json::object();
  for (int i = 0; i < 4; ++i) {
    hull[std::to_string(i)] = json::array({i});
    for (int j = i + 1; j < 4; ++j) {
      json arr = json::array();
      for (int k = i; k <= j; ++k) arr.push_back(k);
      hull[std::to_string(i) + "," + std::to_string(j)] = arr;
    }
  }
  hull["1,3"] = json::array({1});  // drops 3: not extensive
  broken["convexities"] = json::array(
      {json{{"id", "B"}, {"kind", "explicit"}, {"hull", hull}}});
  std::string bad = write_temp("cli_bad.json", broken);
  CHECK(run("validate --space " + bad).exit_code == 2);

  CHECK(run("validate --space /nonexistent.json").exit_code == 2);
}

TEST_CASE("hull and member answer the library results") {
  std::string space = write_temp("cli_zline.json", zline_doc(8, {3, 1, 6, 0, 4, 2, 7, 5}));
  RunResult h = run("hull --space " + space + " --conv G1 --set 2,5");
  CHECK(h.exit_code == 0);
  json hj = json::parse(h.out);
  CHECK(hj["status"] == "info");
  CHECK(hj["witnesses"][0] == "{2,3,4,5}");

  ZLineModel model = build_zline(8, {3, 1, 6, 0, 4, 2, 7, 5});
  Bits a = Bits::of(8, {1, 2, 5});
  RunResult m = run("member --space " + space + " --expr \"1/{G1,G2}\" --set 1,2,5");
  CHECK(m.exit_code == 0);
  std::string expected = model.f4.member(a) ? "true" : "false";
  CHECK(json::parse(m.out)["witnesses"][0] == expected);
}

TEST_CASE("enumerate lists the member family") {
  std::string space = write_temp("cli_enum.json", zline_doc(3, {0, 1, 2}));
  RunResult r = run("enumerate --space " + space + " --expr \"1/{G1}\"");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["counts"]["members"] == 7);
  CHECK(j["family"].size() == 7);
}

TEST_CASE("eq certifies the pair-block identity and spots differences") {
  std::string space = write_temp("cli_eq.json", zline_doc(7, {4, 2, 0, 6, 1, 5, 3}));
  RunResult same = run("eq --space " + space +
                       " --e1 \"2/{G1,G2}\" --e2 \"1/{G1} ^ 1/{G2}\"");
  CHECK(same.exit_code == 0);
  RunResult diff = run("eq --space " + space +
                       " --e1 \"1/{G1,G2}\" --e2 \"2/{G1,G2}\"");
  CHECK(diff.exit_code == 1);
  CHECK(json::parse(diff.out)["status"] == "fail");
}

TEST_CASE("normalize prints the expanded expression") {
  std::string space = write_temp("cli_norm.json", zline_doc(6, {5, 3, 1, 0, 2, 4}));
  RunResult r = run("normalize --space " + space + " --expr \"1/{G1,G2}\"");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["counts"]["blocks"] == 2);
  CHECK(j["witnesses"][0] == "1/{G1} v 1/{G2}");
}

TEST_CASE("independence and conical commands agree with the window theory") {
  std::string space = write_temp("cli_indep.json", zline_doc(7, {2, 5, 0, 3, 6, 1, 4}));
  CHECK(run("independence --space " + space).exit_code == 0);
  RunResult con = run("conical --space " + space + " --g1 G1 --g2 G1");
  CHECK(con.exit_code == 0);
  CHECK(json::parse(con.out)["counts"]["exhaustive"] == 1);
}

TEST_CASE("prop-check suites pass at reduced trial counts") {
  CHECK(run("prop-check --prop 1 --trials 20 --seed 5").exit_code == 0);
  CHECK(run("prop-check --prop 2 --trials 20 --seed 5").exit_code == 0);
  CHECK(run("prop-check --prop abs --trials 20 --seed 5").exit_code == 0);
  CHECK(run("prop-check --prop iii --trials 20 --seed 5").exit_code == 0);
  CHECK(run("prop-check --prop lattice --trials 10 --seed 5").exit_code == 0);
  CHECK(run("prop-check --prop 4 --trials 6 --seed 5").exit_code == 0);
  CHECK(run("prop-check --prop nope").exit_code == 2);
}

TEST_CASE("gen zline emits a loadable space that validates") {
  RunResult r = run("gen zline --size 9 --perm random --seed 11");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["size"] == 9);
  Registry reg = load_space(doc);
  CHECK(reg.ids() == std::vector<std::string>{"G1", "G2"});
  // determinism: identical seed, identical bytes
  RunResult again = run("gen zline --size 9 --perm random --seed 11");
  CHECK(again.out == r.out);
  CHECK(run("gen zline --size 3 --perm 2,0,1").exit_code == 0);
  CHECK(run("gen zline --size 3 --perm 0,1,1").exit_code == 2);
}

TEST_CASE("gen sphere emits robinson convexities") {
  RunResult r = run("gen sphere --points 16 --centers \"0,0,0;0,0,0.4\"");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["size"] == 16);
  CHECK(doc["convexities"].size() == 2);
  Registry reg = load_space(doc);
  CHECK(reg.get("G_c0")->space().size == 16);
}

TEST_CASE("quiet mode prints only the status") {
  std::string space = write_temp("cli_quiet.json", zline_doc(5, {0, 1, 2, 3, 4}));
  RunResult r = run("validate --quiet --space " + space);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "pass\n");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("hull --space /tmp/cli_quiet.json").exit_code == 2);
  CHECK(run("member --space /tmp/cli_quiet.json --expr \"1/{G1\" --set 0")
            .exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}
