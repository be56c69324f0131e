#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>

#include "hspeed/families.hpp"
#include "hspeed/graph.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd;
  if (!stdin_data.empty()) cmd += "printf '%s\\n' '" + stdin_data + "' | ";
  cmd += std::string(HSPEED_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("generate subcommand") {
  const auto r = run_cli("generate z 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out == hspeed::to_graph6(hspeed::generate({hspeed::Family::Z, false}, 5)) + "\n");

  const auto co = run_cli("generate s 3 --co");
  CHECK(co.exit_code == 0);
  CHECK(co.out == hspeed::to_graph6(hspeed::generate({hspeed::Family::S, true}, 3)) + "\n");
}

TEST_CASE("count subcommand") {
  const auto r = run_cli("count family:s 4 --formula");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "12 (formula 12)\n");

  const auto j = run_cli("--json count family:s 4");
  CHECK(j.exit_code == 0);
  CHECK(j.out.find("\"count\":\"12\"") != std::string::npos);

  const auto csv = run_cli("count family:b 4 --csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out == "n,count\n1,1\n2,2\n3,4\n4,8\n");
}

TEST_CASE("params subcommand") {
  const std::string g6 = hspeed::to_graph6(hspeed::generate({hspeed::Family::S, false}, 3));
  const auto r = run_cli("--json params " + g6);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"alpha\":4") != std::string::npos);
  CHECK(r.out.find("\"omega\":3") != std::string::npos);

  // batch over stdin, one JSON object per line
  const auto batch = run_cli("--json params", g6 + "\n" + g6);
  CHECK(batch.exit_code == 0);
  CHECK(std::count(batch.out.begin(), batch.out.end(), '\n') == 2);
}

TEST_CASE("classify and index subcommands") {
  const std::string k3 = hspeed::to_graph6(
      hspeed::Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  const auto c = run_cli("--json classify forbidden:" + k3);
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("\"layer\":\"positive-entropy\"") != std::string::npos);
  CHECK(c.out.find("\"index\":2") != std::string::npos);

  const auto i = run_cli("index forbidden:" + k3);
  CHECK(i.exit_code == 0);
  CHECK(i.out == "k=2 entropy=0.5\n");
}

TEST_CASE("extract subcommand and exit codes") {
  const std::string s4 = hspeed::to_graph6(hspeed::generate({hspeed::Family::S, false}, 4));
  const auto ok = run_cli("extract complex " + s4 + " --n 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"kind\":\"s\"") != std::string::npos);

  const std::string k5 = hspeed::to_graph6(
      hspeed::Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4},
                                    {2, 3}, {2, 4}, {3, 4}}));
  const auto fail = run_cli("extract complex " + k5 + " --n 2");
  CHECK(fail.exit_code == 1);
  CHECK(fail.out.find("\"failure\":true") != std::string::npos);
}

TEST_CASE("universality subcommand") {
  const auto r = run_cli("universality z 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("pass") == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("generate nosuch 4").exit_code == 2);
  CHECK(run_cli("params not-a-graph6-\x7f").exit_code == 2);
  CHECK(run_cli("count family:s").exit_code == 2);
  CHECK(run_cli("count builtin:nosuch 4").exit_code == 2);
  CHECK(run_cli("extract nosuch A_").exit_code == 2);
  CHECK(run_cli("count forbidden: 4").exit_code == 2);
  CHECK(run_cli("nosuchcommand").exit_code == 2);
}

TEST_CASE("byte-identical determinism") {
  const std::string k3 = hspeed::to_graph6(
      hspeed::Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (const std::string& args :
       {std::string("generate w 3"), "--json classify forbidden:" + k3,
        std::string("--json count family:q 5"), std::string("universality b 4")}) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}
