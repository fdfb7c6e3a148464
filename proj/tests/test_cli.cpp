#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// End-to-end checks against the installed binary. Every expected string below
// was captured from a reference run and frozen; the suite fails on any drift
// in formatting, values, or exit codes.

namespace {

std::string run(const std::string& args, int* exit_code = nullptr) {
  std::string cmd = std::string(DOBINSKI_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

using nlohmann::json;

json run_json(const std::string& args, int* exit_code = nullptr) {
  return json::parse(run(args, exit_code));
}

}  // namespace

TEST_CASE("expand prints the digit table for 1/3") {
  int code = -1;
  auto out = lines_of(run("expand --x 'periodic:;01' --n 8", &code));
  CHECK(code == 0);
  REQUIRE(out.size() == 9);
  CHECK(out[0] == "n,z_n,P_n,dist");
  CHECK(out[1] == "1,1,1/2,1/6");
  CHECK(out[2] == "2,1,1/4,1/12");
  CHECK(out[3] == "3,1,3/8,1/24");
  CHECK(out[4] == "4,1,5/16,1/48");
  CHECK(out[5] == "5,1,11/32,1/96");
  CHECK(out[6] == "6,1,21/64,1/192");
  CHECK(out[7] == "7,1,43/128,1/384");
  CHECK(out[8] == "8,1,85/256,1/768");
}

TEST_CASE("product traces the tangent product at 1/3") {
  int code = -1;
  auto out = lines_of(run("product --x 'periodic:;01' --n 20", &code));
  CHECK(code == 0);
  REQUIRE(out.size() == 22);
  CHECK(out[0] == "n,partial,tail,target,abs_error");
  CHECK(out[1] ==
        "0,1.73205080756887729352744634151e+00,8.66025403784438646763723170753e-01,"
        "3.00000000000000000000000000000e+00,1.26794919243112270647255365849e+00");
  CHECK(out[5] ==
        "4,2.89875302936817643104361890915e+00,9.91050225041727625554152813778e-01,"
        "3.00000000000000000000000000000e+00,1.01246970631823568956381090853e-01");
  CHECK(out[21] ==
        "20,2.99999842842292655596210276876e+00,9.99999862822507514940352252238e-01,"
        "3.00000000000000000000000000000e+00,1.57157707344403789723123848159e-06");
}

TEST_CASE("classify reports membership verdicts") {
  int code = -1;
  auto third = lines_of(run("classify --x 'periodic:;01'", &code));
  CHECK(code == 0);
  REQUIRE(third.size() == 4);
  CHECK(third[0] == "key,value");
  CHECK(third[1] == "x,periodic:;01");
  CHECK(third[2] == "verdict,not-in-D");
  CHECK(third[3] == "limsup,0");

  auto fin = lines_of(run("classify --x finite:101", &code));
  CHECK(code == 0);
  REQUIRE(fin.size() == 5);
  CHECK(fin[1] == "x,finite:101");
  CHECK(fin[2] == "verdict,in-D");
  CHECK(fin[3] == "k,1");
  CHECK(fin[4] == "limsup,unbounded");
}

TEST_CASE("quasi prints exact pairwise overlap ratios") {
  int code = -1;
  auto out = lines_of(run("quasi --omega 1/4 --nmax 3", &code));
  CHECK(code == 0);
  REQUIRE(out.size() == 4);
  CHECK(out[0] == "n,m,measure_Un,measure_Um,measure_intersection,ratio");
  CHECK(out[1] == "1,2,1/2,1/2,1/4,1");
  CHECK(out[2] == "1,3,1/2,1/2,1/4,1");
  CHECK(out[3] == "2,3,1/2,1/2,1/4,1");
}

TEST_CASE("bell compares exact values against the series") {
  int code = -1;
  auto out = lines_of(run("bell --n 4 --terms 40", &code));
  CHECK(code == 0);
  REQUIRE(out.size() == 6);
  CHECK(out[0] == "n,bell,series,rel_error");
  CHECK(out[1].rfind("0,1,1.00000000000000000000000000000e+00,", 0) == 0);
  CHECK(out[3].rfind("2,2,2.00000000000000000000000000000e+00,", 0) == 0);
  CHECK(out[5].rfind("4,15,1.50000000000000000000000000000e+01,", 0) == 0);
  // 40 terms push the truncation error far below double precision
  double rel = std::stod(out[5].substr(out[5].rfind(',') + 1));
  CHECK(rel < 1e-30);
}

TEST_CASE("cover lists the stage intervals clipped to the unit interval") {
  int code = -1;
  auto out = lines_of(run("cover --set dobinski:k=1 --n 3", &code));
  CHECK(code == 0);
  REQUIRE(out.size() == 10);
  CHECK(out[0] == "center,left,right");
  CHECK(out[1] == "0,0,0.00390625");
  CHECK(out[2] == "0.125,0.12109375,0.12890625");
  CHECK(out[5] == "0.5,0.49609375,0.50390625");
  CHECK(out[9] == "1,0.99609375,1");
}

TEST_CASE("boxdim prints counts and the fitted slope") {
  int code = -1;
  auto out = lines_of(run("boxdim --set runlin:alpha=1 --nmin 4 --nmax 10", &code));
  CHECK(code == 0);
  REQUIRE(out.size() == 9);
  CHECK(out[0] == "n,m,count,ratio");
  CHECK(out[1] == "4,8,32,0.625");
  CHECK(out[7] == "10,20,2048,0.55000000000000004");
  CHECK(out[8] == "# slope=0.5 intercept=1 max_residual=0");

  auto log = lines_of(run("boxdim --set runexp:alpha=1 --nmin 10 --nmax 14 --fit-mode log", &code));
  CHECK(code == 0);
  REQUIRE(log.size() == 7);
  CHECK(log[5] == "14,16398,32768,1.0713342752453003");
  CHECK(log[6].rfind("# slope=1.00311", 0) == 0);
}

TEST_CASE("series emits a full JSON report") {
  int code = -1;
  json d = run_json("--format json series --kind cover --set dobinski:k=2 --gauge logpower:1 --nmax 30",
                    &code);
  CHECK(code == 0);
  CHECK(d["schema"] == "dobinski/1");
  CHECK(d["command"] == "series");
  CHECK(d["config"]["precision"] == 30);
  CHECK(d["config"]["exponent_cap"] == 1048576);
  CHECK(d["config"]["set"] == "dobinski:k=2");
  CHECK(d["config"]["nmax"] == 30);

  const json& r = d["results"];
  CHECK(r["set"] == "dobinski:k=2");
  CHECK(r["phi"] == "dexp:k=2");
  CHECK(r["gauge"] == "logpower:1");
  CHECK(r["verdict"] == "diverges");
  CHECK(r["sup_phi_violation"] == false);
  CHECK(r["sup_theta_violation"] == false);
  CHECK(r["critical_exponent"] == "1");
  CHECK(r["certificate"]["kind"] == "constant-term");
  CHECK(r["certificate"]["note"] == "term is exactly k/ln2 for every n");
  REQUIRE(r["terms"].size() == 31);
  CHECK(r["terms"][0]["n"] == 0);
  CHECK(r["terms"][0]["log2_term"].is_null());
  CHECK(r["terms"][0]["term_float"].get<double>() == doctest::Approx(2.8853900817779268).epsilon(1e-15));
  CHECK(r["terms"][30]["n"] == 30);
  CHECK(r["terms"][30]["term_float"].get<double>() == doctest::Approx(2.8853900817779268).epsilon(1e-15));
}

TEST_CASE("willow plan reports the schedule and constraint checks as JSON") {
  int code = -1;
  json d = run_json("--format json willow plan --mode true --c 2 --K 2 --n1 3 --M1 2", &code);
  CHECK(code == 0);
  CHECK(d["command"] == "willow plan");
  CHECK(d["config"]["mode"] == "true");
  CHECK(d["config"]["K"] == 2);
  CHECK(d["config"]["probes"] == 64);

  const json& r = d["results"];
  CHECK(r["schedule"]["mode"] == "true-dobinski");
  const json& gens = r["schedule"]["generations"];
  REQUIRE(gens.size() == 2);
  CHECK(gens[0]["k"] == 1);
  CHECK(gens[0]["n_k"] == "3");
  CHECK(gens[0]["M_k"] == "2");
  CHECK(gens[0]["enumerable"] == true);
  CHECK(gens[0]["e"] == json::array({"20", "37"}));
  CHECK(gens[1]["n_k"] == "37");
  CHECK(gens[1]["M_k"] == "137438953473");
  CHECK(gens[1]["enumerable"] == false);

  const json& cons = r["constraints"];
  CHECK(cons["all_pass"] == true);
  std::vector<std::string> names;
  for (const auto& c : cons["checks"]) {
    names.push_back(c["name"].get<std::string>());
    CHECK(c["status"] == "pass");
  }
  REQUIRE(names.size() == 10);
  CHECK(names[0] == "A k=1");
  CHECK(names[3] == "D k=1");
  CHECK(names[7] == "D k=2");
  CHECK(names[8] == "D k=1 enumerated");
  CHECK(names[9] == "C k=1 probes");
  CHECK(cons["checks"][0]["detail"] == "M_1 >= 2 against the unit root interval");
  CHECK(cons["checks"][3]["detail"] ==
        "2^-(n_k+M_k) - A(k,1) >= 2^-(n_k+M_k+1) >= A(k,M_k)/2; n_k+M_k = 5 < e(k,1) = 20");

  const json& eb = r["branch_exponent_bound"];
  CHECK(eb["all_pass"] == true);
  REQUIRE(eb["rows"].size() == 2);
  CHECK(eb["rows"][0]["g_min"] == "4");
  CHECK(eb["rows"][0]["exact"] == true);
  CHECK(eb["rows"][1]["g_min"] == "38");
  CHECK(eb["rows"][1]["exact"] == false);

  REQUIRE(r["ratio_decay"].size() == 1);
  CHECK(r["ratio_decay"][0]["bound"] == "1/5");
  CHECK(r["ratio_decay"][0]["shrinking"] == true);
}

TEST_CASE("willow audit output is deterministic for a fixed seed") {
  const std::string args =
      "--seed 7 willow audit --mode tamed --c 2 --K 2 --n1 1 --M1 2 --gauge logpower:1 --probes 100";
  int code1 = -1;
  int code2 = -1;
  std::string a = run(args, &code1);
  std::string b = run(args, &code2);
  CHECK(code1 == 0);
  CHECK(code2 == 0);
  CHECK(a == b);
  auto out = lines_of(a);
  REQUIRE(out.size() >= 3);
  CHECK(out[0] == "t,r,mu,ratio");
  CHECK(out.back() == "# max_ratio=0.77979057812993846 node_max_ratio=0.77979057812993846");
}

TEST_CASE("willow build summarizes the measure tree as JSON") {
  int code = -1;
  json d = run_json("--format json willow build --mode tamed --c 2 --K 2 --n1 1 --M1 2", &code);
  CHECK(code == 0);
  CHECK(d["command"] == "willow build");
  const json& gens = d["results"]["schedule"]["generations"];
  REQUIRE(gens.size() >= 2);
  CHECK(gens[0]["e"] == json::array({"6", "9"}));
}

TEST_CASE("--out writes the report to a file instead of stdout") {
  const char* path = "/tmp/dobinski_cli_out_test.csv";
  std::remove(path);
  int code = -1;
  std::string direct = run("quasi --omega 1/4 --nmax 3", &code);
  CHECK(code == 0);
  std::string silent = run(std::string("--out ") + path + " quasi --omega 1/4 --nmax 3", &code);
  CHECK(code == 0);
  CHECK(silent.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct);
  std::remove(path);
}

TEST_CASE("exit codes distinguish usage, domain, and cap failures") {
  int code = -1;

  std::string out = run("", &code);
  CHECK(code == 1);
  CHECK(out == "usage error: A subcommand is required\n");

  out = run("expand --x finite:1 --badflag", &code);
  CHECK(code == 1);
  CHECK(out == "usage error: The following argument was not expected: --badflag\n");

  run("--help", &code);
  CHECK(code == 0);

  out = run("product --x finite:1 --n 5", &code);
  CHECK(code == 2);
  CHECK(out == "domain error: dyadic point: tangent product undefined\n");

  out = run("classify --x garbage", &code);
  CHECK(code == 2);
  CHECK(out == "domain error: unknown digit program: 'garbage'\n");

  out = run("cover --set dobinski:k=1 --n 17", &code);
  CHECK(code == 3);
  CHECK(out == "cap error: cover stage too large to enumerate (n <= 16)\n");
}
