#include "doctest.h"
#include "rednum/cli.hpp"
#include "rednum/io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rednum;

namespace {

const std::string kData = REDNUM_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

ProblemFile parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

std::string problem_error(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ProblemError& e) {
    return e.what();
  }
  return "";
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rednum_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_problem accepts valid files") {
  auto p = parse_text("field 32003\nvars x,y\nideal I1: x^2\nmodule M: quotient 0\n");
  CHECK(p.ring->nvars() == 2);
  CHECK(p.relations().is_zero());
  CHECK(p.acting_ideals().size() == 1);

  auto ex = load_problem(data("quotient_by_x2.txt"));
  CHECK(ex.relations_name == "K");
  auto acting = ex.acting_ideals();
  REQUIRE(acting.size() == 1);
  CHECK(acting[0].minimal().degrees == std::vector<Exponent>{2, 3});
  CHECK(ex.relations().generators().size() == 1);

  auto other = load_problem(data("quotient_by_x2.txt"), 65537);
  CHECK(other.ring->field().modulus() == 65537);

  auto commented = parse_text("# header\n\nvars a, b  # trailing\nideal J: (a+b)^2, a*b\nmodule N: quotient J\n");
  CHECK(commented.ring->field().modulus() == 32003);
  CHECK(commented.acting_ideals().empty());
}

TEST_CASE("parse_problem errors carry line numbers") {
  CHECK(problem_error("field 32003\nvars x,y\nideal I1: x^2 + y\nmodule M: quotient 0\n").find("inhomogeneous") !=
        std::string::npos);
  CHECK(problem_error("field 32003\nvars x,y\nideal I1: x^2 + y\nmodule M: quotient 0\n").find("line 3") !=
        std::string::npos);
  CHECK(problem_error("field 32004\nvars x\nmodule M: quotient 0\n").find("line 1") != std::string::npos);
  CHECK(problem_error("vars x\nideal I: z\nmodule M: quotient 0\n").find("unknown variable 'z' in 'z', line 2") !=
        std::string::npos);
  CHECK(problem_error("vars x\nideal I: x\nmodule M: quotient L\n").find("unknown ideal 'L', line 3") !=
        std::string::npos);
  CHECK(problem_error("vars x\nmodule M: quotient 0\nmodule N: quotient 0\n").find("line 3") != std::string::npos);
  CHECK(problem_error("vars x\nideal I: x\n").find("missing module") != std::string::npos);
  CHECK(problem_error("vars x\nfrobnicate\nmodule M: quotient 0\n").find("unknown statement 'frobnicate', line 2") !=
        std::string::npos);
  CHECK(problem_error("vars x\nideal I: x\nideal I: x^2\nmodule M: quotient 0\n").find("duplicate ideal") !=
        std::string::npos);
  CHECK(problem_error("vars x, x\nmodule M: quotient 0\n").find("duplicate variable") != std::string::npos);
  CHECK(problem_error("vars x\nideal I: x,\nmodule M: quotient 0\n").find("empty generator") != std::string::npos);
}

TEST_CASE("CSV round trip") {
  SweepTable t;
  t.meta = {42, 3, 32003, {{2, 3}, {1}}, {2, 1}, true};
  CellRecord a{{1, 1}, 2, 1, 5, 4, 7, 99, 0};
  CellRecord b{{2, 1}, std::nullopt, 0, std::nullopt, 3, std::nullopt, 100, kZeroPower | kRegLowerBound};
  t.cells = {a, b};
  std::ostringstream out;
  write_sweep_csv(out, t);
  const std::string text = out.str();
  CHECK(text.find("a1,a2,dim_power,dim_quotient,r_power,r_quotient,reg_power,witness_seed,flags\n") !=
        std::string::npos);
  CHECK(text.find("2,1,empty,0,zero-module,3,-inf,100,zero-module-power|reg-lower-bound\n") != std::string::npos);
  CHECK(text.find("# D=2,3;1\n") != std::string::npos);
  std::istringstream in(text);
  CHECK(read_sweep_csv(in) == t);

  std::istringstream broken("# caps=2\na1,dim_power,dim_quotient,r_power,r_quotient,witness_seed,flags\n1,1,1,1,1,1,\n");
  CHECK_THROWS_AS(read_sweep_csv(broken), ProblemError);
}

TEST_CASE("model JSON schema") {
  PiecewiseLinearModel m{{{{2, 3}, -1}, {{0, 3}, 4}}, {1, 2}, 0, 17};
  const std::string text = model_json(m);
  CHECK(text == R"({"pieces":[{"slopes":[2,3],"intercept":-1},{"slopes":[0,3],"intercept":4}],)"
                R"("threshold":[1,2],"residual":0,"source_seed":17})");
  auto j = nlohmann::json::parse(text);
  CHECK(j.at("pieces").is_array());
  CHECK(parse_model_json(text) == m);
}

TEST_CASE("rnum command") {
  auto r = run({"rnum", data("quotient_by_x2.txt"), "--target", "quotient", "--a", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "5\n");
  CHECK(r.err.find("seed=0") != std::string::npos);
  CHECK(run({"rnum", data("quotient_by_x2.txt"), "--a", "3"}).out == "6\n");
  CHECK(run({"rnum", data("quotient_by_x2.txt"), "--a", "3", "--target", "bogus"}).code == kExitError);
  CHECK(run({"rnum", data("missing.txt"), "--a", "3"}).code == kExitError);
}

TEST_CASE("genericity failure exits with 3") {
  // over F_2 every linear form divides x*y*(x+y), so no reduction exists
  std::string path = temp_path("f2.txt");
  std::ofstream(path) << "field 2\nvars x, y\nideal I: x\nideal K: x*y*(x+y)\nmodule M: quotient K\n";
  auto r = run({"rnum", path, "--a", "0", "--trials", "1"});
  CHECK(r.code == kExitGenericity);
  CHECK(r.err.find("genericity failure") != std::string::npos);
}

TEST_CASE("sweep, fit, rho and recursion-check") {
  const std::string csv = temp_path("two.csv");
  auto s = run({"sweep", data("two_principal.txt"), "--caps", "4,4", "--seed", "3", "--out", csv});
  CHECK(s.code == kExitOk);
  CHECK(s.err.find("stationary: yes") != std::string::npos);

  auto f = run({"fit", "--in", csv, "--column", "r_quotient", "--slopes", "D0", "--require-one-all-D", "--verify",
                data("two_principal.txt"), "--verify-points", "3"});
  CHECK(f.code == kExitOk);
  CHECK(f.out == "{\"pieces\":[{\"slopes\":[2,3],\"intercept\":-1}],\"threshold\":[1,1],\"residual\":0,\"source_seed\":3}\n");

  const std::string json = temp_path("two.json");
  CHECK(run({"fit", "--in", csv, "--column", "r_quotient", "--slopes", "D0", "--out", json}).code == kExitOk);
  CHECK(slurp(json) == f.out);

  auto power = run({"fit", "--in", csv});
  CHECK(power.out.find("\"slopes\":[2,3],\"intercept\":0") != std::string::npos);

  auto rho = run({"rho", "--in", csv});
  CHECK(rho.out == "axis 1: slope 2 in D\naxis 2: slope 3 in D\n");

  auto st = run({"stationary", "--in", csv});
  CHECK(st.code == kExitOk);

  auto rc = run({"recursion-check", data("two_principal.txt"), "--caps", "3,3"});
  CHECK(rc.code == kExitOk);
  CHECK(rc.out.rfind("checked 12 skipped 6 mismatches 0\n", 0) == 0);

  CHECK(run({"sweep", data("two_principal.txt"), "--caps", "0,0"}).code == kExitError);
  CHECK(run({"sweep", data("two_principal.txt"), "--caps", "0,0"}).err.find("caps must be >= 1") != std::string::npos);
}

TEST_CASE("fit reports not yet asymptotic") {
  const std::string csv = temp_path("short.csv");
  CHECK(run({"sweep", data("two_principal.txt"), "--caps", "1,1", "--out", csv}).code == kExitOk);
  auto f = run({"fit", "--in", csv});
  CHECK(f.code == kExitNotAsymptotic);
  CHECK(f.err.find("not yet asymptotic") != std::string::npos);
  CHECK(run({"rho", "--in", csv}).code == kExitNotAsymptotic);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  auto sweep_text = [](const char* threads) {
    setenv("RNUM_THREADS", threads, 1);
    auto r = run({"sweep", data("mixed_degrees.txt"), "--caps", "3,3", "--seed", "12", "--trials", "2"});
    unsetenv("RNUM_THREADS");
    return r.out;
  };
  const std::string one = sweep_text("1");
  CHECK(one == sweep_text("1"));
  CHECK(one == sweep_text("3"));
  CHECK(one.find("# seed=12\n") != std::string::npos);
}

TEST_CASE("gb, hilbert and betti commands") {
  auto gb = run({"gb", data("mixed_degrees.txt"), "--ideal", "I1"});
  CHECK(gb.out == "I1: x*y, x^2\n");
  CHECK(run({"gb", data("mixed_degrees.txt"), "--ideal", "Z"}).code == kExitError);

  auto h = run({"hilbert", data("quotient_by_x2.txt"), "--upto", "3"});
  CHECK(h.out.find("krull_dim: 1\n") != std::string::npos);
  CHECK(h.out.find("hf: 1,1,1,1\n") != std::string::npos);

  auto b = run({"betti", data("quotient_by_x2.txt")});
  CHECK(b.out == "i j beta\n0 0 1\n1 1 1\nreg 0 certified\n");
  auto bp = run({"betti", data("quotient_by_x2.txt"), "--a", "2"});
  CHECK(bp.out.find("reg 4 certified") != std::string::npos);
}
