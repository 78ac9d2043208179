#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

std::string g_binary;
std::string g_data_dir;
int g_run_counter = 0;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the estimator binary through the shell; `prefix` can carry VAR=value
// environment assignments.
RunResult run_cli(const std::string& args, const std::string& prefix = "") {
  REQUIRE_MESSAGE(!g_binary.empty(),
                  "estimator binary path missing: pass it as the first test "
                  "argument or set NFCOCOMO_BIN");
  const std::string tag = std::to_string(++g_run_counter);
  const std::string out_path = "cli_stdout_" + tag + ".txt";
  const std::string err_path = "cli_stderr_" + tag + ".txt";
  const std::string command = prefix + (prefix.empty() ? "" : " ") + "'" +
                              g_binary + "' " + args + " >" + out_path +
                              " 2>" + err_path;
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

std::string table(const std::string& name) { return g_data_dir + "/" + name; }

// Pulls the number out of a "key: value" line.
double value_of(const std::string& output, const std::string& key) {
  const std::size_t at = output.find(key + ": ");
  REQUIRE_MESSAGE(at != std::string::npos, "missing '" << key << "' in:\n"
                                                        << output);
  return std::stod(output.substr(at + key.size() + 2));
}

std::string demo_csv() {
  return
      "name,size_kdsi,ACAP,PCAP,CPLX,actual_effort_sm\n"
      "p1,12,H,N,H,60\n"
      "p2,30,N,H,N,140\n"
      "p3,7,VH,N,L,20\n"
      "p4,55,N,N,H,370\n"
      "p5,21,L,H,N,110\n";
}

std::string small_table() {
  return
      "nfcocomo-params v1\n"
      "family cocomo-ii\n"
      "coeff A 2.94\n"
      "coeff B 0.91\n"
      "driver ACAP em decreasing 1..5 1.42 1.19 1 0.85 0.71\n"
      "driver PCAP em decreasing 1..5 1.34 1.15 1 0.88 0.76\n"
      "driver CPLX em increasing 1..6 0.73 0.87 1 1.17 1.34 1.74\n";
}

}  // namespace

TEST_CASE("estimate with no assignments defaults every driver to Nominal") {
  const RunResult r = run_cli("estimate --model " + table("cocomo2000.table") +
                              " --size 100");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("defaulting to Nominal") != std::string::npos);
  // all-nominal COCOMO II at 100 KDSI: 2.94 * 100^(0.91 + 0.1897)
  const double expected = 2.94 * std::pow(100.0, 0.91 + 0.1897);
  CHECK(value_of(r.out, "effort") == doctest::Approx(expected).epsilon(1e-9));
  CHECK(value_of(r.out, "multiplier product") == 1.0);
}

TEST_CASE("a very high analyst team cuts effort by the published factor") {
  const std::string base = "estimate --model " + table("cocomo2000.table") +
                           " --size 50 ";
  const RunResult nominal = run_cli(base + "ACAP=N");
  const RunResult very_high = run_cli(base + "ACAP=VH");
  REQUIRE(nominal.exit_code == 0);
  REQUIRE(very_high.exit_code == 0);
  const double ratio =
      value_of(very_high.out, "effort") / value_of(nominal.out, "effort");
  CHECK(ratio == doctest::Approx(0.71).epsilon(1e-12));
}

TEST_CASE("fractional ratings interpolate between published columns") {
  const std::string base = "estimate --model " + table("cocomo2000.table") +
                           " --size 50 ";
  const RunResult nominal = run_cli(base + "ACAP=N");
  const RunResult mid = run_cli(base + "ACAP=4.5");
  const double ratio =
      value_of(mid.out, "effort") / value_of(nominal.out, "effort");
  CHECK(ratio == doctest::Approx(0.5 * (0.85 + 0.71)).epsilon(1e-12));
}

TEST_CASE("estimate validates its inputs") {
  const std::string model = " --model " + table("cocomo2000.table");
  SUBCASE("unknown driver lists the valid ids") {
    const RunResult r = run_cli("estimate" + model + " --size 10 WAT=H");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("WAT") != std::string::npos);
    CHECK(r.err.find("ACAP") != std::string::npos);
  }
  SUBCASE("duplicate assignment is rejected") {
    const RunResult r = run_cli("estimate" + model + " --size 10 ACAP=H ACAP=L");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("missing size is a usage error") {
    CHECK(run_cli("estimate" + model).exit_code == 2);
  }
  SUBCASE("missing model names the fix") {
    const RunResult r = run_cli("estimate --size 10");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("NFCOCOMO_TABLE") != std::string::npos);
  }
  SUBCASE("the model can come from the environment") {
    const RunResult r = run_cli("estimate --size 10",
                                "NFCOCOMO_TABLE=" + table("cocomo2000.table"));
    CHECK(r.exit_code == 0);
  }
}

TEST_CASE("mode-family estimates take a mode flag") {
  const std::string model = " --model " + table("cocomo81.table");
  const RunResult organic = run_cli("estimate" + model + " --size 32");
  REQUIRE(organic.exit_code == 0);
  // organic default: 3.2 * 32^1.05 with all-nominal multipliers
  CHECK(value_of(organic.out, "effort") ==
        doctest::Approx(3.2 * std::pow(32.0, 1.05)).epsilon(1e-9));
  const RunResult embedded =
      run_cli("estimate" + model + " --mode embedded --size 32");
  CHECK(value_of(embedded.out, "effort") ==
        doctest::Approx(2.8 * std::pow(32.0, 1.20)).epsilon(1e-9));
  CHECK(run_cli("estimate --model " + table("cocomo2000.table") +
                " --size 32 --mode organic")
            .exit_code == 2);
}

TEST_CASE("train writes a model and a trace deterministically") {
  write_file("cli_train.csv", demo_csv());
  write_file("cli_train.table", small_table());
  const std::string args =
      "train --model cli_train.table --data cli_train.csv --iterations 40";
  const RunResult a =
      run_cli(args + " --out cli_out_a.table --trace cli_trace_a.csv");
  CAPTURE(a.err);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.find("projects: 5") != std::string::npos);
  CHECK(a.out.find("wrote cli_out_a.table") != std::string::npos);

  const RunResult b =
      run_cli(args + " --out cli_out_b.table --trace cli_trace_b.csv");
  REQUIRE(b.exit_code == 0);
  CHECK(read_file("cli_out_a.table") == read_file("cli_out_b.table"));
  CHECK(read_file("cli_trace_a.csv") == read_file("cli_trace_b.csv"));
  CHECK(read_file("cli_trace_a.csv").starts_with(
      "iteration,objective,grad_norm,accepted\n"));

  for (const char* path : {"cli_out_a.table", "cli_out_b.table",
                           "cli_trace_a.csv", "cli_trace_b.csv"}) {
    std::remove(path);
  }
}

TEST_CASE("evaluate prints the accuracy report") {
  write_file("cli_eval.csv", demo_csv());
  write_file("cli_eval.table", small_table());
  const RunResult r =
      run_cli("evaluate --model cli_eval.table --data cli_eval.csv");
  CAPTURE(r.err);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PRED(20%)") != std::string::npos);
  CHECK(r.out.find("PRED(100%)") != std::string::npos);
  CHECK(r.out.find("MMRE") != std::string::npos);
  CHECK(r.out.find("N=5") != std::string::npos);

  const RunResult custom = run_cli(
      "evaluate --model cli_eval.table --data cli_eval.csv --pred-levels 25");
  CHECK(custom.out.find("PRED(25%)") != std::string::npos);
  CHECK(custom.out.find("PRED(20%)") == std::string::npos);
}

TEST_CASE("compare of a model against itself shows zero improvement") {
  write_file("cli_cmp.csv", demo_csv());
  write_file("cli_cmp.table", small_table());
  const RunResult r = run_cli(
      "compare --model-a cli_cmp.table --model-b cli_cmp.table "
      "--data cli_cmp.csv");
  CAPTURE(r.err);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("improvement") != std::string::npos);
  CHECK(r.out.find("0%") != std::string::npos);
  CHECK(r.out.find("+") == std::string::npos);
}

TEST_CASE("check passes on a healthy model") {
  write_file("cli_check.csv", demo_csv());
  write_file("cli_check.table", small_table());
  const RunResult r =
      run_cli("check --model cli_check.table --data cli_check.csv");
  CAPTURE(r.err);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("max relative error") != std::string::npos);
}

TEST_CASE("check fails on a corrupted table naming the driver") {
  std::string broken = small_table();
  const std::size_t at = broken.find("1.42 1.19 1 0.85 0.71");
  broken.replace(at, 21, "1.42 1.19 1 0.85 0.99");
  write_file("cli_broken.table", broken);
  write_file("cli_check2.csv", demo_csv());
  const RunResult r =
      run_cli("check --model cli_broken.table --data cli_check2.csv");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("ACAP") != std::string::npos);
}

TEST_CASE("io failures exit with the usage code") {
  write_file("cli_empty.csv", "name,size_kdsi,ACAP,PCAP,CPLX,actual_effort_sm\n");
  write_file("cli_io.table", small_table());
  const RunResult empty =
      run_cli("evaluate --model cli_io.table --data cli_empty.csv");
  CHECK(empty.exit_code == 2);
  CHECK(empty.err.find("no data rows") != std::string::npos);
  const RunResult missing =
      run_cli("evaluate --model cli_io.table --data does_not_exist.csv");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("help and version exit cleanly") {
  const RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("estimate") != std::string::npos);
  CHECK(help.out.find("train") != std::string::npos);
  const RunResult version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find("nfcocomo") != std::string::npos);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

int main(int argc, char** argv) {
  std::vector<char*> args;
  args.push_back(argv[0]);
  for (int i = 1; i < argc; ++i) {
    if (g_binary.empty() && argv[i][0] != '-') {
      g_binary = argv[i];
      continue;
    }
    args.push_back(argv[i]);
  }
  if (g_binary.empty()) {
    if (const char* env = std::getenv("NFCOCOMO_BIN")) g_binary = env;
  }
  const char* data = std::getenv("NFCOCOMO_DATA_DIR");
  g_data_dir = data ? data : "data";

  doctest::Context context(static_cast<int>(args.size()), args.data());
  return context.run();
}
