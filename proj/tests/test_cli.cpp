// End-to-end checks of the command-line surface: exit codes, file formats,
// reproducibility. The binary path arrives as the first program argument.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_bin;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rocscale_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
};

int run(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? g_bin + " " + args
                                : env + " " + g_bin + " " + args;
  cmd += " >/dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

const char* kTinyPool = "score,label\n0.9,1\n0.1,0\n";
const char* kDiagSpec = R"({"type": "points", "points": [[0, 0], [1, 1]]})";

}  // namespace

TEST_CASE("roc summarizes a pool and writes its points") {
  TempDir tmp;
  auto pool = tmp.file("pool.csv", kTinyPool);
  auto out = tmp.path / "curve.csv";
  CHECK(run("roc --pool " + pool.string() + " --out " + out.string()) == 0);
  auto text = slurp(out);
  CHECK(text.rfind("# rocscale", 0) == 0);
  auto lines = data_lines(text);
  REQUIRE(lines.size() == 3);  // header + 2 points
  CHECK(lines[0] == "F,T");
  CHECK(lines[1] == "0,1");
}

TEST_CASE("usage errors exit with status 2") {
  TempDir tmp;
  auto pool = tmp.file("pool.csv", kTinyPool);
  auto spec = tmp.file("diag.json", kDiagSpec);
  CHECK(run("roc") == 2);  // missing input
  CHECK(run("roc --pool " + pool.string() + " --roc " + spec.string()) == 2);
  CHECK(run("roc --pool " + pool.string() + " --pi 0.5") == 2);
  CHECK(run("roc --roc " + spec.string()) == 2);  // --roc without --pi
  CHECK(run("frobnicate") == 2);
  CHECK(run("bon-curve --pool " + pool.string() + " --N nope") == 2);
  CHECK(run("bon-curve --roc " + spec.string() + " --pi 0.3 --simulate") == 2);
}

TEST_CASE("data errors exit with status 1") {
  TempDir tmp;
  auto bad = tmp.file("bad.csv", "score,label\n1.2,1\n");
  CHECK(run("roc --pool " + bad.string()) == 1);
  CHECK(run("roc --pool " + (tmp.path / "missing.csv").string()) == 1);
  auto onesided = tmp.file("pos.csv", "score,label\n0.9,1\n0.8,1\n");
  CHECK(run("roc --pool " + onesided.string()) == 1);
  auto badspec = tmp.file("bad.json", R"({"type": "spline"})");
  CHECK(run("roc --roc " + badspec.string() + " --pi 0.5") == 1);
}

TEST_CASE("rs-curve on the diagonal yields constant accuracy") {
  TempDir tmp;
  auto spec = tmp.file("diag.json", kDiagSpec);
  auto out = tmp.path / "rs.csv";
  CHECK(run("rs-curve --roc " + spec.string() + " --pi 0.3 --out " +
            out.string()) == 0);
  auto text = slurp(out);
  CHECK(text.rfind("# rocscale", 0) == 0);
  CHECK(text.find("inf") == std::string::npos);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.find("# omitted: F=0 ") != std::string::npos);
  auto lines = data_lines(text);
  REQUIRE(lines.size() > 2);
  CHECK(lines[0] == "F,T,C,A,dA_dC_left,dA_dC_right");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 6);
    CHECK(std::stod(cells[3]) == doctest::Approx(0.3).epsilon(1e-12));
  }
}

TEST_CASE("rs-limits reports both scaling anchors") {
  TempDir tmp;
  auto spec = tmp.file("flat.json",
                       R"({"type": "points", "points": [[0,0],[0.25,1],[1,1]]})");
  auto out = tmp.path / "lim.csv";
  CHECK(run("rs-limits --roc " + spec.string() + " --pi 0.4 --out " +
            out.string()) == 0);
  auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 2);
  auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 3);
  CHECK(std::stod(cells[0]) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::stod(cells[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bon-curve with simulation keeps exact values inside the CIs") {
  TempDir tmp;
  auto pool = tmp.file("pool.csv", kTinyPool);
  auto out = tmp.path / "bon.csv";
  CHECK(run("bon-curve --pool " + pool.string() +
            " --N 1,2 --simulate --out " + out.string()) == 0);
  auto text = slurp(out);
  CHECK(text.find("# limit=1") != std::string::npos);
  auto lines = data_lines(text);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "N,acc_exact,acc_sim,ci_low,ci_high");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 5);
    double exact = std::stod(cells[1]);
    CHECK(std::stod(cells[3]) <= exact);
    CHECK(std::stod(cells[4]) >= exact);
  }
}

TEST_CASE("identical flags reproduce identical output bytes") {
  TempDir tmp;
  auto pool = tmp.file("pool.csv", "score,label\n0.9,1\n0.6,0\n0.4,1\n0.1,0\n");
  auto out1 = tmp.path / "a.csv";
  auto out2 = tmp.path / "b.csv";
  std::string base = "bon-curve --pool " + pool.string() +
                     " --N 1,2,4 --simulate --trials 2000 --seed 7 --out ";
  CHECK(run(base + out1.string()) == 0);
  CHECK(run(base + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("the seed environment variable matches the explicit flag") {
  TempDir tmp;
  auto pool = tmp.file("pool.csv", "score,label\n0.9,1\n0.6,0\n0.4,1\n0.1,0\n");
  auto by_flag = tmp.path / "flag.csv";
  auto by_env = tmp.path / "env.csv";
  auto by_default = tmp.path / "default.csv";
  std::string args = "simulate --pool " + pool.string() +
                     " --method bon --N 2 --trials 2000 --out ";
  CHECK(run(args + by_flag.string() + " --seed 999") == 0);
  CHECK(run(args + by_env.string(), "ROCSCALE_SEED=999") == 0);
  CHECK(run(args + by_default.string()) == 0);
  CHECK(slurp(by_flag) == slurp(by_env));
  CHECK(slurp(by_flag) != slurp(by_default));  // default seed is 42
}

TEST_CASE("simulate rejection writes draw statistics") {
  TempDir tmp;
  auto pool = tmp.file("pool.csv", "score,label\n0.9,1\n0.5,0\n0.1,0\n");
  auto out = tmp.path / "sim.csv";
  CHECK(run("simulate --pool " + pool.string() +
            " --method rejection --threshold 0.7 --trials 5000 --out " +
            out.string()) == 0);
  auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 2);
  auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 10);
  CHECK(cells[0] == "rejection");
  CHECK(std::stod(cells[2]) == doctest::Approx(1.0));   // only positives pass
  CHECK(std::stod(cells[5]) == doctest::Approx(3.0).epsilon(0.1));
  CHECK(cells[9] == "0");
}

TEST_CASE("de-emergence writes reloadable extensions and a summary") {
  TempDir tmp;
  auto spec = tmp.file("diag.json", kDiagSpec);
  auto base = tmp.path / "dem";
  CHECK(run("de-emergence --roc " + spec.string() +
            " --pi 0.3 --budget 2 --out " + base.string()) == 0);

  auto summary = slurp(base.string() + ".summary.csv");
  auto lines = data_lines(summary);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "extension,sup_accuracy,f_at_budget,t_at_budget,budget");
  auto stagnant = split_csv(lines[1]);
  auto perfect = split_csv(lines[2]);
  CHECK(stagnant[0] == "stagnant");
  CHECK(std::stod(stagnant[1]) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(perfect[0] == "perfect");
  CHECK(std::stod(perfect[1]) == doctest::Approx(1.0));

  // Both extension specs reload as curves.
  CHECK(run("roc --roc " + base.string() + ".stagnant.json --pi 0.3") == 0);
  CHECK(run("roc --roc " + base.string() + ".perfect.json --pi 0.3") == 0);
}

TEST_CASE("compare matches rejection and Best-of-N budgets row by row") {
  TempDir tmp;
  auto spec = tmp.file("two.json",
                       R"({"type": "two_segment", "breakpoint": [0.2, 0.8]})");
  auto out = tmp.path / "cmp.csv";
  CHECK(run("compare --roc " + spec.string() + " --pi 0.25 --N 1,2,4 --out " +
            out.string()) == 0);
  auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "budget,acc_rejection,acc_bon");
  std::vector<std::string> budgets{"1", "2", "4"};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == budgets[i - 1]);
    // At the shared minimum budget both methods return base accuracy.
    if (cells[0] == "1") {
      CHECK(std::stod(cells[1]) == doctest::Approx(0.25).epsilon(1e-12));
      CHECK(std::stod(cells[2]) == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-rocscale> [doctest args]\n");
    return 1;
  }
  g_bin = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
