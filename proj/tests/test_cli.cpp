// End-to-end checks of the command-line tool. The binary path arrives
// as the first test argument.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string cli_path;      // set in main from argv
std::string work_dir;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string out_file = work_dir + "/stdout.txt";
  std::string cmd = cli_path + " " + args + " > " + out_file + " 2> " + work_dir + "/stderr.txt";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(status);
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  r.out = os.str();
  return r;
}

void write_file(const std::string& name, const std::string& body) {
  std::ofstream out(work_dir + "/" + name, std::ios::binary);
  out << body;
}

std::string path(const std::string& name) { return work_dir + "/" + name; }

// 7-torus with q = 0.2 plus its sine eigendistance, produced once by the
// example subcommand and split into chain/metric input files.
void prepare_torus_inputs() {
  RunResult r = run("example torus --L 7 --q 0.2");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  write_file("chain.json", rep["chain"].dump());
  write_file("metric.json", rep["metric"].dump());
}

}  // namespace

TEST_CASE("reports carry schema version, input hashes and tolerances") {
  prepare_torus_inputs();
  RunResult r = run("verify --chain " + path("chain.json") + " --metric " + path("metric.json"));
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["schema_version"] == "1.0.0");
  CHECK(rep["inputs"].contains("chain"));
  CHECK(rep["inputs"].contains("metric"));
  CHECK(rep["inputs"]["chain"].get<std::string>().size() > 0);
  CHECK(rep["tolerances"].contains("fp_tol"));
  CHECK(rep["tolerances"].contains("max_iter"));
  CHECK(rep["kappa"].get<double>() == doctest::Approx(0.15060407925650654).epsilon(1e-10));
  CHECK(rep["residual"].get<double>() <= 1e-10);
}

TEST_CASE("eigendist converges on the torus and matches verify") {
  RunResult r = run("eigendist --chain " + path("chain.json"));
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["result"]["converged"] == true);
  CHECK(rep["result"]["kappa"].get<double>() ==
        doctest::Approx(0.15060407925650654).epsilon(1e-8));
  CHECK(rep["result"]["rho"].size() == 7);
}

TEST_CASE("output is byte identical across runs") {
  std::string args = "eigendist --chain " + path("chain.json") + " --seed 42";
  RunResult a = run(args);
  RunResult b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  RunResult c = run("concentration --chain " + path("chain.json") + " --metric " +
                    path("metric.json") + " --T 10 --samples 2000 --seed 5");
  RunResult d = run("concentration --chain " + path("chain.json") + " --metric " +
                    path("metric.json") + " --T 10 --samples 2000 --seed 5");
  REQUIRE(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("tsv format emits key value lines") {
  RunResult r = run("verify --chain " + path("chain.json") + " --metric " + path("metric.json") +
                    " --format tsv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("kappa\t") != std::string::npos);
  CHECK(r.out.find("schema_version\t\"1.0.0\"") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  RunResult r = run("verify --chain " + path("chain.json") + " --metric " + path("metric.json") +
                    " --out " + path("report.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path("report.json"));
  json rep = json::parse(in);
  CHECK(rep["kappa"].get<double>() == doctest::Approx(0.15060407925650654).epsilon(1e-10));
}

TEST_CASE("invalid input exits with code 2") {
  write_file("bad_chain.json", "{\"matrix\": [[0.5, 0.4], [0.5, 0.5]]}");
  CHECK(run("eigendist --chain " + path("bad_chain.json")).code == 2);
  write_file("not_json.json", "this is not json");
  CHECK(run("eigendist --chain " + path("not_json.json")).code == 2);
  CHECK(run("eigendist --chain " + path("missing.json")).code == 2);
  CHECK(run("example nosuchfamily").code == 2);
}

TEST_CASE("non-convergence exits with code 3") {
  RunResult r = run("eigendist --chain " + path("chain.json") + " --max-iter 2 --tol 1e-14");
  CHECK(r.code == 3);
}

TEST_CASE("maximal on the ruin chain reproduces the harmonic spread") {
  RunResult ex = run("example ruin --N 4 --q 0.3");
  REQUIRE(ex.code == 0);
  json rep = json::parse(ex.out);
  write_file("ruin.json", rep["chain"].dump());
  std::vector<double> h = rep["harmonic_h"].get<std::vector<double>>();

  RunResult r = run("maximal --chain " + path("ruin.json"));
  REQUIRE(r.code == 0);
  json mrep = json::parse(r.out);
  CHECK(mrep["result"]["kappa"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  auto rho = mrep["result"]["rho"];
  for (size_t x = 0; x < h.size(); ++x)
    for (size_t y = 0; y < h.size(); ++y)
      CHECK(rho[x][y].get<double>() ==
            doctest::Approx(std::abs(h[x] - h[y])).epsilon(1e-8));
}

TEST_CASE("coupling subcommand reports classes for the torus") {
  RunResult r = run("coupling --chain " + path("chain.json") + " --metric " + path("metric.json"));
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["irreducible"] == false);
  CHECK(rep["class_count"].get<int>() == 7);
  CHECK(rep["coupling"]["n"] == 7);
  CHECK(rep["coupling"]["kernel"].is_array());
}

TEST_CASE("lumpable and quotient agree on the parity partition") {
  RunResult ex = run("example torus --L 6 --q 0.2");
  REQUIRE(ex.code == 0);
  write_file("torus6.json", json::parse(ex.out)["chain"].dump());

  RunResult r = run("lumpable --chain " + path("torus6.json"));
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["certified_irreducible"] == false);
  REQUIRE(!rep["partition"].is_null());

  write_file("parity.json", "{\"blocks\": [[0, 2, 4], [1, 3, 5]]}");
  RunResult q = run("quotient --chain " + path("torus6.json") + " --partition " + path("parity.json"));
  REQUIRE(q.code == 0);
  json qrep = json::parse(q.out);
  auto m = qrep["quotient"]["matrix"];
  CHECK(m[0][1].get<double>() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m[0][0].get<double>() == doctest::Approx(0.6).epsilon(1e-12));

  write_file("notlump.json", "{\"blocks\": [[0, 1], [2, 3, 4, 5]]}");
  CHECK(run("quotient --chain " + path("torus6.json") + " --partition " + path("notlump.json")).code == 2);
}

TEST_CASE("concentration emits moments and the tail grid") {
  RunResult r = run("concentration --chain " + path("chain.json") + " --metric " +
                    path("metric.json") + " --T 8 --x0 2 --samples 1000 --seed 3");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["kappa"].get<double>() > 0.1);
  CHECK(rep["J"].get<double>() > 0.0);
  CHECK(rep["sigma"].size() == 19);
  CHECK(rep["tail"]["r"].size() == 10);
  CHECK(rep["tail"]["empirical"].size() == 10);
  CHECK(rep["tail"]["bound"].size() == 10);

  RunResult nosim = run("concentration --chain " + path("chain.json") + " --metric " +
                        path("metric.json") + " --samples 0");
  REQUIRE(nosim.code == 0);
  CHECK(!json::parse(nosim.out).contains("tail"));
}

TEST_CASE("example families emit valid chains") {
  for (std::string args : {std::string("example spin --n 3 --q 0.1"),
                           std::string("example random --n 5 --seed 9"),
                           std::string("example product --L 4 --q 0.1")}) {
    RunResult r = run(args);
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["chain"]["matrix"].is_array());
  }
  json spin = json::parse(run("example spin --n 3 --q 0.1").out);
  CHECK(spin["kappa"].get<double>() == doctest::Approx(0.2).epsilon(1e-14));
  json even = json::parse(run("example torus --L 6 --q 0.2").out);
  CHECK(even.contains("parity_metric"));
  CHECK(even["parity_kappa"].get<double>() > 0.0);
}

int doctest_main(int argc, char** argv) {
  doctest::Context ctx;
  ctx.applyCommandLine(argc > 1 ? 1 : argc, argv);
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli-binary>\n");
    return 1;
  }
  cli_path = argv[1];
  work_dir = "/tmp/eigendist_cli_test";
  std::system(("mkdir -p " + work_dir).c_str());
  return ctx.run();
}

int main(int argc, char** argv) { return doctest_main(argc, argv); }
