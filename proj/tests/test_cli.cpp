#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / "lowbow_cli_test") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }
  fs::path path(const std::string& name) const { return dir_ / name; }

  RunResult run(const std::string& args) const {
    const auto out_file = dir_ / "last_stdout";
    const auto err_file = dir_ / "last_stderr";
    const std::string command = std::string(LOWBOW_CLI_PATH) + " " + args + " > " +
                                out_file.string() + " 2> " + err_file.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("vocab subcommand is deterministic and validates") {
  Workspace ws;
  spit(ws.path("corpus.tsv"), "x\ta b a\n");

  const auto first = ws.run("vocab --corpus " + ws.path("corpus.tsv").string());
  CHECK(first.code == 0);
  CHECK(first.out == "1\ta\n2\tb\n");

  const auto second = ws.run("vocab --corpus " + ws.path("corpus.tsv").string());
  CHECK(second.out == first.out);

  const auto too_high =
      ws.run("vocab --corpus " + ws.path("corpus.tsv").string() + " --min-count 5");
  CHECK(too_high.code == 1);
  CHECK(too_high.err.find("empty vocabulary") != std::string::npos);

  const auto missing = ws.run("vocab --corpus " + ws.path("nope.tsv").string());
  CHECK(missing.code != 0);
}

TEST_CASE("embed produces curve json with the expected shape") {
  Workspace ws;
  spit(ws.path("corpus.tsv"), "A\tw1 w2 w1\n");
  spit(ws.path("vocab.txt"), "1\tw1\n2\tw2\n");

  const auto result = ws.run("embed --corpus " + ws.path("corpus.tsv").string() +
                             " --vocab " + ws.path("vocab.txt").string() +
                             " --samples 5 --sigma 0.2");
  CHECK(result.code == 0);
  const auto parsed = nlohmann::json::parse(result.out);
  CHECK(parsed.at("locations").size() == 5);
  CHECK(parsed.at("points").size() == 5);
  CHECK(parsed.at("points").at(0).size() == 2);
  CHECK(parsed.at("kernel") == "gaussian");

  // A huge scale collapses all sample points onto the bow.
  const auto degenerate = ws.run("embed --corpus " + ws.path("corpus.tsv").string() +
                                 " --vocab " + ws.path("vocab.txt").string() +
                                 " --samples 5 --sigma 1e6");
  const auto flat = nlohmann::json::parse(degenerate.out);
  const double first = flat.at("points").at(0).at(0).get<double>();
  for (const auto& point : flat.at("points"))
    CHECK(std::abs(point.at(0).get<double>() - first) < 1e-6);

  const auto csv = ws.run("embed --corpus " + ws.path("corpus.tsv").string() +
                          " --vocab " + ws.path("vocab.txt").string() +
                          " --format csv");
  CHECK(csv.out.rfind("doc,mu,x1,x2\n", 0) == 0);

  const auto again = ws.run("embed --corpus " + ws.path("corpus.tsv").string() +
                            " --vocab " + ws.path("vocab.txt").string() +
                            " --samples 5 --sigma 0.2");
  CHECK(again.out == result.out);

  const auto inf_sigma = ws.run("embed --corpus " + ws.path("corpus.tsv").string() +
                                " --vocab " + ws.path("vocab.txt").string() +
                                " --sigma inf");
  CHECK(inf_sigma.code != 0);
}

TEST_CASE("embed skips documents without vocabulary words") {
  Workspace ws;
  spit(ws.path("corpus.tsv"), "A\tw1 w2\nB\tzzz\nA\tw2 w2\n");
  spit(ws.path("vocab.txt"), "1\tw1\n2\tw2\n");

  const auto result = ws.run("embed --corpus " + ws.path("corpus.tsv").string() +
                             " --vocab " + ws.path("vocab.txt").string());
  CHECK(result.code == 0);
  CHECK(result.err.find("skipping document 1") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : result.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 2);
}

TEST_CASE("distance of a curve file against itself is zero") {
  Workspace ws;
  spit(ws.path("corpus.tsv"), "A\tw1 w2 w1 w1\n");
  spit(ws.path("vocab.txt"), "1\tw1\n2\tw2\n");
  const auto curves = ws.path("curves.jsonl").string();
  CHECK(ws.run("embed --corpus " + ws.path("corpus.tsv").string() + " --vocab " +
               ws.path("vocab.txt").string() + " --output " + curves)
            .code == 0);

  const auto self = ws.run("distance " + curves + " " + curves + " --metric fisher");
  CHECK(self.code == 0);
  CHECK(self.out == "0\n");

  spit(ws.path("other.tsv"), "A\tw2 w2 w1\n");
  const auto other = ws.path("other.jsonl").string();
  CHECK(ws.run("embed --corpus " + ws.path("other.tsv").string() + " --vocab " +
               ws.path("vocab.txt").string() + " --output " + other)
            .code == 0);
  const auto cross = ws.run("distance " + curves + " " + other);
  CHECK(cross.code == 0);
  CHECK(std::stod(cross.out) > 0.0);

  // Mismatched grids are an error.
  const auto coarse = ws.path("coarse.jsonl").string();
  CHECK(ws.run("embed --corpus " + ws.path("corpus.tsv").string() + " --vocab " +
               ws.path("vocab.txt").string() + " --samples 4 --output " + coarse)
            .code == 0);
  CHECK(ws.run("distance " + curves + " " + coarse).code == 1);
}

TEST_CASE("features reflect the kernel scale") {
  Workspace ws;
  // Figure-style sequence over a two-word vocabulary.
  spit(ws.path("corpus.tsv"), "A\tw1 w1 w1 w2 w2 w1 w1 w1 w2 w1 w1\n");
  spit(ws.path("vocab.txt"), "1\tw1\n2\tw2\n");

  auto features_at = [&](const std::string& sigma) {
    const auto curves = ws.path("c" + sigma + ".jsonl").string();
    REQUIRE(ws.run("embed --corpus " + ws.path("corpus.tsv").string() + " --vocab " +
                   ws.path("vocab.txt").string() + " --sigma " + sigma +
                   " --samples 100 --output " + curves)
                .code == 0);
    const auto table = ws.run("features --curves " + curves);
    REQUIRE(table.code == 0);
    // doc,samples,path_length,total_complexity,max_curvature
    const auto header_end = table.out.find('\n');
    const auto row = table.out.substr(header_end + 1);
    std::stringstream ss(row);
    std::string field;
    std::getline(ss, field, ',');
    std::getline(ss, field, ',');
    std::getline(ss, field, ',');
    return std::stod(field);
  };

  CHECK(features_at("0.1") > features_at("0.2"));

  const auto tiny = ws.path("tiny.jsonl").string();
  REQUIRE(ws.run("embed --corpus " + ws.path("corpus.tsv").string() + " --vocab " +
                 ws.path("vocab.txt").string() + " --samples 2 --output " + tiny)
              .code == 0);
  CHECK(ws.run("features --curves " + tiny).code == 1);
}

TEST_CASE("config file values lose to explicit flags") {
  Workspace ws;
  spit(ws.path("corpus.tsv"), "A\tw1 w2 w1\n");
  spit(ws.path("vocab.txt"), "1\tw1\n2\tw2\n");
  spit(ws.path("run.ini"), "[embed]\nsigma=0.37\n");

  const std::string base = "embed --corpus " + ws.path("corpus.tsv").string() +
                           " --vocab " + ws.path("vocab.txt").string() + " --config " +
                           ws.path("run.ini").string();
  const auto from_config = ws.run(base);
  REQUIRE(from_config.code == 0);
  CHECK(nlohmann::json::parse(from_config.out).at("sigma").get<double>() == 0.37);

  const auto overridden = ws.run(base + " --sigma 0.5");
  REQUIRE(overridden.code == 0);
  CHECK(nlohmann::json::parse(overridden.out).at("sigma").get<double>() == 0.5);
}

TEST_CASE("eval emits deterministic tables and validates sizes") {
  Workspace ws;
  const auto corpus = testsupport::ordered_topic_corpus(15, 99);
  spit(ws.path("corpus.tsv"), testsupport::corpus_to_tsv(corpus));

  const std::string args = "eval --corpus " + ws.path("corpus.tsv").string() +
                           " --sigma 0.2,1e6 --train-sizes 14 --reps 2 --k 3 --seed 5";
  const auto first = ws.run(args + " --output " + ws.path("t1.csv").string());
  CHECK(first.code == 0);
  const auto second = ws.run(args + " --output " + ws.path("t2.csv").string());
  CHECK(second.code == 0);
  CHECK(slurp(ws.path("t1.csv")) == slurp(ws.path("t2.csv")));

  const std::string table = slurp(ws.path("t1.csv"));
  CHECK(table.find("method,train_size,sigma,repetition,error_rate,correct,total,confusion\n") !=
        std::string::npos);
  CHECK(table.find("lowbow_inf") != std::string::npos);
  CHECK(table.find("bow_cosine") != std::string::npos);
  CHECK(table.find(",mean,") != std::string::npos);

  const auto json_run = ws.run(args + " --format json");
  CHECK(json_run.code == 0);
  const auto line_end = json_run.out.find('\n');
  const auto parsed = nlohmann::json::parse(json_run.out.substr(0, line_end));
  CHECK(parsed.at("method") == "lowbow");
  CHECK(parsed.at("sigma").get<double>() == 0.2);

  // The ordered corpus separates at the intermediate scale, not at the
  // degenerate one.
  const auto wide = ws.run(args + " --format table");
  CHECK(wide.code == 0);
  std::stringstream rows(wide.out);
  std::string header, data;
  std::getline(rows, header);
  std::getline(rows, data);
  CHECK(header ==
        "task,ts14_lowbow_s0.2,ts14_lowbow_s1e+06,ts14_lowbow_inf,ts14_bow_cosine,"
        "ts14_bow_euclidean");
  std::stringstream fields(data);
  std::string task, seq, bow;
  std::getline(fields, task, ',');
  std::getline(fields, seq, ',');
  std::getline(fields, bow, ',');
  CHECK(task == "A|B");
  CHECK(std::stod(seq) < std::stod(bow));

  const auto too_big = ws.run("eval --corpus " + ws.path("corpus.tsv").string() +
                              " --train-sizes 30 --reps 1");
  CHECK(too_big.code == 1);
  CHECK(too_big.err.find("train size") != std::string::npos);
}
