// Command-line front end: vocab / embed / distance / eval / features.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lowbow/classify.hpp"
#include "lowbow/corpus.hpp"
#include "lowbow/io.hpp"
#include "lowbow/lowbow.hpp"

namespace {

using namespace lowbow;

struct RunConfig {
  std::string corpus_path;
  std::string vocab_path;
  std::string curves_path;
  std::string curves_path_b;
  std::string output_path;
  std::string kernel = "gaussian";
  std::string metric = "fisher";
  std::string format = "csv";
  double sigma = 0.2;
  std::vector<double> sigmas = {0.2};
  double c = 0.005;
  double beta_floor = 1.01;
  int samples = 5;
  int k = 5;
  int min_count = 1;
  int repetitions = 10;
  std::uint64_t seed = 0;
  std::vector<std::size_t> train_sizes;
  bool stratified = true;
};

// Writes to the output file when set, otherwise to stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

KernelSpec kernel_spec(const RunConfig& cfg, double sigma) {
  return {kernel_from_name(cfg.kernel), sigma, cfg.beta_floor};
}

void require_positive_scale(double sigma) {
  if (!(sigma > 0.0) || std::isinf(sigma))
    throw std::runtime_error("--sigma must be a positive finite number");
}

Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
  return read_vocabulary(in);
}

std::vector<LowbowCurve> load_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file: " + path);
  auto curves = read_curves_jsonl(in);
  if (curves.empty()) throw std::runtime_error("no curves in " + path);
  return curves;
}

int run_vocab(const RunConfig& cfg) {
  const auto docs = read_corpus(cfg.corpus_path);
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(docs.size());
  for (const auto& doc : docs) token_lists.push_back(tokenize(doc.text));
  const auto vocab = build_vocabulary(token_lists, cfg.min_count);
  OutputTarget out(cfg.output_path);
  write_vocabulary(out.stream(), vocab);
  return 0;
}

int run_embed(const RunConfig& cfg) {
  require_positive_scale(cfg.sigma);
  const auto docs = read_corpus(cfg.corpus_path);
  const auto vocab = load_vocabulary(cfg.vocab_path);
  const auto spec = kernel_spec(cfg, cfg.sigma);

  std::vector<LowbowCurve> curves;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    WordSequence words;
    try {
      words = encode(tokenize(docs[i].text), vocab);
    } catch (const std::runtime_error&) {
      std::cerr << "warning: skipping document " << i << " (label " << docs[i].label
                << "): no in-vocabulary words\n";
      continue;
    }
    curves.push_back(lowbow_curve(words, cfg.samples, spec, cfg.c, vocab.size()));
  }
  if (curves.empty()) throw std::runtime_error("no documents could be embedded");

  OutputTarget out(cfg.output_path);
  if (cfg.format == "csv")
    write_curves_csv(out.stream(), curves);
  else
    write_curves_jsonl(out.stream(), curves);
  return 0;
}

int run_distance(const RunConfig& cfg) {
  const auto a = load_curves(cfg.curves_path);
  const auto b = load_curves(cfg.curves_path_b);
  if (a.size() != b.size())
    throw std::runtime_error("curve files hold different numbers of curves");
  const auto metric = metric_from_name(cfg.metric);
  OutputTarget out(cfg.output_path);
  for (std::size_t i = 0; i < a.size(); ++i)
    out.stream() << format_double(curve_distance(a[i], b[i], metric)) << '\n';
  return 0;
}

int run_features(const RunConfig& cfg) {
  const auto curves = load_curves(cfg.curves_path);
  const auto metric = metric_from_name(cfg.metric);
  OutputTarget out(cfg.output_path);
  out.stream() << "doc,samples,path_length,total_complexity,max_curvature\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto features = curve_features(curves[i], metric);
    double max_curvature = 0.0;
    for (double v : features.curvature_norms) max_curvature = std::max(max_curvature, v);
    out.stream() << i << ',' << curves[i].samples() << ','
                 << format_double(features.path_length) << ','
                 << format_double(features.total_complexity) << ','
                 << format_double(max_curvature) << '\n';
  }
  return 0;
}

int run_eval(const RunConfig& cfg) {
  for (double s : cfg.sigmas) require_positive_scale(s);
  const auto docs = read_corpus(cfg.corpus_path);
  std::vector<std::string> warnings;
  const auto corpus = corpus_from_documents(docs, {}, cfg.min_count, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  EvalProtocol protocol;
  protocol.train_sizes = cfg.train_sizes;
  if (protocol.train_sizes.empty())
    protocol.train_sizes = {corpus.size() / 2};
  protocol.repetitions = cfg.repetitions;
  protocol.seed = cfg.seed;
  protocol.k = cfg.k;
  protocol.metric = metric_from_name(cfg.metric);
  protocol.sigmas = cfg.sigmas;
  protocol.c = cfg.c;
  protocol.samples = cfg.samples;
  protocol.kernel = kernel_from_name(cfg.kernel);
  protocol.beta_floor = cfg.beta_floor;
  protocol.stratified = cfg.stratified;

  const auto reports = evaluate(corpus, protocol);
  OutputTarget out(cfg.output_path);
  if (cfg.format == "json")
    write_reports_jsonl(out.stream(), reports);
  else if (cfg.format == "table")
    write_figure_table_csv(out.stream(), reports);
  else
    write_reports_csv(out.stream(), reports);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally weighted bag of words: simplicial curve representations"};
  app.require_subcommand(1);
  // Precedence: command-line flags, then config-file values, then defaults.
  app.set_config("--config", "", "INI/TOML file with [subcommand] sections");
  RunConfig cfg;

  auto add_kernel_flags = [&](CLI::App* cmd) {
    cmd->add_option("--sigma", cfg.sigma, "kernel scale");
    cmd->add_option("--smoothing-c", cfg.c, "additive smoothing coefficient");
    cmd->add_option("--samples", cfg.samples, "curve sample count (l)");
    cmd->add_option("--kernel", cfg.kernel, "kernel family: gaussian | beta");
    cmd->add_option("--beta-floor", cfg.beta_floor, "Beta family minimum shape parameter");
  };

  auto* vocab = app.add_subcommand("vocab", "build a vocabulary from a corpus");
  vocab->add_option("--corpus", cfg.corpus_path, "TSV file or directory-per-label tree")
      ->required();
  vocab->add_option("--min-count", cfg.min_count, "minimum token count");
  vocab->add_option("--output", cfg.output_path, "output file (default stdout)");

  auto* embed = app.add_subcommand("embed", "embed documents as simplicial curves");
  embed->add_option("--corpus", cfg.corpus_path)->required();
  embed->add_option("--vocab", cfg.vocab_path, "vocabulary file")->required();
  add_kernel_flags(embed);
  embed->add_option("--format", cfg.format, "json | csv (default json for curves)");
  embed->add_option("--output", cfg.output_path);

  auto* distance = app.add_subcommand("distance", "distance between curve files");
  distance->add_option("fileA", cfg.curves_path, "curve JSONL file")->required();
  distance->add_option("fileB", cfg.curves_path_b, "curve JSONL file")->required();
  distance->add_option("--metric", cfg.metric, "fisher | euclidean");
  distance->add_option("--output", cfg.output_path);

  auto* features = app.add_subcommand("features", "tangent/curvature features of curves");
  features->add_option("--curves", cfg.curves_path, "curve JSONL file")->required();
  features->add_option("--metric", cfg.metric, "path-length metric");
  features->add_option("--output", cfg.output_path);

  auto* eval = app.add_subcommand("eval", "kNN evaluation harness");
  eval->add_option("--corpus", cfg.corpus_path)->required();
  eval->add_option("--sigma", cfg.sigmas, "kernel scale(s), comma separated")
      ->delimiter(',');
  eval->add_option("--smoothing-c", cfg.c);
  eval->add_option("--samples", cfg.samples);
  eval->add_option("--kernel", cfg.kernel);
  eval->add_option("--beta-floor", cfg.beta_floor);
  eval->add_option("--metric", cfg.metric);
  eval->add_option("--k", cfg.k, "neighbor count");
  eval->add_option("--seed", cfg.seed);
  eval->add_option("--train-sizes", cfg.train_sizes, "comma separated")->delimiter(',');
  eval->add_option("--reps", cfg.repetitions, "repetitions per train size");
  eval->add_option("--min-count", cfg.min_count);
  eval->add_flag("--stratified,!--no-stratified", cfg.stratified,
                 "stratify splits by label");
  eval->add_option("--format", cfg.format, "csv | json | table");
  eval->add_option("--output", cfg.output_path);

  // Let --config (and any other app-level option) appear after the
  // subcommand name.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*vocab) return run_vocab(cfg);
    if (*embed) {
      if (embed->count("--format") == 0) cfg.format = "json";
      return run_embed(cfg);
    }
    if (*distance) return run_distance(cfg);
    if (*features) return run_features(cfg);
    if (*eval) return run_eval(cfg);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
