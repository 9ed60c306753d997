#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lowbow/corpus.hpp"
#include "lowbow/geometry.hpp"
#include "lowbow/lowbow.hpp"

namespace lowbow {

enum class BowBaseline { Cosine, Euclidean };

/// Dissimilarity between bow histograms: 1 - cosine similarity, or the L2
/// distance.
double bow_dissimilarity(const SimplexPoint& theta, const SimplexPoint& eta,
                         BowBaseline which);

/// Majority vote over the k nearest entries of (distance, label). Neighbor
/// selection sorts on (distance, label) so it is order-free; vote ties go
/// to the label with the smaller summed distance, then the lexicographically
/// smaller label.
std::string knn_vote(std::vector<std::pair<double, const std::string*>> neighbors,
                     int k);

/// k-nearest-neighbor classifier over lowbow curves under a curve distance.
class FittedKnn {
 public:
  FittedKnn(std::vector<LowbowCurve> curves, std::vector<std::string> labels, int k,
            SimplexMetric metric);

  std::string classify(const LowbowCurve& query) const;

  int k() const { return k_; }
  SimplexMetric metric() const { return metric_; }
  std::size_t train_size() const { return curves_.size(); }

 private:
  std::vector<LowbowCurve> curves_;
  std::vector<std::string> labels_;
  int k_;
  SimplexMetric metric_;
};

struct EvalProtocol {
  std::vector<std::size_t> train_sizes;
  int repetitions = 10;
  std::uint64_t seed = 0;
  int k = 5;
  SimplexMetric metric = SimplexMetric::Fisher;
  std::vector<double> sigmas = {0.2};
  double c = 0.005;
  int samples = 5;
  KernelFamily kernel = KernelFamily::TruncatedGaussian;
  double beta_floor = 1.01;
  bool stratified = true;
  bool run_baselines = true;

  KernelSpec kernel_spec(double sigma) const { return {kernel, sigma, beta_floor}; }
};

/// One classification run: method is "lowbow" (per-sigma curves),
/// "lowbow_inf" (the sigma -> inf degenerate curves), "bow_cosine", or
/// "bow_euclidean". sigma is NaN for the bow baselines.
struct EvalReport {
  std::string method;
  std::size_t train_size = 0;
  double sigma = 0.0;
  int repetition = 0;
  double error_rate = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  std::map<std::string, std::map<std::string, std::size_t>> confusion;  // true -> predicted
  // Configuration echo.
  double c = 0.0;
  int samples = 0;
  int k = 0;
  KernelFamily kernel = KernelFamily::TruncatedGaussian;
  SimplexMetric metric = SimplexMetric::Fisher;
  std::uint64_t seed = 0;
  bool stratified = true;
};

/// Runs the full harness: for every (train size, repetition) the corpus is
/// split once and every sigma plus the baselines are scored on that same
/// split. Deterministic given the protocol seed.
std::vector<EvalReport> evaluate(const LabeledCorpus& corpus, const EvalProtocol& protocol);

struct SweepRow {
  double sigma = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;
};

/// Mean/std test error per sigma over the repetitions of the protocol's
/// first train size, with splits shared across sigmas.
std::vector<SweepRow> sigma_sweep(const LabeledCorpus& corpus,
                                  const std::vector<double>& sigmas,
                                  const EvalProtocol& protocol);

/// Picks the sigma with the lowest mean error on validation splits carved
/// from the training portion (the test items are never touched). Ties go
/// to the smaller sigma.
double select_best_sigma(const LabeledCorpus& corpus, const std::vector<double>& sigmas,
                         const EvalProtocol& protocol);

}  // namespace lowbow
