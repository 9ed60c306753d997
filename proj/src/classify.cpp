#include "lowbow/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lowbow {

namespace {

struct LabelTally {
  int votes = 0;
  double distance_sum = 0.0;
};

void validate_protocol(const LabeledCorpus& corpus, const EvalProtocol& protocol) {
  if (corpus.labels().size() < 2)
    throw std::invalid_argument("classification needs at least two distinct labels");
  if (protocol.train_sizes.empty())
    throw std::invalid_argument("protocol needs at least one train size");
  for (std::size_t t : protocol.train_sizes)
    if (t < 1 || t >= corpus.size())
      throw std::invalid_argument("train size must be in [1, corpus size - 1]");
  if (protocol.repetitions < 1)
    throw std::invalid_argument("protocol needs at least one repetition");
  if (protocol.k < 1) throw std::invalid_argument("k must be at least 1");
  if (protocol.samples < 2) throw std::invalid_argument("curve needs at least 2 samples");
  if (!(protocol.c >= 0.0))
    throw std::invalid_argument("smoothing coefficient must be >= 0");
  if (protocol.sigmas.empty())
    throw std::invalid_argument("protocol needs at least one sigma");
  for (double s : protocol.sigmas)
    if (!(s > 0.0)) throw std::invalid_argument("kernel scale must be positive");
}

std::uint64_t split_seed(std::uint64_t base, std::size_t train_size, int repetition) {
  // splitmix-style mixing keeps per-(size, rep) splits decorrelated.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (train_size + 1) +
                    0xbf58476d1ce4e5b9ull * static_cast<std::uint64_t>(repetition + 1);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

EvalReport score_predictions(const LabeledCorpus& test,
                             const std::vector<std::string>& predictions) {
  EvalReport report;
  report.total = test.size();
  for (std::size_t i = 0; i < test.size(); ++i) {
    const std::string& truth = test.items[i].label;
    ++report.confusion[truth][predictions[i]];
    if (predictions[i] == truth) ++report.correct;
  }
  report.error_rate = static_cast<double>(report.total - report.correct) /
                      static_cast<double>(report.total);
  return report;
}

}  // namespace

double bow_dissimilarity(const SimplexPoint& theta, const SimplexPoint& eta,
                         BowBaseline which) {
  if (which == BowBaseline::Euclidean) return euclidean_distance(theta, eta);
  if (theta.size() != eta.size()) throw std::invalid_argument("dimension mismatch");
  double dot = 0.0, nt = 0.0, ne = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    dot += theta[i] * eta[i];
    nt += theta[i] * theta[i];
    ne += eta[i] * eta[i];
  }
  if (nt == 0.0 || ne == 0.0)
    throw std::invalid_argument("cosine dissimilarity undefined for zero vector");
  return std::max(0.0, 1.0 - dot / (std::sqrt(nt) * std::sqrt(ne)));
}

std::string knn_vote(std::vector<std::pair<double, const std::string*>> neighbors,
                     int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (neighbors.size() < static_cast<std::size_t>(k))
    throw std::invalid_argument("k exceeds the number of candidates");
  std::sort(neighbors.begin(), neighbors.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return *a.second < *b.second;
  });

  std::map<std::string, LabelTally> tallies;
  for (int i = 0; i < k; ++i) {
    auto& tally = tallies[*neighbors[static_cast<std::size_t>(i)].second];
    ++tally.votes;
    tally.distance_sum += neighbors[static_cast<std::size_t>(i)].first;
  }

  const std::string* winner = nullptr;
  const LabelTally* best = nullptr;
  for (const auto& [label, tally] : tallies) {
    const bool take = best == nullptr || tally.votes > best->votes ||
                      (tally.votes == best->votes &&
                       tally.distance_sum < best->distance_sum);
    // Map iteration is label-ascending, so equal (votes, sum) keeps the
    // lexicographically smaller label.
    if (take) {
      winner = &label;
      best = &tally;
    }
  }
  return *winner;
}

FittedKnn::FittedKnn(std::vector<LowbowCurve> curves, std::vector<std::string> labels,
                     int k, SimplexMetric metric)
    : curves_(std::move(curves)), labels_(std::move(labels)), k_(k), metric_(metric) {
  if (k_ < 1) throw std::invalid_argument("k must be at least 1");
  if (curves_.size() != labels_.size())
    throw std::invalid_argument("curves and labels must have equal length");
  if (curves_.size() < static_cast<std::size_t>(k_))
    throw std::invalid_argument("k exceeds the training set size");
  for (std::size_t i = 1; i < curves_.size(); ++i) {
    if (curves_[i].locations != curves_.front().locations ||
        curves_[i].point_size() != curves_.front().point_size())
      throw std::invalid_argument("training curves must share grid and dimension");
  }
}

std::string FittedKnn::classify(const LowbowCurve& query) const {
  std::vector<std::pair<double, const std::string*>> neighbors;
  neighbors.reserve(curves_.size());
  for (std::size_t i = 0; i < curves_.size(); ++i)
    neighbors.emplace_back(curve_distance(query, curves_[i], metric_), &labels_[i]);
  return knn_vote(std::move(neighbors), k_);
}

namespace {

std::vector<std::string> predict_curves(const std::vector<LowbowCurve>& train_curves,
                                        const std::vector<std::string>& train_labels,
                                        const std::vector<LowbowCurve>& test_curves,
                                        int k, SimplexMetric metric) {
  const FittedKnn model(train_curves, train_labels, k, metric);
  std::vector<std::string> predictions;
  predictions.reserve(test_curves.size());
  for (const auto& query : test_curves) predictions.push_back(model.classify(query));
  return predictions;
}

std::vector<std::string> predict_bows(const std::vector<SimplexPoint>& train_bows,
                                      const std::vector<std::string>& train_labels,
                                      const std::vector<SimplexPoint>& test_bows,
                                      int k, BowBaseline baseline) {
  std::vector<std::string> predictions;
  predictions.reserve(test_bows.size());
  for (const auto& query : test_bows) {
    std::vector<std::pair<double, const std::string*>> neighbors;
    neighbors.reserve(train_bows.size());
    for (std::size_t i = 0; i < train_bows.size(); ++i)
      neighbors.emplace_back(bow_dissimilarity(query, train_bows[i], baseline),
                             &train_labels[i]);
    predictions.push_back(knn_vote(std::move(neighbors), k));
  }
  return predictions;
}

template <typename T>
void gather(const std::vector<T>& values, const std::vector<std::size_t>& idx,
            std::vector<T>& out) {
  out.clear();
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(values[i]);
}

}  // namespace

std::vector<EvalReport> evaluate(const LabeledCorpus& corpus,
                                 const EvalProtocol& protocol) {
  validate_protocol(corpus, protocol);
  const std::size_t n = corpus.size();
  const std::size_t vocab_size = corpus.vocabulary.size();

  // Embeddings do not depend on the split: compute them once per sigma.
  std::vector<std::vector<LowbowCurve>> curves_by_sigma;
  for (double sigma : protocol.sigmas) {
    std::vector<LowbowCurve> curves;
    curves.reserve(n);
    for (const auto& item : corpus.items)
      curves.push_back(lowbow_curve(item.words, protocol.samples,
                                    protocol.kernel_spec(sigma), protocol.c,
                                    vocab_size));
    curves_by_sigma.push_back(std::move(curves));
  }

  std::vector<LowbowCurve> inf_curves;
  std::vector<SimplexPoint> bows;
  if (protocol.run_baselines) {
    const KernelSpec degenerate =
        protocol.kernel_spec(std::numeric_limits<double>::infinity());
    inf_curves.reserve(n);
    bows.reserve(n);
    for (const auto& item : corpus.items) {
      inf_curves.push_back(lowbow_curve(item.words, protocol.samples, degenerate,
                                        protocol.c, vocab_size));
      bows.push_back(global_bow(item.words, protocol.c, vocab_size));
    }
  }

  std::vector<std::string> all_labels;
  all_labels.reserve(n);
  for (const auto& item : corpus.items) all_labels.push_back(item.label);

  std::vector<EvalReport> reports;
  auto emit = [&](EvalReport report, const std::string& method, std::size_t train_size,
                  double sigma, int rep) {
    report.method = method;
    report.train_size = train_size;
    report.sigma = sigma;
    report.repetition = rep;
    report.c = protocol.c;
    report.samples = protocol.samples;
    report.k = protocol.k;
    report.kernel = protocol.kernel;
    report.metric = protocol.metric;
    report.seed = protocol.seed;
    report.stratified = protocol.stratified;
    reports.push_back(std::move(report));
  };

  std::vector<std::string> train_labels;
  std::vector<LowbowCurve> train_curves, test_curves;
  std::vector<SimplexPoint> train_bows, test_bows;

  for (std::size_t train_size : protocol.train_sizes) {
    for (int rep = 0; rep < protocol.repetitions; ++rep) {
      const auto [train_idx, test_idx] = split_indices_by_count(
          all_labels, train_size, split_seed(protocol.seed, train_size, rep),
          protocol.stratified);
      gather(all_labels, train_idx, train_labels);
      LabeledCorpus test_view;
      test_view.vocabulary = corpus.vocabulary;
      for (std::size_t i : test_idx) test_view.items.push_back(corpus.items[i]);

      for (std::size_t si = 0; si < protocol.sigmas.size(); ++si) {
        gather(curves_by_sigma[si], train_idx, train_curves);
        gather(curves_by_sigma[si], test_idx, test_curves);
        const auto predictions = predict_curves(train_curves, train_labels, test_curves,
                                                protocol.k, protocol.metric);
        emit(score_predictions(test_view, predictions), "lowbow", train_size,
             protocol.sigmas[si], rep);
      }

      if (protocol.run_baselines) {
        gather(inf_curves, train_idx, train_curves);
        gather(inf_curves, test_idx, test_curves);
        emit(score_predictions(test_view,
                               predict_curves(train_curves, train_labels, test_curves,
                                              protocol.k, protocol.metric)),
             "lowbow_inf", train_size, std::numeric_limits<double>::infinity(), rep);

        gather(bows, train_idx, train_bows);
        gather(bows, test_idx, test_bows);
        emit(score_predictions(test_view,
                               predict_bows(train_bows, train_labels, test_bows,
                                            protocol.k, BowBaseline::Cosine)),
             "bow_cosine", train_size, std::numeric_limits<double>::quiet_NaN(), rep);
        emit(score_predictions(test_view,
                               predict_bows(train_bows, train_labels, test_bows,
                                            protocol.k, BowBaseline::Euclidean)),
             "bow_euclidean", train_size, std::numeric_limits<double>::quiet_NaN(), rep);
      }
    }
  }
  return reports;
}

std::vector<SweepRow> sigma_sweep(const LabeledCorpus& corpus,
                                  const std::vector<double>& sigmas,
                                  const EvalProtocol& protocol) {
  if (sigmas.size() < 2) throw std::invalid_argument("sigma sweep needs at least 2 values");
  if (protocol.train_sizes.empty())
    throw std::invalid_argument("protocol needs at least one train size");
  EvalProtocol sweep = protocol;
  sweep.sigmas = sigmas;
  sweep.train_sizes = {protocol.train_sizes.front()};
  sweep.run_baselines = false;
  const auto reports = evaluate(corpus, sweep);

  std::vector<SweepRow> rows;
  for (double sigma : sigmas) {
    std::vector<double> errors;
    for (const auto& report : reports)
      if (report.method == "lowbow" && report.sigma == sigma)
        errors.push_back(report.error_rate);
    SweepRow row;
    row.sigma = sigma;
    for (double e : errors) row.mean_error += e;
    row.mean_error /= static_cast<double>(errors.size());
    if (errors.size() > 1) {
      double ss = 0.0;
      for (double e : errors) ss += (e - row.mean_error) * (e - row.mean_error);
      row.std_error = std::sqrt(ss / static_cast<double>(errors.size() - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

double select_best_sigma(const LabeledCorpus& corpus, const std::vector<double>& sigmas,
                         const EvalProtocol& protocol) {
  if (sigmas.empty()) throw std::invalid_argument("need at least one sigma");
  validate_protocol(corpus, protocol);
  const std::size_t train_size = protocol.train_sizes.at(0);
  if (train_size < 2)
    throw std::invalid_argument("train size too small for a validation split");

  std::vector<std::string> all_labels;
  for (const auto& item : corpus.items) all_labels.push_back(item.label);

  std::vector<double> mean_error(sigmas.size(), 0.0);
  for (int rep = 0; rep < protocol.repetitions; ++rep) {
    // Carve the usual train portion, then hold half of it out for validation;
    // the test portion is never consulted.
    const auto [train_idx, test_idx] = split_indices_by_count(
        all_labels, train_size, split_seed(protocol.seed, train_size, rep),
        protocol.stratified);
    LabeledCorpus train_view;
    train_view.vocabulary = corpus.vocabulary;
    for (std::size_t i : train_idx) train_view.items.push_back(corpus.items[i]);

    EvalProtocol inner = protocol;
    inner.train_sizes = {std::max<std::size_t>(1, train_size / 2)};
    inner.repetitions = 1;
    inner.seed = split_seed(protocol.seed ^ 0xa5a5a5a5ull, train_size, rep);
    inner.sigmas = sigmas;
    inner.run_baselines = false;
    inner.k = std::min<int>(protocol.k, static_cast<int>(inner.train_sizes[0]));
    const auto reports = evaluate(train_view, inner);
    for (std::size_t si = 0; si < sigmas.size(); ++si)
      for (const auto& report : reports)
        if (report.method == "lowbow" && report.sigma == sigmas[si])
          mean_error[si] += report.error_rate;
  }

  std::size_t best = 0;
  for (std::size_t si = 1; si < sigmas.size(); ++si) {
    if (mean_error[si] < mean_error[best] ||
        (mean_error[si] == mean_error[best] && sigmas[si] < sigmas[best]))
      best = si;
  }
  return sigmas[best];
}

}  // namespace lowbow
