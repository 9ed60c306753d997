#pragma once

// Test-only oracles and data generators. The quadrature and Riemann-sum
// paths here deliberately avoid Kernel::mass so they can vouch for it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lowbow/corpus.hpp"
#include "lowbow/geometry.hpp"
#include "lowbow/kernels.hpp"
#include "lowbow/lowbow.hpp"

namespace testsupport {

inline double simpson_slice(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double tol, double whole, double fa,
                                   double fm, double fb, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_slice(fa, flm, fm, a, m);
  const double right = simpson_slice(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, 0.5 * tol, left, fa, flm, fm, depth - 1) +
         adaptive_simpson_rec(f, m, b, 0.5 * tol, right, fm, frm, fb, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_simpson_rec(f, a, b, tol, simpson_slice(fa, fm, fb, a, b), fa, fm, fb,
                              48);
}

/// Midpoint Riemann sum of the modulated length-normalized document over a
/// uniform grid; independent of the exact segment-mass path.
inline std::vector<double> riemann_lowbow(const lowbow::WordSequence& y, double mu,
                                          const lowbow::KernelSpec& spec, double c,
                                          std::size_t vocab_size, std::size_t grid) {
  const lowbow::Kernel kernel(spec, mu);
  const auto n = y.size();
  std::vector<double> segment_weight(n, 0.0);
  for (std::size_t g = 0; g < grid; ++g) {
    const double t = (static_cast<double>(g) + 0.5) / static_cast<double>(grid);
    auto i = static_cast<std::size_t>(
        std::ceil(t * static_cast<double>(n)));
    i = std::clamp<std::size_t>(i, 1, n);
    segment_weight[i - 1] += kernel.density(t) / static_cast<double>(grid);
  }
  const double denom = 1.0 + c * static_cast<double>(vocab_size);
  double total = 0.0;
  for (double w : segment_weight) total += w;
  std::vector<double> coords(vocab_size, 0.0);
  for (std::size_t j = 0; j < vocab_size; ++j) coords[j] = (c / denom) * total;
  for (std::size_t i = 0; i < n; ++i)
    coords[static_cast<std::size_t>(y[i]) - 1] += segment_weight[i] / denom;
  return coords;
}

inline lowbow::WordSequence random_sequence(std::mt19937_64& rng, std::size_t max_len,
                                            std::size_t vocab_size) {
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<int> word_dist(1, static_cast<int>(vocab_size));
  lowbow::WordSequence y(len_dist(rng));
  for (auto& w : y) w = word_dist(rng);
  return y;
}

inline lowbow::SimplexPoint random_point(std::mt19937_64& rng, std::size_t size) {
  std::exponential_distribution<double> exp_dist(1.0);
  std::vector<double> coords(size);
  double sum = 0.0;
  for (auto& v : coords) {
    v = exp_dist(rng);
    sum += v;
  }
  for (auto& v : coords) v /= sum;
  return lowbow::SimplexPoint(std::move(coords));
}

inline lowbow::TangentVector random_tangent(std::mt19937_64& rng,
                                            const lowbow::SimplexPoint& base) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> comps(base.size());
  double mean = 0.0;
  for (auto& v : comps) {
    v = normal(rng);
    mean += v;
  }
  mean /= static_cast<double>(comps.size());
  for (auto& v : comps) v -= mean;
  return {std::move(comps), base};
}

inline lowbow::WordSequence two_topic_sequence() {
  return {1, 1, 1, 2, 2, 1, 1, 1, 2, 1, 1};
}

inline lowbow::WordSequence three_topic_sequence() { return {1, 3, 3, 3, 2, 2, 1, 3, 3}; }

/// Two-class corpus over ten words where only word order separates the
/// classes: every document is a per-half shuffle of a fixed composition
/// (each topic word length/10 times), class A topic-1 words first, class B
/// the reverse. Global histograms are identical across the whole corpus.
/// Lengths cycle so no length is informative either.
inline lowbow::LabeledCorpus ordered_topic_corpus(std::size_t docs_per_class,
                                                  std::uint64_t seed) {
  const std::vector<std::size_t> lengths = {30, 40, 50, 60};
  std::mt19937_64 rng(seed);

  auto half = [&](int first_word, std::size_t length) {
    lowbow::WordSequence words;
    for (int w = first_word; w < first_word + 5; ++w)
      for (std::size_t r = 0; r < length / 10; ++r) words.push_back(w);
    std::shuffle(words.begin(), words.end(), rng);
    return words;
  };

  std::vector<std::vector<std::string>> vocab_doc(1);
  for (int w = 1; w <= 10; ++w) vocab_doc[0].push_back("w" + std::to_string(w));

  lowbow::LabeledCorpus corpus;
  corpus.vocabulary = lowbow::build_vocabulary(vocab_doc, 1);
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t d = 0; d < docs_per_class; ++d) {
      const std::size_t length = lengths[d % lengths.size()];
      auto first = half(cls == 0 ? 1 : 6, length);
      const auto second = half(cls == 0 ? 6 : 1, length);
      first.insert(first.end(), second.begin(), second.end());
      corpus.items.push_back({std::move(first), cls == 0 ? "A" : "B"});
    }
  }
  return corpus;
}

inline std::string corpus_to_tsv(const lowbow::LabeledCorpus& corpus) {
  std::string out;
  for (const auto& item : corpus.items) {
    out += item.label;
    out += '\t';
    const auto tokens = lowbow::decode(item.words, corpus.vocabulary);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out += ' ';
      out += tokens[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace testsupport
