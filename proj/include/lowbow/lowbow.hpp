#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowbow/corpus.hpp"
#include "lowbow/geometry.hpp"
#include "lowbow/kernels.hpp"

namespace lowbow {

/// Row-stochastic view of a word sequence: position i carries weight
/// (1+c)/(1+c|V|) on its own word and c/(1+c|V|) on every other word, so
/// each row is a smoothed one-hot histogram.
struct StandardRepresentation {
  WordSequence sequence;
  double c = 0.0;
  std::size_t vocab_size = 0;

  StandardRepresentation(WordSequence sequence_in, double c_in,
                         std::size_t vocab_size_in);

  std::size_t length() const { return sequence.size(); }
  /// Weight of word j at position i (both 1-based).
  double value(std::size_t i, std::size_t j) const;
};

/// The whole-document smoothed histogram: coordinate j proportional to
/// sum_i (delta_{y_i,j} + c).
SimplexPoint global_bow(const WordSequence& y, double c, std::size_t vocab_size);

/// The locally weighted histogram at normalized location mu: each word's
/// unit of mass is weighted by the kernel mass over its (i-1)/N..i/N
/// segment, which integrates the length-normalized representation against
/// the kernel exactly.
SimplexPoint lowbow_at(const WordSequence& y, double mu, const KernelSpec& kernel,
                       double c, std::size_t vocab_size);

/// A smoothed document sampled at increasing locations in [0,1]; together
/// the points trace a curve in the simplex.
struct LowbowCurve {
  std::vector<double> locations;
  std::vector<SimplexPoint> points;
  double sigma = 0.0;
  double c = 0.0;
  KernelFamily family = KernelFamily::TruncatedGaussian;
  double beta_floor = 1.01;

  std::size_t samples() const { return locations.size(); }
  std::size_t point_size() const { return points.empty() ? 0 : points.front().size(); }
};

/// Samples the curve at `samples` equally spaced locations including both
/// endpoints: mu_k = (k-1)/(samples-1).
LowbowCurve lowbow_curve(const WordSequence& y, int samples, const KernelSpec& kernel,
                         double c, std::size_t vocab_size);

/// Mean per-location simplex distance between two curves sampled on the
/// same grid.
double curve_distance(const LowbowCurve& a, const LowbowCurve& b, SimplexMetric metric);

/// Central-difference tangents at the interior sample points (one-sided
/// endpoint stencils are not emitted).
std::vector<TangentVector> tangent_field(const LowbowCurve& curve);

struct CurveFeatures {
  std::vector<TangentVector> tangents;
  std::vector<double> curvature_norms;  // per interior point
  double total_complexity = 0.0;        // trapezoidal integral of the norms
  double path_length = 0.0;
};

CurveFeatures curve_features(const LowbowCurve& curve,
                             SimplexMetric path_metric = SimplexMetric::Euclidean);

/// Empirical check of the curve's Lipschitz bound: the Euclidean distance
/// between histograms at two locations never exceeds |mu - tau| times the
/// kernel complexity. Reports the worst observed ratio over random pairs.
struct LipschitzReport {
  double max_ratio = 0.0;
  double kernel_complexity = 0.0;
  int pairs = 0;
};

LipschitzReport lipschitz_check(const WordSequence& y, const KernelSpec& kernel,
                                double c, std::size_t vocab_size, int pairs,
                                std::uint64_t seed = 0x10b0b0d5u);

}  // namespace lowbow
