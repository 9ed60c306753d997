#include "lowbow/lowbow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace lowbow {

namespace {

void validate_sequence(const WordSequence& y, std::size_t vocab_size) {
  if (vocab_size == 0) throw std::invalid_argument("vocabulary size must be positive");
  if (y.empty()) throw std::invalid_argument("word sequence must be nonempty");
  for (int idx : y)
    if (idx < 1 || static_cast<std::size_t>(idx) > vocab_size)
      throw std::invalid_argument("word index out of range");
}

void validate_smoothing(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("smoothing coefficient must be >= 0");
}

void require_same_grid(const LowbowCurve& a, const LowbowCurve& b) {
  if (a.samples() != b.samples() || a.locations != b.locations)
    throw std::invalid_argument("mismatched sampling grids");
  if (a.point_size() != b.point_size())
    throw std::invalid_argument("dimension mismatch");
}

double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

StandardRepresentation::StandardRepresentation(WordSequence sequence_in, double c_in,
                                               std::size_t vocab_size_in)
    : sequence(std::move(sequence_in)), c(c_in), vocab_size(vocab_size_in) {
  validate_sequence(sequence, vocab_size);
  validate_smoothing(c);
}

double StandardRepresentation::value(std::size_t i, std::size_t j) const {
  if (i < 1 || i > sequence.size()) throw std::out_of_range("position out of range");
  if (j < 1 || j > vocab_size) throw std::out_of_range("word index out of range");
  const double denom = 1.0 + c * static_cast<double>(vocab_size);
  return sequence[i - 1] == static_cast<int>(j) ? (1.0 + c) / denom : c / denom;
}

SimplexPoint global_bow(const WordSequence& y, double c, std::size_t vocab_size) {
  validate_sequence(y, vocab_size);
  validate_smoothing(c);
  const double n = static_cast<double>(y.size());
  std::vector<double> counts(vocab_size, 0.0);
  for (int idx : y) counts[static_cast<std::size_t>(idx) - 1] += 1.0;
  const double denom = n * (1.0 + c * static_cast<double>(vocab_size));
  std::vector<double> coords(vocab_size);
  for (std::size_t j = 0; j < vocab_size; ++j)
    coords[j] = (counts[j] + n * c) / denom;
  return SimplexPoint(std::move(coords));
}

SimplexPoint lowbow_at(const WordSequence& y, double mu, const KernelSpec& kernel,
                       double c, std::size_t vocab_size) {
  validate_sequence(y, vocab_size);
  validate_smoothing(c);
  if (std::isinf(kernel.sigma)) {
    // Constant kernel: the curve collapses onto the global bow exactly.
    return global_bow(y, c, vocab_size);
  }
  const Kernel k(kernel, mu);
  const auto n = static_cast<double>(y.size());

  // The length-normalized representation is constant on each word's
  // segment, so integrating against the kernel reduces to exact segment
  // masses: coordinate j = c/(1+c|V|) + (1/(1+c|V|)) * sum of masses of
  // the segments holding word j.
  std::vector<double> matched_mass(vocab_size, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    matched_mass[static_cast<std::size_t>(y[i]) - 1] += k.mass(lo, hi);
  }
  const double denom = 1.0 + c * static_cast<double>(vocab_size);
  std::vector<double> coords(vocab_size);
  for (std::size_t j = 0; j < vocab_size; ++j)
    coords[j] = (c + matched_mass[j]) / denom;
  return SimplexPoint(std::move(coords));
}

LowbowCurve lowbow_curve(const WordSequence& y, int samples, const KernelSpec& kernel,
                         double c, std::size_t vocab_size) {
  if (samples < 2) throw std::invalid_argument("curve needs at least 2 samples");
  LowbowCurve curve;
  curve.sigma = kernel.sigma;
  curve.c = c;
  curve.family = kernel.family;
  curve.beta_floor = kernel.beta_floor;
  curve.locations.reserve(static_cast<std::size_t>(samples));
  curve.points.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const double mu = static_cast<double>(s) / static_cast<double>(samples - 1);
    curve.locations.push_back(mu);
    curve.points.push_back(lowbow_at(y, mu, kernel, c, vocab_size));
  }
  return curve;
}

double curve_distance(const LowbowCurve& a, const LowbowCurve& b, SimplexMetric metric) {
  require_same_grid(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.samples(); ++k)
    sum += simplex_distance(a.points[k], b.points[k], metric);
  return sum / static_cast<double>(a.samples());
}

std::vector<TangentVector> tangent_field(const LowbowCurve& curve) {
  const std::size_t l = curve.samples();
  if (l < 3) throw std::invalid_argument("tangent field needs at least 3 samples");
  const std::size_t dim = curve.point_size();
  std::vector<TangentVector> tangents;
  tangents.reserve(l - 2);
  for (std::size_t k = 1; k + 1 < l; ++k) {
    const double span = curve.locations[k + 1] - curve.locations[k - 1];
    std::vector<double> comps(dim);
    for (std::size_t j = 0; j < dim; ++j)
      comps[j] = (curve.points[k + 1][j] - curve.points[k - 1][j]) / span;
    tangents.emplace_back(std::move(comps), curve.points[k]);
  }
  return tangents;
}

CurveFeatures curve_features(const LowbowCurve& curve, SimplexMetric path_metric) {
  const std::size_t l = curve.samples();
  if (l < 3) throw std::invalid_argument("curve features need at least 3 samples");
  const std::size_t dim = curve.point_size();

  CurveFeatures features;
  features.tangents = tangent_field(curve);

  features.curvature_norms.reserve(l - 2);
  for (std::size_t k = 1; k + 1 < l; ++k) {
    const double h0 = curve.locations[k] - curve.locations[k - 1];
    const double h1 = curve.locations[k + 1] - curve.locations[k];
    std::vector<double> dd(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const double fwd = (curve.points[k + 1][j] - curve.points[k][j]) / h1;
      const double bwd = (curve.points[k][j] - curve.points[k - 1][j]) / h0;
      dd[j] = 2.0 * (fwd - bwd) / (h0 + h1);
    }
    features.curvature_norms.push_back(l2_norm(dd));
  }

  // Interior locations carry the curvature samples.
  for (std::size_t k = 1; k + 2 < l; ++k) {
    const double step = curve.locations[k + 1] - curve.locations[k];
    features.total_complexity +=
        0.5 * (features.curvature_norms[k - 1] + features.curvature_norms[k]) * step;
  }

  for (std::size_t k = 0; k + 1 < l; ++k)
    features.path_length +=
        simplex_distance(curve.points[k], curve.points[k + 1], path_metric);
  return features;
}

LipschitzReport lipschitz_check(const WordSequence& y, const KernelSpec& kernel,
                                double c, std::size_t vocab_size, int pairs,
                                std::uint64_t seed) {
  if (pairs < 1) throw std::invalid_argument("need at least one location pair");
  LipschitzReport report;
  report.pairs = pairs;
  report.kernel_complexity = kernel_complexity(kernel, vocab_size).value;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int p = 0; p < pairs; ++p) {
    const double mu = unit(rng);
    const double tau = unit(rng);
    if (mu == tau) continue;
    const SimplexPoint gm = lowbow_at(y, mu, kernel, c, vocab_size);
    const SimplexPoint gt = lowbow_at(y, tau, kernel, c, vocab_size);
    const double moved = euclidean_distance(gm, gt);
    const double bound = std::abs(mu - tau) * report.kernel_complexity;
    double ratio;
    if (bound > 0.0)
      ratio = moved / bound;
    else
      ratio = moved == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  return report;
}

}  // namespace lowbow
