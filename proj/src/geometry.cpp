#include "lowbow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lowbow {

namespace {

constexpr double kSumTolerance = 1e-12;

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

SimplexMetric metric_from_name(const std::string& name) {
  if (name == "fisher") return SimplexMetric::Fisher;
  if (name == "euclidean") return SimplexMetric::Euclidean;
  throw std::invalid_argument("unknown metric: " + name);
}

const char* metric_name(SimplexMetric metric) {
  return metric == SimplexMetric::Fisher ? "fisher" : "euclidean";
}

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty())
    throw std::invalid_argument("simplex point needs at least one coordinate");
  double sum = 0.0;
  for (double v : coords_) {
    if (!(v >= 0.0))
      throw std::invalid_argument("simplex coordinates must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("simplex coordinates must sum to one");
}

bool SimplexPoint::strictly_positive() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v > 0.0; });
}

SimplexPoint SimplexPoint::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("simplex point needs at least one coordinate");
  return SimplexPoint(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

TangentVector::TangentVector(std::vector<double> components_in, SimplexPoint base_in)
    : components(std::move(components_in)), base(std::move(base_in)) {
  require_same_size(components.size(), base.size());
  double sum = 0.0;
  for (double v : components) sum += v;
  if (std::abs(sum) > 1e-9)
    throw std::invalid_argument("tangent components must sum to zero");
}

double fisher_inner_product(const TangentVector& u, const TangentVector& v,
                            const SimplexPoint& base) {
  require_same_size(u.components.size(), v.components.size());
  require_same_size(u.components.size(), base.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i] <= 0.0)
      throw std::invalid_argument("boundary point: Fisher metric undefined");
    sum += u.components[i] * v.components[i] / base[i];
  }
  return sum;
}

double fisher_distance(const SimplexPoint& theta, const SimplexPoint& eta) {
  require_same_size(theta.size(), eta.size());
  // acos turns a 1-ulp affinity error into ~1e-8, so equal points are
  // answered exactly rather than through the formula.
  if (theta.coords() == eta.coords()) return 0.0;
  double affinity = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    affinity += std::sqrt(theta[i] * eta[i]);
  // The Bhattacharyya affinity can drift past 1 by ~1e-16; clamp before acos.
  affinity = std::clamp(affinity, 0.0, 1.0);
  return std::acos(affinity);
}

double euclidean_distance(const SimplexPoint& theta, const SimplexPoint& eta) {
  require_same_size(theta.size(), eta.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = theta[i] - eta[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double simplex_distance(const SimplexPoint& theta, const SimplexPoint& eta,
                        SimplexMetric metric) {
  return metric == SimplexMetric::Fisher ? fisher_distance(theta, eta)
                                         : euclidean_distance(theta, eta);
}

}  // namespace lowbow
