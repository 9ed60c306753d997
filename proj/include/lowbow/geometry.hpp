#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lowbow {

/// Which geometry to put on the simplex when measuring distances.
enum class SimplexMetric { Fisher, Euclidean };

SimplexMetric metric_from_name(const std::string& name);
const char* metric_name(SimplexMetric metric);

/// A point in the closure of the multinomial simplex: nonnegative
/// coordinates over m+1 items summing to one. Interior points (all
/// coordinates strictly positive) are histograms with no zero counts.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> coords);

  const std::vector<double>& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }
  std::size_t dimension() const { return coords_.size() - 1; }
  bool strictly_positive() const;

  static SimplexPoint uniform(std::size_t size);

 private:
  std::vector<double> coords_;
};

/// A vector tangent to the simplex at a base point. The affine constraint
/// (coordinates of points sum to one) forces the components to sum to zero.
struct TangentVector {
  std::vector<double> components;
  SimplexPoint base;

  TangentVector(std::vector<double> components_in, SimplexPoint base_in);
};

/// Fisher information inner product sum_i u_i v_i / theta_i at a strictly
/// positive base point. Undefined on the simplex boundary.
double fisher_inner_product(const TangentVector& u, const TangentVector& v,
                            const SimplexPoint& base);

/// Fisher geodesic distance acos(sum_i sqrt(theta_i eta_i)), extended
/// continuously to the closed simplex. Range is [0, pi/2].
double fisher_distance(const SimplexPoint& theta, const SimplexPoint& eta);

/// Plain L2 distance between coordinate vectors.
double euclidean_distance(const SimplexPoint& theta, const SimplexPoint& eta);

double simplex_distance(const SimplexPoint& theta, const SimplexPoint& eta,
                        SimplexMetric metric);

}  // namespace lowbow
