#include "lowbow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

namespace lowbow {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
// Beta shape parameters degenerate at mu in {0,1}; clamp for that family only.
constexpr double kBetaMuMin = 1e-6;

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

}  // namespace

KernelFamily kernel_from_name(const std::string& name) {
  if (name == "gaussian") return KernelFamily::TruncatedGaussian;
  if (name == "beta") return KernelFamily::Beta;
  throw std::invalid_argument("unknown kernel family: " + name);
}

const char* kernel_name(KernelFamily family) {
  return family == KernelFamily::TruncatedGaussian ? "gaussian" : "beta";
}

Kernel::Kernel(KernelFamily family, double mu, double sigma, double beta_floor)
    : family_(family), mu_(mu), sigma_(sigma), beta_floor_(beta_floor) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("kernel location must lie in [0,1]");
  if (!(sigma > 0.0))
    throw std::invalid_argument("kernel scale must be positive");
  constant_ = std::isinf(sigma);
  if (constant_) return;

  if (family_ == KernelFamily::TruncatedGaussian) {
    gauss_norm_ = normal_cdf((1.0 - mu_) / sigma_) - normal_cdf(-mu_ / sigma_);
  } else {
    if (!(beta_floor_ > 1.0))
      throw std::invalid_argument("beta_floor must exceed 1");
    const double m = std::clamp(mu_, kBetaMuMin, 1.0 - kBetaMuMin);
    const double side = std::min(m, 1.0 - m);
    const double mult = std::max(1.0, beta_floor_ * sigma_ / side);
    shape_a_ = mult * m / sigma_;
    shape_b_ = mult * (1.0 - m) / sigma_;
    log_beta_ = std::lgamma(shape_a_) + std::lgamma(shape_b_) -
                std::lgamma(shape_a_ + shape_b_);
  }
}

Kernel::Kernel(const KernelSpec& spec, double mu)
    : Kernel(spec.family, mu, spec.sigma, spec.beta_floor) {}

double Kernel::density(double t) const {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("kernel evaluated outside [0,1]");
  if (constant_) return 1.0;
  if (family_ == KernelFamily::TruncatedGaussian) {
    const double z = (t - mu_) / sigma_;
    return std::exp(-0.5 * z * z) * kInvSqrt2Pi / (sigma_ * gauss_norm_);
  }
  // Shape parameters exceed 1, so the pdf vanishes at the endpoints.
  if (t == 0.0 || t == 1.0) return 0.0;
  return std::exp((shape_a_ - 1.0) * std::log(t) + (shape_b_ - 1.0) * std::log1p(-t) -
                  log_beta_);
}

double Kernel::mass(double a, double b) const {
  if (!(a >= 0.0 && a <= b && b <= 1.0))
    throw std::invalid_argument("mass interval must satisfy 0 <= a <= b <= 1");
  if (constant_) return b - a;
  double m;
  if (family_ == KernelFamily::TruncatedGaussian) {
    m = (normal_cdf((b - mu_) / sigma_) - normal_cdf((a - mu_) / sigma_)) / gauss_norm_;
  } else {
    m = boost::math::ibeta(shape_a_, shape_b_, b) -
        boost::math::ibeta(shape_a_, shape_b_, a);
  }
  return std::clamp(m, 0.0, 1.0);
}

KernelComplexity kernel_complexity(const KernelSpec& spec, std::size_t vocab_size,
                                   int grid) {
  if (grid < 64)
    throw std::invalid_argument("complexity grid must be at least 64");
  if (std::isinf(spec.sigma)) return {0.0, vocab_size};

  const int n = grid;
  const double h = 1e-5;  // central-difference step in mu
  std::vector<double> lipschitz(static_cast<std::size_t>(n) + 1, 0.0);
  for (int q = 0; q <= n; ++q) {
    const double mu = h + static_cast<double>(q) * (1.0 - 2.0 * h) / n;
    const Kernel hi(spec, mu + h);
    const Kernel lo(spec, mu - h);
    for (int k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      const double slope = std::abs(hi.density(t) - lo.density(t)) / (2.0 * h);
      lipschitz[k] = std::max(lipschitz[k], slope);
    }
  }
  double integral = 0.0;
  for (int k = 0; k < n; ++k)
    integral += 0.5 * (lipschitz[k] + lipschitz[k + 1]) / n;
  return {std::sqrt(static_cast<double>(vocab_size)) * integral, vocab_size};
}

}  // namespace lowbow
