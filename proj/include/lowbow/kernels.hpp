#pragma once

#include <cstddef>
#include <string>

namespace lowbow {

enum class KernelFamily { TruncatedGaussian, Beta };

KernelFamily kernel_from_name(const std::string& name);
const char* kernel_name(KernelFamily family);

/// Kernel family plus its scale knobs; the location mu is supplied per
/// evaluation when a concrete Kernel is built.
struct KernelSpec {
  KernelFamily family = KernelFamily::TruncatedGaussian;
  double sigma = 0.2;
  double beta_floor = 1.01;  // Beta family: minimum allowed shape parameter, > 1
};

/// A positive, unit-mass smoothing kernel on [0,1] with location mu and
/// scale sigma. TruncatedGaussian is the normal pdf restricted to [0,1]
/// and renormalized; Beta uses shape parameters a = c*mu/sigma,
/// b = c*(1-mu)/sigma with the smallest multiplier c >= 1 that keeps
/// min(a,b) >= beta_floor. sigma = +inf denotes the constant kernel
/// (density identically one), the degenerate limit shared by both families.
class Kernel {
 public:
  Kernel(KernelFamily family, double mu, double sigma, double beta_floor = 1.01);
  Kernel(const KernelSpec& spec, double mu);

  /// Pointwise density at t in [0,1].
  double density(double t) const;

  /// Exact mass over [a,b], 0 <= a <= b <= 1. Additive over adjacent
  /// intervals and equal to 1 on [0,1].
  double mass(double a, double b) const;

  KernelFamily family() const { return family_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double beta_floor() const { return beta_floor_; }
  bool is_constant() const { return constant_; }

 private:
  KernelFamily family_;
  double mu_;
  double sigma_;
  double beta_floor_;
  bool constant_ = false;
  // TruncatedGaussian: normalizer Z = Phi((1-mu)/sigma) - Phi(-mu/sigma).
  double gauss_norm_ = 1.0;
  // Beta: shape parameters and log B(a,b).
  double shape_a_ = 0.0;
  double shape_b_ = 0.0;
  double log_beta_ = 0.0;
};

/// Integrated Lipschitz constant of the kernel in mu, scaled by sqrt(|V|).
/// Bounds how fast a smoothed histogram can move as the location sweeps
/// the document.
struct KernelComplexity {
  double value = 0.0;
  std::size_t vocab_size = 0;
};

/// Numerical estimate: C(t) is the max over a mu-grid of the central
/// finite difference |dK_{mu,sigma}(t)/dmu| (normalizer included), and the
/// result is sqrt(vocab_size) times the trapezoidal integral of C over t.
KernelComplexity kernel_complexity(const KernelSpec& spec, std::size_t vocab_size,
                                   int grid = 256);

}  // namespace lowbow
