#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qmu/bounds.hpp"
#include "qmu/errors.hpp"

namespace qmu {

struct OptimizerConfig {
  int grid_n = 256;          ///< oracle resolution, >= 32
  int max_iter = 100000;     ///< alternation cap
  double conv_tol = 1e-12;   ///< stopping threshold on |delta c| + |delta d|
  std::uint64_t seed = 1;    ///< sampler seed

  /// Throws std::invalid_argument if grid_n < 32, max_iter < 1 or
  /// conv_tol <= 0.
  void validate() const;
};

/// Seeded generator with a bit-reproducible uniform draw (the standard
/// distributions are implementation-defined, the engine is not).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in the closed unit ball (rejection from the cube).
  BlochVector in_ball();

 private:
  std::mt19937_64 engine_;
};

/// Direction d closest to b among those jointly measurable with c: the
/// Euclidean projection of b onto the ellipsoid |d + c| + |d - c| <= 2.
BlochVector min_D_given_c(const BlochVector& c, const BlochVector& b, const OptimizerConfig& cfg = {});

/// Direction d maximizing b . d (minimizing eps_B^2 = 2 (1 - b . d)) over
/// the same ellipsoid. When the maximizer is not unique (b orthogonal to a
/// sharp c) the centre d = 0 is returned.
BlochVector min_noise_given_c(const BlochVector& c, const BlochVector& b, const OptimizerConfig& cfg = {});

/// Outward normal direction (unnormalized) of the compatibility ellipsoid
/// of c at the surface point d.
BlochVector compat_surface_normal(const BlochVector& c, const BlochVector& d);

/// History of the alternating minimization. pairs[k] = (c_k, d_k) where d_k
/// is optimal given c_k and c_{k+1} is optimal given d_k.
struct IterationTrace {
  std::vector<ApproximatorPair> pairs;
  bool converged = false;
  ApproximatorPair limit;
};

class NotConvergedError : public std::runtime_error {
 public:
  explicit NotConvergedError(IterationTrace trace);
  const IterationTrace& trace() const { return trace_; }

 private:
  IterationTrace trace_;
};

/// Alternately re-optimizes d for b given c, then c for a given d.
///
/// Noise: stops once |delta c| + |delta d| < conv_tol. For theta < pi/2 the
/// iteration ends on a sharp m = c = d; it preserves any component of c0
/// outside span{a, b}. Metric: stops once the error pair moves by less than
/// 10 conv_tol, on a point of the metric boundary.
///
/// Throws NotConvergedError (holding the trace) after max_iter steps.
IterationTrace alternate_minimize(Measure measure, const BlochVector& a, const BlochVector& b,
                                  const BlochVector& c0, const OptimizerConfig& cfg = {});

/// Sines of the angles between (a - c, c - M d) and (b - d, d - M c), with
/// M = c . d. Both vanish for simultaneously stationary boundary pairs.
/// Throws std::domain_error if any of the four vectors is zero.
ErrorPair lagrange_residual(const BlochVector& a, const BlochVector& b, const BlochVector& c,
                            const BlochVector& d);

/// Random compatible pair: uniform in the ball squared, with incompatible
/// draws scaled towards the origin onto the compatibility boundary.
ApproximatorPair sample_compatible_pair(SampleRng& rng);

/// Standard target pair at angle theta: a = x, b = (cos theta, sin theta, 0).
ApproximatorPair standard_targets(double theta);

/// Errors of n random compatible pairs for targets at angle theta. The
/// sequence is fully determined by cfg.seed.
std::vector<ErrorPoint> sample_admissible_region(Measure measure, double theta, int n_samples,
                                                 const OptimizerConfig& cfg = {});

/// Signed distance above the analytic boundary of the given measure:
/// metric_boundary_margin for D, noise_boundary_margin for eps.
double boundary_margin(const ErrorPoint& p, double theta);

struct OracleResult {
  BlochVector d;
  double value = 0.0;  ///< D(d, b) or eps(d, b)
};

/// Brute-force minimization over a spherical grid of the compatibility
/// ellipsoid of c (surface plus seven interior shells). Grids for n and 2n
/// are nested, so the value never gets worse when grid_n doubles.
OracleResult grid_oracle_min(const BlochVector& c, const BlochVector& b, Measure objective, int grid_n);

}  // namespace qmu
