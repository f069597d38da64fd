#ifndef POLYDISC_DYNAMICS_HPP
#define POLYDISC_DYNAMICS_HPP

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polydisc/polyauto.hpp"

namespace polydisc {

// Orbit coordinates are kept at extended precision: hyperbolic orbits
// grow like exp(c*m), which leaves double range long before the
// distances themselves (which grow like c*m) become large.
using OrbitCoord = std::complex<long double>;
using OrbitPoint = std::vector<OrbitCoord>;

OrbitPoint to_orbit_point(const PolyPoint& x);
PolyPoint to_poly_point(const OrbitPoint& x);  // throws if out of double range

// A black-box holomorphic self-map of H^q.  Holomorphy is the caller's
// contract; construction checks only that sample points stay in range.
class HoloSelfMap {
 public:
  using Eval = std::function<OrbitPoint(const OrbitPoint&)>;

  HoloSelfMap(std::size_t dim, Eval eval, std::string description = "",
              int check_samples = 8, std::uint64_t check_seed = 0);

  std::size_t dim() const { return dim_; }
  const std::string& description() const { return desc_; }

  // One application, with range validation of the result.
  OrbitPoint operator()(const OrbitPoint& z) const;
  PolyPoint operator()(const PolyPoint& z) const { return to_poly_point((*this)(to_orbit_point(z))); }

  static HoloSelfMap from_auto(const PolydiscAuto& t);
  // Component-wise linear fractional maps z_j -> lft_j(z_{perm(j)}) with
  // complex coefficients; each component must be a self-map of H
  // (range-checked, not required to be surjective).
  static HoloSelfMap from_lfts(std::vector<std::size_t> perm,
                               std::vector<std::array<Complex, 4>> coeffs,
                               std::string description = "");

 private:
  std::size_t dim_;
  Eval eval_;
  std::string desc_;
};

// [x, f(x), ..., f^n(x)]; throws OrbitOverflow if a coordinate leaves
// the numeric range and DomainViolation if it leaves the half-plane.
std::vector<OrbitPoint> orbit(const HoloSelfMap& f, const PolyPoint& x, int n);

struct OrbitStats {
  explicit OrbitStats(PolyPoint base_point) : base(std::move(base_point)) {}

  PolyPoint base;
  int horizon = 0;
  // dist_to_start[n] = k(f^n(x), x) and step_seq[n] = k(f^n(x), f^{n+1}(x))
  // for n = 0..m.
  std::vector<double> dist_to_start;
  std::vector<double> step_seq;
  double c_estimate = 0.0;   // dist_to_start[m] / m
  double s_estimate = 0.0;   // step_seq[m]
  double tail_slope = 0.0;   // (d[m]-d[m/2]) / (m - m/2), a convergence diagnostic
  bool step_monotone = true; // step_seq non-increasing up to 1e-9
};

// The divergence-rate estimate is the plain m-th quotient; the tail slope
// is reported as a diagnostic, not folded into the estimate.
OrbitStats estimate_divergence_rate(const HoloSelfMap& f, const PolyPoint& x, int m);
OrbitStats estimate_step(const HoloSelfMap& f, const PolyPoint& x, int m);

struct SelfMapClassifyOptions {
  std::optional<PolyPoint> base;  // default (i, ..., i)
  int m = 2000;
  double eps_c = 5e-3;
  double eps_fix = 1e-6;
  int damped_iterations = 2000;
};

struct SelfMapClassification {
  explicit SelfMapClassification(OrbitStats orbit_stats) : stats(std::move(orbit_stats)) {}

  AutoKind kind = AutoKind::Elliptic;
  OrbitStats stats;
  std::optional<PolyPoint> fixed_point;
  double eps_c = 0.0;
  double eps_fix = 0.0;
  bool heuristic = true;  // always; finite precision cannot separate c=0 from c=0+
  std::vector<std::string> notes;
};

// Heuristic: hyperbolic when the estimated divergence rate clears eps_c;
// elliptic when the orbit settles at an interior point or the damped
// iteration z -> (z + f(z))/2 converges to a fixed point; else parabolic.
SelfMapClassification classify_selfmap(const HoloSelfMap& f,
                                       const SelfMapClassifyOptions& opts = {});

// The fixed-point-free self-map of the bidisc whose iterates do not
// converge: (z, w) -> (lambda z, (1+w)/(3-w)) with |lambda| = 1,
// lambda != 1, conjugated coordinatewise to H^2 by the Cayley transform.
HoloSelfMap builtin_intro_example(Complex lambda);

// The hyperbolic skew product on H x D,
// (z, w) -> (exp(alpha pi) z, (2+w)/3 * exp(i log z)), with the principal
// log branch (imaginary part in (0, pi) on H); second slot conjugated to
// H by the Cayley transform.  alpha > 0; the source takes alpha
// irrational, which floating point cannot represent exactly.
HoloSelfMap builtin_remark5_example(double alpha);

}  // namespace polydisc

#endif
