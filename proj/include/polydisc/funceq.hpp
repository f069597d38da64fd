#ifndef POLYDISC_FUNCEQ_HPP
#define POLYDISC_FUNCEQ_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "polydisc/dynamics.hpp"
#include "polydisc/normalform.hpp"

namespace polydisc {

struct FuncTerm {
  std::size_t coord;  // 0-based coordinate index
  MoebiusH g;
};

// V(z) = (1/m) sum_j g_j(z_{coord_j}), a solution of V o tau = (1/lambda) V
// mapping H^q into H.  The active coordinates are exactly those of the
// minimal-dilation hyperbolic cycles.
class ValironFunction {
 public:
  ValironFunction(double lambda, std::vector<FuncTerm> terms, std::size_t ambient_dim);

  double lambda() const { return lambda_; }
  const std::vector<FuncTerm>& terms() const { return terms_; }
  std::size_t ambient_dim() const { return q_; }

  Complex operator()(const PolyPoint& z) const;

  // A point on the conjugated diagonal with V(point) = target exactly:
  // z_j = g_j^{-1}(target) on active coordinates, i elsewhere.
  PolyPoint attain(Complex target) const;

 private:
  double lambda_;
  std::vector<FuncTerm> terms_;
  std::size_t q_;
};

// Theta(z) = (1/k) sum over one parabolic cycle of g_j(z_{coord_j}),
// a solution of Theta o tau = Theta + alpha mapping H^q into H.
class AbelFunction {
 public:
  AbelFunction(int alpha, std::vector<FuncTerm> terms, std::size_t ambient_dim);

  int alpha() const { return alpha_; }
  const std::vector<FuncTerm>& terms() const { return terms_; }
  std::size_t ambient_dim() const { return q_; }

  Complex operator()(const PolyPoint& z) const;
  PolyPoint attain(Complex target) const;

 private:
  int alpha_;
  std::vector<FuncTerm> terms_;
  std::size_t q_;
};

// When several cycles attain the minimal dilation, all of their
// conjugators are averaged with equal weight; any per-cycle convex
// weighting would solve the equation as well.
ValironFunction valiron_for_auto(const PolydiscAuto& t, double eps_cls = kDefaultClassifyTol);
AbelFunction abel_for_auto(const PolydiscAuto& t, double eps_cls = kDefaultClassifyTol);

using ScalarMap = std::function<Complex(const PolyPoint&)>;

// Worst sampled violations of the three characterizing conditions of a
// Valiron function, measured after transporting to the normal-form
// coordinates of tau: 1-homogeneity on the minimal hyperbolic factor,
// invariance under the induced permutation there, and (finite-difference)
// independence of the remaining coordinates.
struct ValironConditionsReport {
  double homogeneity = 0.0;
  double shift_invariance = 0.0;
  double dependence = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

ValironConditionsReport check_valiron_conditions(const ScalarMap& V, const PolydiscAuto& t,
                                                 int samples, std::uint64_t seed,
                                                 double eps_cls = kDefaultClassifyTol);

struct ValironVerification {
  double residual = 0.0;  // max over samples of dist(V(f(z)), V(z)/mu)
  int samples = 0;
  std::uint64_t seed = 0;
  // Companion: any solution forces the divergence rate to be at least
  // log(1/mu); the orbit estimate is subadditive so it bounds c from above.
  double c_estimate = 0.0;
  double c_lower_bound = 0.0;
  bool companion_ok = false;
};

ValironVerification verify_valiron(const ScalarMap& V, const HoloSelfMap& f, double mu,
                                   int samples, std::uint64_t seed, int estimator_horizon = 2000,
                                   double companion_tol = 5e-3);

struct AbelVerification {
  double residual = 0.0;  // max over samples of dist(Theta(f(z)), Theta(z)+alpha)
  int samples = 0;
  std::uint64_t seed = 0;
  // Companion: the step at x is bounded below by dist(Theta(x), Theta(x)+alpha).
  double worst_step_margin = 0.0;  // min over probes of (step estimate - bound)
  bool companion_ok = false;
};

AbelVerification verify_abel(const ScalarMap& Theta, const HoloSelfMap& f, int alpha,
                             int samples, std::uint64_t seed, int estimator_horizon = 200,
                             double companion_tol = 5e-3, int step_probes = 3);

using PolyMap = std::function<PolyPoint(const PolyPoint&)>;

// A candidate semi-model (H^q, ell, tau) for a self-map of H^N: only the
// intertwining identity ell o f = tau o ell is checkable on samples; the
// exhausting-union condition is reported as untestable.
struct SemiModelTriple {
  std::size_t source_dim = 1;  // N
  PolyMap intertwiner;         // ell: H^N -> H^q
  PolydiscAuto base_auto;      // tau
};

struct SemiModelVerification {
  double residual = 0.0;  // max over samples of dist_poly(ell(f(z)), tau(ell(z)))
  int samples = 0;
  std::uint64_t seed = 0;
  std::string union_condition = "not testable from finite samples";
};

SemiModelVerification verify_semimodel(const SemiModelTriple& sm, const HoloSelfMap& f,
                                       int samples, std::uint64_t seed);

}  // namespace polydisc

#endif
