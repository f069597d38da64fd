#ifndef POLYDISC_NORMALFORM_HPP
#define POLYDISC_NORMALFORM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "polydisc/polyauto.hpp"

namespace polydisc {

// Canonical model data for a cycle automorphism tau of H^k: a
// per-coordinate conjugator g with g o tau = L o g, where L is
//   (1/lambda) * shift           (hyperbolic, lambda in (0,1)),
//   shift + sign*(1,...,1)       (parabolic),
//   lambda * shift on D^k        (elliptic, |lambda| = 1),
// and "shift" is the cyclic coordinate shift (z_1,...,z_k) -> (z_2,...,z_1).
struct NormalForm {
  AutoKind kind = AutoKind::Elliptic;
  std::size_t k = 1;
  double lambda = 1.0;                   // hyperbolic dilation
  Complex multiplier{1.0, 0.0};          // elliptic: principal k-th root of Gamma_1'(p)
  int sign = 0;                          // parabolic: +-1
  std::vector<MoebiusH> g_half;          // conjugators, hyperbolic/parabolic
  std::vector<MoebiusHtoD> g_disc;       // conjugators, elliptic

  // The model L applied to a tuple (in H^k for hyperbolic/parabolic, in
  // D^k for elliptic).
  std::vector<Complex> apply_model(const std::vector<Complex>& z) const;
  // The conjugator g applied coordinatewise.
  std::vector<Complex> apply_conjugator(const std::vector<Complex>& z) const;
};

// g_1 solves the one-variable functional equation for Gamma_1 and the
// remaining conjugators follow the recurrence
// g_{j+1} = lambda (g_j o gamma_j)   (hyperbolic),
// g_{j+1} = (g_j o gamma_j) - sign   (parabolic),
// g_{j+1} = lambda^{-1} (g_j o gamma_j)  (elliptic).
NormalForm normal_form_cycle(const CycleAuto& c, double eps_cls = kDefaultClassifyTol);

// Max over sampled points of the distance between g(tau(z)) and L(g(z)):
// dist_poly on H^k for hyperbolic/parabolic, max coordinatewise disc
// distance for elliptic.
double verify_conjugacy(const NormalForm& nf, const CycleAuto& c, int samples,
                        std::uint64_t seed);

struct HyperbolicSplit {
  std::size_t m = 0;                 // number of coordinates of minimal dilation
  std::vector<std::size_t> reorder;  // 0-based original coordinates, minimal cycles first
};

struct AutoNormalForm {
  CycleDecomposition decomposition;
  std::vector<NormalForm> per_cycle;   // one per block
  AutoClassification classification;
  std::optional<HyperbolicSplit> split;  // present iff the automorphism is hyperbolic
};

AutoNormalForm normal_form_auto(const PolydiscAuto& t, double eps_cls = kDefaultClassifyTol);

}  // namespace polydisc

#endif
