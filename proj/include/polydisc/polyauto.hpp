#ifndef POLYDISC_POLYAUTO_HPP
#define POLYDISC_POLYAUTO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polydisc/geometry.hpp"
#include "polydisc/moebius.hpp"

namespace polydisc {

// An automorphism of H^q: (tau z)_j = gamma_j(z_{p(j)}), i.e. the
// permutation tells each output coordinate which input it reads.
class PolydiscAuto {
 public:
  PolydiscAuto(std::vector<std::size_t> perm, std::vector<MoebiusH> gammas);
  static PolydiscAuto identity(std::size_t q);

  std::size_t dim() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }  // 0-based
  const std::vector<MoebiusH>& gammas() const { return gammas_; }

  template <typename T>
  std::vector<std::complex<T>> apply_coords(const std::vector<std::complex<T>>& z) const {
    if (z.size() != dim()) throw InputError("PolydiscAuto: dimension mismatch");
    std::vector<std::complex<T>> out(dim());
    for (std::size_t j = 0; j < dim(); ++j) out[j] = gammas_[j](z[perm_[j]]);
    return out;
  }
  PolyPoint operator()(const PolyPoint& z) const { return PolyPoint(apply_coords(z.coords())); }

  PolydiscAuto inverse() const;

 private:
  std::vector<std::size_t> perm_;
  std::vector<MoebiusH> gammas_;
};

PolydiscAuto compose(const PolydiscAuto& t1, const PolydiscAuto& t2);
PolydiscAuto iterate(const PolydiscAuto& t, long n);

// A cycle automorphism of H^k:
// tau(z_1,...,z_k) = (gamma_1(z_2), gamma_2(z_3), ..., gamma_k(z_1)).
class CycleAuto {
 public:
  explicit CycleAuto(std::vector<MoebiusH> gammas);

  std::size_t length() const { return gammas_.size(); }
  const std::vector<MoebiusH>& gammas() const { return gammas_; }

  PolyPoint operator()(const PolyPoint& z) const;
  PolydiscAuto as_auto() const;

 private:
  std::vector<MoebiusH> gammas_;
};

// One block of a cycle decomposition: the ordered original coordinates
// realizing the projection pi_nu, and the cycle automorphism acting there.
struct CycleBlock {
  std::vector<std::size_t> coords;  // 0-based, cycle order, starts at the smallest index
  CycleAuto cycle;
};

struct CycleDecomposition {
  std::size_t q = 0;
  std::vector<CycleBlock> blocks;  // sorted by smallest coordinate index
};

// Blocks are the cycles of the permutation; within each block the
// coordinates follow the permutation so the CycleAuto action formula
// holds; each cycle starts at its smallest index.
CycleDecomposition cycle_decompose(const PolydiscAuto& t);

// Gamma_1 = gamma_1 o gamma_2 o ... o gamma_k and
// Gamma_{j+1} = gamma_j^{-1} o Gamma_j o gamma_j; tau^k acts
// coordinatewise as (Gamma_1, ..., Gamma_k) and all Gamma_j are conjugate.
std::vector<MoebiusH> gamma_products(const CycleAuto& c);

enum class AutoKind { Elliptic, Parabolic, Hyperbolic };
std::string to_string(AutoKind k);

struct CycleClassification {
  AutoKind kind = AutoKind::Elliptic;
  std::size_t length = 1;
  // Hyperbolic: dilation lambda = lambda_{Gamma_1}^{1/k} in (0,1) and
  // divergence rate log(1/lambda); parabolic: dilation 1, rate 0.
  double dilation = 1.0;
  double divergence_rate = 0.0;
  // Elliptic: principal k-th root of Gamma_1'(p); the full multiplier set
  // is this value times the k-th roots of unity.
  std::optional<Complex> multiplier;
  MoebiusClassification gamma1;
};

CycleClassification classify_cycle(const CycleAuto& c, double eps_cls = kDefaultClassifyTol);

struct AutoClassification {
  AutoKind kind = AutoKind::Elliptic;
  double divergence_rate = 0.0;
  double dilation = 1.0;  // exp(-divergence_rate)
  std::vector<CycleClassification> per_cycle;
};

// Divergence rate is the maximum over cycles; the automorphism is
// elliptic iff all cycles are, hyperbolic iff some cycle is (dilation the
// minimum over hyperbolic cycles), parabolic otherwise.
AutoClassification classify_auto(const PolydiscAuto& t, double eps_cls = kDefaultClassifyTol);
AutoClassification classify_decomposition(const CycleDecomposition& dec,
                                          double eps_cls = kDefaultClassifyTol);

// Automorphisms are isometries, so the step at x is just the distance to
// the image: dist_poly(x, tau(x)).
double step_at(const PolydiscAuto& t, const PolyPoint& x);

// Fixed point of an elliptic automorphism, built coordinatewise from the
// Gamma_1 fixed points (nullopt when some cycle is not elliptic).  For a
// degenerate cycle with Gamma_1 = identity the anchor coordinate is i.
std::optional<PolyPoint> fixed_point(const PolydiscAuto& t,
                                     double eps_cls = kDefaultClassifyTol);

}  // namespace polydisc

#endif
