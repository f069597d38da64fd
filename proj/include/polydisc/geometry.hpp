#ifndef POLYDISC_GEOMETRY_HPP
#define POLYDISC_GEOMETRY_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "polydisc/errors.hpp"

namespace polydisc {

using Complex = std::complex<double>;

// How close to the boundary a point may be before it is flagged.  Flagged
// points are still accepted; distances involving them can lose precision.
inline constexpr double kBoundaryFlagTol = 1e-12;

// A point of the upper half-plane, Im > 0.
class PointH {
 public:
  explicit PointH(Complex value) : v_(value) {
    if (!(v_.imag() > 0.0) || !std::isfinite(v_.real()) || !std::isfinite(v_.imag()))
      throw InputError("PointH: imaginary part must be strictly positive and finite");
  }
  Complex value() const { return v_; }
  bool near_boundary() const { return v_.imag() <= kBoundaryFlagTol; }

 private:
  Complex v_;
};

// A point of the unit disc, |z| < 1.
class PointD {
 public:
  explicit PointD(Complex value) : v_(value) {
    if (!(std::abs(v_) < 1.0)) throw InputError("PointD: modulus must be strictly less than 1");
  }
  Complex value() const { return v_; }
  bool near_boundary() const { return std::abs(v_) >= 1.0 - kBoundaryFlagTol; }

 private:
  Complex v_;
};

// A point of the poly-halfplane H^q, q >= 1.
class PolyPoint {
 public:
  explicit PolyPoint(std::vector<Complex> coords) : z_(std::move(coords)) {
    if (z_.empty()) throw InputError("PolyPoint: dimension must be at least 1");
    for (const auto& c : z_)
      if (!(c.imag() > 0.0) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InputError("PolyPoint: every coordinate must lie in the upper half-plane");
  }
  std::size_t dim() const { return z_.size(); }
  const std::vector<Complex>& coords() const { return z_; }
  Complex operator[](std::size_t j) const { return z_[j]; }

 private:
  std::vector<Complex> z_;
};

// Core distance kernel, usable at double or extended precision (long
// orbits of hyperbolic maps overflow double range well before the
// distances themselves become large).
//
// For z,w in H the formula log((|z-conj(w)|+|z-w|)/(|z-conj(w)|-|z-w|))
// equals 2*asinh(|z-w| / (2*sqrt(Im z * Im w))), which avoids the
// cancellation in the denominator when z is close to w.
template <typename T>
T halfplane_distance(const std::complex<T>& z, const std::complex<T>& w) {
  const T s = T(2) * std::sqrt(z.imag() * w.imag());
  return T(2) * std::asinh(std::abs(z - w) / s);
}

// Distance normalization: k(0, r) on the disc is log((1+r)/(1-r))
// (curvature -1).  This is the normalization under which the dilation of
// a cycle automorphism and exp(-divergence rate) agree.
inline double dist_halfplane(const PointH& z, const PointH& w) {
  return halfplane_distance<double>(z.value(), w.value());
}

inline double dist_disc(const PointD& z, const PointD& w) {
  const double rho =
      std::abs(z.value() - w.value()) / std::abs(1.0 - std::conj(z.value()) * w.value());
  return 2.0 * std::atanh(rho);
}

inline double dist_poly(const PolyPoint& z, const PolyPoint& w) {
  if (z.dim() != w.dim()) throw InputError("dist_poly: dimension mismatch");
  double best = 0.0;
  for (std::size_t j = 0; j < z.dim(); ++j) {
    const double d = halfplane_distance<double>(z[j], w[j]);
    if (d > best) best = d;
  }
  return best;
}

// z -> (z-i)/(z+i), the standard biholomorphism H -> D, and its inverse.
template <typename T>
std::complex<T> cayley_value(const std::complex<T>& z) {
  const std::complex<T> i(T(0), T(1));
  return (z - i) / (z + i);
}

template <typename T>
std::complex<T> cayley_inv_value(const std::complex<T>& w) {
  const std::complex<T> i(T(0), T(1));
  return i * (T(1) + w) / (T(1) - w);
}

inline PointD cayley(const PointH& z) { return PointD(cayley_value<double>(z.value())); }
inline PointH cayley_inv(const PointD& w) { return PointH(cayley_inv_value<double>(w.value())); }

}  // namespace polydisc

#endif
