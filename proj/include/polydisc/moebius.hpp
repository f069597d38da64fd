#ifndef POLYDISC_MOEBIUS_HPP
#define POLYDISC_MOEBIUS_HPP

#include <complex>
#include <optional>
#include <string>

#include "polydisc/geometry.hpp"

namespace polydisc {

// Default half-width of the |trace| = 2 band inside which a map is
// classified as parabolic.  Near-parabolic hyperbolic maps inside the
// band classify as parabolic; this is documented behavior.
inline constexpr double kDefaultClassifyTol = 1e-9;

// A point of the extended real line (the boundary of H).
class Boundary {
 public:
  static Boundary infinity() { return Boundary(0.0, true); }
  static Boundary finite(double x) { return Boundary(x, false); }
  bool is_infinite() const { return inf_; }
  double value() const { return v_; }

 private:
  Boundary(double v, bool inf) : v_(v), inf_(inf) {}
  double v_;
  bool inf_;
};

// An automorphism of the upper half-plane, z -> (az+b)/(cz+d) with real
// entries and ad-bc > 0.  Stored normalized: ad-bc = 1, sign chosen so
// that a+d >= 0 (ties broken by a >= 0, then b > 0), which makes
// classification by the trace well defined.
class MoebiusH {
 public:
  MoebiusH(double a, double b, double c, double d);
  static MoebiusH identity() { return MoebiusH(1, 0, 0, 1); }
  static MoebiusH scaling(double m);               // z -> m z, m > 0
  static MoebiusH translation(double beta);        // z -> z + beta
  static MoebiusH rotation_about_i(double theta);  // multiplier exp(-2 i theta)

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  template <typename T>
  std::complex<T> operator()(const std::complex<T>& z) const {
    return (T(a_) * z + T(b_)) / (T(c_) * z + T(d_));
  }
  PointH operator()(const PointH& z) const { return PointH((*this)(z.value())); }

  // Action on the extended real line; evaluation at infinity gives a/c.
  Boundary apply_boundary(const Boundary& x) const;

  // Derivative (az+b)/(cz+d)' = 1/(cz+d)^2 for the normalized matrix.
  Complex derivative(Complex z) const {
    const Complex q = c_ * z + d_;
    return 1.0 / (q * q);
  }

  MoebiusH inverse() const { return MoebiusH(d_, -b_, -c_, a_); }
  double trace() const { return a_ + d_; }
  bool is_identity(double tol = kDefaultClassifyTol) const;

 private:
  double a_, b_, c_, d_;
};

// compose(m1, m2) acts as m1 after m2 (matrix product).
MoebiusH compose(const MoebiusH& m1, const MoebiusH& m2);
MoebiusH iterate(const MoebiusH& m, long n);

// z -> s * m(z) for s > 0 (still an automorphism of H).
MoebiusH scale_by(double s, const MoebiusH& m);
// z -> m(z) + t.
MoebiusH shift_by(double t, const MoebiusH& m);

enum class MoebiusClass { Identity, Elliptic, Parabolic, Hyperbolic };

std::string to_string(MoebiusClass k);

struct MoebiusClassification {
  MoebiusClass kind = MoebiusClass::Identity;

  // Elliptic: interior fixed point and the derivative there (unit modulus).
  std::optional<Complex> fixed_point_interior;
  std::optional<Complex> multiplier;

  // Parabolic: one boundary fixed point and the sign of the conjugated
  // translation z -> z + beta.  Hyperbolic: attracting then repelling
  // boundary fixed points and the classical dilation 1/mu^2 in (0,1),
  // mu > 1 the larger eigenvalue of the normalized matrix.
  std::optional<Boundary> boundary_attracting;
  std::optional<Boundary> boundary_repelling;
  std::optional<double> dilation;
  std::optional<int> translation_sign;
};

MoebiusClassification classify(const MoebiusH& m, double eps_cls = kDefaultClassifyTol);

// log(1/dilation) for hyperbolic maps, 0 otherwise.
double divergence_rate_1d(const MoebiusH& m, double eps_cls = kDefaultClassifyTol);

// g with g(m(z)) = g(z)/lambda, lambda the dilation of m; sends the
// attracting fixed point to infinity and the repelling one to 0.
// Unique up to multiplication by a positive number.
MoebiusH linearizer_hyperbolic(const MoebiusH& m, double eps_cls = kDefaultClassifyTol);

struct AbelConjugator {
  MoebiusH g;
  int sign;  // g(m(z)) = g(z) + sign * k
};

// g with g(m(z)) = g(z) + sign*k for a parabolic m.  The boundary fixed
// point goes to infinity (via z -> -1/(z-x0) when finite), giving a
// translation z -> z + beta; g rescales it by k/|beta| and sign = sign(beta).
AbelConjugator abel_conjugator_parabolic(const MoebiusH& m, int k,
                                         double eps_cls = kDefaultClassifyTol);

// A Moebius map with complex entries taking H biholomorphically onto D.
class MoebiusHtoD {
 public:
  MoebiusHtoD(Complex a, Complex b, Complex c, Complex d, bool validate = true);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex operator()(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }
  PointD operator()(const PointH& z) const { return PointD((*this)(z.value())); }

 private:
  Complex a_, b_, c_, d_;
};

// g(m(z)) for g: H -> D and m in Aut(H) is again H -> D.
MoebiusHtoD compose(const MoebiusHtoD& g, const MoebiusH& m);
// z -> s * g(z) for |s| = 1.
MoebiusHtoD scale_by(Complex s, const MoebiusHtoD& g);

struct SchroederConjugator {
  MoebiusHtoD g;       // g(p) = 0, g(m(z)) = multiplier * g(z)
  Complex multiplier;  // the derivative at the fixed point, |multiplier| = 1
};

SchroederConjugator schroeder_conjugator_elliptic(const MoebiusH& m,
                                                  double eps_cls = kDefaultClassifyTol);

}  // namespace polydisc

#endif
