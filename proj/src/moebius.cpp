#include "polydisc/moebius.hpp"

#include <cmath>

#include "polydisc/errors.hpp"

namespace polydisc {

MoebiusH::MoebiusH(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  const double det = a_ * d_ - b_ * c_;
  if (!(det > 0.0) || !std::isfinite(det))
    throw InputError("MoebiusH: determinant must be positive");
  const double s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
  const double tr = a_ + d_;
  bool flip = tr < 0.0;
  if (tr == 0.0) flip = a_ < 0.0 || (a_ == 0.0 && b_ < 0.0);
  if (flip) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

MoebiusH MoebiusH::scaling(double m) {
  if (!(m > 0.0)) throw InputError("MoebiusH::scaling: factor must be positive");
  return MoebiusH(m, 0, 0, 1);
}

MoebiusH MoebiusH::translation(double beta) { return MoebiusH(1, beta, 0, 1); }

MoebiusH MoebiusH::rotation_about_i(double theta) {
  return MoebiusH(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
}

Boundary MoebiusH::apply_boundary(const Boundary& x) const {
  if (x.is_infinite()) {
    if (c_ == 0.0) return Boundary::infinity();
    return Boundary::finite(a_ / c_);
  }
  const double denom = c_ * x.value() + d_;
  if (denom == 0.0) return Boundary::infinity();
  return Boundary::finite((a_ * x.value() + b_) / denom);
}

bool MoebiusH::is_identity(double tol) const {
  return std::abs(a_ - 1.0) <= tol && std::abs(d_ - 1.0) <= tol && std::abs(b_) <= tol &&
         std::abs(c_) <= tol;
}

MoebiusH compose(const MoebiusH& m1, const MoebiusH& m2) {
  return MoebiusH(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                  m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d());
}

MoebiusH iterate(const MoebiusH& m, long n) {
  MoebiusH base = n < 0 ? m.inverse() : m;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  MoebiusH acc = MoebiusH::identity();
  while (e > 0) {
    if (e & 1UL) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1UL;
  }
  return acc;
}

MoebiusH scale_by(double s, const MoebiusH& m) {
  if (!(s > 0.0)) throw InputError("scale_by: factor must be positive");
  return MoebiusH(s * m.a(), s * m.b(), m.c(), m.d());
}

MoebiusH shift_by(double t, const MoebiusH& m) {
  return MoebiusH(m.a() + t * m.c(), m.b() + t * m.d(), m.c(), m.d());
}

std::string to_string(MoebiusClass k) {
  switch (k) {
    case MoebiusClass::Identity: return "identity";
    case MoebiusClass::Elliptic: return "elliptic";
    case MoebiusClass::Parabolic: return "parabolic";
    case MoebiusClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

namespace {

// Fixed points solve c z^2 + (d-a) z - b = 0.  For a parabolic map the
// root is double; for c = 0 the fixed point is at infinity.
Boundary parabolic_fixed_point(const MoebiusH& m) {
  if (m.c() == 0.0) return Boundary::infinity();
  return Boundary::finite((m.a() - m.d()) / (2.0 * m.c()));
}

}  // namespace

MoebiusClassification classify(const MoebiusH& m, double eps_cls) {
  MoebiusClassification out;
  if (m.is_identity(eps_cls)) {
    out.kind = MoebiusClass::Identity;
    return out;
  }
  const double tr = m.trace();  // >= 0 after normalization
  if (tr < 2.0 - eps_cls) {
    out.kind = MoebiusClass::Elliptic;
    // Root of c z^2 + (d-a) z - b with positive imaginary part.
    const double im = std::sqrt(4.0 - tr * tr) / (2.0 * std::abs(m.c()));
    const double re = (m.a() - m.d()) / (2.0 * m.c());
    const Complex p(re, im);
    out.fixed_point_interior = p;
    Complex mult = m.derivative(p);
    mult /= std::abs(mult);  // unit modulus up to rounding
    out.multiplier = mult;
  } else if (tr <= 2.0 + eps_cls) {
    out.kind = MoebiusClass::Parabolic;
    const Boundary x0 = parabolic_fixed_point(m);
    out.boundary_attracting = x0;
    // Conjugating the fixed point to infinity by -1/(z-x0) (identity when
    // x0 is already infinite) yields z -> z + beta with beta = -c, resp.
    // beta = b when c = 0 and a = d = 1.
    const double beta = x0.is_infinite() ? m.b() : -m.c();
    out.translation_sign = beta >= 0.0 ? 1 : -1;
  } else {
    out.kind = MoebiusClass::Hyperbolic;
    const double mu = (tr + std::sqrt(tr * tr - 4.0)) / 2.0;  // > 1
    out.dilation = 1.0 / (mu * mu);
    if (m.c() == 0.0) {
      // Affine map z -> a^2 z + ab; infinity attracts iff a > 1.
      const double xf = m.b() / (m.d() - m.a());
      if (std::abs(m.a()) > 1.0) {
        out.boundary_attracting = Boundary::infinity();
        out.boundary_repelling = Boundary::finite(xf);
      } else {
        out.boundary_attracting = Boundary::finite(xf);
        out.boundary_repelling = Boundary::infinity();
      }
    } else {
      const double disc = std::sqrt(tr * tr - 4.0);
      const double xp = (m.a() - m.d() + disc) / (2.0 * m.c());
      const double xm = (m.a() - m.d() - disc) / (2.0 * m.c());
      // c x + d equals (tr +- disc)/2 at the two roots; the derivative
      // 1/(cx+d)^2 is < 1 exactly where |cx+d| = mu, i.e. at xp.
      out.boundary_attracting = Boundary::finite(xp);
      out.boundary_repelling = Boundary::finite(xm);
    }
  }
  return out;
}

double divergence_rate_1d(const MoebiusH& m, double eps_cls) {
  const auto cls = classify(m, eps_cls);
  if (cls.kind != MoebiusClass::Hyperbolic) return 0.0;
  return std::log(1.0 / *cls.dilation);
}

MoebiusH linearizer_hyperbolic(const MoebiusH& m, double eps_cls) {
  const auto cls = classify(m, eps_cls);
  if (cls.kind != MoebiusClass::Hyperbolic)
    throw KindError("linearizer_hyperbolic: map is " + to_string(cls.kind) +
                    ", not hyperbolic");
  const Boundary xa = *cls.boundary_attracting;
  const Boundary xr = *cls.boundary_repelling;
  if (xa.is_infinite()) return MoebiusH::translation(-xr.value());
  if (xr.is_infinite()) return MoebiusH(0, -1, 1, -xa.value());
  // s (z - xr)/(z - xa) with s = sign(xr - xa) so the determinant is positive.
  const double s = xr.value() > xa.value() ? 1.0 : -1.0;
  return MoebiusH(s, -s * xr.value(), 1, -xa.value());
}

AbelConjugator abel_conjugator_parabolic(const MoebiusH& m, int k, double eps_cls) {
  if (k < 1) throw InputError("abel_conjugator_parabolic: k must be positive");
  const auto cls = classify(m, eps_cls);
  if (cls.kind != MoebiusClass::Parabolic)
    throw KindError("abel_conjugator_parabolic: map is " + to_string(cls.kind) +
                    ", not parabolic");
  const Boundary x0 = *cls.boundary_attracting;
  MoebiusH h = MoebiusH::identity();
  double beta = m.b();
  if (!x0.is_infinite()) {
    h = MoebiusH(0, -1, 1, -x0.value());
    beta = -m.c();
  }
  return AbelConjugator{scale_by(static_cast<double>(k) / std::abs(beta), h),
                        beta >= 0.0 ? 1 : -1};
}

MoebiusHtoD::MoebiusHtoD(Complex a, Complex b, Complex c, Complex d, bool validate)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!validate) return;
  const Complex interior[] = {{0, 1}, {0, 2}, {1, 1}, {-0.7, 0.4}, {2.3, 0.1}};
  for (const Complex& z : interior)
    if (!(std::abs((*this)(z)) < 1.0 + 1e-9))
      throw InputError("MoebiusHtoD: does not map the half-plane into the disc");
  const double reals[] = {0.0, 1.0, -1.0, 7.0, -4.5};
  for (double x : reals) {
    const Complex w = (*this)(Complex(x, 0.0));
    if (std::abs(std::abs(w) - 1.0) > 1e-6)
      throw InputError("MoebiusHtoD: does not take the boundary to the unit circle");
  }
  if (c_ != Complex(0, 0) && std::abs(std::abs(a_ / c_) - 1.0) > 1e-6)
    throw InputError("MoebiusHtoD: does not take the boundary to the unit circle");
}

MoebiusHtoD compose(const MoebiusHtoD& g, const MoebiusH& m) {
  return MoebiusHtoD(g.a() * m.a() + g.b() * m.c(), g.a() * m.b() + g.b() * m.d(),
                     g.c() * m.a() + g.d() * m.c(), g.c() * m.b() + g.d() * m.d(),
                     /*validate=*/false);
}

MoebiusHtoD scale_by(Complex s, const MoebiusHtoD& g) {
  return MoebiusHtoD(s * g.a(), s * g.b(), g.c(), g.d(), /*validate=*/false);
}

SchroederConjugator schroeder_conjugator_elliptic(const MoebiusH& m, double eps_cls) {
  const auto cls = classify(m, eps_cls);
  if (cls.kind != MoebiusClass::Elliptic)
    throw KindError("schroeder_conjugator_elliptic: map is " + to_string(cls.kind) +
                    ", not elliptic");
  const Complex p = *cls.fixed_point_interior;
  // (z-p)/(z-conj(p)) sends p to 0 and conjugates m to the rotation by the
  // multiplier around the origin.
  MoebiusHtoD g(1, -p, 1, -std::conj(p), /*validate=*/false);
  return SchroederConjugator{g, *cls.multiplier};
}

}  // namespace polydisc
