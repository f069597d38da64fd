#include "polydisc/dynamics.hpp"

#include <array>
#include <cmath>

#include "polydisc/sampling.hpp"

namespace polydisc {

namespace {

// Coordinates beyond this magnitude abort the orbit.  Extended precision
// reaches ~1e4932; the guard leaves headroom for one further map step.
constexpr long double kOverflowLimit = 1e4500L;

void check_in_range(const OrbitPoint& z, const char* who) {
  for (const OrbitCoord& c : z) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) ||
        std::abs(c.real()) > kOverflowLimit || c.imag() > kOverflowLimit)
      throw OrbitOverflow(std::string(who) + ": coordinate left the numeric range");
    if (!(c.imag() > 0.0L))
      throw DomainViolation(std::string(who) + ": coordinate left the upper half-plane");
  }
}

double orbit_distance(const OrbitPoint& z, const OrbitPoint& w) {
  long double best = 0.0L;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const long double d = halfplane_distance<long double>(z[j], w[j]);
    if (d > best) best = d;
  }
  return static_cast<double>(best);
}

// Absolute error bound for a computed step distance: |z - w| carries a
// cancellation error of eps * (|z| + |w|), scaled by the same factor the
// distance formula applies.  An orbit collapsing onto a boundary fixed
// point drives this through the roof, which is a property of the
// representation, not of the map.
double orbit_step_noise(const OrbitPoint& z, const OrbitPoint& w) {
  constexpr long double eps = 1.1e-19L;  // 64-bit significand
  long double worst = 0.0L;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const long double s = 2.0L * std::sqrt(z[j].imag() * w[j].imag());
    const long double n = 4.0L * eps * (std::abs(z[j]) + std::abs(w[j]) + 1.0L) / s;
    if (n > worst) worst = n;
  }
  return static_cast<double>(worst);
}

}  // namespace

OrbitPoint to_orbit_point(const PolyPoint& x) {
  OrbitPoint out(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) out[j] = OrbitCoord(x[j].real(), x[j].imag());
  return out;
}

PolyPoint to_poly_point(const OrbitPoint& x) {
  std::vector<Complex> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j].real()) > 1e300L || x[j].imag() > 1e300L)
      throw OrbitOverflow("to_poly_point: coordinate exceeds double range");
    out[j] = Complex(static_cast<double>(x[j].real()), static_cast<double>(x[j].imag()));
  }
  return PolyPoint(std::move(out));
}

HoloSelfMap::HoloSelfMap(std::size_t dim, Eval eval, std::string description,
                         int check_samples, std::uint64_t check_seed)
    : dim_(dim), eval_(std::move(eval)), desc_(std::move(description)) {
  if (dim_ == 0) throw InputError("HoloSelfMap: dimension must be at least 1");
  Rng rng(check_seed);
  for (int s = 0; s < check_samples; ++s) {
    OrbitPoint z(dim_);
    for (auto& zj : z) {
      const Complex c = rng.halfplane_point();
      zj = OrbitCoord(c.real(), c.imag());
    }
    OrbitPoint w = eval_(z);
    if (w.size() != dim_) throw InputError("HoloSelfMap: map changed dimension");
    check_in_range(w, "HoloSelfMap registration");
  }
}

OrbitPoint HoloSelfMap::operator()(const OrbitPoint& z) const {
  if (z.size() != dim_) throw InputError("HoloSelfMap: dimension mismatch");
  OrbitPoint w = eval_(z);
  check_in_range(w, "HoloSelfMap");
  return w;
}

HoloSelfMap HoloSelfMap::from_auto(const PolydiscAuto& t) {
  return HoloSelfMap(
      t.dim(), [t](const OrbitPoint& z) { return t.apply_coords<long double>(z); },
      "polydisc automorphism");
}

HoloSelfMap HoloSelfMap::from_lfts(std::vector<std::size_t> perm,
                                   std::vector<std::array<Complex, 4>> coeffs,
                                   std::string description) {
  if (perm.size() != coeffs.size() || perm.empty())
    throw InputError("from_lfts: need one coefficient tuple per coordinate");
  for (std::size_t p : perm)
    if (p >= perm.size()) throw InputError("from_lfts: bad coordinate index");
  auto eval = [perm, coeffs](const OrbitPoint& z) {
    OrbitPoint out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
      const auto& m = coeffs[j];
      const OrbitCoord a(m[0].real(), m[0].imag()), b(m[1].real(), m[1].imag());
      const OrbitCoord c(m[2].real(), m[2].imag()), d(m[3].real(), m[3].imag());
      out[j] = (a * z[perm[j]] + b) / (c * z[perm[j]] + d);
    }
    return out;
  };
  return HoloSelfMap(perm.size(), std::move(eval), std::move(description));
}

std::vector<OrbitPoint> orbit(const HoloSelfMap& f, const PolyPoint& x, int n) {
  if (n < 0) throw InputError("orbit: negative length");
  std::vector<OrbitPoint> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  pts.push_back(to_orbit_point(x));
  for (int i = 0; i < n; ++i) pts.push_back(f(pts.back()));
  return pts;
}

namespace {

struct OrbitPass {
  OrbitStats stats;
  OrbitPoint at_half;  // f^{m/2}(x)
  OrbitPoint at_end;   // f^m(x)
};

OrbitPass run_orbit(const HoloSelfMap& f, const PolyPoint& x, int m) {
  if (m < 1) throw InputError("estimate: horizon must be at least 1");
  OrbitPass pass{OrbitStats(x), OrbitPoint{}, OrbitPoint{}};
  OrbitStats& st = pass.stats;
  st.horizon = m;
  st.dist_to_start.resize(static_cast<std::size_t>(m) + 1);
  st.step_seq.resize(static_cast<std::size_t>(m) + 1);

  const OrbitPoint start = to_orbit_point(x);
  const int half = m / 2;
  std::vector<double> step_noise(static_cast<std::size_t>(m) + 1);
  OrbitPoint cur = start;
  OrbitPoint next = f(cur);
  for (int n = 0; n <= m; ++n) {
    st.dist_to_start[static_cast<std::size_t>(n)] = orbit_distance(cur, start);
    st.step_seq[static_cast<std::size_t>(n)] = orbit_distance(cur, next);
    step_noise[static_cast<std::size_t>(n)] = orbit_step_noise(cur, next);
    if (n == half) pass.at_half = cur;
    if (n == m) pass.at_end = cur;
    if (n < m) {
      cur = std::move(next);
      next = f(cur);
    }
  }
  st.c_estimate = st.dist_to_start.back() / m;
  st.s_estimate = st.step_seq.back();
  if (m > half)
    st.tail_slope = (st.dist_to_start[static_cast<std::size_t>(m)] -
                     st.dist_to_start[static_cast<std::size_t>(half)]) /
                    (m - half);
  for (std::size_t n = 1; n < st.step_seq.size(); ++n) {
    const double slack = 1e-9 + step_noise[n] + step_noise[n - 1];
    if (st.step_seq[n] > st.step_seq[n - 1] + slack) st.step_monotone = false;
  }
  return pass;
}

OrbitStats orbit_stats(const HoloSelfMap& f, const PolyPoint& x, int m) {
  return run_orbit(f, x, m).stats;
}

}  // namespace

OrbitStats estimate_divergence_rate(const HoloSelfMap& f, const PolyPoint& x, int m) {
  return orbit_stats(f, x, m);
}

OrbitStats estimate_step(const HoloSelfMap& f, const PolyPoint& x, int m) {
  return orbit_stats(f, x, m);
}

namespace {

PolyPoint default_base(std::size_t q) {
  return PolyPoint(std::vector<Complex>(q, Complex(0, 1)));
}

// Damped iteration z -> (z + f(z))/2.  It has the same fixed points as f,
// and when f has one it is a non-automorphism elliptic self-map, so the
// iteration converges to a fixed point of f.
struct DampedSearch {
  bool converged = false;
  OrbitPoint point;
};

DampedSearch damped_fixed_point_search(const HoloSelfMap& f, const OrbitPoint& start,
                                       int iterations) {
  DampedSearch out;
  OrbitPoint z = start;
  OrbitPoint tail_mark;
  const int tail_window = std::max(iterations / 2, 1);
  for (int i = 0; i < iterations; ++i) {
    OrbitPoint fz;
    try {
      fz = f(z);
    } catch (const OrbitOverflow&) {
      return out;
    } catch (const DomainViolation&) {
      return out;
    }
    OrbitPoint mid(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) mid[j] = (z[j] + fz[j]) / 2.0L;
    const double move = orbit_distance(z, mid);
    z = std::move(mid);
    if (i == tail_window) tail_mark = z;
    if (move < 1e-12) break;
  }
  // Reject slow drifts toward the boundary: the late iterates must stay together.
  if (!tail_mark.empty() && orbit_distance(tail_mark, z) > 0.05) return out;
  out.converged = true;
  out.point = std::move(z);
  return out;
}

}  // namespace

SelfMapClassification classify_selfmap(const HoloSelfMap& f, const SelfMapClassifyOptions& opts) {
  const PolyPoint base = opts.base ? *opts.base : default_base(f.dim());
  OrbitPass pass = run_orbit(f, base, opts.m);
  SelfMapClassification out(std::move(pass.stats));
  out.eps_c = opts.eps_c;
  out.eps_fix = opts.eps_fix;

  if (out.stats.c_estimate > opts.eps_c) {
    out.kind = AutoKind::Hyperbolic;
    out.notes.push_back("divergence-rate estimate exceeds eps_c");
    return out;
  }

  // Orbit already settled at an interior point?
  if (out.stats.s_estimate < opts.eps_fix &&
      orbit_distance(pass.at_half, pass.at_end) < opts.eps_fix * 10) {
    out.kind = AutoKind::Elliptic;
    out.fixed_point = to_poly_point(pass.at_end);
    out.notes.push_back("orbit is Cauchy; limit reported as fixed point");
    return out;
  }

  const DampedSearch ds =
      damped_fixed_point_search(f, to_orbit_point(base), opts.damped_iterations);
  if (ds.converged) {
    const double resid = orbit_distance(ds.point, f(ds.point));
    if (resid < opts.eps_fix) {
      out.kind = AutoKind::Elliptic;
      out.fixed_point = to_poly_point(ds.point);
      out.notes.push_back("damped iteration converged to a fixed point");
      return out;
    }
  }

  out.kind = AutoKind::Parabolic;
  out.notes.push_back("no fixed point found and divergence-rate estimate below eps_c");
  out.notes.push_back("parabolic vs hyperbolic is undecidable at finite precision near c = 0");
  return out;
}

HoloSelfMap builtin_intro_example(Complex lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw InputError("builtin_intro_example: |lambda| must be 1");
  if (std::abs(lambda - Complex(1, 0)) < 1e-12)
    throw InputError("builtin_intro_example: lambda = 1 is excluded");
  const OrbitCoord lam(lambda.real(), lambda.imag());
  auto eval = [lam](const OrbitPoint& z) {
    OrbitPoint out(2);
    const OrbitCoord w1 = cayley_value<long double>(z[0]);
    const OrbitCoord w2 = cayley_value<long double>(z[1]);
    out[0] = cayley_inv_value<long double>(lam * w1);
    out[1] = cayley_inv_value<long double>((1.0L + w2) / (3.0L - w2));
    return out;
  };
  return HoloSelfMap(2, std::move(eval), "bidisc rotation x parabolic zero-step factor");
}

HoloSelfMap builtin_remark5_example(double alpha) {
  if (!(alpha > 0.0)) throw InputError("builtin_remark5_example: alpha must be positive");
  const long double mult = std::exp(static_cast<long double>(alpha) *
                                    3.14159265358979323846264338327950288L);
  auto eval = [mult](const OrbitPoint& z) {
    OrbitPoint out(2);
    out[0] = mult * z[0];
    // Principal log: imaginary part in (0, pi) on the upper half-plane.
    const OrbitCoord rot = std::exp(OrbitCoord(0.0L, 1.0L) * std::log(z[0]));
    const OrbitCoord w = cayley_value<long double>(z[1]);
    out[1] = cayley_inv_value<long double>((2.0L + w) / 3.0L * rot);
    return out;
  };
  return HoloSelfMap(2, std::move(eval), "hyperbolic skew product on H x D");
}

}  // namespace polydisc
