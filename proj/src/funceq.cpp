#include "polydisc/funceq.hpp"

#include <algorithm>
#include <cmath>

#include "polydisc/sampling.hpp"

namespace polydisc {

namespace {

Complex mean_of_terms(const std::vector<FuncTerm>& terms, const PolyPoint& z) {
  Complex sum(0, 0);
  for (const auto& term : terms) {
    if (term.coord >= z.dim()) throw InputError("functional term: coordinate out of range");
    sum += term.g(z[term.coord]);
  }
  return sum / static_cast<double>(terms.size());
}

PolyPoint attain_on_diagonal(const std::vector<FuncTerm>& terms, std::size_t q, Complex target) {
  if (!(target.imag() > 0.0)) throw InputError("attain: target must lie in the half-plane");
  std::vector<Complex> z(q, Complex(0, 1));
  for (const auto& term : terms) z[term.coord] = term.g.inverse()(target);
  return PolyPoint(std::move(z));
}

PolyPoint sample_poly(Rng& rng, std::size_t q) {
  std::vector<Complex> z(q);
  for (auto& zj : z) zj = rng.halfplane_point();
  return PolyPoint(std::move(z));
}

Complex eval_into_halfplane(const ScalarMap& V, const PolyPoint& z, const char* who) {
  const Complex v = V(z);
  if (!(v.imag() > 0.0))
    throw DomainViolation(std::string(who) + ": function value left the upper half-plane");
  return v;
}

}  // namespace

ValironFunction::ValironFunction(double lambda, std::vector<FuncTerm> terms,
                                 std::size_t ambient_dim)
    : lambda_(lambda), terms_(std::move(terms)), q_(ambient_dim) {
  if (terms_.empty()) throw InputError("ValironFunction: needs at least one term");
  if (!(lambda_ > 0.0 && lambda_ < 1.0))
    throw InputError("ValironFunction: dilation must lie in (0,1)");
}

Complex ValironFunction::operator()(const PolyPoint& z) const { return mean_of_terms(terms_, z); }

PolyPoint ValironFunction::attain(Complex target) const {
  return attain_on_diagonal(terms_, q_, target);
}

AbelFunction::AbelFunction(int alpha, std::vector<FuncTerm> terms, std::size_t ambient_dim)
    : alpha_(alpha), terms_(std::move(terms)), q_(ambient_dim) {
  if (terms_.empty()) throw InputError("AbelFunction: needs at least one term");
  if (alpha_ != 1 && alpha_ != -1) throw InputError("AbelFunction: alpha must be +-1");
}

Complex AbelFunction::operator()(const PolyPoint& z) const { return mean_of_terms(terms_, z); }

PolyPoint AbelFunction::attain(Complex target) const {
  return attain_on_diagonal(terms_, q_, target);
}

ValironFunction valiron_for_auto(const PolydiscAuto& t, double eps_cls) {
  const AutoNormalForm nf = normal_form_auto(t, eps_cls);
  if (nf.classification.kind != AutoKind::Hyperbolic)
    throw KindError("valiron_for_auto: automorphism is " +
                    to_string(nf.classification.kind) +
                    "; a Valiron solution into H forces hyperbolicity");
  const double lambda_min = nf.classification.dilation;
  const double tie_tol = 1e-9 * lambda_min;
  std::vector<FuncTerm> terms;
  for (std::size_t b = 0; b < nf.decomposition.blocks.size(); ++b) {
    const auto& cc = nf.classification.per_cycle[b];
    if (cc.kind != AutoKind::Hyperbolic || cc.dilation > lambda_min + tie_tol) continue;
    const auto& coords = nf.decomposition.blocks[b].coords;
    const auto& cycle_nf = nf.per_cycle[b];
    for (std::size_t j = 0; j < coords.size(); ++j)
      terms.push_back(FuncTerm{coords[j], cycle_nf.g_half[j]});
  }
  return ValironFunction(lambda_min, std::move(terms), t.dim());
}

AbelFunction abel_for_auto(const PolydiscAuto& t, double eps_cls) {
  const AutoNormalForm nf = normal_form_auto(t, eps_cls);
  if (nf.classification.kind != AutoKind::Parabolic)
    throw KindError("abel_for_auto: automorphism is " + to_string(nf.classification.kind) +
                    "; an Abel solution into H forces a parabolic map of non-zero step");
  // The parabolic cycle with the smallest anchor index.
  for (std::size_t b = 0; b < nf.decomposition.blocks.size(); ++b) {
    if (nf.classification.per_cycle[b].kind != AutoKind::Parabolic) continue;
    const auto& coords = nf.decomposition.blocks[b].coords;
    const auto& cycle_nf = nf.per_cycle[b];
    std::vector<FuncTerm> terms;
    for (std::size_t j = 0; j < coords.size(); ++j)
      terms.push_back(FuncTerm{coords[j], cycle_nf.g_half[j]});
    return AbelFunction(cycle_nf.sign, std::move(terms), t.dim());
  }
  throw KindError("abel_for_auto: no parabolic cycle found");  // unreachable
}

ValironConditionsReport check_valiron_conditions(const ScalarMap& V, const PolydiscAuto& t,
                                                 int samples, std::uint64_t seed,
                                                 double eps_cls) {
  const AutoNormalForm nf = normal_form_auto(t, eps_cls);
  if (nf.classification.kind != AutoKind::Hyperbolic)
    throw KindError("check_valiron_conditions: automorphism must be hyperbolic");

  // Per-coordinate transport to normal-form coordinates: active
  // coordinates (minimal hyperbolic cycles) carry their conjugators,
  // the rest are left alone.
  const std::size_t q = t.dim();
  std::vector<bool> active(q, false);
  std::vector<MoebiusH> to_canonical(q, MoebiusH::identity());
  const double lambda_min = nf.classification.dilation;
  const double tie_tol = 1e-9 * lambda_min;
  for (std::size_t b = 0; b < nf.decomposition.blocks.size(); ++b) {
    const auto& cc = nf.classification.per_cycle[b];
    if (cc.kind != AutoKind::Hyperbolic || cc.dilation > lambda_min + tie_tol) continue;
    const auto& coords = nf.decomposition.blocks[b].coords;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      active[coords[j]] = true;
      to_canonical[coords[j]] = nf.per_cycle[b].g_half[j];
    }
  }

  auto W = [&](const std::vector<Complex>& y) {
    std::vector<Complex> z(q);
    for (std::size_t j = 0; j < q; ++j)
      z[j] = active[j] ? to_canonical[j].inverse()(y[j]) : y[j];
    return V(PolyPoint(std::move(z)));
  };

  ValironConditionsReport rep;
  rep.samples = samples;
  rep.seed = seed;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<Complex> y(q);
    for (auto& yj : y) yj = rng.halfplane_point();
    const Complex base = W(y);

    // (i) 1-homogeneity on the active factor.
    const double r = rng.uniform(0.5, 2.0);
    std::vector<Complex> scaled = y;
    for (std::size_t j = 0; j < q; ++j)
      if (active[j]) scaled[j] *= r;
    rep.homogeneity = std::max(rep.homogeneity, std::abs(W(scaled) - r * base));

    // (ii) invariance under the induced permutation of the active factor.
    std::vector<Complex> permuted = y;
    for (std::size_t j = 0; j < q; ++j)
      if (active[j]) permuted[j] = y[t.perm()[j]];
    rep.shift_invariance = std::max(rep.shift_invariance, std::abs(W(permuted) - base));

    // (iii) independence of the non-hyperbolic coordinates
    // (unit finite difference).
    for (std::size_t j = 0; j < q; ++j) {
      if (active[j]) continue;
      std::vector<Complex> moved = y;
      moved[j] += 1.0;
      rep.dependence = std::max(rep.dependence, std::abs(W(moved) - base));
    }
  }
  return rep;
}

ValironVerification verify_valiron(const ScalarMap& V, const HoloSelfMap& f, double mu,
                                   int samples, std::uint64_t seed, int estimator_horizon,
                                   double companion_tol) {
  if (!(mu > 0.0 && mu < 1.0)) throw InputError("verify_valiron: mu must lie in (0,1)");
  ValironVerification out;
  out.samples = samples;
  out.seed = seed;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const PolyPoint z = sample_poly(rng, f.dim());
    const Complex vz = eval_into_halfplane(V, z, "verify_valiron");
    const Complex vfz = eval_into_halfplane(V, f(z), "verify_valiron");
    out.residual =
        std::max(out.residual, halfplane_distance<double>(vfz, vz / mu));
  }
  out.c_lower_bound = std::log(1.0 / mu);
  out.c_estimate = estimate_divergence_rate(
                       f, PolyPoint(std::vector<Complex>(f.dim(), Complex(0, 1))),
                       estimator_horizon)
                       .c_estimate;
  out.companion_ok = out.c_estimate >= out.c_lower_bound - companion_tol;
  return out;
}

AbelVerification verify_abel(const ScalarMap& Theta, const HoloSelfMap& f, int alpha,
                             int samples, std::uint64_t seed, int estimator_horizon,
                             double companion_tol, int step_probes) {
  if (alpha != 1 && alpha != -1) throw InputError("verify_abel: alpha must be +-1");
  AbelVerification out;
  out.samples = samples;
  out.seed = seed;
  Rng rng(seed);
  bool first_margin = true;
  for (int s = 0; s < samples; ++s) {
    const PolyPoint z = sample_poly(rng, f.dim());
    const Complex tz = eval_into_halfplane(Theta, z, "verify_abel");
    const Complex tfz = eval_into_halfplane(Theta, f(z), "verify_abel");
    out.residual = std::max(
        out.residual, halfplane_distance<double>(tfz, tz + static_cast<double>(alpha)));
    if (s < step_probes) {
      // Step lower bound of the companion inequality chain:
      // s(x) >= dist(Theta(x), Theta(x)+alpha).
      const double bound =
          halfplane_distance<double>(tz, tz + static_cast<double>(alpha));
      const double step = estimate_step(f, z, estimator_horizon).s_estimate;
      const double margin = step - bound;
      if (first_margin || margin < out.worst_step_margin) out.worst_step_margin = margin;
      first_margin = false;
    }
  }
  out.companion_ok = out.worst_step_margin >= -companion_tol;
  return out;
}

SemiModelVerification verify_semimodel(const SemiModelTriple& sm, const HoloSelfMap& f,
                                       int samples, std::uint64_t seed) {
  if (sm.source_dim != f.dim())
    throw InputError("verify_semimodel: source dimension does not match the map");
  SemiModelVerification out;
  out.samples = samples;
  out.seed = seed;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const PolyPoint z = sample_poly(rng, sm.source_dim);
    const PolyPoint lhs = sm.intertwiner(f(z));
    const PolyPoint rhs = sm.base_auto(sm.intertwiner(z));
    out.residual = std::max(out.residual, dist_poly(lhs, rhs));
  }
  return out;
}

}  // namespace polydisc
