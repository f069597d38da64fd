#include "polydisc/normalform.hpp"

#include <cmath>

#include "polydisc/sampling.hpp"

namespace polydisc {

std::vector<Complex> NormalForm::apply_model(const std::vector<Complex>& z) const {
  if (z.size() != k) throw InputError("NormalForm: dimension mismatch");
  std::vector<Complex> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Complex shifted = z[(j + 1) % k];
    switch (kind) {
      case AutoKind::Hyperbolic: out[j] = shifted / lambda; break;
      case AutoKind::Parabolic: out[j] = shifted + static_cast<double>(sign); break;
      case AutoKind::Elliptic: out[j] = multiplier * shifted; break;
    }
  }
  return out;
}

std::vector<Complex> NormalForm::apply_conjugator(const std::vector<Complex>& z) const {
  if (z.size() != k) throw InputError("NormalForm: dimension mismatch");
  std::vector<Complex> out(k);
  for (std::size_t j = 0; j < k; ++j)
    out[j] = kind == AutoKind::Elliptic ? g_disc[j](z[j]) : g_half[j](z[j]);
  return out;
}

NormalForm normal_form_cycle(const CycleAuto& c, double eps_cls) {
  const std::size_t k = c.length();
  const CycleClassification cls = classify_cycle(c, eps_cls);
  const MoebiusH gamma1 = gamma_products(c).front();

  NormalForm nf;
  nf.kind = cls.kind;
  nf.k = k;
  switch (cls.kind) {
    case AutoKind::Hyperbolic: {
      nf.lambda = cls.dilation;
      nf.g_half.push_back(linearizer_hyperbolic(gamma1, eps_cls));
      for (std::size_t j = 1; j < k; ++j)
        nf.g_half.push_back(scale_by(nf.lambda, compose(nf.g_half.back(), c.gammas()[j - 1])));
      break;
    }
    case AutoKind::Parabolic: {
      const AbelConjugator ac = abel_conjugator_parabolic(gamma1, static_cast<int>(k), eps_cls);
      nf.sign = ac.sign;
      nf.g_half.push_back(ac.g);
      for (std::size_t j = 1; j < k; ++j)
        nf.g_half.push_back(
            shift_by(-static_cast<double>(ac.sign), compose(nf.g_half.back(), c.gammas()[j - 1])));
      break;
    }
    case AutoKind::Elliptic: {
      nf.multiplier = *cls.multiplier;
      if (cls.gamma1.kind == MoebiusClass::Identity) {
        // Degenerate cycle (tau^k = id): any fixed point of Gamma_1 works;
        // we pin the conjugator at i.
        nf.g_disc.push_back(MoebiusHtoD(1, Complex(0, -1), 1, Complex(0, 1), false));
      } else {
        nf.g_disc.push_back(schroeder_conjugator_elliptic(gamma1, eps_cls).g);
      }
      const Complex inv_lambda = 1.0 / nf.multiplier;
      for (std::size_t j = 1; j < k; ++j)
        nf.g_disc.push_back(scale_by(inv_lambda, compose(nf.g_disc.back(), c.gammas()[j - 1])));
      break;
    }
  }
  return nf;
}

double verify_conjugacy(const NormalForm& nf, const CycleAuto& c, int samples,
                        std::uint64_t seed) {
  if (nf.k != c.length()) throw InputError("verify_conjugacy: length mismatch");
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<Complex> z(nf.k);
    for (auto& zj : z) zj = rng.halfplane_point();
    const std::vector<Complex> lhs = nf.apply_conjugator(c.as_auto().apply_coords(z));
    const std::vector<Complex> rhs = nf.apply_model(nf.apply_conjugator(z));
    for (std::size_t j = 0; j < nf.k; ++j) {
      const double d = nf.kind == AutoKind::Elliptic
                           ? dist_disc(PointD(lhs[j]), PointD(rhs[j]))
                           : halfplane_distance<double>(lhs[j], rhs[j]);
      if (d > worst) worst = d;
    }
  }
  return worst;
}

AutoNormalForm normal_form_auto(const PolydiscAuto& t, double eps_cls) {
  AutoNormalForm out;
  out.decomposition = cycle_decompose(t);
  out.classification = classify_decomposition(out.decomposition, eps_cls);
  for (const auto& block : out.decomposition.blocks)
    out.per_cycle.push_back(normal_form_cycle(block.cycle, eps_cls));

  if (out.classification.kind == AutoKind::Hyperbolic) {
    // Cycles whose dilation attains the minimum go first, in block order.
    const double lambda_min = out.classification.dilation;
    const double tie_tol = 1e-9 * lambda_min;
    HyperbolicSplit split;
    std::vector<std::size_t> tail;
    for (std::size_t b = 0; b < out.decomposition.blocks.size(); ++b) {
      const auto& cc = out.classification.per_cycle[b];
      const auto& coords = out.decomposition.blocks[b].coords;
      if (cc.kind == AutoKind::Hyperbolic && cc.dilation <= lambda_min + tie_tol)
        split.reorder.insert(split.reorder.end(), coords.begin(), coords.end());
      else
        tail.insert(tail.end(), coords.begin(), coords.end());
    }
    split.m = split.reorder.size();
    split.reorder.insert(split.reorder.end(), tail.begin(), tail.end());
    out.split = std::move(split);
  }
  return out;
}

}  // namespace polydisc
