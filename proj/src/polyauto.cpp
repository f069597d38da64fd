#include "polydisc/polyauto.hpp"

#include <algorithm>
#include <cmath>

namespace polydisc {

PolydiscAuto::PolydiscAuto(std::vector<std::size_t> perm, std::vector<MoebiusH> gammas)
    : perm_(std::move(perm)), gammas_(std::move(gammas)) {
  if (perm_.empty() || perm_.size() != gammas_.size())
    throw InputError("PolydiscAuto: need one Moebius map per coordinate");
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t p : perm_) {
    if (p >= perm_.size() || seen[p]) throw InputError("PolydiscAuto: perm is not a permutation");
    seen[p] = true;
  }
}

PolydiscAuto PolydiscAuto::identity(std::size_t q) {
  std::vector<std::size_t> perm(q);
  for (std::size_t j = 0; j < q; ++j) perm[j] = j;
  return PolydiscAuto(std::move(perm), std::vector<MoebiusH>(q, MoebiusH::identity()));
}

PolydiscAuto PolydiscAuto::inverse() const {
  const std::size_t q = dim();
  std::vector<std::size_t> pinv(q);
  for (std::size_t j = 0; j < q; ++j) pinv[perm_[j]] = j;
  std::vector<std::size_t> perm(q);
  std::vector<MoebiusH> gammas;
  gammas.reserve(q);
  for (std::size_t i = 0; i < q; ++i) {
    perm[i] = pinv[i];
    gammas.push_back(gammas_[pinv[i]].inverse());
  }
  return PolydiscAuto(std::move(perm), std::move(gammas));
}

PolydiscAuto compose(const PolydiscAuto& t1, const PolydiscAuto& t2) {
  if (t1.dim() != t2.dim()) throw InputError("compose: dimension mismatch");
  const std::size_t q = t1.dim();
  std::vector<std::size_t> perm(q);
  std::vector<MoebiusH> gammas;
  gammas.reserve(q);
  for (std::size_t j = 0; j < q; ++j) {
    perm[j] = t2.perm()[t1.perm()[j]];
    gammas.push_back(compose(t1.gammas()[j], t2.gammas()[t1.perm()[j]]));
  }
  return PolydiscAuto(std::move(perm), std::move(gammas));
}

PolydiscAuto iterate(const PolydiscAuto& t, long n) {
  PolydiscAuto base = n < 0 ? t.inverse() : t;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  PolydiscAuto acc = PolydiscAuto::identity(t.dim());
  while (e > 0) {
    if (e & 1UL) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1UL;
  }
  return acc;
}

CycleAuto::CycleAuto(std::vector<MoebiusH> gammas) : gammas_(std::move(gammas)) {
  if (gammas_.empty()) throw InputError("CycleAuto: length must be at least 1");
}

PolyPoint CycleAuto::operator()(const PolyPoint& z) const { return as_auto()(z); }

PolydiscAuto CycleAuto::as_auto() const {
  const std::size_t k = length();
  std::vector<std::size_t> perm(k);
  for (std::size_t j = 0; j < k; ++j) perm[j] = (j + 1) % k;
  return PolydiscAuto(std::move(perm), gammas_);
}

CycleDecomposition cycle_decompose(const PolydiscAuto& t) {
  const std::size_t q = t.dim();
  CycleDecomposition out;
  out.q = q;
  std::vector<bool> used(q, false);
  for (std::size_t anchor = 0; anchor < q; ++anchor) {
    if (used[anchor]) continue;
    std::vector<std::size_t> coords;
    std::vector<MoebiusH> gammas;
    std::size_t j = anchor;
    do {
      used[j] = true;
      coords.push_back(j);
      gammas.push_back(t.gammas()[j]);
      j = t.perm()[j];
    } while (j != anchor);
    out.blocks.push_back(CycleBlock{std::move(coords), CycleAuto(std::move(gammas))});
  }
  return out;
}

std::vector<MoebiusH> gamma_products(const CycleAuto& c) {
  const std::size_t k = c.length();
  std::vector<MoebiusH> out;
  out.reserve(k);
  MoebiusH g1 = c.gammas()[0];
  for (std::size_t j = 1; j < k; ++j) g1 = compose(g1, c.gammas()[j]);
  out.push_back(g1);
  for (std::size_t j = 1; j < k; ++j) {
    const MoebiusH& conj = c.gammas()[j - 1];
    out.push_back(compose(conj.inverse(), compose(out.back(), conj)));
  }
  return out;
}

std::string to_string(AutoKind k) {
  switch (k) {
    case AutoKind::Elliptic: return "elliptic";
    case AutoKind::Parabolic: return "parabolic";
    case AutoKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

CycleClassification classify_cycle(const CycleAuto& c, double eps_cls) {
  const std::size_t k = c.length();
  const MoebiusH gamma1 = gamma_products(c).front();
  CycleClassification out;
  out.length = k;
  out.gamma1 = classify(gamma1, eps_cls);
  switch (out.gamma1.kind) {
    case MoebiusClass::Identity:
      out.kind = AutoKind::Elliptic;
      out.multiplier = Complex(1.0, 0.0);
      break;
    case MoebiusClass::Elliptic: {
      out.kind = AutoKind::Elliptic;
      // Principal k-th root of the Gamma_1 multiplier.
      const Complex mult = *out.gamma1.multiplier;
      out.multiplier = std::polar(1.0, std::arg(mult) / static_cast<double>(k));
      break;
    }
    case MoebiusClass::Parabolic:
      out.kind = AutoKind::Parabolic;
      break;
    case MoebiusClass::Hyperbolic:
      out.kind = AutoKind::Hyperbolic;
      // k-th root taken through the logarithm to stay on the real branch.
      out.dilation = std::exp(std::log(*out.gamma1.dilation) / static_cast<double>(k));
      out.divergence_rate = std::log(1.0 / *out.gamma1.dilation) / static_cast<double>(k);
      break;
  }
  return out;
}

AutoClassification classify_decomposition(const CycleDecomposition& dec, double eps_cls) {
  AutoClassification out;
  bool any_parabolic = false;
  bool any_hyperbolic = false;
  double min_hyp_dilation = 1.0;
  for (const auto& block : dec.blocks) {
    CycleClassification cc = classify_cycle(block.cycle, eps_cls);
    if (cc.kind == AutoKind::Parabolic) any_parabolic = true;
    if (cc.kind == AutoKind::Hyperbolic) {
      if (!any_hyperbolic || cc.dilation < min_hyp_dilation) min_hyp_dilation = cc.dilation;
      any_hyperbolic = true;
      out.divergence_rate = std::max(out.divergence_rate, cc.divergence_rate);
    }
    out.per_cycle.push_back(std::move(cc));
  }
  if (any_hyperbolic) {
    out.kind = AutoKind::Hyperbolic;
    out.dilation = min_hyp_dilation;
  } else {
    out.kind = any_parabolic ? AutoKind::Parabolic : AutoKind::Elliptic;
    out.dilation = 1.0;
    out.divergence_rate = 0.0;
  }
  return out;
}

AutoClassification classify_auto(const PolydiscAuto& t, double eps_cls) {
  return classify_decomposition(cycle_decompose(t), eps_cls);
}

double step_at(const PolydiscAuto& t, const PolyPoint& x) { return dist_poly(x, t(x)); }

std::optional<PolyPoint> fixed_point(const PolydiscAuto& t, double eps_cls) {
  const CycleDecomposition dec = cycle_decompose(t);
  std::vector<Complex> z(t.dim(), Complex(0, 1));
  for (const auto& block : dec.blocks) {
    const MoebiusH gamma1 = gamma_products(block.cycle).front();
    const auto cls = classify(gamma1, eps_cls);
    Complex w;
    if (cls.kind == MoebiusClass::Identity) {
      w = Complex(0, 1);
    } else if (cls.kind == MoebiusClass::Elliptic) {
      w = *cls.fixed_point_interior;
    } else {
      return std::nullopt;
    }
    // z_{coords[t+1]} = gamma_t^{-1}(z_{coords[t]}), anchored at the
    // Gamma_1 fixed point.
    const std::size_t k = block.coords.size();
    z[block.coords[0]] = w;
    for (std::size_t j = 1; j < k; ++j) {
      w = block.cycle.gammas()[j - 1].inverse()(w);
      z[block.coords[j]] = w;
    }
  }
  return PolyPoint(std::move(z));
}

}  // namespace polydisc
