#include "polydisc/serialize.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace polydisc {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError(msg); }

double number_from_json(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + ": expected a number");
  return j.get<double>();
}

}  // namespace

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad("complex number: expected [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json to_json(const PolyPoint& x) {
  Json out = Json::array();
  for (std::size_t j = 0; j < x.dim(); ++j) out.push_back(to_json(x[j]));
  return out;
}

PolyPoint polypoint_from_json(const Json& j, bool disc_coords) {
  if (!j.is_array() || j.empty()) bad("point: expected a non-empty array of coordinates");
  std::vector<Complex> coords;
  coords.reserve(j.size());
  for (const auto& c : j) {
    Complex z = complex_from_json(c);
    if (disc_coords) {
      if (!(std::abs(z) < 1.0)) bad("point: disc coordinate has modulus >= 1");
      z = cayley_inv_value<double>(z);
    }
    coords.push_back(z);
  }
  return PolyPoint(std::move(coords));
}

Json to_json(const MoebiusH& m) {
  return Json{{"a", m.a()}, {"b", m.b()}, {"c", m.c()}, {"d", m.d()}};
}

MoebiusH moebius_from_json(const Json& j) {
  return MoebiusH(number_from_json(require_field(j, "a"), "a"), number_from_json(require_field(j, "b"), "b"),
                  number_from_json(require_field(j, "c"), "c"), number_from_json(require_field(j, "d"), "d"));
}

Json to_json(const MoebiusHtoD& g) {
  return Json{{"a", to_json(g.a())}, {"b", to_json(g.b())}, {"c", to_json(g.c())},
              {"d", to_json(g.d())}};
}

MoebiusHtoD moebius_htod_from_json(const Json& j) {
  return MoebiusHtoD(complex_from_json(require_field(j, "a")), complex_from_json(require_field(j, "b")),
                     complex_from_json(require_field(j, "c")), complex_from_json(require_field(j, "d")));
}

Json to_json(const Boundary& x) {
  if (x.is_infinite()) return Json("inf");
  return Json(x.value() + 0.0);  // normalizes -0.0
}

Json to_json(const MoebiusClassification& cls) {
  Json out;
  switch (cls.kind) {
    case MoebiusClass::Identity:
      out["kind"] = "identity";
      break;
    case MoebiusClass::Elliptic:
      out["kind"] = "elliptic";
      out["fixed_point"] = to_json(*cls.fixed_point_interior);
      out["multiplier"] = to_json(*cls.multiplier);
      break;
    case MoebiusClass::Parabolic:
      out["kind"] = "parabolic";
      out["boundary_fixed"] = to_json(*cls.boundary_attracting);
      out["translation_sign"] = *cls.translation_sign;
      break;
    case MoebiusClass::Hyperbolic:
      out["kind"] = "hyperbolic";
      out["attracting"] = to_json(*cls.boundary_attracting);
      out["repelling"] = to_json(*cls.boundary_repelling);
      out["dilation"] = *cls.dilation;
      break;
  }
  return out;
}

Json to_json(const PolydiscAuto& t) {
  Json gammas = Json::array();
  for (const auto& g : t.gammas()) gammas.push_back(to_json(g));
  Json perm = Json::array();
  for (std::size_t p : t.perm()) perm.push_back(p + 1);
  return Json{{"space", "H"}, {"q", t.dim()}, {"perm", perm}, {"gammas", gammas}};
}

MoebiusH halfplane_from_disc_matrix(Complex a, Complex b, Complex c, Complex d) {
  // Conjugate by the Cayley matrix K = [[1,-i],[1,i]]: M_H = K^{-1} M_D K,
  // with K^{-1} proportional to [[i,i],[-1,1]].
  const Complex i(0, 1);
  const std::array<Complex, 4> ki = {i, i, -1, 1};
  const std::array<Complex, 4> m = {a, b, c, d};
  const std::array<Complex, 4> k = {1, -i, 1, i};
  auto mul = [](const std::array<Complex, 4>& x, const std::array<Complex, 4>& y) {
    return std::array<Complex, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                  x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };
  std::array<Complex, 4> h = mul(ki, mul(m, k));
  double max_mod = 0.0;
  std::size_t arg_max = 0;
  for (std::size_t t = 0; t < 4; ++t)
    if (std::abs(h[t]) > max_mod) {
      max_mod = std::abs(h[t]);
      arg_max = t;
    }
  if (max_mod == 0.0) bad("disc matrix: zero matrix");
  const Complex phase = h[arg_max] / std::abs(h[arg_max]);
  double imag_residue = 0.0;
  for (auto& e : h) {
    e /= phase;
    imag_residue = std::max(imag_residue, std::abs(e.imag()));
  }
  if (imag_residue > 1e-9 * max_mod)
    bad("disc matrix: not projectively real after Cayley conjugation "
        "(not a disc automorphism)");
  return MoebiusH(h[0].real(), h[1].real(), h[2].real(), h[3].real());
}

namespace {

MoebiusH gamma_from_json(const Json& j, bool disc_coords) {
  if (!disc_coords) return moebius_from_json(j);
  return halfplane_from_disc_matrix(
      complex_from_json(require_field(j, "a")), complex_from_json(require_field(j, "b")),
      complex_from_json(require_field(j, "c")), complex_from_json(require_field(j, "d")));
}

bool disc_space(const Json& j) {
  if (!j.contains("space")) return false;
  const std::string space = j.at("space").get<std::string>();
  if (space == "H") return false;
  if (space == "D") return true;
  bad("space: expected \"H\" or \"D\"");
}

std::vector<std::size_t> perm_from_json(const Json& j, std::size_t q) {
  if (!j.is_array() || j.size() != q) bad("perm: expected an array of length q");
  std::vector<std::size_t> perm(q);
  for (std::size_t t = 0; t < q; ++t) {
    if (!j[t].is_number_integer()) bad("perm: entries must be integers");
    const long long p = j[t].get<long long>();
    if (p < 1 || p > static_cast<long long>(q)) bad("perm: entries must lie in 1..q");
    perm[t] = static_cast<std::size_t>(p - 1);
  }
  return perm;
}

}  // namespace

PolydiscAuto auto_from_json(const Json& j) {
  const bool disc = disc_space(j);
  const auto q = static_cast<std::size_t>(number_from_json(require_field(j, "q"), "q"));
  if (q == 0) bad("q: must be at least 1");
  const Json& gam = require_field(j, "gammas");
  if (!gam.is_array() || gam.size() != q) bad("gammas: expected an array of length q");
  std::vector<std::size_t> perm;
  if (j.contains("perm")) {
    perm = perm_from_json(j.at("perm"), q);
  } else {
    perm.resize(q);
    for (std::size_t t = 0; t < q; ++t) perm[t] = t;
  }
  std::vector<MoebiusH> gammas;
  gammas.reserve(q);
  for (const auto& g : gam) gammas.push_back(gamma_from_json(g, disc));
  return PolydiscAuto(std::move(perm), std::move(gammas));
}

Json to_json(const CycleDecomposition& dec) {
  Json blocks = Json::array();
  for (const auto& block : dec.blocks) {
    Json coords = Json::array();
    for (std::size_t c : block.coords) coords.push_back(c + 1);
    Json gammas = Json::array();
    for (const auto& g : block.cycle.gammas()) gammas.push_back(to_json(g));
    blocks.push_back(Json{{"coords", coords}, {"k", block.cycle.length()}, {"gammas", gammas}});
  }
  return Json{{"q", dec.q}, {"blocks", blocks}};
}

Json to_json(const CycleClassification& cc) {
  Json out;
  out["kind"] = to_string(cc.kind);
  out["length"] = cc.length;
  if (cc.kind == AutoKind::Hyperbolic) {
    out["dilation"] = cc.dilation;
    out["divergence_rate"] = cc.divergence_rate;
  }
  if (cc.kind == AutoKind::Elliptic && cc.multiplier) {
    out["multiplier"] = to_json(*cc.multiplier);
    out["multiplier_note"] = "principal root; full set is this times the k-th roots of unity";
  }
  out["gamma1"] = to_json(cc.gamma1);
  return out;
}

Json to_json(const AutoClassification& cls) {
  Json per_cycle = Json::array();
  for (const auto& cc : cls.per_cycle) per_cycle.push_back(to_json(cc));
  return Json{{"kind", to_string(cls.kind)},
              {"divergence_rate", cls.divergence_rate},
              {"dilation", cls.dilation},
              {"per_cycle", per_cycle}};
}

Json to_json(const NormalForm& nf) {
  Json out;
  out["kind"] = to_string(nf.kind);
  out["k"] = nf.k;
  Json g = Json::array();
  switch (nf.kind) {
    case AutoKind::Hyperbolic:
      out["lambda"] = nf.lambda;
      for (const auto& gj : nf.g_half) g.push_back(to_json(gj));
      break;
    case AutoKind::Parabolic:
      out["sign"] = nf.sign;
      for (const auto& gj : nf.g_half) g.push_back(to_json(gj));
      break;
    case AutoKind::Elliptic:
      out["lambda"] = to_json(nf.multiplier);
      for (const auto& gj : nf.g_disc) g.push_back(to_json(gj));
      break;
  }
  out["g"] = g;
  return out;
}

NormalForm normal_form_from_json(const Json& j) {
  NormalForm nf;
  const std::string kind = require_field(j, "kind").get<std::string>();
  nf.k = static_cast<std::size_t>(number_from_json(require_field(j, "k"), "k"));
  const Json& g = require_field(j, "g");
  if (!g.is_array() || g.size() != nf.k) bad("normal form: g must list k conjugators");
  if (kind == "hyperbolic") {
    nf.kind = AutoKind::Hyperbolic;
    nf.lambda = number_from_json(require_field(j, "lambda"), "lambda");
    for (const auto& gj : g) nf.g_half.push_back(moebius_from_json(gj));
  } else if (kind == "parabolic") {
    nf.kind = AutoKind::Parabolic;
    nf.sign = require_field(j, "sign").get<int>();
    for (const auto& gj : g) nf.g_half.push_back(moebius_from_json(gj));
  } else if (kind == "elliptic") {
    nf.kind = AutoKind::Elliptic;
    nf.multiplier = complex_from_json(require_field(j, "lambda"));
    for (const auto& gj : g) nf.g_disc.push_back(moebius_htod_from_json(gj));
  } else {
    bad("normal form: unknown kind \"" + kind + "\"");
  }
  return nf;
}

Json to_json(const AutoNormalForm& anf) {
  Json blocks = Json::array();
  for (std::size_t b = 0; b < anf.decomposition.blocks.size(); ++b) {
    Json coords = Json::array();
    for (std::size_t c : anf.decomposition.blocks[b].coords) coords.push_back(c + 1);
    blocks.push_back(Json{{"coords", coords}, {"normal_form", to_json(anf.per_cycle[b])}});
  }
  Json out{{"classification",
            Json{{"kind", to_string(anf.classification.kind)},
                 {"divergence_rate", anf.classification.divergence_rate},
                 {"dilation", anf.classification.dilation}}},
           {"blocks", blocks}};
  if (anf.split) {
    Json reorder = Json::array();
    for (std::size_t c : anf.split->reorder) reorder.push_back(c + 1);
    out["hyperbolic_split"] = Json{{"m", anf.split->m}, {"reorder", reorder}};
  }
  return out;
}

namespace {

Json terms_to_json(const std::vector<FuncTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms)
    out.push_back(Json{{"coord", t.coord + 1}, {"g", to_json(t.g)}});
  return out;
}

std::vector<FuncTerm> terms_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("terms: expected a non-empty array");
  std::vector<FuncTerm> out;
  for (const auto& t : j) {
    const long long coord = require_field(t, "coord").get<long long>();
    if (coord < 1) bad("terms: coord must be 1-based");
    out.push_back(FuncTerm{static_cast<std::size_t>(coord - 1),
                           moebius_from_json(require_field(t, "g"))});
  }
  return out;
}

}  // namespace

Json to_json(const ValironFunction& v) {
  return Json{{"type", "valiron"},
              {"lambda", v.lambda()},
              {"q", v.ambient_dim()},
              {"terms", terms_to_json(v.terms())}};
}

ValironFunction valiron_from_json(const Json& j) {
  return ValironFunction(number_from_json(require_field(j, "lambda"), "lambda"),
                         terms_from_json(require_field(j, "terms")),
                         static_cast<std::size_t>(number_from_json(require_field(j, "q"), "q")));
}

Json to_json(const AbelFunction& a) {
  return Json{{"type", "abel"},
              {"alpha", a.alpha()},
              {"q", a.ambient_dim()},
              {"terms", terms_to_json(a.terms())}};
}

AbelFunction abel_from_json(const Json& j) {
  return AbelFunction(require_field(j, "alpha").get<int>(), terms_from_json(require_field(j, "terms")),
                      static_cast<std::size_t>(number_from_json(require_field(j, "q"), "q")));
}

Json to_json(const OrbitStats& st, bool include_sequences) {
  Json out{{"base", to_json(st.base)},
           {"m", st.horizon},
           {"c_estimate", st.c_estimate},
           {"s_estimate", st.s_estimate},
           {"tail_slope", st.tail_slope},
           {"step_monotone", st.step_monotone}};
  if (include_sequences) {
    out["dist_to_start"] = st.dist_to_start;
    out["step_seq"] = st.step_seq;
  }
  return out;
}

std::string orbit_stats_csv(const OrbitStats& st) {
  std::ostringstream os;
  os.precision(17);
  os << "n,dist_to_start,step\n";
  for (std::size_t n = 0; n < st.dist_to_start.size(); ++n)
    os << n << "," << st.dist_to_start[n] << "," << st.step_seq[n] << "\n";
  return os.str();
}

Json to_json(const SelfMapClassification& rep, bool include_sequences) {
  Json out{{"kind", to_string(rep.kind)},
           {"heuristic", rep.heuristic},
           {"eps_c", rep.eps_c},
           {"eps_fix", rep.eps_fix},
           {"stats", to_json(rep.stats, include_sequences)}};
  if (rep.fixed_point) out["fixed_point"] = to_json(*rep.fixed_point);
  out["notes"] = rep.notes;
  return out;
}

Json to_json(const ValironConditionsReport& rep) {
  return Json{{"homogeneity_violation", rep.homogeneity},
              {"shift_invariance_violation", rep.shift_invariance},
              {"dependence_violation", rep.dependence},
              {"samples", rep.samples},
              {"seed", rep.seed}};
}

Json to_json(const ValironVerification& rep) {
  return Json{{"residual", rep.residual},
              {"samples", rep.samples},
              {"seed", rep.seed},
              {"companion_checks",
               Json{{"c_estimate", rep.c_estimate},
                    {"c_lower_bound", rep.c_lower_bound},
                    {"ok", rep.companion_ok}}}};
}

Json to_json(const AbelVerification& rep) {
  return Json{{"residual", rep.residual},
              {"samples", rep.samples},
              {"seed", rep.seed},
              {"companion_checks",
               Json{{"worst_step_margin", rep.worst_step_margin}, {"ok", rep.companion_ok}}}};
}

Json to_json(const SemiModelVerification& rep) {
  return Json{{"residual", rep.residual},
              {"samples", rep.samples},
              {"seed", rep.seed},
              {"companion_checks", Json{{"union_condition", rep.union_condition}}}};
}

HoloSelfMap selfmap_from_json(const Json& j) {
  const bool disc = disc_space(j);
  const auto q = static_cast<std::size_t>(number_from_json(require_field(j, "q"), "q"));
  if (q == 0) bad("q: must be at least 1");
  std::vector<std::size_t> perm;
  if (j.contains("perm")) {
    perm = perm_from_json(j.at("perm"), q);
  } else {
    perm.resize(q);
    for (std::size_t t = 0; t < q; ++t) perm[t] = t;
  }
  if (j.contains("gammas")) return HoloSelfMap::from_auto(auto_from_json(j));
  const Json& lfts = require_field(j, "lfts");
  if (!lfts.is_array() || lfts.size() != q) bad("lfts: expected an array of length q");
  std::vector<std::array<Complex, 4>> coeffs;
  coeffs.reserve(q);
  const Complex i(0, 1);
  for (const auto& m : lfts) {
    std::array<Complex, 4> e = {
        complex_from_json(require_field(m, "a")), complex_from_json(require_field(m, "b")),
        complex_from_json(require_field(m, "c")), complex_from_json(require_field(m, "d"))};
    if (disc) {
      // Conjugate the disc-coordinate component to half-plane coordinates.
      const std::array<Complex, 4> k = {1, -i, 1, i};
      const std::array<Complex, 4> ki = {i, i, Complex(-1, 0), Complex(1, 0)};
      auto mul = [](const std::array<Complex, 4>& x, const std::array<Complex, 4>& y) {
        return std::array<Complex, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                      x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
      };
      e = mul(ki, mul(e, k));
    }
    coeffs.push_back(e);
  }
  return HoloSelfMap::from_lfts(std::move(perm), std::move(coeffs), "component-wise LFT map");
}

}  // namespace polydisc
