#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polydisc/dynamics.hpp"
#include "polydisc/polyauto.hpp"
#include "testutil.hpp"

using namespace polydisc;
using namespace polydisc::testutil;

namespace {

PolydiscAuto two_cycle_plus_translation() {
  // q = 3: cycle {1,2} with (2z, 2z), fixed coordinate 3 with z+1.
  return PolydiscAuto({1, 0, 2}, {MoebiusH::scaling(2), MoebiusH::scaling(2),
                                  MoebiusH::translation(1)});
}

}  // namespace

TEST_CASE("group operations") {
  Rng rng(31);
  const PolydiscAuto t = random_auto_he(rng, 5);
  const std::size_t q = t.dim();
  const PolyPoint x = random_polypoint(rng, q);

  CHECK(dist_poly(compose(PolydiscAuto::identity(q), t)(x), t(x)) < 1e-13);
  CHECK(dist_poly(compose(t, t.inverse())(x), x) < 1e-12);

  const PolydiscAuto tinv = compose(t, t.inverse());
  for (std::size_t j = 0; j < q; ++j) {
    CHECK(tinv.perm()[j] == j);
    CHECK(tinv.gammas()[j].is_identity(1e-12));
  }

  // Composition is pointwise composition.
  Rng rng2(32);
  for (int s = 0; s < 30; ++s) {
    const PolydiscAuto a = random_auto_he(rng2, 4);
    const PolydiscAuto b = assemble_auto(rng2, {random_cycle_raw(rng2, a.dim())});
    const PolyPoint y = random_polypoint(rng2, a.dim());
    CHECK(dist_poly(compose(a, b)(y), a(b(y))) < 1e-11);
  }
}

TEST_CASE("iterate by data, not pointwise") {
  const CycleAuto c({MoebiusH::scaling(2), MoebiusH::scaling(2)});
  const PolydiscAuto t = c.as_auto();
  const PolydiscAuto t2 = iterate(t, 2);
  const PolyPoint x({{0.5, 1.0}, {-1.0, 2.0}});
  // tau^2 = (4 z1, 4 z2) by the Gamma product.
  const PolyPoint y = t2(x);
  CHECK(std::abs(y[0] - 4.0 * x[0]) < 1e-14);
  CHECK(std::abs(y[1] - 4.0 * x[1]) < 1e-14);

  Rng rng(33);
  const PolydiscAuto a = random_auto_he(rng, 5);
  const PolyPoint z = random_polypoint(rng, a.dim());
  PolyPoint w = z;
  for (int s = 0; s < 7; ++s) w = a(w);
  CHECK(dist_poly(iterate(a, 7)(z), w) < 1e-10);
}

TEST_CASE("cycle decomposition: structure") {
  const auto dec_id = cycle_decompose(PolydiscAuto::identity(3));
  CHECK(dec_id.blocks.size() == 3);
  for (std::size_t b = 0; b < 3; ++b) {
    CHECK(dec_id.blocks[b].coords == std::vector<std::size_t>{b});
    CHECK(dec_id.blocks[b].cycle.length() == 1);
  }

  const PolydiscAuto shift({1, 2, 0}, {MoebiusH::identity(), MoebiusH::identity(),
                                       MoebiusH::identity()});
  const auto dec = cycle_decompose(shift);
  CHECK(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].coords == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("cycle decomposition: reassembly oracle") {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    std::vector<CycleAuto> cycles;
    std::size_t left = 1 + rng.index(6);
    while (left > 0) {
      const std::size_t k = 1 + rng.index(left);
      cycles.push_back(random_cycle_raw(rng, k));
      left -= k;
    }
    const PolydiscAuto tau = assemble_auto(rng, cycles);
    const CycleDecomposition dec = cycle_decompose(tau);

    // pi_nu o tau = tau_nu o pi_nu at random points.
    const PolyPoint z = random_polypoint(rng, tau.dim());
    const PolyPoint tz = tau(z);
    for (const auto& block : dec.blocks) {
      std::vector<Complex> pi_tz, pi_z;
      for (std::size_t c : block.coords) {
        pi_tz.push_back(tz[c]);
        pi_z.push_back(z[c]);
      }
      const PolyPoint lhs(pi_tz);
      const PolyPoint rhs = block.cycle(PolyPoint(pi_z));
      CHECK(dist_poly(lhs, rhs) < 1e-12);
    }

    // Anchors increase and the blocks partition the coordinates.
    std::vector<bool> seen(tau.dim(), false);
    std::size_t last_anchor = 0;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
      const auto& coords = dec.blocks[b].coords;
      CHECK(coords[0] == *std::min_element(coords.begin(), coords.end()));
      if (b > 0) CHECK(coords[0] > last_anchor);
      last_anchor = coords[0];
      for (std::size_t c : coords) {
        CHECK(!seen[c]);
        seen[c] = true;
      }
    }
  }
}

TEST_CASE("gamma products: frozen examples") {
  {
    const auto gs = gamma_products(CycleAuto({MoebiusH::scaling(2), MoebiusH::scaling(2)}));
    CHECK(gs.size() == 2);
    const Complex z(0.2, 1.1);
    CHECK(std::abs(gs[0](z) - 4.0 * z) < 1e-14);
    CHECK(std::abs(gs[1](z) - 4.0 * z) < 1e-14);
  }
  {
    const auto gs =
        gamma_products(CycleAuto({MoebiusH::translation(1), MoebiusH::translation(2)}));
    const Complex z(0.0, 0.7);
    CHECK(std::abs(gs[0](z) - (z + 3.0)) < 1e-14);
    CHECK(std::abs(gs[1](z) - (z + 3.0)) < 1e-14);
  }
  {
    const MoebiusH m(1.0, 0.5, 0.25, 1.5);
    const auto gs = gamma_products(CycleAuto({m}));
    const Complex z(0.4, 0.9);
    CHECK(std::abs(gs[0](z) - m(z)) < 1e-15);
  }
}

namespace {

// Projective matrix difference (both inputs are det-normalized; the
// trace-sign convention can flip when the trace is near zero).
double moebius_matrix_diff(const MoebiusH& x, const MoebiusH& y) {
  const double direct = std::max({std::abs(x.a() - y.a()), std::abs(x.b() - y.b()),
                                  std::abs(x.c() - y.c()), std::abs(x.d() - y.d())});
  const double flipped = std::max({std::abs(x.a() + y.a()), std::abs(x.b() + y.b()),
                                   std::abs(x.c() + y.c()), std::abs(x.d() + y.d())});
  return std::min(direct, flipped);
}

double moebius_matrix_scale(const MoebiusH& x) {
  return std::max({std::abs(x.a()), std::abs(x.b()), std::abs(x.c()), std::abs(x.d()), 1.0});
}

}  // namespace

TEST_CASE("gamma products: tau^k acts coordinatewise, all conjugate") {
  Rng rng(35);
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = 1 + rng.index(5);
    const GenKind kind = t % 3 == 0   ? GenKind::Hyperbolic
                         : t % 3 == 1 ? GenKind::Elliptic
                                      : GenKind::Parabolic;
    const CycleAuto c = random_cycle_with_kind(rng, k, kind);
    const auto gs = gamma_products(c);
    REQUIRE(gs.size() == k);

    // Matrix-level identity: the k-th iterate has trivial permutation and
    // its coordinate maps are the Gamma products.
    const PolydiscAuto tk = iterate(c.as_auto(), static_cast<long>(k));
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(tk.perm()[j] == j);
      CHECK(moebius_matrix_diff(tk.gammas()[j], gs[j]) <
            1e-10 * moebius_matrix_scale(gs[j]));
    }

    // Pointwise form; the invariant metric near the boundary amplifies
    // double rounding, hence the coarser bound.
    const PolyPoint z = random_polypoint(rng, k);
    const PolyPoint w = tk(z);
    for (std::size_t j = 0; j < k; ++j)
      CHECK(halfplane_distance<double>(w[j], gs[j](z[j])) < 2e-9);

    // Conjugates share kind and trace.
    const auto cls0 = classify(gs[0]);
    for (std::size_t j = 1; j < k; ++j) {
      CHECK(cls0.kind == classify(gs[j]).kind);
      CHECK(gs[0].trace() == doctest::Approx(gs[j].trace()).epsilon(1e-8));
    }
  }
}

TEST_CASE("classify_cycle: frozen examples") {
  {
    const auto cc = classify_cycle(CycleAuto({MoebiusH::scaling(2), MoebiusH::scaling(2)}));
    CHECK(cc.kind == AutoKind::Hyperbolic);
    CHECK(cc.dilation == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cc.divergence_rate == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  {
    const auto cc =
        classify_cycle(CycleAuto({MoebiusH::translation(1), MoebiusH::translation(2)}));
    CHECK(cc.kind == AutoKind::Parabolic);
    CHECK(cc.divergence_rate == 0.0);
  }
  {
    const auto cc = classify_cycle(CycleAuto({MoebiusH(0, -1, 1, 0)}));
    CHECK(cc.kind == AutoKind::Elliptic);
    CHECK(std::abs(*cc.multiplier - Complex(-1, 0)) < 1e-14);
  }
}

TEST_CASE("classify_cycle: principal root of the multiplier") {
  // Length-2 cycle whose Gamma_1 rotates about i by theta: multiplier
  // exp(-2 i theta), principal square root exp(-i theta).
  const double theta = 0.8;
  const CycleAuto c({MoebiusH::rotation_about_i(theta), MoebiusH::identity()});
  const auto cc = classify_cycle(c);
  CHECK(cc.kind == AutoKind::Elliptic);
  CHECK(std::abs(*cc.multiplier - std::polar(1.0, -theta)) < 1e-12);
}

TEST_CASE("classify_auto: frozen examples") {
  {
    const auto cls = classify_auto(two_cycle_plus_translation());
    CHECK(cls.kind == AutoKind::Hyperbolic);
    CHECK(cls.divergence_rate == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(cls.dilation == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cls.per_cycle.size() == 2);
  }
  {
    const auto cls = classify_auto(PolydiscAuto::identity(4));
    CHECK(cls.kind == AutoKind::Elliptic);
    CHECK(cls.divergence_rate == 0.0);
    CHECK(cls.dilation == 1.0);
  }
  {
    // q = 2, perm identity, (rotation about i, z+1): parabolic, c = 0.
    const PolydiscAuto t({0, 1},
                         {MoebiusH::rotation_about_i(1.0), MoebiusH::translation(1)});
    const auto cls = classify_auto(t);
    CHECK(cls.kind == AutoKind::Parabolic);
    CHECK(cls.divergence_rate == 0.0);
    CHECK(cls.dilation == 1.0);
  }
}

TEST_CASE("classify_auto: dilation is min over hyperbolic cycles") {
  const PolydiscAuto t({0, 1}, {MoebiusH::scaling(4), MoebiusH::scaling(9)});
  const auto cls = classify_auto(t);
  CHECK(cls.kind == AutoKind::Hyperbolic);
  CHECK(cls.dilation == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(cls.divergence_rate == doctest::Approx(std::log(9.0)).epsilon(1e-12));
  CHECK(std::exp(-cls.divergence_rate) == doctest::Approx(cls.dilation).epsilon(1e-12));
}

TEST_CASE("classify_auto: invariance under coordinatewise conjugation and relabeling") {
  Rng rng(36);
  for (int t = 0; t < 40; ++t) {
    const PolydiscAuto tau = random_auto_he(rng, 5);
    const std::size_t q = tau.dim();

    std::vector<MoebiusH> hs;
    for (std::size_t j = 0; j < q; ++j) hs.push_back(random_moebius_mild(rng));
    std::vector<std::size_t> idperm(q);
    std::iota(idperm.begin(), idperm.end(), std::size_t{0});
    const PolydiscAuto h(idperm, hs);
    const PolydiscAuto conj = compose(h, compose(tau, h.inverse()));

    const auto c1 = classify_auto(tau), c2 = classify_auto(conj);
    CHECK(c1.kind == c2.kind);
    CHECK(c1.divergence_rate == doctest::Approx(c2.divergence_rate).epsilon(1e-9));

    std::vector<std::size_t> sp(q);
    std::iota(sp.begin(), sp.end(), std::size_t{0});
    for (std::size_t j = q; j > 1; --j) std::swap(sp[j - 1], sp[rng.index(j)]);
    const PolydiscAuto sigma(sp, std::vector<MoebiusH>(q, MoebiusH::identity()));
    const PolydiscAuto relabeled = compose(sigma, compose(tau, sigma.inverse()));
    const auto c3 = classify_auto(relabeled);
    CHECK(c1.kind == c3.kind);
    CHECK(c1.divergence_rate == doctest::Approx(c3.divergence_rate).epsilon(1e-9));
  }
}

TEST_CASE("step_at: frozen values and isometry invariance") {
  const PolydiscAuto id = PolydiscAuto::identity(2);
  const PolyPoint x({{0.3, 1.0}, {0, 2.0}});
  CHECK(step_at(id, x) == 0.0);

  const PolydiscAuto trans({0}, {MoebiusH::translation(1)});
  const PolyPoint i1(std::vector<Complex>{Complex(0, 1)});
  CHECK(step_at(trans, i1) ==
        doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));

  // The defining sequence k(tau^n x, tau^{n+1} x) is constant for isometries.
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const PolydiscAuto tau = random_auto_he(rng, 4);
    const PolyPoint z = random_polypoint(rng, tau.dim());
    const double s0 = step_at(tau, z);
    PolyPoint w = z;
    for (int n = 0; n < 5; ++n) w = tau(w);
    CHECK(dist_poly(w, tau(w)) == doctest::Approx(s0).epsilon(1e-9));
  }
}

TEST_CASE("step_at agrees with the orbit step estimator") {
  Rng rng(39);
  for (int t = 0; t < 50; ++t) {
    const PolydiscAuto tau = random_auto_he(rng, 5);
    const PolyPoint x = random_polypoint(rng, tau.dim());
    const double direct = step_at(tau, x);
    const double estimated = estimate_step(HoloSelfMap::from_auto(tau), x, 3).s_estimate;
    CHECK(std::abs(direct - estimated) < 1e-9);
  }
}

TEST_CASE("elliptic automorphisms have fixed points") {
  Rng rng(38);
  for (int t = 0; t < 40; ++t) {
    std::vector<CycleAuto> cycles;
    std::size_t left = 1 + rng.index(5);
    while (left > 0) {
      const std::size_t k = 1 + rng.index(std::min<std::size_t>(left, 3));
      cycles.push_back(random_cycle_with_kind(rng, k, GenKind::Elliptic));
      left -= k;
    }
    const PolydiscAuto tau = assemble_auto(rng, cycles);
    REQUIRE(classify_auto(tau).kind == AutoKind::Elliptic);
    const auto fp = fixed_point(tau);
    REQUIRE(fp.has_value());
    CHECK(dist_poly(*fp, tau(*fp)) < 1e-9);
  }
  CHECK(!fixed_point(two_cycle_plus_translation()).has_value());
}
