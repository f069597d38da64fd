#include <doctest.h>

#include <cmath>

#include "polydisc/normalform.hpp"
#include "testutil.hpp"

using namespace polydisc;
using namespace polydisc::testutil;


TEST_CASE("normal form: hyperbolic worked example (2z, 2z)") {
  const CycleAuto c({MoebiusH::scaling(2), MoebiusH::scaling(2)});
  const NormalForm nf = normal_form_cycle(c);
  CHECK(nf.kind == AutoKind::Hyperbolic);
  CHECK(nf.lambda == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(nf.g_half[0].is_identity(1e-13));
  CHECK(nf.g_half[1].is_identity(1e-13));

  // g(tau(z)) = (2 z2, 2 z1) = L(g(z)).
  const std::vector<Complex> z{{0.3, 1.2}, {-0.8, 0.5}};
  const auto lhs = nf.apply_conjugator(c.as_auto().apply_coords(z));
  CHECK(std::abs(lhs[0] - 2.0 * z[1]) < 1e-14);
  CHECK(std::abs(lhs[1] - 2.0 * z[0]) < 1e-14);
  CHECK(verify_conjugacy(nf, c, 50, 7) < 1e-12);
}

TEST_CASE("normal form: parabolic worked example (z+1, z+2)") {
  const CycleAuto c({MoebiusH::translation(1), MoebiusH::translation(2)});
  const NormalForm nf = normal_form_cycle(c);
  CHECK(nf.kind == AutoKind::Parabolic);
  CHECK(nf.sign == 1);

  // g = ((2/3) z, (2/3) z - 1/3).
  const Complex z(0.4, 0.9);
  CHECK(std::abs(nf.g_half[0](z) - (2.0 / 3.0) * z) < 1e-14);
  CHECK(std::abs(nf.g_half[1](z) - ((2.0 / 3.0) * z - 1.0 / 3.0)) < 1e-14);
  CHECK(verify_conjugacy(nf, c, 50, 7) < 1e-12);
}

TEST_CASE("normal form: elliptic worked example -1/z") {
  const CycleAuto c({MoebiusH(0, -1, 1, 0)});
  const NormalForm nf = normal_form_cycle(c);
  CHECK(nf.kind == AutoKind::Elliptic);
  CHECK(nf.k == 1);
  CHECK(std::abs(nf.multiplier - Complex(-1, 0)) < 1e-14);
  const Complex z(0.7, 1.4), i(0, 1);
  CHECK(std::abs(nf.g_disc[0](z) - (z - i) / (z + i)) < 1e-14);
  CHECK(verify_conjugacy(nf, c, 50, 7) < 1e-12);
}

TEST_CASE("normal form: canonical input gives residual 0 and identity conjugators") {
  // tau = 2 sigma_2 is already the model.
  const CycleAuto c({MoebiusH::scaling(2), MoebiusH::scaling(2)});
  const NormalForm nf = normal_form_cycle(c);
  CHECK(verify_conjugacy(nf, c, 20, 3) < 1e-13);

  const CycleAuto p({MoebiusH::translation(1), MoebiusH::translation(1)});
  const NormalForm nfp = normal_form_cycle(p);
  CHECK(nfp.sign == 1);
  CHECK(nfp.g_half[0].is_identity(1e-13));
  CHECK(nfp.g_half[1].is_identity(1e-13));
  CHECK(verify_conjugacy(nfp, p, 20, 3) < 1e-13);
}

TEST_CASE("verify_conjugacy detects perturbed conjugators") {
  const CycleAuto c({MoebiusH::translation(1), MoebiusH::translation(2)});
  NormalForm nf = normal_form_cycle(c);
  const MoebiusH g0 = nf.g_half[0];
  nf.g_half[0] = MoebiusH(g0.a(), g0.b() + 1e-3, g0.c(), g0.d());
  CHECK(verify_conjugacy(nf, c, 50, 7) > 1e-4);
}

TEST_CASE("normal form: 200 random cycles, residual < 1e-8") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + rng.index(5);
    const CycleAuto c = random_cycle_raw(rng, k);
    const NormalForm nf = normal_form_cycle(c);
    CHECK(verify_conjugacy(nf, c, 50, 1000 + static_cast<std::uint64_t>(t)) < 1e-8);
  }
}

TEST_CASE("normal form: degenerate elliptic cycle (tau^k = id)") {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const MoebiusH g = random_moebius_mild(rng);
    const CycleAuto c({g, g.inverse()});
    const NormalForm nf = normal_form_cycle(c);
    CHECK(nf.kind == AutoKind::Elliptic);
    CHECK(std::abs(nf.multiplier - Complex(1, 0)) < 1e-12);
    CHECK(verify_conjugacy(nf, c, 30, 9) < 1e-11);
  }
}

TEST_CASE("hyperbolic conjugator is unique up to a positive multiple") {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    const std::size_t k = 1 + rng.index(4);
    const CycleAuto c = random_cycle_with_kind(rng, k, GenKind::Hyperbolic);
    NormalForm nf = normal_form_cycle(c);
    REQUIRE(nf.kind == AutoKind::Hyperbolic);
    const double r = rng.log_uniform(0.2, 5.0);
    for (auto& g : nf.g_half) g = scale_by(r, g);
    CHECK(verify_conjugacy(nf, c, 30, 11) < 1e-9);
  }
}

TEST_CASE("parabolic conjugator is unique up to adding (a,...,a)") {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const std::size_t k = 1 + rng.index(4);
    const CycleAuto c = random_cycle_with_kind(rng, k, GenKind::Parabolic);
    NormalForm nf = normal_form_cycle(c);
    REQUIRE(nf.kind == AutoKind::Parabolic);
    const double a = rng.uniform(-4.0, 4.0);
    for (auto& g : nf.g_half) g = shift_by(a, g);
    CHECK(verify_conjugacy(nf, c, 30, 13) < 1e-9);
  }
}

TEST_CASE("parabolic sign is stable under re-anchoring the cycle") {
  Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    const std::size_t k = 2 + rng.index(3);
    const CycleAuto c = random_cycle_with_kind(rng, k, GenKind::Parabolic);
    const NormalForm nf = normal_form_cycle(c);
    REQUIRE(nf.kind == AutoKind::Parabolic);
    for (std::size_t s = 1; s < k; ++s) {
      const NormalForm nfr = normal_form_cycle(rotate_cycle_anchor(c, s));
      CHECK(nfr.kind == AutoKind::Parabolic);
      CHECK(nfr.sign == nf.sign);
    }
  }
}

TEST_CASE("normal_form_auto: splitting examples") {
  {
    // q = 3: hyperbolic cycle {1,2} with lambda 1/2, parabolic coordinate 3.
    const PolydiscAuto t({1, 0, 2}, {MoebiusH::scaling(2), MoebiusH::scaling(2),
                                     MoebiusH::translation(1)});
    const AutoNormalForm anf = normal_form_auto(t);
    REQUIRE(anf.split.has_value());
    CHECK(anf.split->m == 2);
    CHECK(anf.split->reorder == std::vector<std::size_t>{0, 1, 2});
    CHECK(anf.per_cycle[0].kind == AutoKind::Hyperbolic);
    CHECK(anf.per_cycle[0].lambda == doctest::Approx(0.5));
  }
  {
    const AutoNormalForm anf = normal_form_auto(PolydiscAuto::identity(3));
    CHECK(!anf.split.has_value());
    for (const auto& nf : anf.per_cycle) {
      CHECK(nf.kind == AutoKind::Elliptic);
      CHECK(std::abs(nf.multiplier - Complex(1, 0)) < 1e-14);
    }
  }
  {
    // A single hyperbolic cycle: m = k and identity reorder.
    Rng rng(46);
    const CycleAuto c = random_cycle_with_kind(rng, 4, GenKind::Hyperbolic);
    const AutoNormalForm anf = normal_form_auto(c.as_auto());
    REQUIRE(anf.split.has_value());
    CHECK(anf.split->m == 4);
    CHECK(anf.split->reorder == std::vector<std::size_t>{0, 1, 2, 3});
  }
  {
    // Minimal-dilation cycle listed first even when it appears later.
    const PolydiscAuto t({0, 1}, {MoebiusH::scaling(4), MoebiusH::scaling(9)});
    const AutoNormalForm anf = normal_form_auto(t);
    REQUIRE(anf.split.has_value());
    CHECK(anf.split->m == 1);
    CHECK(anf.split->reorder == std::vector<std::size_t>{1, 0});
  }
}

TEST_CASE("normal_form_auto: per-cycle conjugacy on random automorphisms") {
  Rng rng(47);
  for (int t = 0; t < 25; ++t) {
    const PolydiscAuto tau = random_auto_he(rng, 5);
    const AutoNormalForm anf = normal_form_auto(tau);
    for (std::size_t b = 0; b < anf.per_cycle.size(); ++b)
      CHECK(verify_conjugacy(anf.per_cycle[b], anf.decomposition.blocks[b].cycle, 25, 17) <
            1e-9);
  }
}
