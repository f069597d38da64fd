#include <doctest.h>

#include <cmath>

#include "polydisc/geometry.hpp"
#include "testutil.hpp"

using namespace polydisc;
using namespace polydisc::testutil;

namespace {

// Independent oracle: the raw log-ratio formula, evaluated directly.
double halfplane_logratio(Complex z, Complex w) {
  const double A = std::abs(z - std::conj(w));
  const double B = std::abs(z - w);
  return std::log((A + B) / (A - B));
}

}  // namespace

TEST_CASE("half-plane distance: frozen values") {
  const PointH i{{0, 1}}, two_i{{0, 2}}, one_plus_i{{1, 1}};
  CHECK(dist_halfplane(i, two_i) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(dist_halfplane(i, i) == 0.0);
  // |z - conj(w)| = sqrt(5), |z - w| = 1: log((3+sqrt 5)/2).
  CHECK(dist_halfplane(i, one_plus_i) ==
        doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));
  CHECK(dist_halfplane(i, one_plus_i) ==
        doctest::Approx(halfplane_logratio({0, 1}, {1, 1})).epsilon(1e-14));
}

TEST_CASE("half-plane distance: agrees with the log-ratio formula") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Complex z = rng.halfplane_point(), w = rng.halfplane_point();
    if (std::abs(z - w) < 1e-3) continue;  // oracle itself cancels near the diagonal
    CHECK(halfplane_distance<double>(z, w) ==
          doctest::Approx(halfplane_logratio(z, w)).epsilon(1e-12));
  }
}

TEST_CASE("disc distance: frozen values and Cayley transport") {
  CHECK(dist_disc(PointD{{0, 0}}, PointD{{0.5, 0}}) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(dist_disc(PointD{{0.3, -0.2}}, PointD{{0.3, -0.2}}) == 0.0);

  // Conformal invariance oracle: transport through cayley_inv.
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const double r = rng.uniform(0.0, 0.95);
    const PointD a{{r, 0}}, b{{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)}};
    CHECK(dist_disc(a, b) ==
          doctest::Approx(dist_halfplane(cayley_inv(a), cayley_inv(b))).epsilon(1e-12));
  }
}

TEST_CASE("poly distance: coordinate-wise max, dimension checks") {
  const PolyPoint z({{0, 1}, {0, 1}});
  const PolyPoint w({{0, 2}, {0, 5}});
  CHECK(dist_poly(z, w) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(dist_poly(z, z) == 0.0);

  const PolyPoint z1(std::vector<Complex>{Complex(0.4, 1.7)});
  const PolyPoint w1(std::vector<Complex>{Complex(-0.3, 0.6)});
  CHECK(dist_poly(z1, w1) == dist_halfplane(PointH{{0.4, 1.7}}, PointH{{-0.3, 0.6}}));

  CHECK_THROWS_AS(dist_poly(z, z1), InputError);
}

TEST_CASE("poly distance equals the max exactly") {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const PolyPoint z = random_polypoint(rng, 4), w = random_polypoint(rng, 4);
    double mx = 0;
    for (std::size_t j = 0; j < 4; ++j)
      mx = std::max(mx, dist_halfplane(PointH{z[j]}, PointH{w[j]}));
    CHECK(dist_poly(z, w) == mx);
  }
}

TEST_CASE("cayley: values and round trip") {
  CHECK(std::abs(cayley(PointH{{0, 1}}).value()) == 0.0);
  CHECK(std::abs(cayley(PointH{{0, 2}}).value() - Complex(1.0 / 3.0, 0)) < 1e-15);
  Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    const Complex z = rng.halfplane_point();
    CHECK(std::abs(cayley_inv(cayley(PointH{z})).value() - z) < 1e-14);
  }
}

TEST_CASE("distance axioms on random triples") {
  Rng rng(15);
  for (int t = 0; t < 200; ++t) {
    const PointH a{rng.halfplane_point()}, b{rng.halfplane_point()}, c{rng.halfplane_point()};
    const double ab = dist_halfplane(a, b), ba = dist_halfplane(b, a);
    const double ac = dist_halfplane(a, c), cb = dist_halfplane(c, b);
    CHECK(std::abs(ab - ba) < 1e-10);
    CHECK(ab <= ac + cb + 1e-10);
    CHECK(ab >= 0.0);
  }

  for (int t = 0; t < 200; ++t) {
    const PointD a{cayley(PointH{rng.halfplane_point()}).value()};
    const PointD b{cayley(PointH{rng.halfplane_point()}).value()};
    const PointD c{cayley(PointH{rng.halfplane_point()}).value()};
    CHECK(std::abs(dist_disc(a, b) - dist_disc(b, a)) < 1e-10);
    CHECK(dist_disc(a, b) <= dist_disc(a, c) + dist_disc(c, b) + 1e-10);
  }

  for (int t = 0; t < 200; ++t) {
    const PolyPoint a = random_polypoint(rng, 3), b = random_polypoint(rng, 3),
                    c = random_polypoint(rng, 3);
    CHECK(std::abs(dist_poly(a, b) - dist_poly(b, a)) < 1e-10);
    CHECK(dist_poly(a, b) <= dist_poly(a, c) + dist_poly(c, b) + 1e-10);
  }
}

TEST_CASE("domain validation and boundary flags") {
  CHECK_THROWS_AS(PointH(Complex(1, 0)), InputError);
  CHECK_THROWS_AS(PointH(Complex(1, -2)), InputError);
  CHECK_THROWS_AS(PointD(Complex(1, 0)), InputError);
  CHECK_THROWS_AS(PolyPoint(std::vector<Complex>{}), InputError);
  CHECK(PointH{{0, 1e-13}}.near_boundary());
  CHECK(!PointH{{0, 1e-3}}.near_boundary());
  CHECK(PointD{{1.0 - 1e-13, 0}}.near_boundary());
}
