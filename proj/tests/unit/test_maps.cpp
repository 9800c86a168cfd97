#include <doctest.h>

#include "support.hpp"

using namespace cwtest;

namespace {

// Direct compositions through the curve pair, independent of the cached breakpoints.
struct Direct {
  const CurvePair& cv;
  double phi(double s) const {
    return cv.alpha_minus().forward(cv.alpha_plus().inverse(
        cv.beta_plus().forward(cv.beta_minus().inverse(s))));
  }
  double xi(double c) const {
    return cv.beta_plus().forward(cv.beta_minus().inverse(
        cv.alpha_minus().forward(cv.alpha_plus().inverse(c))));
  }
  double a1() const { return cv.alpha_minus().forward(cv.alpha_plus().inverse(1.0)); }
  double c1() const { return cv.beta_plus().forward(cv.beta_minus().inverse(0.0)); }
};

}  // namespace

TEST_CASE("phi_iterate") {
  CHECK(cylinder()->phi_iterate(3, 0.5) == doctest::Approx(6.5).epsilon(1e-14));
  CHECK(cylinder()->phi_iterate(0, 0.7) == 0.7);
  const auto m = make_maps(BoundaryFn::constant(0.0), BoundaryFn::affine(0.5, 1.0), 30.0);
  CHECK(std::fabs(m->phi_iterate(1, 0.0) - 4.0) <= 1e-12);
  // beta+ (beta-)^-1 (s) = 3 s + 4 recomposed by hand
  for (double s : {0.0, 0.3, 1.7}) CHECK(m->phi(s) == doctest::Approx(3.0 * s + 4.0));
  CHECK(m->phi_iterate(2, 0.0) == doctest::Approx(16.0));

  // Non-affine pair: numeric iteration agrees with repeated composition.
  const auto w = make_maps(BoundaryFn::sinusoidal(0.1, 1.0, 0.0),
                           BoundaryFn::sinusoidal(0.2, 0.7, 1.0), 40.0);
  Direct d{w->curves()};
  double s = 0.4;
  for (int n = 1; n <= 5; ++n) {
    s = d.phi(s);
    CHECK(w->phi_iterate(n, 0.4) == doctest::Approx(s).epsilon(1e-11));
  }
  CHECK_THROWS_AS(w->phi_iterate(200, 0.4), HorizonExceeded);
}

TEST_CASE("minimal and secondary control times") {
  CHECK(std::fabs(cylinder()->min_control_time() - 2.0) <= 1e-12);
  const auto m1 = make_maps(BoundaryFn::affine(0.2, 0.0), BoundaryFn::affine(0.1, 1.0), 5.0);
  CHECK(m1->min_control_time() == doctest::Approx(2.0 / (0.9 * 1.2)).epsilon(1e-12));
  const auto m2 = make_maps(BoundaryFn::constant(0.0), BoundaryFn::affine(0.5, 1.0), 30.0);
  CHECK(std::fabs(m2->min_control_time() - 4.0) <= 1e-11);

  CHECK(std::fabs(cylinder()->secondary_time() - 2.0) <= 1e-12);
  const auto m3 = make_maps(BoundaryFn::affine(0.2, 0.0), BoundaryFn::constant(1.0), 4.0);
  CHECK(m3->secondary_time() == doctest::Approx(1.0 + 0.8 / 1.2).epsilon(1e-12));
  // (beta-)^-1 (1) with beta- (t) = 0.5 t - 1, checked by bisection
  const double ref = bisect([](double t) { return 0.5 * t - 1.0 - 1.0; }, 0.0, 30.0);
  CHECK(std::fabs(m2->secondary_time() - ref) <= 1e-11);
  CHECK(std::fabs(m2->secondary_time() - 4.0) <= 1e-11);

  const auto short_h = make_maps(BoundaryFn::constant(0.0), BoundaryFn::constant(1.0), 1.5);
  CHECK_THROWS_AS(short_h->min_control_time(), HorizonExceeded);
}

TEST_CASE("classify") {
  const auto c = cylinder();
  CHECK(c->classify(2.5, 0.2) == std::pair{RegionId{Family::p, 3}, RegionId{Family::q, 2}});
  CHECK(c->classify(0.1, 0.5) == std::pair{RegionId{Family::p, 0}, RegionId{Family::q, 0}});
  const auto m = make_maps(BoundaryFn::constant(0.0), BoundaryFn::affine(0.5, 1.0), 30.0);
  CHECK(m->classify(3.5, 0.2) == std::pair{RegionId{Family::p, 2}, RegionId{Family::q, 1}});
  CHECK_THROWS_AS(c->classify(0.5, 1.2), DomainError);
  CHECK_THROWS_AS(c->classify(-0.5, 0.2), DomainError);
  // A point on a boundary belongs to the right-hand region.
  CHECK(c->p_region(2.0) == 3);
  CHECK(c->p_region(2.0 - 5e-13) == 3);
  CHECK(c->p_region(2.0 - 1e-9) == 2);
}

TEST_CASE("regions tile the domain") {
  std::vector<std::shared_ptr<const ReflectionMaps>> all{
      cylinder(60.0),
      make_maps(BoundaryFn::affine(0.3, 0.0), BoundaryFn::affine(0.6, 1.0), 60.0),
      make_maps(BoundaryFn::affine(-0.4, 0.0), BoundaryFn::affine(0.2, 1.0), 60.0),
      make_maps(BoundaryFn::sinusoidal(0.2, 1.3, 0.0), BoundaryFn::sinusoidal(0.3, 0.8, 1.0), 60.0)};
  std::mt19937_64 rng(11);
  for (const auto& m : all) {
    const CurvePair& cv = m->curves();
    Direct d{cv};
    // Region interval table recomputed from the maps.
    auto p_table = [&](int n) -> Interval {
      if (n == 0) return {-1e300, 0.0};
      const int k = (n - 1) / 2;
      double lo = 0.0, hi = d.a1();
      for (int i = 0; i < k; ++i) {
        lo = d.phi(lo);
        hi = d.phi(hi);
      }
      if (n % 2 == 1) return {lo, hi};
      return {hi, d.phi(lo)};
    };
    auto q_table = [&](int n) -> Interval {
      if (n == 0) return {-1e300, 1.0};
      const int k = (n - 1) / 2;
      double lo = 1.0, hi = d.c1();
      for (int i = 0; i < k; ++i) {
        lo = d.xi(lo);
        hi = d.xi(hi);
      }
      if (n % 2 == 1) return {lo, hi};
      return {hi, d.xi(lo)};
    };
    for (int i = 0; i < 10000; ++i) {
      const auto [t, x] = random_point(cv, rng, 9.0);
      const auto [pr, qr] = m->classify(t, x);
      const Interval pi = p_table(pr.index);
      const Interval qi = q_table(qr.index);
      const double s = t - x, c = t + x;
      REQUIRE(s >= pi.lo - 1e-12);
      REQUIRE(s < pi.hi + 1e-12);
      REQUIRE(c >= qi.lo - 1e-12);
      REQUIRE(c < qi.hi + 1e-12);
    }
    // Adjacency of cached intervals.
    for (int n = 0; n + 1 < static_cast<int>(m->p_breakpoints().size()); ++n)
      CHECK(m->p_interval(n).hi == m->p_interval(n + 1).lo);
    for (int n = 0; n + 1 < static_cast<int>(m->q_breakpoints().size()); ++n)
      CHECK(m->q_interval(n).hi == m->q_interval(n + 1).lo);
    auto br = m->p_breakpoints();
    for (std::size_t i = 1; i < br.size(); ++i) CHECK(br[i] > br[i - 1]);
    CHECK(m->check_increasing().ok);
  }
}

TEST_CASE("xi is conjugate to phi through the beta transfer") {
  const auto m = make_maps(BoundaryFn::sinusoidal(0.15, 2.0, 0.0),
                           BoundaryFn::sinusoidal(-0.25, 1.5, 1.0), 30.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = 1.0 + 4.0 * i / 99.0;
    const double rhs = m->beta_transfer(m->phi(m->beta_transfer_inverse(c)));
    worst = std::max(worst, std::fabs(m->xi(c) - rhs));
  }
  CHECK(worst <= 1e-10);
  for (int i = 0; i < 100; ++i) {
    const double s = 6.0 * i / 99.0;
    CHECK(std::fabs(m->phi(m->phi_inverse(s + 2.5)) - (s + 2.5)) <= 1e-10);
    CHECK(std::fabs(m->xi(m->xi_inverse(s + 2.5)) - (s + 2.5)) <= 1e-10);
  }
}

TEST_CASE("minimal time matches the first return of the main characteristic") {
  for (const auto& m :
       {cylinder(), make_maps(BoundaryFn::affine(0.2, 0.0), BoundaryFn::affine(0.1, 1.0), 5.0),
        make_maps(BoundaryFn::sinusoidal(0.3, 1.0, 0.0), BoundaryFn::sinusoidal(0.2, 2.0, 1.0),
                  10.0)}) {
    CHECK(std::fabs(m->min_control_time() - main_characteristic_return_time(m->curves())) <= 1e-9);
  }
}

TEST_CASE("affine pairs use the closed form") {
  const auto m = make_maps(BoundaryFn::affine(0.1, 0.0), BoundaryFn::affine(0.5, 1.0), 50.0);
  REQUIRE(m->affine_phi().has_value());
  const double r = 0.1, k = 0.5;
  CHECK(m->affine_phi()->a == doctest::Approx((1 + k) * (1 - r) / ((1 - k) * (1 + r))));
  CHECK(m->affine_phi()->b == doctest::Approx(2 * (1 - r) / ((1 - k) * (1 + r))));
  Direct d{m->curves()};
  for (double s : {0.0, 0.5, 3.0}) CHECK(m->phi(s) == doctest::Approx(d.phi(s)).epsilon(1e-12));
  // No horizon limit on the closed form.
  CHECK(std::isfinite(m->phi_iterate(40, 0.2)));
  CHECK(cylinder()->phi_iterate(1000, 0.0) == doctest::Approx(2000.0));
}
