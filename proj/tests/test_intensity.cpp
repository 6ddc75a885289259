#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/errors.hpp"
#include "core/intensity.hpp"

using namespace rwlab;

TEST_CASE("parameter constraints") {
  IntensityParams p{Model::Straight, 3.0, 2, 1};
  CHECK_NOTHROW(p.validate());
  p.theta = 2.0;  // below 2*sqrt(2)
  CHECK_THROWS_AS(p.validate(), Error);
  p.theta = 5.0;  // above n0^2
  CHECK_THROWS_AS(p.validate(), Error);

  IntensityParams d{Model::Diagonal, 10.0, 4, 1};
  CHECK_NOTHROW(d.validate());
  d.theta = 20.0;  // above n0^2 = 16
  CHECK_THROWS_AS(d.validate(), Error);
  d.theta = 9.0;  // below 10
  CHECK_THROWS_AS(d.validate(), Error);
  // theta <= n0^2 alone does not cap the cutoff mass for the diagonal law.
  IntensityParams bad{Model::Diagonal, 14.0, 4, 1};
  CHECK(bad.cutoff_mass() > 1.0);
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("straight inversion hits the survival boundary") {
  IntensityParams p{Model::Straight, 3.0, 2, 1};
  CHECK(p.cutoff_mass() == doctest::Approx(0.75));
  CHECK(p.invert_survival(0.75) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.invert_survival(0.03) == doctest::Approx(10.0).epsilon(1e-14));
  // Sub-cutoff branch stays in (1, n0] and is continuous at the boundary.
  CHECK(p.invert_survival(0.9999999) > 1.0);
  CHECK(p.invert_survival(0.7500001) <= 2.0);
}

TEST_CASE("diagonal inversion hits the survival boundary") {
  IntensityParams p{Model::Diagonal, 10.0, 4, 1};
  const double p0 = 10.0 * std::log(4.0) / 16.0;
  CHECK(p.cutoff_mass() == doctest::Approx(p0));
  CHECK(p.invert_survival(p0) == doctest::Approx(4.0).epsilon(1e-12));
  // Round trip through the closed-form survival.
  for (const double u : {0.5, 0.1, 0.01, 1e-4, 1e-8}) {
    const double t = p.invert_survival(u);
    CHECK(p.survival(t) == doctest::Approx(u).epsilon(1e-10));
  }
}

TEST_CASE("bisection inverse of the diagonal tail") {
  CHECK(invert_survival_diagonal(10.0 * std::log(4.0) / 16.0, 10.0, 4) ==
        doctest::Approx(4.0).epsilon(1e-10));
  const double t = invert_survival_diagonal(0.01, 10.0, 4);
  CHECK(t > 64.5);
  CHECK(t < 64.7);
  CHECK(10.0 * std::log(t) / (t * t) == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(invert_survival_diagonal(10.0 * std::log(100.0) / 1e4, 10.0, 4) ==
        doctest::Approx(100.0).epsilon(1e-10));
  CHECK_THROWS_AS(invert_survival_diagonal(0.9, 10.0, 4), Error);
  CHECK_THROWS_AS(invert_survival_diagonal(0.0, 10.0, 4), Error);
  // Newton bulk path and the bisection oracle agree.
  IntensityParams p{Model::Diagonal, 10.0, 4, 1};
  for (const double u : {0.4, 0.05, 1e-3, 1e-6}) {
    CHECK(p.invert_survival(u) ==
          doctest::Approx(invert_survival_diagonal(u, 10.0, 4)).epsilon(1e-9));
  }
}

TEST_CASE("site intensity is a pure function of seed and site") {
  const IntensityParams p{Model::Straight, 3.0, 2, 42};
  const Point x{17, -5};
  const double v = site_intensity(p, x);
  CHECK(v > 1.0);
  CHECK(site_intensity(p, x) == v);
  IntensityParams p2 = p;
  p2.seed = 43;
  CHECK(site_intensity(p2, x) != v);
  const IntensityField field(p, {{0, 0}, 4, 4, 1});
  CHECK(field.value(x) == v);
}

TEST_CASE("empirical survival matches the model law within 4 sigma") {
  for (const Model model : {Model::Straight, Model::Diagonal}) {
    const IntensityParams p{model, model == Model::Straight ? 3.0 : 10.0,
                            model == Model::Straight ? 2u : 4u, 7};
    const IntensityField field(p, {{0, 0}, 1000, 1000, 1});
    const std::size_t n = 1000 * 1000;
    // t-grid {n0, 2 n0, 4 n0, ...}.
    for (int k = 0; k < 5; ++k) {
      const double t = static_cast<double>(p.n0) * std::pow(2.0, k);
      std::size_t count = 0;
      for (std::int64_t j = 0; j < 1000; ++j) {
        for (std::int64_t i = 0; i < 1000; ++i) {
          if (field.value({i, j}) > t) ++count;
        }
      }
      const double expect = p.survival(t);
      const double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(n));
      CHECK(std::abs(static_cast<double>(count) / static_cast<double>(n) - expect) <=
            4.0 * sigma + 1e-12);
    }
  }
}

TEST_CASE("values always exceed one") {
  const IntensityParams p{Model::Straight, 3.0, 2, 3};
  const IntensityField field(p, {{0, 0}, 64, 64, 1});
  for (std::int64_t j = 0; j < 64; ++j) {
    for (std::int64_t i = 0; i < 64; ++i) {
      CHECK(field.value({i, j}) > 1.0);
    }
  }
}
