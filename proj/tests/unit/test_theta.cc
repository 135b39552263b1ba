#include <cmath>
#include <numbers>

#include "bitangent/errors.hpp"
#include "bitangent/theta.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bitangent;
using bitangent::testing::random_period;

namespace {

constexpr double kPi = std::numbers::pi;

// Genus-1 theta constant with characteristic [a, b] and its z-derivative at 0.
cplx theta1(cplx tau, int a, int b, bool derivative = false) {
  cplx sum = 0;
  for (int n = -40; n <= 40; ++n) {
    const double x = n + 0.5 * a;
    const cplx term = std::exp(cplx(0, kPi) * (x * x * tau + x * static_cast<double>(b)));
    sum += derivative ? cplx(0, 2 * kPi * x) * term : term;
  }
  return sum;
}

// Sum of |exp(pi i x.tau.x)| (optionally weighted by 2 pi |x|_inf) over
// R < |x|_inf <= R + extra, x = p + shift/2.
double explicit_tail(const Eigen::Matrix3d& im, int R, int extra, bool gradient) {
  double worst = 0;
  for (int shift = 0; shift < 8; ++shift) {
    const Eigen::Vector3d h((shift >> 2) & 1, (shift >> 1) & 1, shift & 1);
    double sum = 0;
    const int B = R + extra + 1;
    for (int p0 = -B; p0 <= B; ++p0)
      for (int p1 = -B; p1 <= B; ++p1)
        for (int p2 = -B; p2 <= B; ++p2) {
          const Eigen::Vector3d x = Eigen::Vector3d(p0, p1, p2) + 0.5 * h;
          const double inf = x.cwiseAbs().maxCoeff();
          if (inf <= R || inf > R + extra) continue;
          const double w = std::exp(-kPi * x.dot(im * x));
          sum += gradient ? 2 * kPi * inf * w : w;
        }
    worst = std::max(worst, sum);
  }
  return worst;
}

Eigen::Matrix3cd i_identity() { return cplx(0, 1) * Eigen::Matrix3cd::Identity(); }

}  // namespace

TEST_CASE("period matrix validation") {
  CHECK_NOTHROW(PeriodMatrix(i_identity()));
  Eigen::Matrix3cd t = i_identity();
  t(0, 1) = 0.1;
  CHECK_THROWS_AS(PeriodMatrix{t}, InputError);
  t = i_identity();
  t(2, 2) = cplx(0, -0.1);
  CHECK_THROWS_AS(PeriodMatrix{t}, InputError);
  t = i_identity();
  t(1, 1) = 0.0;
  CHECK_THROWS_AS(PeriodMatrix{t}, InputError);
  t = i_identity();
  t(0, 0) = cplx(std::nan(""), 1);
  CHECK_THROWS_AS(PeriodMatrix{t}, InputError);
  CHECK(PeriodMatrix(i_identity()).min_imag_eigenvalue() == doctest::Approx(1.0));
}

TEST_CASE("truncation config validation") {
  TruncationConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = {};
  c.safety = 0.5;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = {};
  c.max_radius = 2;
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("truncation radius") {
  TruncationConfig c;
  c.tol = 1e-14;
  const PeriodMatrix id(i_identity());
  const int R = truncation_radius(id, c);
  CHECK(R <= 5);
  CHECK(tail_bound(id, R) * c.safety <= c.tol);
  const Eigen::Matrix3d im = Eigen::Matrix3d::Identity();
  CHECK(explicit_tail(im, R, 20, false) <= c.tol);
  CHECK(explicit_tail(im, R, 20, true) <= c.tol);

  const TruncationConfig def;
  const int R1 = truncation_radius(id, def);
  const int R4 = truncation_radius(PeriodMatrix(0.25 * i_identity()), def);
  CHECK(R4 >= 2 * R1);

  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const PeriodMatrix tau = random_period(seed, 0.3);
    const int r = truncation_radius(tau, def);
    CHECK(explicit_tail(tau.matrix().imag(), r, 12, true) <= def.tol);
    CHECK(tail_bound(tau, r) <= tail_bound(tau, r - 1));
  }

  TruncationConfig tight;
  tight.max_radius = 3;
  CHECK_THROWS_AS(truncation_radius(PeriodMatrix(0.01 * i_identity()), tight), RadiusOverflow);
  CHECK_THROWS_AS(build_theta_table(PeriodMatrix(0.01 * i_identity()), tight), RadiusOverflow);
}

TEST_CASE("diagonal period matrices factor into genus-1 values") {
  const PeriodMatrix id(i_identity());
  const cplx t3 = theta1(cplx(0, 1), 0, 0);
  CHECK(std::abs(theta_constant(id, Characteristic()) - t3 * t3 * t3) < 1e-12);
  CHECK(std::abs(theta_constant(id, Characteristic::parse("[110,110]"))) < 1e-15);

  Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
  t(0, 0) = cplx(0.3, 1.1);
  t(1, 1) = cplx(-0.2, 0.8);
  t(2, 2) = cplx(0.45, 1.3);
  const PeriodMatrix diag(t);
  const ThetaTable table = build_theta_table(diag);
  for (Characteristic m : all_characteristics()) {
    cplx f[3], df[3];
    for (int k = 0; k < 3; ++k) {
      f[k] = theta1(t(k, k), m.top_bit(k), m.bottom_bit(k));
      df[k] = theta1(t(k, k), m.top_bit(k), m.bottom_bit(k), true);
    }
    if (is_even(m)) {
      const cplx expected = f[0] * f[1] * f[2];
      if (std::abs(expected) > 1e-8) CHECK(testing::rel(table.constant(m), expected) < 1e-10);
      else CHECK(std::abs(table.constant(m)) < 1e-12);
    } else {
      const Eigen::Vector3cd& g = table.gradient(m);
      const cplx expected[3] = {df[0] * f[1] * f[2], f[0] * df[1] * f[2], f[0] * f[1] * df[2]};
      for (int k = 0; k < 3; ++k) CHECK(std::abs(g(k) - expected[k]) < 1e-10 * (1 + std::abs(expected[k])));
    }
  }

  // Exactly one odd coordinate pair: only that slot of the gradient survives.
  const Eigen::Vector3cd& g = table.gradient(Characteristic::parse("[100,100]"));
  CHECK(std::abs(g(0)) > 0.1);
  CHECK(std::abs(g(1)) < 1e-14);
  CHECK(std::abs(g(2)) < 1e-14);
}

TEST_CASE("conjugation symmetry") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PeriodMatrix tau = random_period(seed, 0.3);
    const PeriodMatrix mirror(-tau.matrix().conjugate());
    for (Characteristic m : even_characteristics())
      CHECK(std::abs(std::conj(theta_constant(tau, m)) - theta_constant(mirror, m)) < 1e-12);
  }
}

TEST_CASE("gradients agree with central differences") {
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const PeriodMatrix tau = random_period(seed, 0.3);
    const ThetaTable table = build_theta_table(tau);
    const double eps = 1e-4;
    for (Characteristic n : odd_characteristics()) {
      const Eigen::Vector3cd& g = table.gradient(n);
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3cd e = Eigen::Vector3cd::Zero();
        e(k) = eps;
        const cplx fd = (detail::theta_series(tau, n, e, table.radius()) -
                         detail::theta_series(tau, n, -e, table.radius())) / (2 * eps);
        CHECK(std::abs(g(k) - fd) < 1e-6);
      }
      Eigen::Vector3cd z(cplx(0.1, 0.2), cplx(-0.3, 0.05), cplx(0.2, -0.1));
      CHECK(std::abs(detail::theta_series(tau, n, -z, table.radius()) +
                     detail::theta_series(tau, n, z, table.radius())) < 1e-12);
    }
    for (Characteristic m : even_characteristics()) {
      const Eigen::Vector3cd z(cplx(0.1, 0.2), cplx(-0.3, 0.05), cplx(0.2, -0.1));
      CHECK(std::abs(detail::theta_series(tau, m, Eigen::Vector3cd::Zero(), table.radius()) - table.constant(m)) <
            1e-13);
      CHECK(std::abs(detail::theta_series(tau, m, -z, table.radius()) -
                     detail::theta_series(tau, m, z, table.radius())) < 1e-12);
    }
  }
}

TEST_CASE("odd theta constants vanish") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PeriodMatrix tau = random_period(seed);
    const ThetaTable table = build_theta_table(tau);
    for (Characteristic n : odd_characteristics())
      CHECK(std::abs(detail::theta_series(tau, n, Eigen::Vector3cd::Zero(), table.radius())) < table.tail_bound());
  }
}

TEST_CASE("parity preconditions") {
  const PeriodMatrix tau = random_period(1);
  CHECK_THROWS_AS(theta_constant(tau, Characteristic::from_label(77)), OddCharacteristic);
  CHECK_THROWS_AS(theta_gradient(tau, Characteristic::from_label(0)), EvenCharacteristic);
  const ThetaTable table = build_theta_table(tau);
  CHECK_THROWS_AS(table.constant(77), OddCharacteristic);
  CHECK_THROWS_AS(table.gradient(0), EvenCharacteristic);
}

TEST_CASE("theta table") {
  const PeriodMatrix tau = random_period(3);
  const ThetaTable a = build_theta_table(tau);
  const ThetaTable b = build_theta_table(tau);
  CHECK(a.tail_bound() * TruncationConfig{}.safety <= TruncationConfig{}.tol);
  int evens = 0, odds = 0;
  for (Characteristic m : all_characteristics()) {
    if (is_even(m)) {
      ++evens;
      CHECK(a.constant(m) == b.constant(m));
      CHECK(a.constant(m) == theta_constant(tau, m));
    } else {
      ++odds;
      CHECK(a.gradient(m) == b.gradient(m));
      CHECK(a.gradient(m) == theta_gradient(tau, m));
    }
  }
  CHECK(evens == 36);
  CHECK(odds == 28);

  TruncationConfig half;
  half.tol = 0.5e-12;
  const ThetaTable c = build_theta_table(tau, half);
  for (Characteristic m : even_characteristics()) CHECK(std::abs(c.constant(m) - a.constant(m)) <= a.tail_bound());
  for (Characteristic n : odd_characteristics())
    CHECK((c.gradient(n) - a.gradient(n)).cwiseAbs().maxCoeff() <= a.tail_bound());

  const ThetaTable s = a.with_scaled_gradients(cplx(0, 2));
  CHECK(s.gradient(77) == cplx(0, 2) * a.gradient(77));
  CHECK(s.constant(0) == a.constant(0));
}

TEST_CASE("degeneracy indicator") {
  CHECK(degeneracy_indicator(build_theta_table(PeriodMatrix(i_identity()))) < 1e-10);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double ind = degeneracy_indicator(build_theta_table(random_period(seed)));
    CHECK(ind > 1e-3);
    CHECK(ind <= 1.0);
  }
}
