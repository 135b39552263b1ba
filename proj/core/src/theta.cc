#include "bitangent/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bitangent/errors.hpp"

namespace bitangent {
namespace {

constexpr double kPi = std::numbers::pi;

// 1-D Gaussian sums over t in Z + shift:
//   all0 = sum e^{-pi l t^2},   all1 = sum |t| e^{-pi l t^2},
//   tail0/tail1 = the same restricted to |t| > radius.
struct GaussSums {
  double all0 = 0, all1 = 0, tail0 = 0, tail1 = 0;
};

GaussSums gauss_sums(double lambda, double shift, int radius) {
  GaussSums s;
  // Both signs of t contribute symmetrically; walk |t| upwards until terms underflow.
  for (int k = 0;; ++k) {
    const double t = k + shift;
    const double w = std::exp(-kPi * lambda * t * t);
    const double mult = (t == 0.0) ? 1.0 : 2.0;
    s.all0 += mult * w;
    s.all1 += mult * t * w;
    if (t > radius) {
      s.tail0 += mult * w;
      s.tail1 += mult * t * w;
    }
    if (t > radius && w < 1e-300) break;
    if (k > 1000000) break;
  }
  return s;
}

// Partial sums for one top half m': constants and gradients for all 8 bottom halves.
struct TopSums {
  std::array<cplx, 8> constant{};
  std::array<Eigen::Vector3cd, 8> gradient{};
};

constexpr std::array<cplx, 4> kPowersOfI = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

TopSums sum_top(const Eigen::Matrix3cd& tau, unsigned top, int radius) {
  TopSums out;
  for (auto& g : out.gradient) g.setZero();
  const int a[3] = {static_cast<int>((top >> 2) & 1), static_cast<int>((top >> 1) & 1),
                    static_cast<int>(top & 1)};
  // p_k ranges so that |p_k + a_k/2| <= radius.
  int lo[3], hi[3];
  for (int k = 0; k < 3; ++k) {
    lo[k] = -radius;
    hi[k] = a[k] ? radius - 1 : radius;
  }
  for (int p0 = lo[0]; p0 <= hi[0]; ++p0) {
    for (int p1 = lo[1]; p1 <= hi[1]; ++p1) {
      for (int p2 = lo[2]; p2 <= hi[2]; ++p2) {
        // twice the lattice point, exact integers
        const int h[3] = {2 * p0 + a[0], 2 * p1 + a[1], 2 * p2 + a[2]};
        const Eigen::Vector3d x(0.5 * h[0], 0.5 * h[1], 0.5 * h[2]);
        const cplx quad = x.cast<cplx>().dot(tau * x.cast<cplx>());
        const cplx e = std::exp(cplx(0, kPi) * quad);
        for (unsigned bottom = 0; bottom < 8; ++bottom) {
          // exp(pi i x.m'') = i^{2 x.m''}
          const int b[3] = {static_cast<int>((bottom >> 2) & 1), static_cast<int>((bottom >> 1) & 1),
                            static_cast<int>(bottom & 1)};
          const int power = ((h[0] * b[0] + h[1] * b[1] + h[2] * b[2]) % 4 + 4) % 4;
          const cplx term = e * kPowersOfI[static_cast<std::size_t>(power)];
          out.constant[bottom] += term;
          const cplx w = cplx(0, 2 * kPi) * term;
          out.gradient[bottom] += w * x.cast<cplx>();
        }
      }
    }
  }
  return out;
}

}  // namespace

double min_imag_eigenvalue(const Eigen::Matrix3cd& tau) {
  const Eigen::Matrix3d im = 0.5 * (tau.imag() + tau.imag().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(im, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

PeriodMatrix::PeriodMatrix(const Eigen::Matrix3cd& tau) : tau_(tau) {
  if (!tau_.allFinite()) throw InputError("period matrix has non-finite entries");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (tau_(i, j) != tau_(j, i)) throw InputError("period matrix is not symmetric");
  lambda_min_ = bitangent::min_imag_eigenvalue(tau_);
  if (!(lambda_min_ > 0.0))
    throw InputError("imaginary part of the period matrix is not positive definite (lambda_min = " +
                     std::to_string(lambda_min_) + ")");
}

void TruncationConfig::validate() const {
  if (!(tol > 0.0)) throw InputError("truncation tolerance must be positive");
  if (!(safety >= 1.0)) throw InputError("truncation safety factor must be >= 1");
  if (max_radius < 3) throw InputError("max_radius must be >= 3");
}

double tail_bound(const PeriodMatrix& tau, int radius) {
  const double lambda = tau.min_imag_eigenvalue();
  // Every discarded point has some |x_k| > radius. For each coordinate k,
  // bound sum e^{-pi l |x|^2} (1 + 2 pi (|x_1|+|x_2|+|x_3|)) over |x_k| > radius
  // by products of 1-D sums, maximized over both half-integral shifts.
  GaussSums worst;
  for (double shift : {0.0, 0.5}) {
    const GaussSums s = gauss_sums(lambda, shift, radius);
    worst.all0 = std::max(worst.all0, s.all0);
    worst.all1 = std::max(worst.all1, s.all1);
    worst.tail0 = std::max(worst.tail0, s.tail0);
    worst.tail1 = std::max(worst.tail1, s.tail1);
  }
  const double one_axis = worst.tail0 * worst.all0 * worst.all0 +
                          2 * kPi * (worst.tail1 * worst.all0 * worst.all0 +
                                     2 * worst.tail0 * worst.all1 * worst.all0);
  return 3 * one_axis;
}

int truncation_radius(const PeriodMatrix& tau, const TruncationConfig& cfg) {
  cfg.validate();
  for (int r = 1; r <= cfg.max_radius; ++r)
    if (cfg.safety * tail_bound(tau, r) <= cfg.tol) return r;
  throw RadiusOverflow("theta series needs a radius above " + std::to_string(cfg.max_radius) +
                       " (lambda_min(Im tau) = " + std::to_string(tau.min_imag_eigenvalue()) + ")");
}

cplx theta_constant(const PeriodMatrix& tau, Characteristic m, const TruncationConfig& cfg) {
  if (is_odd(m)) throw OddCharacteristic("theta constant requested for odd " + m.to_string());
  const int r = truncation_radius(tau, cfg);
  return sum_top(tau.matrix(), m.top(), r).constant[m.bottom()];
}

Eigen::Vector3cd theta_gradient(const PeriodMatrix& tau, Characteristic n, const TruncationConfig& cfg) {
  if (is_even(n)) throw EvenCharacteristic("theta gradient requested for even " + n.to_string());
  const int r = truncation_radius(tau, cfg);
  return sum_top(tau.matrix(), n.top(), r).gradient[n.bottom()];
}

ThetaTable::ThetaTable(const PeriodMatrix& tau, int radius, double tail_bound,
                       const std::array<cplx, 64>& constants,
                       const std::array<Eigen::Vector3cd, 64>& gradients)
    : tau_(tau), radius_(radius), tail_bound_(tail_bound), constants_(constants), gradients_(gradients) {
  for (int i = 0; i < 64; ++i) {
    const auto m = Characteristic::from_index(i);
    if (is_even(m)) gradients_[static_cast<std::size_t>(i)].setZero();
    else constants_[static_cast<std::size_t>(i)] = 0.0;
  }
}

cplx ThetaTable::constant(Characteristic m) const {
  if (is_odd(m)) throw OddCharacteristic("no theta constant stored for odd " + m.to_string());
  return constants_[static_cast<std::size_t>(m.index())];
}

const Eigen::Vector3cd& ThetaTable::gradient(Characteristic n) const {
  if (is_even(n)) throw EvenCharacteristic("no gradient stored for even " + n.to_string());
  return gradients_[static_cast<std::size_t>(n.index())];
}

ThetaTable ThetaTable::with_scaled_gradients(cplx s) const {
  auto g = gradients_;
  for (auto& v : g) v *= s;
  return ThetaTable(tau_, radius_, tail_bound_, constants_, g);
}

ThetaTable build_theta_table(const PeriodMatrix& tau, const TruncationConfig& cfg) {
  const int r = truncation_radius(tau, cfg);
  std::array<cplx, 64> constants{};
  std::array<Eigen::Vector3cd, 64> gradients;
  for (unsigned top = 0; top < 8; ++top) {
    const TopSums s = sum_top(tau.matrix(), top, r);
    for (unsigned bottom = 0; bottom < 8; ++bottom) {
      const auto idx = static_cast<std::size_t>(top * 8 + bottom);
      constants[idx] = s.constant[bottom];
      gradients[idx] = s.gradient[bottom];
    }
  }
  return ThetaTable(tau, r, tail_bound(tau, r), constants, gradients);
}

double degeneracy_indicator(const ThetaTable& table) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Characteristic m : even_characteristics()) {
    const double a = std::abs(table.constant(m));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

namespace detail {

cplx theta_series(const PeriodMatrix& tau, Characteristic m, const Eigen::Vector3cd& z, int radius) {
  // Terms at x and -x share exp(pi i x.tau.x) and carry conjugate phases
  // i^h, i^-h, so each pair is combined before it is accumulated.
  static constexpr std::array<cplx, 4> kI{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  const Eigen::Vector3d shift(0.5 * m.top_bit(0), 0.5 * m.top_bit(1), 0.5 * m.top_bit(2));
  cplx sum = 0.0;
  for (int p0 = -radius - 1; p0 <= radius; ++p0)
    for (int p1 = -radius - 1; p1 <= radius; ++p1)
      for (int p2 = -radius - 1; p2 <= radius; ++p2) {
        const Eigen::Vector3d x = Eigen::Vector3d(p0, p1, p2) + shift;
        if (x.cwiseAbs().maxCoeff() > radius) continue;
        const bool self = x.isZero();
        const double lead = x(0) != 0 ? x(0) : (x(1) != 0 ? x(1) : x(2));
        if (!self && lead < 0) continue;
        int h = 0;
        const int p[3] = {p0, p1, p2};
        for (int k = 0; k < 3; ++k) h += (2 * p[k] + m.top_bit(k)) * m.bottom_bit(k);
        const cplx ph = kI[static_cast<std::size_t>(((h % 4) + 4) % 4)];
        const cplx quad = x.cast<cplx>().transpose() * tau.matrix() * x.cast<cplx>();
        const cplx a = std::exp(cplx(0, kPi) * quad);
        const cplx lin = (x.cast<cplx>().array() * z.array()).sum();
        const cplx w = std::exp(cplx(0, 2 * kPi) * lin);
        if (self) {
          sum += a * w * ph;
        } else {
          const cplx winv = std::exp(cplx(0, -2 * kPi) * lin);
          sum += a * (w * ph + winv * std::conj(ph));
        }
      }
  return sum;
}

}  // namespace detail
}  // namespace bitangent
