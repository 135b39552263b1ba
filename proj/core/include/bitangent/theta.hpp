#pragma once

// Genus-3 theta constants and gradients of odd theta functions at z = 0,
// evaluated by a truncated lattice sum with a rigorous tail bound.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "bitangent/characteristic.hpp"

namespace bitangent {

using cplx = std::complex<double>;

/// A point of the Siegel upper half space H_3: complex symmetric with
/// positive definite imaginary part.
class PeriodMatrix {
 public:
  /// Throws InputError unless `tau` is exactly symmetric with Im(tau) > 0.
  explicit PeriodMatrix(const Eigen::Matrix3cd& tau);

  const Eigen::Matrix3cd& matrix() const { return tau_; }
  cplx operator()(int i, int j) const { return tau_(i, j); }
  /// Smallest eigenvalue of Im(tau).
  double min_imag_eigenvalue() const { return lambda_min_; }

 private:
  Eigen::Matrix3cd tau_;
  double lambda_min_;
};

/// Smallest eigenvalue of Im(tau) for an arbitrary (possibly invalid) matrix.
double min_imag_eigenvalue(const Eigen::Matrix3cd& tau);

struct TruncationConfig {
  double tol = 1e-12;    // absolute bound on the discarded tail
  double safety = 10.0;  // the tail bound must satisfy safety * bound <= tol
  int max_radius = 60;

  /// Throws InputError if a field is out of range.
  void validate() const;
};

/// Upper bound for the summed moduli of all discarded terms (constant terms
/// and every gradient component) when the lattice sum keeps the points
/// x = p + m'/2 with |x|_inf <= radius, for any half-integral shift m'/2.
double tail_bound(const PeriodMatrix& tau, int radius);

/// Smallest radius R >= 1 whose tail bound, times cfg.safety, is at most cfg.tol.
/// Throws RadiusOverflow when R would exceed cfg.max_radius.
int truncation_radius(const PeriodMatrix& tau, const TruncationConfig& cfg);

/// theta_m(tau, 0) for even m. Throws OddCharacteristic for odd m.
cplx theta_constant(const PeriodMatrix& tau, Characteristic m, const TruncationConfig& cfg = {});

/// grad_z theta_n(tau, z) at z = 0 for odd n. Throws EvenCharacteristic for even n.
Eigen::Vector3cd theta_gradient(const PeriodMatrix& tau, Characteristic n,
                                const TruncationConfig& cfg = {});

/// Theta constants for the 36 even and gradients for the 28 odd characteristics,
/// all summed over one shared radius.
class ThetaTable {
 public:
  ThetaTable(const PeriodMatrix& tau, int radius, double tail_bound,
             const std::array<cplx, 64>& constants,
             const std::array<Eigen::Vector3cd, 64>& gradients);

  const PeriodMatrix& tau() const { return tau_; }
  int radius() const { return radius_; }
  double tail_bound() const { return tail_bound_; }

  /// Throws OddCharacteristic for odd m.
  cplx constant(Characteristic m) const;
  cplx constant(int label) const { return constant(Characteristic::from_label(label)); }
  /// Throws EvenCharacteristic for even n.
  const Eigen::Vector3cd& gradient(Characteristic n) const;
  const Eigen::Vector3cd& gradient(int label) const {
    return gradient(Characteristic::from_label(label));
  }

  /// Copy with every gradient multiplied by s; constants untouched.
  ThetaTable with_scaled_gradients(cplx s) const;

 private:
  PeriodMatrix tau_;
  int radius_;
  double tail_bound_;
  std::array<cplx, 64> constants_;
  std::array<Eigen::Vector3cd, 64> gradients_;
};

/// Throws RadiusOverflow (via truncation_radius) for near-degenerate tau.
ThetaTable build_theta_table(const PeriodMatrix& tau, const TruncationConfig& cfg = {});

/// min |theta_m| / max |theta_m| over the 36 even m; zero on the hyperelliptic
/// locus and for decomposable tau.
double degeneracy_indicator(const ThetaTable& table);

namespace detail {

/// theta_m(tau, z) summed over |p + m'/2|_inf <= radius, for any parity.
/// Minimal z-capable evaluator used for finite-difference checks.
cplx theta_series(const PeriodMatrix& tau, Characteristic m, const Eigen::Vector3cd& z, int radius);

}  // namespace detail

}  // namespace bitangent
