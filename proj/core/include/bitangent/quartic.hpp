#pragma once

// Plane quartics obtained as 4x4 minors of a matrix of linear forms, and
// the bitangency test for their lines.

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "bitangent/bitangent_matrix.hpp"
#include "bitangent/polynomial.hpp"

namespace bitangent {

/// A degree-4 form with its 15 coefficients in graded-lexicographic order
/// (c400, c310, c301, c220, c211, c202, c130, ..., c004), divided once by its
/// largest-modulus coefficient.
class HomogeneousQuartic {
 public:
  struct Normalization {
    std::size_t pivot = 0;  // coefficient that became 1
    cplx divisor = 1.0;     // the raw value of that coefficient
  };

  /// Throws ZeroForm if every coefficient is zero.
  static HomogeneousQuartic normalized(const TernaryForm& raw);

  const std::array<cplx, 15>& coeffs() const { return coeffs_; }
  const Normalization& normalization() const { return norm_; }
  TernaryForm form() const;

  cplx operator()(const Eigen::Vector3cd& z) const { return form()(z); }
  Eigen::Vector3cd gradient(const Eigen::Vector3cd& z) const { return form().gradient(z); }

  /// (a, b, c) for coefficient k.
  static std::array<int, 3> monomial(std::size_t k) { return TernaryForm::exponents(4, k); }

 private:
  std::array<cplx, 15> coeffs_{};
  Normalization norm_;
};

/// Restriction of a quartic to a line ker(l), parametrized as z = s u + t v
/// with {u, v} an orthonormal basis of the kernel. coeffs[k] multiplies s^{4-k} t^k.
struct BinaryQuartic {
  std::array<cplx, 5> coeffs{};
  Eigen::Vector3cd u = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd v = Eigen::Vector3cd::Zero();

  Eigen::Vector3cd point(const Eigen::Vector2cd& st) const { return st(0) * u + st(1) * v; }
};

/// Expands det of the 4x4 submatrix on `rows` x `cols` (24 products of four
/// linear forms). Throws ZeroMinor if the result vanishes relative to the
/// size of its entries (`zero_tol`).
HomogeneousQuartic minor_quartic(const FormMatrix& m, const std::array<int, 4>& rows,
                                 const std::array<int, 4>& cols, double zero_tol = 1e-12);

/// min over s of |q1 - s q2| / |q1| (Euclidean norm of the coefficient vectors).
double proportionality(const HomogeneousQuartic& q1, const HomogeneousQuartic& q2);

/// The 4x4 matrix congruent to A(z): the top-left block of the normalized
/// assembly divided by D(77,31,26), with every scalar taken from its closed
/// form. Forms carry the characteristics of `m`'s layout.
FormMatrix extract_Q(const ThetaTable& table, const BitangentMatrix& m, const BuilderTolerances& tol = {});

/// Throws ZeroForm for a zero covector.
BinaryQuartic restrict_to_line(const HomogeneousQuartic& f, const LinearForm& line);

struct DoubleContact {
  bool ok = false;
  double residual = 0;       // the value compared with tol
  double pair_residual = 0;  // root-pair gap / spread of the pairs (chordal metric)
  double fit_residual = -1;  // |g - q^2| / |g| of the fitted square, -1 if not computed
  bool used_fit = false;
  std::array<Eigen::Vector2cd, 2> contacts;  // [s:t] of the two double roots, unit norm
};

/// Whether g is numerically the square of a binary quadratic. Roots come from
/// a companion matrix and are paired to minimize the chordal distance on the
/// Riemann sphere; when the pairing test fails or the two pairs nearly
/// coincide, a least-squares fit g ~ q^2 decides instead.
DoubleContact is_double_contact(const BinaryQuartic& g, double tol = 1e-6);

}  // namespace bitangent
