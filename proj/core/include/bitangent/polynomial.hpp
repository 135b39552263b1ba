#pragma once

// Dense homogeneous forms in two and three variables.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace bitangent {

using cplx = std::complex<double>;

/// Homogeneous form of degree d in (z1, z2, z3). Coefficients are stored in
/// graded-lexicographic order: z1^d, z1^{d-1} z2, z1^{d-1} z3, z1^{d-2} z2^2, ...
class TernaryForm {
 public:
  explicit TernaryForm(int degree);
  static TernaryForm linear(const Eigen::Vector3cd& c);

  int degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Position of z1^a z2^b z3^(d-a-b).
  static std::size_t index(int degree, int a, int b) {
    const int r = degree - a;
    return static_cast<std::size_t>(r * (r + 1) / 2 + (degree - a - b));
  }
  /// Exponents (a, b, c) of the monomial at `idx`.
  static std::array<int, 3> exponents(int degree, std::size_t idx);

  cplx& operator[](std::size_t i) { return coeffs_[i]; }
  cplx operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  TernaryForm operator*(const TernaryForm& o) const;
  TernaryForm& operator+=(const TernaryForm& o);
  TernaryForm& operator*=(cplx s);

  cplx operator()(const Eigen::Vector3cd& z) const;
  Eigen::Vector3cd gradient(const Eigen::Vector3cd& z) const;

 private:
  int degree_;
  std::vector<cplx> coeffs_;
};

/// Homogeneous form of degree d in (s, t); coefficient k multiplies s^{d-k} t^k.
class BinaryForm {
 public:
  explicit BinaryForm(int degree) : coeffs_(static_cast<std::size_t>(degree + 1)) {}
  BinaryForm(std::initializer_list<cplx> c) : coeffs_(c) {}

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  cplx& operator[](std::size_t i) { return coeffs_[i]; }
  cplx operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm& operator+=(const BinaryForm& o);
  BinaryForm& operator*=(cplx s);

 private:
  std::vector<cplx> coeffs_;
};

}  // namespace bitangent
