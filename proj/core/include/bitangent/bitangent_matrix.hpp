#pragma once

// Assembly of the symmetric 8x8 matrix of bitangents of rank 4 from the 28
// gradients of odd theta functions, for the base characteristic [000,000]
// and the Aronhold set {77, 64, 51, 46, 23, 15, 32}.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bitangent/aronhold.hpp"
#include "bitangent/theta.hpp"

namespace bitangent {

/// c1 z1 + c2 z2 + c3 z3, proportional to the bitangent of `ch`.
struct LinearForm {
  Eigen::Vector3cd coeffs = Eigen::Vector3cd::Zero();
  Characteristic ch;

  cplx operator()(const Eigen::Vector3cd& z) const { return (coeffs.array() * z.array()).sum(); }
};

/// Square matrix of linear forms.
class FormMatrix {
 public:
  explicit FormMatrix(int n) : n_(n), forms_(static_cast<std::size_t>(n * n)) {}

  int size() const { return n_; }
  LinearForm& operator()(int i, int j) { return forms_[static_cast<std::size_t>(i * n_ + j)]; }
  const LinearForm& operator()(int i, int j) const { return forms_[static_cast<std::size_t>(i * n_ + j)]; }

  Eigen::MatrixXcd evaluate(const Eigen::Vector3cd& z) const;

 private:
  int n_;
  std::vector<LinearForm> forms_;
};

using Scalars8 = Eigen::Matrix<cplx, 8, 8>;
using Scalars5 = Eigen::Matrix<cplx, 5, 5>;

/// Entry (i,j) is scalars(i,j) * b_{layout(i,j)}; symmetric with zero diagonal.
class BitangentMatrix {
 public:
  /// Uses the upper triangle of `scalars` and mirrors it.
  BitangentMatrix(const ThetaTable& table, const CharMatrix& layout, const Scalars8& scalars);

  const CharMatrix& layout() const { return layout_; }
  const Scalars8& scalars() const { return scalars_; }
  cplx scalar(int i, int j) const { return scalars_(i, j); }
  LinearForm entry(int i, int j) const;
  FormMatrix forms() const;

  Eigen::Matrix<cplx, 8, 8> evaluate(const Eigen::Vector3cd& z) const;

  /// diag(d) * this * diag(d).
  BitangentMatrix congruence(const Eigen::Matrix<cplx, 8, 1>& d) const;

 private:
  BitangentMatrix(const CharMatrix& layout, const Scalars8& scalars,
                  const std::array<Eigen::Vector3cd, 64>& raw);

  CharMatrix layout_;
  Scalars8 scalars_;
  std::array<Eigen::Vector3cd, 64> raw_;  // raw gradient per slot, row-major
};

struct BuilderTolerances {
  /// Relative size |D(a,b,c)| / (|a||b||c|) below which a 3x3 system or a
  /// denominator is considered singular.
  double singular = 1e-10;
};

/// The layout of the reference Aronhold set (base [000,000]).
const CharMatrix& reference_layout();

/// All scalars 1: the raw gradient forms placed per the reference layout.
BitangentMatrix base_matrix(const ThetaTable& table);

/// Weights lambda on row `row` (a position 0..4 inside the principal minor on
/// `minor`, whose last index plays the role of the fifth column) such that
///   sum_c sigma_c lambda_c b_{row,c} = 0,   sigma = (+,+,+,+,-),
/// the row form of V1 + V2 + V3 + V4 - V5 = 0. The weight at the diagonal
/// position is zero. For the four vectors g1..g4 of the row (in column
/// order) the weights are the Cramer determinants of sum_{i<4} mu_i g_i = g4
/// with g4 on the right-hand side. Throws SingularSystem.
std::array<cplx, 5> cramer_lambdas(const ThetaTable& table, int row, const std::array<int, 5>& minor,
                                   const BuilderTolerances& tol = {});

/// A symmetric rank-4 principal 5x5 minor on rows/columns {0,1,2,3,fifth}.
struct SMinor {
  std::array<int, 5> indices{};
  Scalars5 lambdas;       // row-wise Cramer weights (not symmetric)
  std::array<cplx, 5> d;  // left diagonal making diag(d) * lambdas symmetric
  std::array<cplx, 5> t;  // congruence bringing the result to the normal form
  Scalars5 scalars;       // diag(t) diag(d) lambdas diag(t)

  /// max over i<j of |s_ij - s_ji| / max(|s_ij|, |s_ji|).
  double asymmetry() const;
  FormMatrix forms(const ThetaTable& table) const;
};

/// fifth in {4,5,6,7} (0-based index of the column joined to the first four).
SMinor build_S(const ThetaTable& table, int fifth, const BuilderTolerances& tol = {});

struct MergeConstants {
  cplx A, B, C;
};

MergeConstants merge_constants(const ThetaTable& table, const BuilderTolerances& tol = {});

/// N_k S_k N_k for k = fifth - 3 (fifth in {5,6,7}), computed without square
/// roots: every product of two diagonal entries of N_k carries an integral
/// power of A (resp. B, C).
Scalars5 merge_minor(const ThetaTable& table, const SMinor& s, const MergeConstants& mc);

struct XCoefficients {
  cplx x65_row5;  // demanded on the fifth row
  cplx x65_row6;  // demanded on the sixth row
  cplx x53, x74, x36, x11, x27;
};

XCoefficients compute_X(const ThetaTable& table, const MergeConstants& mc, const BuilderTolerances& tol = {});

/// |X65| in theta-constant form: pi^3 th14 th33 (th00 th42 th57 th61 th70 / th52 th75)
/// (th06 th21 th07 th20 / th41 th40 th66 th67).
double x65_theta_modulus(const ThetaTable& table);

enum class MatrixForm {
  merged,      // the merged S-minors with the X coefficients
  normalized,  // merged, then congruence by diag(1, D(77,31,26), 1, ..., 1)
};

BitangentMatrix assemble_full(const ThetaTable& table, MatrixForm form = MatrixForm::normalized,
                              const BuilderTolerances& tol = {});

/// sigma_5 / sigma_4 of M(z) per sample; nullopt when M(z) vanishes.
std::vector<std::optional<double>> rank_profile(const BitangentMatrix& m,
                                                std::span<const Eigen::Vector3cd> z_samples);

}  // namespace bitangent
