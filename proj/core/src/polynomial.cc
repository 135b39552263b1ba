#include "bitangent/polynomial.hpp"

#include <stdexcept>

namespace bitangent {
namespace {

cplx ipow(cplx z, int p) {
  cplx r = 1.0;
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

}  // namespace

TernaryForm::TernaryForm(int degree)
    : degree_(degree), coeffs_(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2)) {}

TernaryForm TernaryForm::linear(const Eigen::Vector3cd& c) {
  TernaryForm f(1);
  f[index(1, 1, 0)] = c(0);
  f[index(1, 0, 1)] = c(1);
  f[index(1, 0, 0)] = c(2);
  return f;
}

std::array<int, 3> TernaryForm::exponents(int degree, std::size_t idx) {
  std::size_t k = 0;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b, ++k)
      if (k == idx) return {a, b, degree - a - b};
  throw std::out_of_range("monomial index out of range");
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
  TernaryForm out(degree_ + o.degree_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == cplx(0)) continue;
    const auto ei = exponents(degree_, i);
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      const auto ej = exponents(o.degree_, j);
      out[index(out.degree_, ei[0] + ej[0], ei[1] + ej[1])] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return out;
}

TernaryForm& TernaryForm::operator+=(const TernaryForm& o) {
  if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TernaryForm& TernaryForm::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

cplx TernaryForm::operator()(const Eigen::Vector3cd& z) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto e = exponents(degree_, i);
    sum += coeffs_[i] * ipow(z(0), e[0]) * ipow(z(1), e[1]) * ipow(z(2), e[2]);
  }
  return sum;
}

Eigen::Vector3cd TernaryForm::gradient(const Eigen::Vector3cd& z) const {
  Eigen::Vector3cd g = Eigen::Vector3cd::Zero();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto e = exponents(degree_, i);
    for (int k = 0; k < 3; ++k) {
      if (e[static_cast<std::size_t>(k)] == 0) continue;
      cplx term = coeffs_[i] * double(e[static_cast<std::size_t>(k)]);
      for (int v = 0; v < 3; ++v) {
        const int p = e[static_cast<std::size_t>(v)] - (v == k ? 1 : 0);
        term *= ipow(z(v), p);
      }
      g(k) += term;
    }
  }
  return g;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  BinaryForm out(degree() + o.degree());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return out;
}

BinaryForm& BinaryForm::operator+=(const BinaryForm& o) {
  if (o.degree() != degree()) throw std::invalid_argument("adding forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

BinaryForm& BinaryForm::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

}  // namespace bitangent
