#include "bitangent/bitangent_matrix.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bitangent/errors.hpp"
#include "bitangent/jacobi.hpp"

namespace bitangent {
namespace {

// |D(a,b,c)| relative to the product of the gradient norms.
double relative_size(const ThetaTable& table, Characteristic a, Characteristic b, Characteristic c, cplx det) {
  const double scale = table.gradient(a).norm() * table.gradient(b).norm() * table.gradient(c).norm();
  return scale > 0 ? std::abs(det) / scale : 0.0;
}

// D(.,.,.) by labels, plus a variant that rejects near-zero values.
class Dets {
 public:
  Dets(const ThetaTable& table, const BuilderTolerances& tol) : table_(table), tol_(tol) {}

  cplx operator()(int a, int b, int c) const { return jacobian_D(table_, a, b, c); }

  cplx den(int a, int b, int c) const {
    const auto ca = Characteristic::from_label(a), cb = Characteristic::from_label(b),
               cc = Characteristic::from_label(c);
    const cplx v = jacobian_D(table_, ca, cb, cc);
    if (relative_size(table_, ca, cb, cc, v) < tol_.singular)
      throw DegenerateDenominator("D(" + ca.label_string() + "," + cb.label_string() + "," + cc.label_string() +
                                  ") vanishes numerically");
    return v;
  }

 private:
  const ThetaTable& table_;
  const BuilderTolerances& tol_;
};

cplx nonzero(cplx v, const char* name) {
  if (!(std::abs(v) > 0.0) || !std::isfinite(std::abs(v)))
    throw DegenerateDenominator(std::string(name) + " is zero or not finite");
  return v;
}

}  // namespace

Eigen::MatrixXcd FormMatrix::evaluate(const Eigen::Vector3cd& z) const {
  Eigen::MatrixXcd out(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(i, j) = (*this)(i, j)(z);
  return out;
}

BitangentMatrix::BitangentMatrix(const ThetaTable& table, const CharMatrix& layout, const Scalars8& scalars)
    : layout_(layout), scalars_(Scalars8::Zero()) {
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      auto& raw = raw_[static_cast<std::size_t>(i * 8 + j)];
      if (i == j) {
        raw.setZero();
        continue;
      }
      raw = table.gradient(layout(i, j));
      scalars_(i, j) = i < j ? scalars(i, j) : scalars(j, i);
    }
  }
}

BitangentMatrix::BitangentMatrix(const CharMatrix& layout, const Scalars8& scalars,
                                 const std::array<Eigen::Vector3cd, 64>& raw)
    : layout_(layout), scalars_(scalars), raw_(raw) {}

LinearForm BitangentMatrix::entry(int i, int j) const {
  return {scalars_(i, j) * raw_[static_cast<std::size_t>(i * 8 + j)], layout_(i, j)};
}

FormMatrix BitangentMatrix::forms() const {
  FormMatrix f(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) f(i, j) = entry(i, j);
  return f;
}

Eigen::Matrix<cplx, 8, 8> BitangentMatrix::evaluate(const Eigen::Vector3cd& z) const {
  Eigen::Matrix<cplx, 8, 8> out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out(i, j) = entry(i, j)(z);
  return out;
}

BitangentMatrix BitangentMatrix::congruence(const Eigen::Matrix<cplx, 8, 1>& d) const {
  Scalars8 s = d.asDiagonal() * scalars_ * d.asDiagonal();
  return BitangentMatrix(layout_, s, raw_);
}

const CharMatrix& reference_layout() {
  static const CharMatrix layout = build_char_matrix(reference_aronhold_set());
  return layout;
}

BitangentMatrix base_matrix(const ThetaTable& table) {
  Scalars8 ones = Scalars8::Ones();
  return BitangentMatrix(table, reference_layout(), ones);
}

std::array<cplx, 5> cramer_lambdas(const ThetaTable& table, int row, const std::array<int, 5>& minor,
                                   const BuilderTolerances& tol) {
  if (row < 0 || row > 4) throw InputError("cramer_lambdas: row must be in 0..4");
  const CharMatrix& layout = reference_layout();
  std::array<int, 4> pos{};
  std::array<Characteristic, 4> ch{};
  int n = 0;
  for (int c = 0; c < 5; ++c) {
    if (c == row) continue;
    pos[static_cast<std::size_t>(n)] = c;
    ch[static_cast<std::size_t>(n)] = layout(minor[static_cast<std::size_t>(row)], minor[static_cast<std::size_t>(c)]);
    ++n;
  }
  const cplx base = jacobian_D(table, ch[0], ch[1], ch[2]);
  if (relative_size(table, ch[0], ch[1], ch[2], base) < tol.singular)
    throw SingularSystem("3x3 system on row " + std::to_string(row) + " is singular");
  // Kernel of [g1 g2 g3 g4]: Cramer replacement for mu_i, and -D(g1,g2,g3) for g4.
  std::array<cplx, 4> w{jacobian_D(table, ch[3], ch[1], ch[2]), jacobian_D(table, ch[0], ch[3], ch[2]),
                        jacobian_D(table, ch[0], ch[1], ch[3]), -base};
  std::array<cplx, 5> lambda{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double sigma = pos[i] == 4 ? -1.0 : 1.0;
    lambda[static_cast<std::size_t>(pos[i])] = sigma * w[i];
  }
  return lambda;
}

double SMinor::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      const double scale = std::max(std::abs(scalars(i, j)), std::abs(scalars(j, i)));
      if (scale > 0) worst = std::max(worst, std::abs(scalars(i, j) - scalars(j, i)) / scale);
    }
  return worst;
}

FormMatrix SMinor::forms(const ThetaTable& table) const {
  const CharMatrix& layout = reference_layout();
  FormMatrix f(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const Characteristic ch = layout(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
      if (i == j) {
        f(i, j) = LinearForm{Eigen::Vector3cd::Zero(), ch};
      } else {
        f(i, j) = LinearForm{scalars(i, j) * table.gradient(ch), ch};
      }
    }
  return f;
}

SMinor build_S(const ThetaTable& table, int fifth, const BuilderTolerances& tol) {
  if (fifth < 4 || fifth > 7) throw InputError("build_S: fifth index must be in 4..7");
  SMinor s;
  s.indices = {0, 1, 2, 3, fifth};
  for (int r = 0; r < 5; ++r) {
    const auto w = cramer_lambdas(table, r, s.indices, tol);
    for (int c = 0; c < 5; ++c) s.lambdas(r, c) = w[static_cast<std::size_t>(c)];
  }
  s.d[0] = 1.0;
  for (int j = 1; j < 5; ++j) s.d[static_cast<std::size_t>(j)] = nonzero(s.lambdas(0, j), "lambda") / nonzero(s.lambdas(j, 0), "lambda");

  const CharMatrix& layout = reference_layout();
  auto lab = [&](int r, int c) {
    return layout(s.indices[static_cast<std::size_t>(r)], s.indices[static_cast<std::size_t>(c)]).label();
  };
  const Dets D(table, tol);
  s.t = {1.0,
         D(lab(1, 4), lab(1, 2), lab(1, 3)) /
             (D.den(lab(0, 4), lab(0, 2), lab(0, 3)) * D.den(lab(0, 1), lab(1, 4), lab(1, 3))),
         D(lab(2, 4), lab(1, 2), lab(2, 3)) / D.den(lab(0, 1), lab(0, 4), lab(0, 3)), 1.0, 1.0};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      s.scalars(i, j) = s.t[static_cast<std::size_t>(i)] * s.d[static_cast<std::size_t>(i)] * s.lambdas(i, j) *
                        s.t[static_cast<std::size_t>(j)];
  return s;
}

MergeConstants merge_constants(const ThetaTable& table, const BuilderTolerances& tol) {
  const Dets D(table, tol);
  MergeConstants mc;
  mc.A = D(77, 46, 51) * D(31, 13, 26) * D(77, 54, 26) /
         (D.den(77, 31, 26) * D.den(77, 23, 51) * D.den(54, 13, 26));
  mc.B = D(77, 46, 51) * D(77, 62, 26) * D(31, 13, 26) /
         (D.den(62, 13, 26) * D.den(77, 15, 51) * D.den(77, 31, 26));
  mc.C = D(77, 46, 51) * D(77, 45, 26) * D(31, 13, 26) /
         (D.den(45, 13, 26) * D.den(77, 32, 51) * D.den(77, 31, 26));
  nonzero(mc.A, "A");
  nonzero(mc.B, "B");
  nonzero(mc.C, "C");
  return mc;
}

Scalars5 merge_minor(const ThetaTable& table, const SMinor& s, const MergeConstants& mc) {
  const int fifth = s.indices[4];
  cplx x;
  switch (fifth) {
    case 5: x = mc.A; break;
    case 6: x = mc.B; break;
    case 7: x = mc.C; break;
    default: throw InputError("merge_minor: only the minors on columns 5, 6, 7 are merged");
  }
  const CharMatrix& layout = reference_layout();
  auto lab = [&](int r, int c) { return layout(r, c).label(); };
  const BuilderTolerances tol;
  const Dets D(table, tol);
  // N = diag(x^{e_i/2} r_i), e = (1, 1, -1, -1, -1)
  const std::array<int, 5> e{1, 1, -1, -1, -1};
  const std::array<cplx, 5> r{
      1.0, D(lab(0, 1), lab(0, fifth), lab(0, 3)) / D.den(lab(0, 1), lab(0, 4), lab(0, 3)),
      D(lab(2, 4), lab(1, 2), lab(2, 3)) / D.den(lab(2, fifth), lab(1, 2), lab(2, 3)),
      D(lab(0, 1), lab(0, 2), lab(0, 4)) / D.den(lab(0, 1), lab(0, 2), lab(0, fifth)), 1.0};
  Scalars5 out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const int p = (e[static_cast<std::size_t>(i)] + e[static_cast<std::size_t>(j)]) / 2;
      const cplx xp = p == 1 ? x : (p == -1 ? 1.0 / x : cplx(1.0));
      out(i, j) = xp * r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)] * s.scalars(i, j);
    }
  return out;
}

XCoefficients compute_X(const ThetaTable& table, const MergeConstants& mc, const BuilderTolerances& tol) {
  const Dets D(table, tol);
  const cplx A = mc.A, B = mc.B, C = mc.C;
  XCoefficients x;
  x.x65_row5 = (1.0 / A) * (A * D(77, 23, 51) - D(77, 46, 51)) * D(22, 31, 17) * D(64, 13, 35) /
               (D.den(65, 31, 17) * D.den(22, 13, 35));
  x.x65_row6 = (1.0 / A - D(77, 64, 23) / D.den(77, 64, 46)) * D(77, 64, 46) * D(51, 26, 35) * D(72, 54, 47) /
               (D.den(72, 26, 35) * D.den(65, 54, 47));
  x.x53 = (1.0 / B) * (B * D(77, 15, 51) - D(77, 46, 51)) * D(22, 31, 17) * D(64, 13, 35) /
          (D.den(53, 31, 17) * D.den(22, 13, 35));
  x.x74 = (1.0 / C) * (1.0 - C * D(77, 64, 32) / D.den(77, 64, 46)) * D(77, 64, 51) * D(46, 31, 22) /
          D.den(74, 31, 22);
  x.x36 = (1.0 / B) *
          (1.0 - D(54, 13, 26) * D(77, 23, 51) * D(15, 64, 51) * D(77, 62, 26) /
                     (D.den(23, 64, 51) * D.den(77, 54, 26) * D.den(77, 15, 51) * D.den(62, 13, 26))) *
          D(77, 64, 51) * D(23, 47, 72) / D.den(36, 47, 72);
  x.x11 = (1.0 / C - D(77, 64, 32) / (A * D.den(77, 64, 23))) * D(23, 54, 47) * D(77, 64, 51) / D.den(11, 54, 47);
  x.x27 = (1.0 / C - D(77, 64, 32) / (B * D.den(77, 64, 15))) * D(15, 62, 71) * D(77, 64, 51) / D.den(27, 62, 71);
  return x;
}

double x65_theta_modulus(const ThetaTable& table) {
  auto th = [&](int l) { return table.constant(l); };
  const cplx v = th(14) * th(33) * (th(0) * th(42) * th(57) * th(61) * th(70) / (th(52) * th(75))) *
                 (th(6) * th(21) * th(7) * th(20) / (th(41) * th(40) * th(66) * th(67)));
  return std::pow(std::numbers::pi, 3) * std::abs(v);
}

BitangentMatrix assemble_full(const ThetaTable& table, MatrixForm form, const BuilderTolerances& tol) {
  const Dets D(table, tol);
  const MergeConstants mc = merge_constants(table, tol);
  const XCoefficients x = compute_X(table, mc, tol);
  const cplx iA = 1.0 / mc.A, iB = 1.0 / mc.B, iC = 1.0 / mc.C;

  Scalars8 s = Scalars8::Zero();
  // row 0
  s(0, 1) = D(31, 13, 26) / D.den(77, 31, 26);
  s(0, 2) = D(22, 13, 35);
  s(0, 3) = D(77, 64, 46);
  for (int j = 4; j < 8; ++j) s(0, j) = D(77, 64, 51);
  // row 1
  const cplx r1 = D(31, 13, 26) * D(77, 13, 26) / D.den(77, 31, 26);
  s(1, 2) = D(22, 13, 35) / D.den(77, 46, 51);
  s(1, 3) = D(77, 13, 31) / D.den(77, 31, 26);
  s(1, 4) = D(77, 13, 26) / D.den(77, 31, 26);
  s(1, 5) = iA * r1 / D.den(54, 13, 26);
  s(1, 6) = iB * r1 / D.den(62, 13, 26);
  s(1, 7) = iC * r1 / D.den(45, 13, 26);
  // row 2
  const cplx r2 = D(22, 13, 35) * D(64, 13, 35);
  s(2, 3) = D(64, 13, 22);
  s(2, 4) = D(64, 13, 35);
  s(2, 5) = iA * r2 / D.den(47, 13, 35);
  s(2, 6) = iB * r2 / D.den(71, 13, 35);
  s(2, 7) = iC * r2 / D.den(56, 13, 35);
  // row 3
  const cplx r3 = D(77, 64, 46) * D(51, 26, 35);
  s(3, 4) = r3 / D.den(17, 26, 35);
  s(3, 5) = iA * r3 / D.den(72, 26, 35);
  s(3, 6) = iB * r3 / D.den(44, 26, 35);
  s(3, 7) = iC * r3 / D.den(63, 26, 35);
  // rows 4..6
  s(4, 5) = x.x65_row5;
  s(4, 6) = x.x53;
  s(4, 7) = x.x74;
  s(5, 6) = x.x36;
  s(5, 7) = x.x11;
  s(6, 7) = x.x27;

  BitangentMatrix merged(table, reference_layout(), s);
  if (form == MatrixForm::merged) return merged;
  Eigen::Matrix<cplx, 8, 1> d = Eigen::Matrix<cplx, 8, 1>::Ones();
  d(1) = D(77, 31, 26);
  return merged.congruence(d);
}

std::vector<std::optional<double>> rank_profile(const BitangentMatrix& m,
                                                std::span<const Eigen::Vector3cd> z_samples) {
  std::vector<std::optional<double>> out;
  out.reserve(z_samples.size());
  for (const auto& z : z_samples) {
    const Eigen::Matrix<cplx, 8, 8> v = m.evaluate(z);
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 8>> svd(v);
    const auto& sv = svd.singularValues();
    if (!(sv(3) > 0.0)) {
      out.push_back(std::nullopt);
      continue;
    }
    out.push_back(sv(4) / sv(3));
  }
  return out;
}

}  // namespace bitangent
