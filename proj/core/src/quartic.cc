#include "bitangent/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bitangent/errors.hpp"
#include "bitangent/jacobi.hpp"

namespace bitangent {
namespace {

double coeff_norm(const std::array<cplx, 15>& c) {
  double s = 0;
  for (const auto& v : c) s += std::norm(v);
  return std::sqrt(s);
}

Eigen::Vector2cd unit(const Eigen::Vector2cd& p) { return p / p.norm(); }

// Chordal distance between projective points of P^1.
double chordal(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  return std::abs(a(0) * b(1) - a(1) * b(0)) / (a.norm() * b.norm());
}

// Representative of the midpoint of two nearby projective points.
Eigen::Vector2cd midpoint(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  const Eigen::Vector2cd ua = unit(a);
  Eigen::Vector2cd ub = unit(b);
  const cplx phase = ua.dot(ub);  // conj(ua) . ub
  if (std::abs(phase) > 0) ub *= std::conj(phase) / std::abs(phase);
  return unit(ua + ub);
}

// Projective roots of sum a_k s^{4-k} t^k.
std::vector<Eigen::Vector2cd> binary_roots(const std::array<cplx, 5>& a) {
  double scale = 0;
  for (const auto& c : a) scale = std::max(scale, std::abs(c));
  const double eps = 1e-14 * scale;
  std::size_t lead = 0, trail = 0;
  while (lead < 5 && std::abs(a[lead]) <= eps) ++lead;
  while (trail < 5 - lead && std::abs(a[4 - trail]) <= eps) ++trail;
  std::vector<Eigen::Vector2cd> roots;
  for (std::size_t i = 0; i < lead; ++i) roots.emplace_back(cplx(1), cplx(0));   // t divides g
  for (std::size_t i = 0; i < trail; ++i) roots.emplace_back(cplx(0), cplx(1));  // s divides g
  const int n = 4 - static_cast<int>(lead + trail);
  if (n <= 0) return roots;
  // h(w) = sum_{k=lead}^{4-trail} a_k w^{4-trail-k}, leading coefficient a_lead
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -a[lead + 1 + static_cast<std::size_t>(j)] / a[lead];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < n; ++i) roots.emplace_back(es.eigenvalues()(i), cplx(1));
  return roots;
}

// Gauss-Newton refinement of q with q^2 ~ g; returns |g - q^2| / |g|.
double fit_square(const std::array<cplx, 5>& g, std::array<cplx, 3> q) {
  auto residual = [&](const std::array<cplx, 3>& c) {
    Eigen::Matrix<cplx, 5, 1> r;
    r << c[0] * c[0] - g[0], 2.0 * c[0] * c[1] - g[1], c[1] * c[1] + 2.0 * c[0] * c[2] - g[2],
        2.0 * c[1] * c[2] - g[3], c[2] * c[2] - g[4];
    return r;
  };
  double gnorm = 0;
  for (const auto& c : g) gnorm += std::norm(c);
  gnorm = std::sqrt(gnorm);
  double best = residual(q).norm();
  for (int it = 0; it < 50; ++it) {
    const auto r = residual(q);
    Eigen::Matrix<cplx, 5, 3> J;
    J << 2.0 * q[0], 0, 0, 2.0 * q[1], 2.0 * q[0], 0, 2.0 * q[2], 2.0 * q[1], 2.0 * q[0], 0, 2.0 * q[2],
        2.0 * q[1], 0, 0, 2.0 * q[2];
    const Eigen::Matrix<cplx, 3, 1> step = J.colPivHouseholderQr().solve(-r);
    std::array<cplx, 3> next{q[0] + step(0), q[1] + step(1), q[2] + step(2)};
    const double rn = residual(next).norm();
    if (!(rn < best)) break;
    best = rn;
    q = next;
  }
  return best / gnorm;
}

}  // namespace

HomogeneousQuartic HomogeneousQuartic::normalized(const TernaryForm& raw) {
  if (raw.degree() != 4) throw InputError("quartic must have degree 4");
  std::size_t pivot = 0;
  for (std::size_t k = 1; k < 15; ++k)
    if (std::abs(raw[k]) > std::abs(raw[pivot])) pivot = k;
  if (std::abs(raw[pivot]) == 0.0) throw ZeroForm("quartic is identically zero");
  HomogeneousQuartic q;
  q.norm_ = {pivot, raw[pivot]};
  for (std::size_t k = 0; k < 15; ++k) q.coeffs_[k] = raw[k] / raw[pivot];
  return q;
}

TernaryForm HomogeneousQuartic::form() const {
  TernaryForm f(4);
  for (std::size_t k = 0; k < 15; ++k) f[k] = coeffs_[k];
  return f;
}

HomogeneousQuartic minor_quartic(const FormMatrix& m, const std::array<int, 4>& rows,
                                 const std::array<int, 4>& cols, double zero_tol) {
  TernaryForm det(4);
  std::array<int, 4> perm{0, 1, 2, 3};
  double scale = 1.0;
  for (int r = 0; r < 4; ++r) {
    double row_max = 0;
    for (int c = 0; c < 4; ++c)
      row_max = std::max(row_max, m(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]).coeffs.cwiseAbs().sum());
    scale *= row_max;
  }
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    TernaryForm term = TernaryForm::linear(m(rows[0], cols[static_cast<std::size_t>(perm[0])]).coeffs);
    bool zero = term.coeffs() == TernaryForm(1).coeffs();
    for (std::size_t k = 1; k < 4 && !zero; ++k) {
      const auto& c = m(rows[k], cols[static_cast<std::size_t>(perm[k])]).coeffs;
      if (c.isZero(0)) zero = true;
      else term = term * TernaryForm::linear(c);
    }
    if (zero) continue;
    if (inversions % 2) term *= -1.0;
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  double biggest = 0;
  for (const auto& c : det.coeffs()) biggest = std::max(biggest, std::abs(c));
  if (!(biggest > zero_tol * scale)) throw ZeroMinor("4x4 minor vanishes identically");
  return HomogeneousQuartic::normalized(det);
}

double proportionality(const HomogeneousQuartic& q1, const HomogeneousQuartic& q2) {
  // s = <q2, q1> / <q2, q2>
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < 15; ++k) {
    num += std::conj(q2.coeffs()[k]) * q1.coeffs()[k];
    den += std::norm(q2.coeffs()[k]);
  }
  const cplx s = num / den;
  std::array<cplx, 15> diff{};
  for (std::size_t k = 0; k < 15; ++k) diff[k] = q1.coeffs()[k] - s * q2.coeffs()[k];
  return coeff_norm(diff) / coeff_norm(q1.coeffs());
}

FormMatrix extract_Q(const ThetaTable& table, const BitangentMatrix& m, const BuilderTolerances& tol) {
  auto D = [&](int a, int b, int c) { return jacobian_D(table, a, b, c); };
  const cplx d772 = D(77, 31, 26), d7746 = D(77, 46, 51);
  auto norm3 = [&](int a, int b, int c) {
    return table.gradient(a).norm() * table.gradient(b).norm() * table.gradient(c).norm();
  };
  if (std::abs(d772) < tol.singular * norm3(77, 31, 26))
    throw DegenerateDenominator("extract_Q: D(77,31,26) vanishes numerically");
  if (std::abs(d7746) < tol.singular * norm3(77, 46, 51))
    throw DegenerateDenominator("extract_Q: D(77,46,51) vanishes numerically");
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 1) = D(31, 13, 26) / d772;
  s(0, 2) = D(22, 13, 35) / d772;
  s(0, 3) = D(77, 64, 46) / d772;
  s(1, 2) = D(22, 13, 35) / d7746;
  s(1, 3) = D(77, 13, 31) / d772;
  s(2, 3) = D(64, 13, 22) / d772;
  FormMatrix q(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Characteristic ch = m.layout()(i, j);
      if (i == j) q(i, j) = LinearForm{Eigen::Vector3cd::Zero(), ch};
      else q(i, j) = LinearForm{(i < j ? s(i, j) : s(j, i)) * table.gradient(ch), ch};
    }
  return q;
}

BinaryQuartic restrict_to_line(const HomogeneousQuartic& f, const LinearForm& line) {
  if (line.coeffs.isZero(0)) throw ZeroForm("line has a zero covector");
  // Columns 1, 2 of the Householder Q of conj(c) span {v : c . v = 0}.
  const Eigen::Vector3cd c = line.coeffs.conjugate();
  Eigen::HouseholderQR<Eigen::Matrix<cplx, 3, 1>> qr(c);
  const Eigen::Matrix3cd Q = qr.householderQ() * Eigen::Matrix3cd::Identity();
  BinaryQuartic g;
  g.u = Q.col(1);
  g.v = Q.col(2);

  std::array<BinaryForm, 3> zs{BinaryForm{g.u(0), g.v(0)}, BinaryForm{g.u(1), g.v(1)},
                               BinaryForm{g.u(2), g.v(2)}};
  BinaryForm total(4);
  for (std::size_t k = 0; k < 15; ++k) {
    if (f.coeffs()[k] == cplx(0)) continue;
    const auto e = HomogeneousQuartic::monomial(k);
    BinaryForm term{f.coeffs()[k]};
    for (std::size_t var = 0; var < 3; ++var)
      for (int p = 0; p < e[var]; ++p) term = term * zs[var];
    total += term;
  }
  for (std::size_t k = 0; k < 5; ++k) g.coeffs[k] = total[k];
  return g;
}

DoubleContact is_double_contact(const BinaryQuartic& g, double tol) {
  DoubleContact out;
  double gnorm = 0;
  for (const auto& c : g.coeffs) gnorm += std::norm(c);
  if (!(gnorm > 0)) {
    out.residual = out.pair_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const auto roots = binary_roots(g.coeffs);

  static constexpr std::array<std::array<int, 4>, 3> kMatchings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  double best_cost = std::numeric_limits<double>::infinity();
  std::array<int, 4> best{};
  for (const auto& mt : kMatchings) {
    const double a = chordal(roots[static_cast<std::size_t>(mt[0])], roots[static_cast<std::size_t>(mt[1])]);
    const double b = chordal(roots[static_cast<std::size_t>(mt[2])], roots[static_cast<std::size_t>(mt[3])]);
    if (a * a + b * b < best_cost) {
      best_cost = a * a + b * b;
      best = mt;
    }
  }
  const auto& r = roots;
  auto at = [&](int i) { return r[static_cast<std::size_t>(best[static_cast<std::size_t>(i)])]; };
  const double gap = std::max(chordal(at(0), at(1)), chordal(at(2), at(3)));
  out.contacts = {midpoint(at(0), at(1)), midpoint(at(2), at(3))};
  const double spread = chordal(out.contacts[0], out.contacts[1]);
  out.pair_residual = spread > 0 ? gap / spread : std::numeric_limits<double>::infinity();
  out.residual = out.pair_residual;

  if (out.pair_residual > tol || spread < 1e-3) {
    // q = k (t1 s - s1 t)(t2 s - s2 t), k fitted so that k^2 q0^2 ~ g.
    const auto& p1 = out.contacts[0];
    const auto& p2 = out.contacts[1];
    const BinaryForm q0 = BinaryForm{p1(1), -p1(0)} * BinaryForm{p2(1), -p2(0)};
    const BinaryForm q0sq = q0 * q0;
    cplx num = 0;
    double den = 0;
    for (std::size_t k = 0; k < 5; ++k) {
      num += std::conj(q0sq[k]) * g.coeffs[k];
      den += std::norm(q0sq[k]);
    }
    const cplx k = std::sqrt(num / den);
    out.fit_residual = fit_square(g.coeffs, {k * q0[0], k * q0[1], k * q0[2]});
    out.used_fit = true;
    out.residual = out.fit_residual;
  }
  out.ok = out.residual <= tol;
  return out;
}

}  // namespace bitangent
