#include "bitangent/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bitangent/errors.hpp"

namespace bitangent {

cplx jacobian_D(const ThetaTable& table, Characteristic n1, Characteristic n2, Characteristic n3) {
  Eigen::Matrix3cd m;
  m.row(0) = table.gradient(n1).transpose();
  m.row(1) = table.gradient(n2).transpose();
  m.row(2) = table.gradient(n3).transpose();
  return m.determinant();
}

std::array<Characteristic, 5> complete_fundamental(Characteristic n1, Characteristic n2, Characteristic n3) {
  if (!is_odd(n1) || !is_odd(n2) || !is_odd(n3)) throw InputError("complete_fundamental needs odd characteristics");
  if (n1 == n2 || n1 == n3 || n2 == n3) throw InputError("complete_fundamental needs distinct characteristics");
  if (!is_azygetic(n1, n2, n3))
    throw SyzygeticTriple("triple " + n1.label_string() + "," + n2.label_string() + "," + n3.label_string() +
                          " is syzygetic");
  const std::array<Characteristic, 3> odd{n1, n2, n3};
  std::vector<Characteristic> cand;
  for (Characteristic m : even_characteristics()) {
    bool ok = is_azygetic(n1, n2, m) && is_azygetic(n1, n3, m) && is_azygetic(n2, n3, m);
    if (ok) cand.push_back(m);
  }
  std::vector<std::array<Characteristic, 5>> found;
  const std::size_t n = cand.size();
  std::array<std::size_t, 5> ix{};
  // ascending 5-subsets of the candidates
  auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == 5) {
      std::array<Characteristic, 8> sys{};
      for (std::size_t k = 0; k < 3; ++k) sys[k] = odd[k];
      for (std::size_t k = 0; k < 5; ++k) sys[3 + k] = cand[ix[k]];
      if (is_fundamental_system(sys)) {
        std::array<Characteristic, 5> r{};
        for (std::size_t k = 0; k < 5; ++k) r[k] = cand[ix[k]];
        found.push_back(r);
      }
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      ix[depth] = c;
      self(self, depth + 1, c + 1);
    }
  };
  rec(rec, 0, 0);
  if (found.size() != 1)
    throw Error("expected a unique fundamental completion, found " + std::to_string(found.size()));
  return found.front();
}

double jacobi_modulus(const ThetaTable& table, Characteristic n1, Characteristic n2, Characteristic n3) {
  double prod = std::pow(std::numbers::pi, 3);
  for (Characteristic m : complete_fundamental(n1, n2, n3)) prod *= std::abs(table.constant(m));
  return prod;
}

RiemannCheck riemann_relation_check(const ThetaTable& table, const ThetaQuad& q1, const ThetaQuad& q2,
                                    const ThetaQuad& q3) {
  auto prod = [&](const ThetaQuad& q) {
    cplx p = 1.0;
    for (Characteristic m : q) p *= table.constant(m);
    return p;
  };
  const cplx r1 = prod(q1), r2 = prod(q2), r3 = prod(q3);
  RiemannCheck best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int s2 : {1, -1}) {
    for (int s3 : {1, -1}) {
      const double res = std::abs(r1 + double(s2) * r2 + double(s3) * r3);
      if (res < best.residual) {
        best.sign2 = s2;
        best.sign3 = s3;
        best.residual = res;
      }
    }
  }
  const double scale = std::abs(r1);
  best.relative = scale > 0 ? best.residual / scale : std::numeric_limits<double>::infinity();
  return best;
}

std::array<std::array<ThetaQuad, 3>, 2> reference_riemann_relations() {
  auto q = [](int a, int b, int c, int d) {
    return ThetaQuad{Characteristic::from_label(a), Characteristic::from_label(b), Characteristic::from_label(c),
                     Characteristic::from_label(d)};
  };
  return {{{q(52, 75, 41, 66), q(3, 10, 24, 37), q(14, 7, 33, 20)},
           {q(40, 67, 41, 66), q(3, 2, 24, 25), q(6, 21, 7, 20)}}};
}

}  // namespace bitangent
