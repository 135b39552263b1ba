#pragma once

#include <cstdint>
#include <random>

#include "bitangent/theta.hpp"

namespace bitangent::testing {

inline double signed_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

/// i I + scale (S_re + i S_im), no degeneracy filter.
inline Eigen::Matrix3cd perturbed_identity(std::uint64_t seed, double scale = 0.1) {
  std::mt19937_64 rng(seed);
  Eigen::Matrix3cd tau = cplx(0, 1) * Eigen::Matrix3cd::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const cplx d = scale * cplx(signed_unit(rng), signed_unit(rng));
      tau(i, j) += d;
      if (i != j) tau(j, i) += d;
    }
  return tau;
}

inline PeriodMatrix random_period(std::uint64_t seed, double scale = 0.1) {
  return PeriodMatrix(perturbed_identity(seed, scale));
}

/// A fixed period matrix used for values frozen from an independent evaluation.
inline PeriodMatrix fixed_period() {
  Eigen::Matrix3cd t;
  t << cplx(0.1, 1.0), cplx(0.05, 0.03), cplx(-0.02, 0.04),
       cplx(0.05, 0.03), cplx(-0.05, 0.9), cplx(0.07, -0.01),
       cplx(-0.02, 0.04), cplx(0.07, -0.01), cplx(0.03, 1.1);
  return PeriodMatrix(t);
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

inline Eigen::Vector3cd random_z(std::mt19937_64& rng) {
  Eigen::Vector3cd z;
  for (int k = 0; k < 3; ++k) z(k) = cplx(signed_unit(rng), signed_unit(rng));
  return z;
}

}  // namespace bitangent::testing
