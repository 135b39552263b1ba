#pragma once

// Numerical verification of an assembled bitangent matrix: rank, minors,
// bitangency of the 28 lines and the theta identities the assembly rests on.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitangent/bitangent_matrix.hpp"
#include "bitangent/jacobi.hpp"
#include "bitangent/quartic.hpp"

namespace bitangent {

/// Thresholds assume theta values accurate to about 1e-12.
struct VerifyConfig {
  double degeneracy_min = 1e-6;
  double rank_ratio_max = 1e-8;
  double base_rank_ratio_min = 1e-2;
  double minor_residual_max = 1e-6;
  double det_q_residual_max = 1e-8;
  double bitangency_residual_max = 1e-6;
  double jacobi_relative_max = 1e-8;
  double riemann_relative_max = 1e-8;
  double x65_consistency_max = 1e-8;
  double x65_theta_relative_max = 1e-6;
  double symmetry_max = 1e-8;
  double overlap_max = 1e-8;
  double contact_gradient_min = 1e-6;
  int z_samples = 5;
  std::uint64_t z_seed = 0x5eed'b17a'26e7ULL;
  int nonprincipal_samples = 40;
};

struct Minor {
  std::array<int, 4> rows{};
  std::array<int, 4> cols{};
  bool principal() const { return rows == cols; }
};

struct MinorPair {
  int first = 0;   // indices into VerificationReport::minors
  int second = 0;
  double residual = 0;
};

struct BitangencyResult {
  Characteristic ch;
  int row = 0, col = 0;
  DoubleContact contact;
  std::array<Eigen::Vector3cd, 2> points;  // contact points in P^2, unit norm
};

struct JacobiResult {
  std::array<Characteristic, 3> triple;
  double relative = 0;  // | |D| - pi^3 prod|theta| | / (pi^3 prod|theta|)
};

struct CheckResult {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool upper_bound = true;  // pass iff value < threshold (else value > threshold)
  bool pass = false;
};

struct VerificationReport {
  double degeneracy = 0;
  bool degenerate = false;

  std::vector<Eigen::Vector3cd> z_samples;
  std::vector<std::optional<double>> rank_ratios;
  std::vector<std::optional<double>> base_rank_ratios;

  std::vector<Minor> minors;  // 70 principal first, then sampled non-principal
  std::vector<MinorPair> minor_pairs;
  double det_q_residual = 0;

  std::vector<BitangencyResult> bitangency;
  double min_contact_gradient = 0;

  std::vector<JacobiResult> jacobi;
  std::array<RiemannCheck, 2> riemann{};
  double x65_consistency = 0;
  double x65_theta_relative = 0;
  std::array<double, 4> s_asymmetry{};
  std::array<double, 3> overlap{};

  std::vector<CheckResult> checks;

  bool pass() const;
};

/// Deterministic pseudo-random z samples with entries in [-1,1] + i[-1,1].
std::vector<Eigen::Vector3cd> sample_points(int count, std::uint64_t seed);

/// Report for a table rejected by the degeneracy filter; only `degeneracy`
/// and the failing check are filled in.
VerificationReport degenerate_report(const ThetaTable& table, const VerifyConfig& cfg = {});

/// Runs every check on an assembled matrix. Failures are recorded, not thrown.
VerificationReport verify_all(const ThetaTable& table, const BitangentMatrix& m, const VerifyConfig& cfg = {});

/// The quartic det Q(tau, z), normalized.
HomogeneousQuartic extracted_quartic(const ThetaTable& table, const BitangentMatrix& m);

}  // namespace bitangent
