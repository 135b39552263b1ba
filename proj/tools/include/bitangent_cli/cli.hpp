#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "bitangent/errors.hpp"
#include "bitangent/theta.hpp"
#include "bitangent/verify.hpp"

namespace bitangent::cli {

enum ExitCode : int {
  kPass = 0,
  kFailure = 1,  // selftest mismatch
  kInputError = 2,
  kDegenerate = 3,
  kVerificationFailed = 4,
  kInternal = 5,
};

class RetriesExhausted : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

struct RunConfig {
  std::optional<std::string> tau_path;
  std::optional<std::uint64_t> seed;
  double scale = 0.1;  // only with seed
  double tol = 1e-12;
  double degeneracy_threshold = 1e-6;
  bool checks = true;
  std::optional<std::string> out_path;
  int verbosity = 0;  // 1 adds per-minor and per-sample detail

  /// Throws InputError.
  void validate() const;
  TruncationConfig truncation() const;
  VerifyConfig verify() const;
};

inline constexpr int kMaxTauAttempts = 100;

/// i I + scale (S_re + i S_im) with symmetric S_re, S_im uniform in [-1,1],
/// redrawn until Im tau is positive definite and the degeneracy indicator
/// exceeds `threshold`. Throws InputError for scale outside [0, 0.5] and
/// RetriesExhausted after kMaxTauAttempts draws.
PeriodMatrix random_tau(std::uint64_t seed, double scale, double threshold = 1e-6,
                        const TruncationConfig& trunc = {});

nlohmann::json tau_to_json(const Eigen::Matrix3cd& tau);
/// Accepts {"tau": [[[re,im] x3] x3]}; symmetrizes entries that differ by
/// less than 1e-15 and rejects larger asymmetry. Throws InputError.
PeriodMatrix tau_from_json(const nlohmann::json& doc);
PeriodMatrix load_tau(const std::string& path);

struct RunResult {
  int exit_code = kPass;
  nlohmann::json report;  // null when no report could be produced
  std::string message;
};

/// The whole pipeline on one tau; never throws for library errors.
RunResult run_pipeline(const PeriodMatrix& tau, const RunConfig& cfg);

/// Combinatorial self-test. `golden_path` replaces the built-in golden
/// characteristic matrix. Prints one line per check to `out`.
int cmd_selftest(std::ostream& out, const std::optional<std::string>& golden_path = std::nullopt);
int cmd_random_tau(std::uint64_t seed, double scale, double threshold, double tol,
                   const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace bitangent::cli
