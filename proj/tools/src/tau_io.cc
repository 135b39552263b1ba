#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "bitangent_cli/cli.hpp"

namespace bitangent::cli {
namespace {

using nlohmann::json;

double signed_unit(std::mt19937_64& rng) {
  // 53 random bits onto [0,1], then affinely onto [-1,1]; both steps exact.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

cplx complex_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InputError("complex numbers must be [re, im] pairs");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

PeriodMatrix random_tau(std::uint64_t seed, double scale, double threshold, const TruncationConfig& trunc) {
  if (!(scale >= 0.0 && scale <= 0.5)) throw InputError("scale must lie in [0, 0.5]");
  if (!(threshold >= 0.0)) throw InputError("degeneracy threshold must be non-negative");
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (int attempt = 0; attempt < kMaxTauAttempts; ++attempt) {
    Eigen::Matrix3cd tau = cplx(0, 1) * Eigen::Matrix3cd::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double re = signed_unit(rng);
        const double im = signed_unit(rng);
        const cplx d = scale * cplx(re, im);
        tau(i, j) += d;
        if (i != j) tau(j, i) += d;
      }
    if (!(min_imag_eigenvalue(tau) > 0.0)) continue;
    try {
      PeriodMatrix pm(tau);
      const double ind = degeneracy_indicator(build_theta_table(pm, trunc));
      best = std::max(best, ind);
      if (ind > threshold) return pm;
    } catch (const DegenerateError&) {
    }
  }
  std::ostringstream msg;
  msg << "no admissible period matrix after " << kMaxTauAttempts
      << " draws (best degeneracy indicator " << best << ")";
  throw RetriesExhausted(msg.str());
}

nlohmann::json tau_to_json(const Eigen::Matrix3cd& tau) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back({tau(i, j).real(), tau(i, j).imag()});
    rows.push_back(row);
  }
  return json{{"tau", rows}};
}

PeriodMatrix tau_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("tau")) throw InputError("expected an object with key \"tau\"");
  const json& rows = doc["tau"];
  if (!rows.is_array() || rows.size() != 3) throw InputError("\"tau\" must be a 3x3 array");
  Eigen::Matrix3cd tau;
  for (int i = 0; i < 3; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 3) throw InputError("\"tau\" must be a 3x3 array");
    for (int j = 0; j < 3; ++j) tau(i, j) = complex_from_json(row[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (tau(i, j) == tau(j, i)) continue;
      const double gap = std::abs(tau(i, j) - tau(j, i));
      if (!(gap < 1e-15)) {
        std::ostringstream msg;
        msg << "tau is not symmetric: entries (" << i << "," << j << ") differ by " << gap;
        throw InputError(msg.str());
      }
      tau(i, j) = tau(j, i) = 0.5 * (tau(i, j) + tau(j, i));
    }
  return PeriodMatrix(tau);
}

PeriodMatrix load_tau(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return tau_from_json(doc);
}

}  // namespace bitangent::cli
