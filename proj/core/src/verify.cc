#include "bitangent/verify.hpp"

#include "bitangent/errors.hpp"
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bitangent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

std::vector<std::array<int, 4>> four_subsets() {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      for (int c = b + 1; c < 8; ++c)
        for (int d = c + 1; d < 8; ++d) out.push_back({a, b, c, d});
  return out;
}

void add_check(VerificationReport& r, std::string name, double value, double threshold, bool upper) {
  const bool pass = upper ? value < threshold : value > threshold;
  r.checks.push_back({std::move(name), value, threshold, upper, pass && std::isfinite(value)});
}

double worst_ratio(const std::vector<std::optional<double>>& v, bool largest) {
  double out = largest ? 0.0 : kInf;
  for (const auto& x : v) {
    if (!x) return std::numeric_limits<double>::quiet_NaN();
    out = largest ? std::max(out, *x) : std::min(out, *x);
  }
  return out;
}

}  // namespace

bool VerificationReport::pass() const {
  if (degenerate || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<Eigen::Vector3cd> sample_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Vector3cd> out;
  for (int i = 0; i < count; ++i) {
    Eigen::Vector3cd z;
    for (int k = 0; k < 3; ++k) {
      const double re = unit_interval(rng);
      const double im = unit_interval(rng);
      z(k) = cplx(re, im);
    }
    out.push_back(z);
  }
  return out;
}

HomogeneousQuartic extracted_quartic(const ThetaTable& table, const BitangentMatrix& m) {
  return minor_quartic(extract_Q(table, m), {0, 1, 2, 3}, {0, 1, 2, 3});
}

VerificationReport degenerate_report(const ThetaTable& table, const VerifyConfig& cfg) {
  VerificationReport r;
  r.degeneracy = degeneracy_indicator(table);
  r.degenerate = r.degeneracy < cfg.degeneracy_min;
  add_check(r, "degeneracy", r.degeneracy, cfg.degeneracy_min, false);
  return r;
}

VerificationReport verify_all(const ThetaTable& table, const BitangentMatrix& m, const VerifyConfig& cfg) {
  VerificationReport r = degenerate_report(table, cfg);
  if (r.degenerate) return r;

  // Rank: the assembled matrix drops to rank 4, the unscaled one does not.
  r.z_samples = sample_points(cfg.z_samples, cfg.z_seed);
  r.rank_ratios = rank_profile(m, r.z_samples);
  r.base_rank_ratios = rank_profile(base_matrix(table), r.z_samples);
  add_check(r, "rank_ratio", worst_ratio(r.rank_ratios, true), cfg.rank_ratio_max, true);
  add_check(r, "base_rank_ratio", worst_ratio(r.base_rank_ratios, false), cfg.base_rank_ratio_min, false);

  // Minors.
  const FormMatrix forms = m.forms();
  const auto subsets = four_subsets();
  std::vector<HomogeneousQuartic> quartics;
  double minor_worst = 0.0;
  try {
    for (const auto& s : subsets) {
      r.minors.push_back({s, s});
      quartics.push_back(minor_quartic(forms, s, s));
    }
    const int n = static_cast<int>(subsets.size());
    const int total = n * n;
    for (int k = 0; k < cfg.nonprincipal_samples; ++k) {
      int idx = static_cast<int>((static_cast<long long>(k) * total) / cfg.nonprincipal_samples + 37) % total;
      while (idx / n == idx % n) idx = (idx + 1) % total;
      const Minor mn{subsets[static_cast<std::size_t>(idx / n)], subsets[static_cast<std::size_t>(idx % n)]};
      r.minors.push_back(mn);
      quartics.push_back(minor_quartic(forms, mn.rows, mn.cols));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double res = proportionality(quartics[static_cast<std::size_t>(i)], quartics[static_cast<std::size_t>(j)]);
        r.minor_pairs.push_back({i, j, res});
        minor_worst = std::max(minor_worst, res);
      }
    for (int i = n; i < static_cast<int>(quartics.size()); ++i) {
      const double res = proportionality(quartics[static_cast<std::size_t>(i)], quartics[0]);
      r.minor_pairs.push_back({i, 0, res});
      minor_worst = std::max(minor_worst, res);
    }
  } catch (const Error&) {
    minor_worst = kInf;
  }
  add_check(r, "minor_proportionality", minor_worst, cfg.minor_residual_max, true);

  const HomogeneousQuartic f = extracted_quartic(table, m);
  r.det_q_residual = quartics.empty() ? kInf : proportionality(f, quartics[0]);
  add_check(r, "det_q_proportionality", r.det_q_residual, cfg.det_q_residual_max, true);

  // Bitangency of the 28 entry lines and smoothness at the contact points.
  double bit_worst = 0.0;
  r.min_contact_gradient = kInf;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      BitangencyResult b;
      b.ch = m.layout()(i, j);
      b.row = i;
      b.col = j;
      const BinaryQuartic g = restrict_to_line(f, m.entry(i, j));
      b.contact = is_double_contact(g, cfg.bitangency_residual_max);
      for (std::size_t k = 0; k < 2; ++k) {
        Eigen::Vector3cd p = g.point(b.contact.contacts[k]);
        p /= p.norm();
        b.points[k] = p;
        r.min_contact_gradient = std::min(r.min_contact_gradient, f.gradient(p).norm());
      }
      bit_worst = std::max(bit_worst, b.contact.residual);
      r.bitangency.push_back(b);
    }
  add_check(r, "bitangency", bit_worst, cfg.bitangency_residual_max, true);
  add_check(r, "contact_gradient", r.min_contact_gradient, cfg.contact_gradient_min, false);

  // Jacobi's derivative formula on the 56 principal 3x3 triples.
  double jac_worst = 0.0;
  const CharMatrix& layout = m.layout();
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int k = j + 1; k < 8; ++k) {
        JacobiResult jr;
        jr.triple = {layout(i, j), layout(i, k), layout(j, k)};
        const double expected = jacobi_modulus(table, jr.triple[0], jr.triple[1], jr.triple[2]);
        const double got = std::abs(jacobian_D(table, jr.triple[0], jr.triple[1], jr.triple[2]));
        jr.relative = std::abs(got - expected) / expected;
        jac_worst = std::max(jac_worst, jr.relative);
        r.jacobi.push_back(jr);
      }
  add_check(r, "jacobi", jac_worst, cfg.jacobi_relative_max, true);

  const auto relations = reference_riemann_relations();
  for (std::size_t k = 0; k < 2; ++k) {
    r.riemann[k] = riemann_relation_check(table, relations[k][0], relations[k][1], relations[k][2]);
    add_check(r, "riemann_" + std::to_string(k + 1), r.riemann[k].relative, cfg.riemann_relative_max, true);
  }

  // X65 two ways and against theta constants.
  const MergeConstants mc = merge_constants(table);
  const XCoefficients x = compute_X(table, mc);
  r.x65_consistency = std::abs(x.x65_row5 - x.x65_row6) / std::abs(x.x65_row5);
  const double theta_form = x65_theta_modulus(table);
  r.x65_theta_relative = std::abs(std::abs(x.x65_row5) - theta_form) / theta_form;
  add_check(r, "x65_consistency", r.x65_consistency, cfg.x65_consistency_max, true);
  add_check(r, "x65_theta", r.x65_theta_relative, cfg.x65_theta_relative_max, true);

  // The four symmetric 5x5 minors and their agreement after merging.
  const BitangentMatrix merged = assemble_full(table, MatrixForm::merged);
  std::array<SMinor, 4> s{build_S(table, 4), build_S(table, 5), build_S(table, 6), build_S(table, 7)};
  double sym_worst = 0.0, overlap_worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    r.s_asymmetry[k] = s[k].asymmetry();
    sym_worst = std::max(sym_worst, r.s_asymmetry[k]);
  }
  for (std::size_t k = 1; k < 4; ++k) {
    const Scalars5 nsn = merge_minor(table, s[k], mc);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        // rows/columns 0..3 are shared with S_1; the last column is the merged matrix's
        const cplx ref = j < 4 ? s[0].scalars(i, j) : merged.scalar(i, s[k].indices[4]);
        worst = std::max(worst, std::abs(nsn(i, j) - ref) / std::abs(ref));
      }
    r.overlap[k - 1] = worst;
    overlap_worst = std::max(overlap_worst, worst);
  }
  add_check(r, "s_symmetry", sym_worst, cfg.symmetry_max, true);
  add_check(r, "overlap", overlap_worst, cfg.overlap_max, true);
  return r;
}

}  // namespace bitangent
