#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bitangent/aronhold.hpp"
#include "bitangent/bitangent_matrix.hpp"
#include "bitangent/characteristic.hpp"
#include "bitangent/quartic.hpp"
#include "bitangent_cli/cli.hpp"

namespace bitangent::cli {
namespace {

using nlohmann::json;

json cj(cplx c) { return json::array({c.real(), c.imag()}); }

json vj(const Eigen::Vector3cd& v) { return json::array({cj(v(0)), cj(v(1)), cj(v(2))}); }

json ratio_list(const std::vector<std::optional<double>>& r) {
  json out = json::array();
  for (const auto& x : r) out.push_back(x ? json(*x) : json(nullptr));
  return out;
}

json scalars_json(const Scalars8& s) {
  json rows = json::array();
  for (int i = 0; i < 8; ++i) {
    json row = json::array();
    for (int j = 0; j < 8; ++j) row.push_back(cj(s(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json theta_section(const ThetaTable& t, double degeneracy) {
  json constants = json::object();
  for (Characteristic m : even_characteristics()) constants[m.label_string()] = cj(t.constant(m));
  json gradients = json::object();
  for (Characteristic n : odd_characteristics()) gradients[n.label_string()] = vj(t.gradient(n));
  return json{{"radius", t.radius()},
              {"tail_bound", t.tail_bound()},
              {"degeneracy_indicator", degeneracy},
              {"constants", constants},
              {"gradients", gradients}};
}

json bitangent_section(const BitangentMatrix& m) {
  json out = json::object();
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      const LinearForm f = m.entry(i, j);
      out[f.ch.label_string()] = json{{"position", {i, j}}, {"form", vj(f.coeffs)}};
    }
  return out;
}

json matrix_section(const ThetaTable& t, const BitangentMatrix& merged, const BitangentMatrix& normalized) {
  const CharMatrix& layout = normalized.layout();
  json lay = json::array();
  for (int i = 0; i < 8; ++i) {
    json row = json::array();
    for (int j = 0; j < 8; ++j) row.push_back(layout(i, j).label_string());
    lay.push_back(row);
  }
  const MergeConstants mc = merge_constants(t);
  const XCoefficients x = compute_X(t, mc);
  return json{{"base", layout.base().label_string()},
              {"layout", lay},
              {"merged", scalars_json(merged.scalars())},
              {"normalized", scalars_json(normalized.scalars())},
              {"merge_constants", {{"A", cj(mc.A)}, {"B", cj(mc.B)}, {"C", cj(mc.C)}}},
              {"x", {{"X65_row5", cj(x.x65_row5)},
                     {"X65_row6", cj(x.x65_row6)},
                     {"X53", cj(x.x53)},
                     {"X74", cj(x.x74)},
                     {"X36", cj(x.x36)},
                     {"X11", cj(x.x11)},
                     {"X27", cj(x.x27)}}}};
}

json quartic_section(const HomogeneousQuartic& f) {
  json mono = json::array();
  json coeffs = json::array();
  for (std::size_t k = 0; k < 15; ++k) {
    const auto e = HomogeneousQuartic::monomial(k);
    mono.push_back({e[0], e[1], e[2]});
    coeffs.push_back(cj(f.coeffs()[k]));
  }
  return json{{"monomials", mono},
              {"coefficients", coeffs},
              {"pivot", f.normalization().pivot},
              {"divisor", cj(f.normalization().divisor)}};
}

json checks_json(const VerificationReport& r) {
  json out = json::array();
  for (const CheckResult& c : r.checks)
    out.push_back(json{{"name", c.name},
                       {"value", c.value},
                       {"threshold", c.threshold},
                       {"bound", c.upper_bound ? "upper" : "lower"},
                       {"pass", c.pass}});
  return out;
}

json verification_section(const VerificationReport& r, int verbosity) {
  json v{{"pass", r.pass()}, {"degenerate", r.degenerate}, {"degeneracy", r.degeneracy}, {"checks", checks_json(r)}};
  if (r.degenerate) return v;

  v["rank_ratios"] = ratio_list(r.rank_ratios);
  v["base_rank_ratios"] = ratio_list(r.base_rank_ratios);

  double worst = 0;
  for (const MinorPair& p : r.minor_pairs) worst = std::max(worst, p.residual);
  json minors{{"count", r.minors.size()}, {"pairs", r.minor_pairs.size()}, {"worst_residual", worst},
              {"det_q_residual", r.det_q_residual}};
  if (verbosity > 0) {
    json pairs = json::array();
    for (const MinorPair& p : r.minor_pairs) {
      const Minor& a = r.minors[static_cast<std::size_t>(p.first)];
      const Minor& b = r.minors[static_cast<std::size_t>(p.second)];
      pairs.push_back(json{{"first", {{"rows", a.rows}, {"cols", a.cols}}},
                           {"second", {{"rows", b.rows}, {"cols", b.cols}}},
                           {"residual", p.residual}});
    }
    minors["residuals"] = pairs;
  }
  v["minor_proportionality"] = minors;

  json bt = json::object();
  for (const BitangencyResult& b : r.bitangency) {
    json e{{"position", {b.row, b.col}},
           {"ok", b.contact.ok},
           {"residual", b.contact.residual},
           {"pair_residual", b.contact.pair_residual},
           {"used_fit", b.contact.used_fit}};
    if (b.contact.used_fit) e["fit_residual"] = b.contact.fit_residual;
    e["contacts"] = json::array({vj(b.points[0]), vj(b.points[1])});
    bt[b.ch.label_string()] = e;
  }
  v["bitangency"] = bt;
  v["min_contact_gradient"] = r.min_contact_gradient;

  json jac = json::array();
  double jworst = 0;
  for (const JacobiResult& j : r.jacobi) {
    jworst = std::max(jworst, j.relative);
    if (verbosity > 0)
      jac.push_back(json{{"triple", {j.triple[0].label_string(), j.triple[1].label_string(), j.triple[2].label_string()}},
                         {"relative", j.relative}});
  }
  v["jacobi"] = json{{"triples", r.jacobi.size()}, {"worst_relative", jworst}};
  if (verbosity > 0) v["jacobi"]["residuals"] = jac;

  json rie = json::array();
  for (const RiemannCheck& c : r.riemann)
    rie.push_back(json{{"signs", {c.sign2, c.sign3}}, {"residual", c.residual}, {"relative", c.relative}});
  v["riemann"] = rie;
  v["x65"] = json{{"consistency", r.x65_consistency}, {"theta_relative", r.x65_theta_relative}};
  v["s_asymmetry"] = r.s_asymmetry;
  v["overlap"] = r.overlap;
  return v;
}

json config_section(const RunConfig& cfg) {
  const TruncationConfig t = cfg.truncation();
  json c{{"tol", cfg.tol},
         {"safety", t.safety},
         {"max_radius", t.max_radius},
         {"degeneracy_threshold", cfg.degeneracy_threshold},
         {"checks", cfg.checks}};
  if (cfg.tau_path) c["tau_file"] = *cfg.tau_path;
  if (cfg.seed) {
    c["seed"] = *cfg.seed;
    c["scale"] = cfg.scale;
  }
  return c;
}

bool write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out,
                std::ostream& err) {
  if (!path) {
    out << text;
    return true;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write " << *path << "\n";
    return false;
  }
  return true;
}

int exit_for(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return kInputError;
  if (dynamic_cast<const DegenerateError*>(&e)) return kDegenerate;
  return kInternal;
}

}  // namespace

void RunConfig::validate() const {
  if (tau_path.has_value() == seed.has_value()) throw InputError("exactly one of --tau and --seed is required");
  if (!(tol > 0.0)) throw InputError("--tol must be positive");
  if (!(degeneracy_threshold > 0.0)) throw InputError("--degeneracy-threshold must be positive");
  if (seed && !(scale >= 0.0 && scale <= 0.5)) throw InputError("--scale must lie in [0, 0.5]");
  truncation().validate();
}

TruncationConfig RunConfig::truncation() const {
  TruncationConfig t;
  t.tol = tol;
  return t;
}

VerifyConfig RunConfig::verify() const {
  VerifyConfig v;
  v.degeneracy_min = degeneracy_threshold;
  return v;
}

RunResult run_pipeline(const PeriodMatrix& tau, const RunConfig& cfg) {
  RunResult res;
  json report;
  report["config"] = config_section(cfg);
  report["tau"] = tau_to_json(tau.matrix())["tau"];
  try {
    const ThetaTable table = build_theta_table(tau, cfg.truncation());
    const double degeneracy = degeneracy_indicator(table);
    report["theta"] = theta_section(table, degeneracy);
    if (!(degeneracy > cfg.degeneracy_threshold)) {
      report["verification"] = verification_section(degenerate_report(table, cfg.verify()), cfg.verbosity);
      res.report = report;
      res.exit_code = kDegenerate;
      std::ostringstream msg;
      msg << "degenerate period matrix: indicator " << degeneracy << " <= " << cfg.degeneracy_threshold;
      res.message = msg.str();
      return res;
    }
    const BitangentMatrix merged = assemble_full(table, MatrixForm::merged);
    const BitangentMatrix normalized = assemble_full(table, MatrixForm::normalized);
    report["bitangents"] = bitangent_section(normalized);
    report["matrix"] = matrix_section(table, merged, normalized);
    report["quartic"] = quartic_section(extracted_quartic(table, normalized));
    if (cfg.checks) {
      const VerificationReport vr = verify_all(table, normalized, cfg.verify());
      report["verification"] = verification_section(vr, cfg.verbosity);
      if (!vr.pass()) {
        res.exit_code = kVerificationFailed;
        for (const CheckResult& c : vr.checks)
          if (!c.pass) {
            res.message = "check failed: " + c.name;
            break;
          }
      }
    }
  } catch (const Error& e) {
    res.exit_code = exit_for(e);
    res.message = e.what();
    // Partial reports are still useful for diagnosing a degenerate tau.
    if (res.exit_code == kDegenerate) res.report = report;
    return res;
  }
  res.report = report;
  return res;
}

int cmd_selftest(std::ostream& out, const std::optional<std::string>& golden_path) {
  struct Step {
    std::string name;
    bool ok;
    std::string detail;
  };
  std::vector<Step> steps;
  auto count = [](auto&& range, auto pred) {
    int n = 0;
    for (const auto& x : range) n += pred(x) ? 1 : 0;
    return n;
  };

  const auto all = all_characteristics();
  const int even = count(all, [](Characteristic m) { return is_even(m); });
  steps.push_back({"even_characteristics", even == 36, std::to_string(even) + " (expected 36)"});
  steps.push_back({"odd_characteristics", 64 - even == 28, std::to_string(64 - even) + " (expected 28)"});

  const auto odd = odd_characteristics();
  int azy = 0, syz = 0;
  for (std::size_t a = 0; a < odd.size(); ++a)
    for (std::size_t b = a + 1; b < odd.size(); ++b)
      for (std::size_t c = b + 1; c < odd.size(); ++c) (is_azygetic(odd[a], odd[b], odd[c]) ? azy : syz)++;
  steps.push_back({"azygetic_triples", azy == 2016, std::to_string(azy) + " (expected 2016)"});
  steps.push_back({"syzygetic_triples", syz == 1260, std::to_string(syz) + " (expected 1260)"});

  const auto sets = enumerate_aronhold_sets();
  steps.push_back({"aronhold_sets", sets.size() == 288, std::to_string(sets.size()) + " (expected 288)"});
  std::map<int, int> per_base;
  for (const AronholdSet& s : sets) per_base[s.base().index()]++;
  std::string bad_base;
  for (Characteristic m : even_characteristics())
    if (per_base[m.index()] != 8) {
      bad_base = m.to_string() + " has " + std::to_string(per_base[m.index()]);
      break;
    }
  steps.push_back({"aronhold_sets_per_base", bad_base.empty() && per_base.size() == 36,
                   bad_base.empty() ? "8 for each of 36 bases" : bad_base});

  std::string golden_detail = "matches";
  bool golden_ok = true;
  try {
    CharMatrix golden = reference_char_matrix();
    if (golden_path) {
      std::ifstream in(*golden_path);
      if (!in) throw InputError("cannot open " + *golden_path);
      std::stringstream buf;
      buf << in.rdbuf();
      golden = CharMatrix::parse(buf.str());
    }
    const CharMatrix built = build_char_matrix(reference_aronhold_set());
    for (int i = 0; i < 8 && golden_ok; ++i)
      for (int j = 0; j < 8 && golden_ok; ++j)
        if (built(i, j) != golden(i, j)) {
          golden_ok = false;
          golden_detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): built " +
                          built(i, j).to_string() + ", golden " + golden(i, j).to_string();
        }
  } catch (const Error& e) {
    golden_ok = false;
    golden_detail = e.what();
  }
  steps.push_back({"golden_char_matrix", golden_ok, golden_detail});

  for (const Step& s : steps) {
    out << (s.ok ? "ok   " : "FAIL ") << s.name << ": " << s.detail << "\n";
    if (!s.ok) {
      out << "first failing check: " << s.name << "\n";
      return kFailure;
    }
  }
  return kPass;
}

int cmd_random_tau(std::uint64_t seed, double scale, double threshold, double tol,
                   const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  try {
    TruncationConfig t;
    t.tol = tol;
    t.validate();
    const PeriodMatrix tau = random_tau(seed, scale, threshold, t);
    return write_text(out_path, tau_to_json(tau.matrix()).dump(2) + "\n", out, err) ? kPass : kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult res;
  try {
    cfg.validate();
    const PeriodMatrix tau =
        cfg.tau_path ? load_tau(*cfg.tau_path) : random_tau(*cfg.seed, cfg.scale, cfg.degeneracy_threshold, cfg.truncation());
    res = run_pipeline(tau, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  if (!res.report.is_null() && !write_text(cfg.out_path, res.report.dump(2) + "\n", out, err)) return kInputError;
  if (!res.message.empty()) err << (res.exit_code == kPass ? "" : "error: ") << res.message << "\n";
  return res.exit_code;
}

}  // namespace bitangent::cli
