#pragma once

// Command-line front end. `run` parses argv, writes the report to `out` (or
// to --out) and returns the process exit code:
//   0 success, 1 usage/parameter error or failed verification,
//   2 divergence suspected (partial results are still reported).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zmlab/bounds.hpp"
#include "zmlab/functionals.hpp"
#include "zmlab/inequalities.hpp"
#include "zmlab/optimize.hpp"
#include "zmlab/planar.hpp"
#include "zmlab/verify.hpp"
#include "zmlab/zero_mode.hpp"

namespace zmlab::cli {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  double z = 1.0;
  double tol = 1e-10;
  double grid_L = 8.0;
  int grid_M = 257;
  std::string out;
  std::string format = "json";
};

struct FamilyArgs {
  std::string family = "historical";
  double alpha = 2.77;
  double beta = 0.594;
  double b = 2.82;
  double inner_cutoff = 0.0;
};

inline json to_json(const RunConfig& c) {
  return {{"subcommand", c.subcommand}, {"z", c.z},          {"tol", c.tol},          {"grid_L", c.grid_L},
          {"grid_M", c.grid_M},         {"out", c.out},      {"format", c.format}};
}

inline json to_json(const FunctionalReport& r) {
  return {{"coulomb", r.coulomb}, {"l2", r.l2},         {"magnetic32", r.magnetic}, {"p", r.p},
          {"kl_over_z", r.kl_over_z}, {"tol", r.tol}, {"inner_cutoff", r.inner_cutoff}};
}

inline json to_json(const StepClosedForm& s) {
  return {{"b", s.b},
          {"coulomb", s.coulomb},
          {"l2_quadrature", s.l2_quadrature},
          {"l2_paper_form", s.l2_paper},
          {"magnetic32", s.magnetic32},
          {"kl_paper_form", s.kl_paper_form},
          {"kl_quadrature", s.kl_quadrature}};
}

inline json to_json(const BoundReport& b) {
  return {{"inputs", {{"z", b.inputs.z}, {"L2", b.inputs.L2}, {"L3", b.inputs.L3}, {"alpha", b.inputs.alpha}}},
          {"S2", b.S2},
          {"S3", b.S3},
          {"kc_upper_over_z", b.kc_upper_over_z},
          {"ku_over_z", b.ku_over_z},
          {"zc3d", b.zc3d}};
}

inline json to_json(const ScanSummary& s) {
  return {{"argmax_paper_form", {{"b", s.argmax_paper_form}, {"kl_over_z", s.max_paper_form}}},
          {"argmax_quadrature", {{"b", s.argmax_quadrature}, {"kl_over_z", s.max_quadrature}}},
          {"max_relative_gap", s.max_relative_gap},
          {"divergent_rows", s.divergent_rows}};
}

inline json to_json(const ScanRow& r) {
  return {{"b", r.b},
          {"coulomb", r.coulomb},
          {"l2", r.l2},
          {"magnetic32", r.magnetic32},
          {"kl_paper_form", r.kl_paper_form},
          {"kl_quadrature", r.kl_quadrature},
          {"divergent", r.divergent}};
}

inline json to_json(const VerifyReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"measured", c.measured}, {"relation", c.relation}, {"threshold", c.threshold},
                      {"pass", c.pass}});
  return {{"suite", v.suite}, {"pass", v.pass()}, {"checks", checks}, {"notes", v.notes}};
}

inline json to_json(const InequalitySides& s) {
  return {{"kind", to_string(s.kind)}, {"N", s.N}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"slack", s.slack}};
}

inline json to_json(const divergence_error& e) {
  return {{"message", e.what()}, {"partial_sum", e.partial_sum()}, {"last_increment_ratio", e.last_increment_ratio()}};
}

namespace detail {

inline ZeroMode build_mode(const FamilyArgs& f, const QuadratureOptions& q) {
  if (f.family == "historical") return family_historical();
  if (f.family == "power") return family_power(f.alpha, f.beta, true, q);
  if (f.family == "step") return family_step(f.b, true, q);
  throw std::invalid_argument("unknown family: " + f.family);
}

inline json family_json(const FamilyArgs& f) {
  json j{{"family", f.family}, {"inner_cutoff", f.inner_cutoff}};
  if (f.family == "power") {
    j["alpha"] = f.alpha;
    j["beta"] = f.beta;
  }
  if (f.family == "step") j["b"] = f.b;
  return j;
}

inline void add_family_options(CLI::App* sub, FamilyArgs& f) {
  sub->add_option("--family", f.family, "historical | power | step")
      ->check(CLI::IsMember({"historical", "power", "step"}))
      ->capture_default_str();
  sub->add_option("--alpha", f.alpha, "power family exponent alpha")->capture_default_str();
  sub->add_option("--beta", f.beta, "power family exponent beta")->capture_default_str();
  sub->add_option("--b", f.b, "step field strength")->capture_default_str();
  sub->add_option("--inner-cutoff", f.inner_cutoff, "integrate over r >= cutoff")->capture_default_str();
}

// Writes to the --out file when one was given, otherwise to `out`.
inline bool emit(const RunConfig& cfg, std::ostream& out, std::ostream& err, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(cfg.out);
  if (!f) {
    err << "error: cannot write " << cfg.out << "\n";
    return false;
  }
  f << text;
  return bool(f);
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Zero modes, critical couplings and functional inequalities for self-generated magnetic fields",
               "zmlab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--z", cfg.z, "nuclear charge")->capture_default_str();
  app.add_option("--tol", cfg.tol, "relative quadrature tolerance")->capture_default_str();
  app.add_option("--grid-L", cfg.grid_L, "half-width of the planar grid")->capture_default_str();
  app.add_option("--grid-M", cfg.grid_M, "nodes per side of the planar grid (odd, >= 65)")->capture_default_str();
  app.add_option("--out", cfg.out, "write the report (or the scan CSV) to this file");
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  FamilyArgs fam;
  auto* kl_cmd = app.add_subcommand("kl", "functionals and K_l/z of a zero-mode family");
  detail::add_family_options(kl_cmd, fam);

  BoundInputs bin;
  auto* bounds_cmd = app.add_subcommand("bounds", "Sobolev constants, K_c upper bound, K_u, 3D critical charge");
  bounds_cmd->add_option("--L2", bin.L2, "Lieb-Thirring constant in 2D")->capture_default_str();
  bounds_cmd->add_option("--L3", bin.L3, "Lieb-Thirring constant in 3D")->capture_default_str();
  bounds_cmd->add_option("--alpha", bin.alpha, "fine-structure constant")->capture_default_str();

  double lo = 2.05, hi = 6.0;
  int steps = 200;
  auto* scan_cmd = app.add_subcommand("scan", "K(b) for the unit-disk step field, both forms");
  scan_cmd->add_option("--lo", lo)->capture_default_str();
  scan_cmd->add_option("--hi", hi)->capture_default_str();
  scan_cmd->add_option("--steps", steps)->capture_default_str();

  FamilyArgs opt_fam;
  opt_fam.family = "step";
  opt_fam.alpha = 2.0;
  opt_fam.beta = 1.0;
  opt_fam.inner_cutoff = 1e-6;
  double xtol = 1e-6;
  int max_iters = 500;
  auto* opt_cmd = app.add_subcommand("optimize", "maximize K_l over a family (golden section or Nelder-Mead)");
  opt_cmd->add_option("--family", opt_fam.family, "step | power")->check(CLI::IsMember({"step", "power"}))->capture_default_str();
  opt_cmd->add_option("--alpha", opt_fam.alpha, "Nelder-Mead start alpha")->capture_default_str();
  opt_cmd->add_option("--beta", opt_fam.beta, "Nelder-Mead start beta")->capture_default_str();
  opt_cmd->add_option("--inner-cutoff", opt_fam.inner_cutoff, "inner cutoff for the power family")->capture_default_str();
  opt_cmd->add_option("--lo", lo, "golden-section bracket, low end")->capture_default_str();
  opt_cmd->add_option("--hi", hi, "golden-section bracket, high end")->capture_default_str();
  opt_cmd->add_option("--xtol", xtol, "parameter tolerance")->capture_default_str();
  opt_cmd->add_option("--max-iters", max_iters)->capture_default_str();

  std::string suite;
  VerifyOptions vopt;
  FamilyArgs ver_fam;
  ver_fam.b = 4.0;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification battery");
  verify_cmd->add_option("--suite", suite, "zeromode | diamagnetic | projector | inequalities | stability | el")
      ->required();
  detail::add_family_options(verify_cmd, ver_fam);
  verify_cmd->add_option("--slack-constant", vopt.slack_constant, "C in the -C h^2 slack threshold")
      ->capture_default_str();

  FamilyArgs el_fam;
  ELOptions elopt;
  int samples = 0;
  auto* el_cmd = app.add_subcommand("el-residual", "radial Euler-Lagrange residual of a zero mode");
  detail::add_family_options(el_cmd, el_fam);
  el_cmd->add_option("--el-cutoff", elopt.inner_cutoff, "residual norm integrates over r >= this")->capture_default_str();
  el_cmd->add_option("--exclusion", elopt.exclusion, "half-width of the window dropped at kinks of B")
      ->capture_default_str();
  el_cmd->add_option("--samples", samples, "also list the residual at this many log-spaced radii")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  QuadratureOptions q;
  q.tol = cfg.tol;
  json report{{"config", to_json(cfg)}};
  const bool csv = cfg.format == "csv";

  try {
    if (!(cfg.z > 0.0)) throw std::invalid_argument("--z must be > 0");
    if (!(cfg.tol >= 1e-14 && cfg.tol <= 1e-4)) throw std::invalid_argument("--tol must lie in [1e-14, 1e-4]");

    if (kl_cmd->parsed()) {
      report["config"].update(detail::family_json(fam));
      q.inner_cutoff = fam.inner_cutoff;
      const ZeroMode mode = detail::build_mode(fam, q);
      report["parameters"] = mode.parameters;
      report["flux"] = mode.flux;
      int code = 0;
      try {
        const FunctionalReport r = evaluate(mode, q);
        report.update(to_json(r));
        report["kl"] = cfg.z * r.kl_over_z;
      } catch (const divergence_error& e) {
        code = 2;
        report["coulomb"] = coulomb(mode, q);
        report["l2"] = l2_norm_sq(mode, q);
        report["magnetic32"] = nullptr;
        report["kl_over_z"] = nullptr;
        report["divergence"] = to_json(e);
        json rows = json::array();
        for (const auto& row : cutoff_sensitivity(mode, {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}, q))
          rows.push_back({{"cutoff", row.cutoff},
                          {"magnetic32", row.magnetic32 ? json(*row.magnetic32) : json(nullptr)},
                          {"kl_over_z", row.kl_over_z ? json(*row.kl_over_z) : json(nullptr)}});
        report["cutoff_sensitivity"] = rows;
      }
      if (fam.family == "step") {
        const StepClosedForm s = step_closed_form(fam.b);
        report["kl_paper_form"] = s.kl_paper_form;
        report["kl_quadrature"] = report["kl_over_z"];
        report["closed_form"] = to_json(s);
      }
      std::string text;
      if (csv) {
        text = detail::csv_line({"family", "coulomb", "l2", "magnetic32", "kl_over_z"});
        auto val = [&](const char* k) { return report[k].is_number() ? detail::num(report[k].get<double>()) : "nan"; };
        text += detail::csv_line({fam.family, val("coulomb"), val("l2"), val("magnetic32"), val("kl_over_z")});
      } else {
        text = report.dump(2) + "\n";
      }
      if (!detail::emit(cfg, out, err, text)) return 1;
      return code;
    }

    if (bounds_cmd->parsed()) {
      bin.z = cfg.z;
      const BoundReport b = bound_report(bin);
      report.update(to_json(b));
      std::string text;
      if (csv) {
        text = detail::csv_line({"L2", "L3", "alpha", "S2", "S3", "kc_upper_over_z", "ku_over_z", "zc3d"});
        text += detail::csv_line({detail::num(bin.L2), detail::num(bin.L3), detail::num(bin.alpha), detail::num(b.S2),
                                  detail::num(b.S3), detail::num(b.kc_upper_over_z), detail::num(b.ku_over_z),
                                  detail::num(b.zc3d)});
      } else {
        text = report.dump(2) + "\n";
      }
      return detail::emit(cfg, out, err, text) ? 0 : 1;
    }

    if (scan_cmd->parsed()) {
      report["config"].update({{"lo", lo}, {"hi", hi}, {"steps", steps}});
      const ScanTable t = scan_step_family(lo, hi, steps, cfg.z, q);
      const ScanSummary s = summarize(t);
      report["rows"] = t.rows.size();
      report["summary"] = to_json(s);
      std::ostringstream table;
      write_scan_csv(table, t);
      if (!cfg.out.empty()) {
        if (!detail::emit(cfg, out, err, table.str())) return 1;
        out << report.dump(2) << "\n";
      } else if (csv) {
        out << table.str();
        err << report.dump() << "\n";
      } else {
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back(to_json(r));
        report["table"] = rows;
        out << report.dump(2) << "\n";
      }
      return s.divergent_rows > 0 ? 2 : 0;
    }

    if (opt_cmd->parsed()) {
      report["config"].update(detail::family_json(opt_fam));
      report["config"].update({{"xtol", xtol}, {"max_iters", max_iters}});
      if (opt_fam.family == "step") {
        report["config"].update({{"lo", lo}, {"hi", hi}});
        const Max1D pf = golden_max([](double b) { return step_closed_form(b).kl_paper_form; }, lo, hi, xtol);
        const Max1D qd = golden_max([&](double b) { return kl(family_step(b, false, q), 1.0, q); }, lo, hi, xtol);
        report["paper_form"] = {{"b", pf.x}, {"kl_over_z", pf.value}, {"evaluations", pf.evaluations}};
        report["quadrature"] = {{"b", qd.x}, {"kl_over_z", qd.value}, {"evaluations", qd.evaluations}};
      } else {
        QuadratureOptions pq = q;
        pq.inner_cutoff = opt_fam.inner_cutoff;
        auto f = [pq](std::array<double, 2> x) { return kl(family_power(x[0], x[1], false, pq), 1.0, pq); };
        NelderMeadOptions nm;
        nm.tol = xtol;
        nm.max_iters = max_iters;
        const Max2D r = nelder_mead_max(f, {opt_fam.alpha, opt_fam.beta}, nm);
        report["optimum"] = {{"alpha", r.params[0]},  {"beta", r.params[1]},         {"kl_over_z", r.value},
                             {"iterations", r.iterations}, {"converged", r.converged}};
        const double ref = guarded(f, {2.77, 0.594});
        report["reference_point"] = {{"alpha", 2.77},
                                     {"beta", 0.594},
                                     {"kl_over_z", std::isfinite(ref) ? json(ref) : json(nullptr)},
                                     {"claimed_kl_over_z", 0.1308}};
        report["nelder_mead_coefficients"] = {nm.reflection, nm.expansion, nm.contraction, nm.shrink};
      }
      std::string text = report.dump(2) + "\n";
      return detail::emit(cfg, out, err, text) ? 0 : 1;
    }

    if (verify_cmd->parsed()) {
      vopt.family = ver_fam.family;
      vopt.alpha = ver_fam.alpha;
      vopt.beta = ver_fam.beta;
      vopt.b = ver_fam.b;
      vopt.grid_L = cfg.grid_L;
      vopt.grid_M = cfg.grid_M;
      vopt.z = cfg.z;
      vopt.quadrature = q;
      vopt.quadrature.inner_cutoff = ver_fam.inner_cutoff;
      report["config"].update(detail::family_json(ver_fam));
      report["config"].update({{"suite", suite}, {"slack_constant", vopt.slack_constant}});
      const VerifyReport v = verify_suite(suite, vopt);
      report.update(to_json(v));
      std::string text;
      if (csv) {
        text = detail::csv_line({"check", "measured", "relation", "threshold", "pass"});
        for (const auto& c : v.checks)
          text += detail::csv_line({c.name, detail::num(c.measured), c.relation, detail::num(c.threshold),
                                    c.pass ? "true" : "false"});
      } else {
        text = report.dump(2) + "\n";
      }
      if (!detail::emit(cfg, out, err, text)) return 1;
      return v.pass() ? 0 : 1;
    }

    if (el_cmd->parsed()) {
      report["config"].update(detail::family_json(el_fam));
      report["config"].update({{"el_cutoff", elopt.inner_cutoff}, {"exclusion", elopt.exclusion}, {"samples", samples}});
      q.inner_cutoff = el_fam.inner_cutoff;
      const ZeroMode mode = detail::build_mode(el_fam, q);
      const ELResidual r = el_residual(mode, q, elopt);
      report["coefficients"] = {{"alpha", r.coefficients.alpha}, {"beta", r.coefficients.beta}, {"gamma", r.coefficients.gamma}};
      report["norm"] = r.norm;
      report["inner_cutoff"] = r.inner_cutoff;
      report["excluded"] = r.excluded;
      report["warnings"] = r.warnings;
      std::vector<std::pair<double, double>> pts;
      if (samples > 1) {
        const double a = std::log(elopt.inner_cutoff), b = std::log(100.0);
        for (int i = 0; i < samples; ++i) {
          const double rr = std::exp(a + (b - a) * i / (samples - 1));
          pts.emplace_back(rr, r.residual(rr));
        }
      }
      std::string text;
      if (csv) {
        text = detail::csv_line({"r", "residual"});
        for (const auto& [x, v] : pts) text += detail::csv_line({detail::num(x), detail::num(v)});
      } else {
        json s = json::array();
        for (const auto& [x, v] : pts) s.push_back({x, v});
        if (!pts.empty()) report["samples"] = s;
        text = report.dump(2) + "\n";
      }
      return detail::emit(cfg, out, err, text) ? 0 : 1;
    }
  } catch (const divergence_error& e) {
    report["divergence"] = to_json(e);
    out << report.dump(2) << "\n";
    err << "divergence suspected: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

} // namespace zmlab::cli
