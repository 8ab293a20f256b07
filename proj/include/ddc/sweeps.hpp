#pragma once

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ddc/core.hpp"
#include "ddc/rate_engine.hpp"
#include "ddc/worldlines.hpp"

namespace ddc {

inline constexpr const char* kOutputVersion = "ddc-rates v1";
inline constexpr const char* kCsvColumns =
    "state,trajectory,omega0,mu,v,L,a,rate_vf,rate_rr,rate_total,"
    "rate_total_normalized,method,eps_residual,status";

inline std::string state_token(PreparedState s) {
  switch (s) {
    case PreparedState::GroundGround: return "gg";
    case PreparedState::SymmetricBell: return "sym";
    case PreparedState::AntisymmetricBell: return "asym";
    case PreparedState::ExcitedExcited: return "ee";
  }
  throw std::logic_error("state_token: unreachable");
}

inline PreparedState parse_state(const std::string& token) {
  if (token == "gg") return PreparedState::GroundGround;
  if (token == "sym") return PreparedState::SymmetricBell;
  if (token == "asym") return PreparedState::AntisymmetricBell;
  if (token == "ee") return PreparedState::ExcitedExcited;
  throw std::invalid_argument("unknown state '" + token + "' (expected gg|sym|asym|ee)");
}

//! Canonical 12-significant-digit rendering used by both CSV and JSON, so the
//! two formats parse back to identical doubles.
inline std::string format_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double canonical_value(double x) { return std::strtod(format_value(x).c_str(), nullptr); }

//! One swept variable over a linear or logarithmic grid.
struct SweepSpec {
  enum class Variable { Separation, Acceleration, Velocity, Omega0 };

  Variable variable = Variable::Separation;
  double start = 0.1;
  double stop = 10.0;
  int steps = 2;
  bool log_scale = false;

  void validate() const {
    if (!(start < stop)) throw std::invalid_argument("sweep: start must be < stop");
    if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    if (log_scale && !(start > 0.0))
      throw std::invalid_argument("sweep: log scale requires start > 0");
  }

  std::vector<double> grid() const {
    validate();
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(steps - 1);
      g.push_back(log_scale ? start * std::pow(stop / start, f)
                            : start + f * (stop - start));
    }
    return g;
  }

  //! Parses "VAR:START:STOP:STEPS[:log]" with VAR one of L|a|v|omega0.
  static SweepSpec parse(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ':')) parts.push_back(cur);
    if (parts.size() != 4 && parts.size() != 5)
      throw std::invalid_argument("sweep: expected VAR:START:STOP:STEPS[:log]");
    SweepSpec spec;
    if (parts[0] == "L") spec.variable = Variable::Separation;
    else if (parts[0] == "a") spec.variable = Variable::Acceleration;
    else if (parts[0] == "v") spec.variable = Variable::Velocity;
    else if (parts[0] == "omega0") spec.variable = Variable::Omega0;
    else throw std::invalid_argument("sweep: unknown variable '" + parts[0] + "'");
    try {
      spec.start = std::stod(parts[1]);
      spec.stop = std::stod(parts[2]);
      spec.steps = std::stoi(parts[3]);
    } catch (const std::exception&) {
      throw std::invalid_argument("sweep: malformed numeric field in '" + text + "'");
    }
    if (parts.size() == 5) {
      if (parts[4] != "log") throw std::invalid_argument("sweep: trailing field must be 'log'");
      spec.log_scale = true;
    }
    spec.validate();
    return spec;
  }
};

//! Full description of one evaluation request (single point or sweep base).
struct RunConfig {
  PreparedState state = PreparedState::SymmetricBell;
  bool accelerated = false;
  double omega0 = 1.0;
  double mu = 1.0;
  double v = 0.0;
  double x0 = 0.0;
  double separation = 1.0;
  double a = 1.0;

  enum class MethodSel { Analytic, Numeric, Both } method = MethodSel::Analytic;
  QuadratureConfig quadrature;
  double verify_rel_tol = 1e-6;  // analytic-vs-numeric bound in 'both' mode

  enum class Format { Csv, Json } format = Format::Csv;
  std::string out_path;  // empty -> stdout

  AtomPairParams params() const { return AtomPairParams{omega0, mu, state}; }

  WorldlinePair worldline() const {
    return accelerated ? WorldlinePair::uniformly_accelerated(a, separation)
                       : WorldlinePair::inertial(v, x0, separation);
  }

  void validate() const {
    params().validate();
    (void)worldline();
    quadrature.validate();
  }
};

struct RunRecord {
  std::string state;
  std::string trajectory;
  double omega0 = 0, mu = 0, v = 0, separation = 0, a = 0;
  double vf = 0, rr = 0, total = 0, total_normalized = 0;
  std::string method;
  double eps_residual = 0;
  std::string status = "ok";  // ok | noconv | mismatch
};

//! Evaluates one parameter point per the configured method. 'both' reports
//! the analytic values and cross-checks the numeric radiation-reaction rate
//! against them at verify_rel_tol.
inline RunRecord evaluate_point(const RunConfig& cfg) {
  cfg.validate();
  const AtomPairParams params = cfg.params();
  const WorldlinePair pair = cfg.worldline();

  RunRecord rec;
  rec.state = state_token(cfg.state);
  rec.trajectory = cfg.accelerated ? "accelerated" : "inertial";
  rec.omega0 = cfg.omega0;
  rec.mu = cfg.mu;
  rec.v = cfg.accelerated ? 0.0 : cfg.v;
  rec.separation = cfg.separation;
  rec.a = cfg.accelerated ? cfg.a : 0.0;

  const RateMethod primary = (cfg.method == RunConfig::MethodSel::Numeric)
                                 ? RateMethod::Numeric
                                 : RateMethod::Analytic;
  const RateBreakdown breakdown = rate_total(params, pair, cfg.quadrature, primary);
  rec.vf = breakdown.vf;
  rec.rr = breakdown.rr;
  rec.total = breakdown.total;
  rec.total_normalized = breakdown.total / rate_scale(params);
  switch (cfg.method) {
    case RunConfig::MethodSel::Analytic: rec.method = "analytic"; break;
    case RunConfig::MethodSel::Numeric: rec.method = "numeric"; break;
    case RunConfig::MethodSel::Both: rec.method = "both"; break;
  }
  if (breakdown.diagnostics) {
    rec.eps_residual = breakdown.diagnostics->residual;
    if (!breakdown.diagnostics->converged) rec.status = "noconv";
  }

  if (cfg.method == RunConfig::MethodSel::Both && rec.status == "ok") {
    const QuadRate check = rate_rr_numeric(params, pair, cfg.quadrature);
    rec.eps_residual = std::max(rec.eps_residual, check.record.residual);
    if (!check.record.converged) {
      rec.status = "noconv";
    } else {
      const double bound =
          cfg.verify_rel_tol * std::max(std::abs(rec.rr), rate_scale(params));
      if (std::abs(check.value - rec.rr) > bound) rec.status = "mismatch";
    }
  }
  return rec;
}

struct SweepSummary {
  int above = 0;  // |rate_total| exceeds the single-pair baseline mu^2 w0^2/(8 pi)
  int below = 0;
  std::vector<double> crossings;  // swept values where the comparison flips
};

struct RunResult {
  std::vector<RunRecord> records;
  std::optional<SweepSummary> summary;  // sweeps only

  bool all_ok() const {
    for (const auto& r : records)
      if (r.status != "ok") return false;
    return true;
  }
};

inline RunResult run_single(const RunConfig& cfg) {
  RunResult out;
  out.records.push_back(evaluate_point(cfg));
  return out;
}

//! One record per grid point in deterministic grid order. A failing point is
//! marked in its status field rather than aborting the sweep.
inline RunResult run_sweep(const RunConfig& cfg, const SweepSpec& sweep) {
  sweep.validate();
  if (sweep.variable == SweepSpec::Variable::Velocity && cfg.accelerated)
    throw std::invalid_argument("sweep over v requires the inertial trajectory");
  if (sweep.variable == SweepSpec::Variable::Acceleration && !cfg.accelerated)
    throw std::invalid_argument("sweep over a requires the accelerated trajectory");

  RunResult out;
  SweepSummary summary;
  int prev_class = -1;
  for (double value : sweep.grid()) {
    RunConfig point = cfg;
    switch (sweep.variable) {
      case SweepSpec::Variable::Separation: point.separation = value; break;
      case SweepSpec::Variable::Acceleration: point.a = value; break;
      case SweepSpec::Variable::Velocity: point.v = value; break;
      case SweepSpec::Variable::Omega0: point.omega0 = value; break;
    }
    RunRecord rec = evaluate_point(point);
    const double baseline = rate_scale(point.params());
    const int cls = std::abs(rec.total) > baseline ? 1 : 0;
    (cls ? summary.above : summary.below)++;
    if (prev_class >= 0 && cls != prev_class) summary.crossings.push_back(value);
    prev_class = cls;
    out.records.push_back(std::move(rec));
  }
  out.summary = summary;
  return out;
}

inline std::string to_csv(const RunResult& result) {
  std::string out;
  out += "# ";
  out += kOutputVersion;
  out += "\n";
  out += kCsvColumns;
  out += "\n";
  for (const auto& r : result.records) {
    out += r.state + "," + r.trajectory + "," + format_value(r.omega0) + "," +
           format_value(r.mu) + "," + format_value(r.v) + "," + format_value(r.separation) +
           "," + format_value(r.a) + "," + format_value(r.vf) + "," + format_value(r.rr) +
           "," + format_value(r.total) + "," + format_value(r.total_normalized) + "," +
           r.method + "," + format_value(r.eps_residual) + "," + r.status + "\n";
  }
  if (result.summary) {
    out += "# summary: baseline=mu^2*omega0^2/(8*pi) above=" +
           std::to_string(result.summary->above) +
           " below=" + std::to_string(result.summary->below) + " crossings=";
    for (std::size_t i = 0; i < result.summary->crossings.size(); ++i) {
      if (i) out += ";";
      out += format_value(result.summary->crossings[i]);
    }
    out += "\n";
  }
  return out;
}

inline std::string to_json(const RunResult& result) {
  nlohmann::json root;
  root["version"] = kOutputVersion;
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : result.records) {
    nlohmann::json j;
    j["state"] = r.state;
    j["trajectory"] = r.trajectory;
    j["omega0"] = canonical_value(r.omega0);
    j["mu"] = canonical_value(r.mu);
    j["v"] = canonical_value(r.v);
    j["L"] = canonical_value(r.separation);
    j["a"] = canonical_value(r.a);
    j["rate_vf"] = canonical_value(r.vf);
    j["rate_rr"] = canonical_value(r.rr);
    j["rate_total"] = canonical_value(r.total);
    j["rate_total_normalized"] = canonical_value(r.total_normalized);
    j["method"] = r.method;
    j["eps_residual"] = canonical_value(r.eps_residual);
    j["status"] = r.status;
    records.push_back(std::move(j));
  }
  root["records"] = std::move(records);
  if (result.summary) {
    nlohmann::json s;
    s["baseline"] = "mu^2*omega0^2/(8*pi)";
    s["above"] = result.summary->above;
    s["below"] = result.summary->below;
    nlohmann::json crossings = nlohmann::json::array();
    for (double c : result.summary->crossings) crossings.push_back(canonical_value(c));
    s["crossings"] = std::move(crossings);
    root["summary"] = std::move(s);
  }
  return root.dump(2) + "\n";
}

inline std::string render(const RunResult& result, RunConfig::Format format) {
  return format == RunConfig::Format::Json ? to_json(result) : to_csv(result);
}

//! 0 success, 2 when any record failed to converge or verify; config errors
//! are exceptions mapped to exit code 1 by the CLI.
inline int exit_code_for(const RunResult& result) { return result.all_ok() ? 0 : 2; }

}  // namespace ddc
