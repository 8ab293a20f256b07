#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ddc/atom_statistics.hpp"
#include "ddc/core.hpp"
#include "ddc/field_correlations.hpp"
#include "ddc/quadrature.hpp"
#include "ddc/worldlines.hpp"

namespace ddc {

//! Controls for the regularized-quadrature path: the epsilon ladder that
//! feeds the Richardson extrapolation, the finite horizon standing in for
//! the infinitely long interaction interval, and tolerance targets.
struct QuadratureConfig {
  enum class Window { HardCutoff, ExponentialTaper };

  std::vector<double> epsilon_ladder = default_ladder();  // units of 1/omega0
  double t_window = 200.0;                                // units of 1/omega0
  Window window = Window::HardCutoff;
  double tolerance = 1e-8;  // extrapolant agreement, units of rate_scale()
  quad::Options quad_options{1e-14, 1e-10, 8000};
  bool force_quadrature = false;  // run the vf quadrature even when chi_n == 0

  //! 1e-2 / omega0 halved six times.
  static std::vector<double> default_ladder() {
    std::vector<double> ladder;
    double e = 1e-2;
    for (int i = 0; i < 7; ++i, e *= 0.5) ladder.push_back(e);
    return ladder;
  }

  static QuadratureConfig from_ladder_spec(double eps0, int levels) {
    if (!(eps0 > 0.0) || levels < 1)
      throw std::invalid_argument("QuadratureConfig: eps0 > 0 and levels >= 1 required");
    QuadratureConfig qc;
    qc.epsilon_ladder.clear();
    double e = eps0;
    for (int i = 0; i < levels; ++i, e *= 0.5) qc.epsilon_ladder.push_back(e);
    return qc;
  }

  void validate() const {
    if (epsilon_ladder.empty())
      throw std::invalid_argument("QuadratureConfig: empty epsilon ladder");
    for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
      if (!(epsilon_ladder[i] > 0.0))
        throw std::invalid_argument("QuadratureConfig: ladder entries must be > 0");
      if (i > 0 && !(epsilon_ladder[i] < epsilon_ladder[i - 1]))
        throw std::invalid_argument("QuadratureConfig: ladder must be strictly decreasing");
    }
    if (!(t_window > 0.0)) throw std::invalid_argument("QuadratureConfig: t_window must be > 0");
    if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureConfig: tolerance must be > 0");
  }
};

//! Half-line action of a distributional kernel on an exponential sum:
//!   int_0^inf kernel(s) f(s) ds
//! Deltas at s0 > 0 sift with full weight, deltas at s0 < 0 lie outside the
//! half-line, and the boundary term contributes
//! (weight/2) lim_{s->0+} f(s)/d(s) = (weight/2) f'(0), which requires
//! f(0) = 0.
inline Cx pair_kernel(const DistributionalKernel& kernel, const ExponentialSum& es) {
  Cx acc{0.0, 0.0};
  if (kernel.boundary_term()) {
    const Cx at_zero = es.coefficient_sum();
    if (std::abs(at_zero) > 1e-13 * std::max(1.0, es.max_abs_coeff()))
      throw std::invalid_argument(
          "pair_kernel: boundary term requires a test function vanishing at s = 0");
    acc += 0.5 * kernel.boundary_term()->weight * es.derivative().coefficient_sum();
  }
  for (const auto& d : kernel.deltas())
    if (d.location > 0.0) acc += d.weight * es.evaluate(d.location);
  return acc;
}

namespace detail {

inline double take_real_checked(Cx value, double scale, double bound_factor,
                                const char* what) {
  if (std::abs(value.imag()) > bound_factor * scale)
    throw std::logic_error(std::string(what) + ": imaginary residue above bound");
  return value.real();
}

inline void add_peak_cluster(std::vector<double>& pts, double center, double eps, double lo,
                             double hi) {
  static constexpr double kScales[] = {0.25, 1.0, 3.0, 10.0, 30.0, 100.0};
  auto push = [&](double x) {
    if (x > lo && x < hi) pts.push_back(x);
  };
  push(center);
  for (double k : kScales) {
    push(center - k * eps);
    push(center + k * eps);
  }
}

inline void add_oscillation_marks(std::vector<double>& pts, double omega0, double lo,
                                  double hi, double periods_per_mark) {
  const double step = periods_per_mark * 2.0 * std::numbers::pi / omega0;
  for (double x = lo + step; x < hi; x += step) pts.push_back(x);
}

struct WindowSpec {
  double t_hard;   // horizon of the hard part
  double t_upper;  // actual upper integration limit
  bool tapered;
  double taper_scale;

  double weight(double s) const {
    if (!tapered || s <= t_hard) return 1.0;
    return std::exp(-(s - t_hard) / taper_scale);
  }
};

inline WindowSpec make_window(const QuadratureConfig& qc, double t_phys) {
  if (qc.window == QuadratureConfig::Window::ExponentialTaper) {
    const double scale = t_phys / 10.0;
    return WindowSpec{t_phys, t_phys + 30.0 * scale, true, scale};
  }
  return WindowSpec{t_phys, t_phys, false, 0.0};
}

}  // namespace detail

//! Radiation-reaction rate of one atom from exact kernel pairing:
//! 2 i mu^2 [ <chi^F K_same, dC_same/ds> + <chi^F K_cross, dC_cross/ds> ].
inline double rate_rr_analytic_atom(const AtomPairParams& params, const WorldlinePair& pair,
                                    AtomTag atom) {
  params.validate();
  const AtomTag other = (atom == AtomTag::A) ? AtomTag::B : AtomTag::A;
  const Cx prefactor = Cx{0.0, 2.0} * params.mu * params.mu;
  Cx acc = pair_kernel(chi_f_kernel(pair, Pairing::Same),
                       c_atoms(params.state, atom, atom, params.omega0).derivative());
  const ExponentialSum cross = c_atoms(params.state, atom, other, params.omega0).derivative();
  if (!cross.empty()) acc += pair_kernel(chi_f_kernel(pair, Pairing::Cross), cross);
  const double scale = params.mu * params.mu * params.omega0 * params.omega0;
  return detail::take_real_checked(prefactor * acc, scale, 1e-12, "rate_rr_analytic");
}

//! Radiation-reaction rate of the two-atom system, exact kernel path.
inline double rate_rr_analytic(const AtomPairParams& params, const WorldlinePair& pair) {
  return rate_rr_analytic_atom(params, pair, AtomTag::A) +
         rate_rr_analytic_atom(params, pair, AtomTag::B);
}

struct QuadRate {
  double value = 0.0;
  ExtrapolationRecord record;
};

//! Radiation-reaction rate via regularized quadrature: the independent oracle
//! for the kernel path. Integrates 2 i mu^2 chi^F_eps dC/ds over [0, T] for
//! each regulator in the ladder and extrapolates eps -> 0.
inline QuadRate rate_rr_numeric(const AtomPairParams& params, const WorldlinePair& pair,
                                const QuadratureConfig& qc) {
  params.validate();
  qc.validate();
  const double w0 = params.omega0;
  const double t_phys = qc.t_window / w0;
  const double lightcone = pair.lightcone_lag();
  if (t_phys <= lightcone)
    throw std::invalid_argument("rate_rr_numeric: t_window must exceed the lightcone lag");

  const ExponentialSum c_same =
      c_atoms(params.state, AtomTag::A, AtomTag::A, w0).derivative();
  const ExponentialSum c_cross =
      c_atoms(params.state, AtomTag::A, AtomTag::B, w0).derivative();
  const Cx prefactor = Cx{0.0, 2.0} * params.mu * params.mu;
  const detail::WindowSpec window = detail::make_window(qc, t_phys);

  std::vector<double> eps_phys, values;
  for (double eps_rel : qc.epsilon_ladder) {
    const double eps = eps_rel / w0;
    auto integrand = [&](double s) -> Cx {
      Cx acc = 2.0 * chi_f_regularized(pair, Pairing::Same, s, eps) * c_same.evaluate(s);
      if (!c_cross.empty())
        acc += 2.0 * chi_f_regularized(pair, Pairing::Cross, s, eps) * c_cross.evaluate(s);
      return prefactor * window.weight(s) * acc;
    };
    std::vector<double> pts;
    detail::add_peak_cluster(pts, 0.0, eps, 0.0, window.t_upper);
    if (!c_cross.empty()) detail::add_peak_cluster(pts, lightcone, eps, 0.0, window.t_upper);
    detail::add_oscillation_marks(pts, w0, 0.0, window.t_upper, 0.5);
    if (window.tapered) pts.push_back(window.t_hard);
    const auto r = quad::integrate(integrand, 0.0, window.t_upper, pts, qc.quad_options);
    eps_phys.push_back(eps);
    values.push_back(r.value.real());
  }

  auto record =
      quad::richardson_to_zero(std::move(eps_phys), std::move(values),
                               qc.tolerance * rate_scale(params));
  record.label = "rr";
  record.t_window = t_phys;
  return {record.value, record};
}

//! Vacuum-fluctuation rate. Both Bell states have chi_n identically zero, so
//! the rate is exactly zero with no quadrature (unless force_quadrature runs
//! the machinery on the vanishing integrand). Product states are integrated
//! with the leading 1/s^2 finite part subtracted at s = 0 and its truncated
//! half-line integral added back in closed form, then eps-extrapolated.
inline QuadRate rate_vf(const AtomPairParams& params, const WorldlinePair& pair,
                        const QuadratureConfig& qc) {
  params.validate();
  qc.validate();
  const double w0 = params.omega0;
  const double t_phys = qc.t_window / w0;
  const ExponentialSum chi_prime = chi_atom(params.state, AtomTag::A, w0).derivative();

  if (chi_prime.empty() && !qc.force_quadrature) {
    ExtrapolationRecord record;
    record.label = "vf";
    record.t_window = t_phys;
    record.converged = true;
    return {0.0, record};
  }

  const Cx chi_prime_zero = chi_prime.coefficient_sum();
  const Cx prefactor = Cx{0.0, 2.0} * params.mu * params.mu * 2.0;  // both atoms
  const detail::WindowSpec window = detail::make_window(qc, t_phys);

  std::vector<double> eps_phys, values;
  for (double eps_rel : qc.epsilon_ladder) {
    const double eps = eps_rel / w0;
    auto integrand = [&](double s) -> Cx {
      const Cx cf = c_f_regularized(pair, Pairing::Same, s, eps);
      if (s <= window.t_hard) return prefactor * cf * (chi_prime.evaluate(s) - chi_prime_zero);
      return prefactor * window.weight(s) * cf * chi_prime.evaluate(s);
    };
    std::vector<double> pts;
    detail::add_peak_cluster(pts, 0.0, eps, 0.0, window.t_upper);
    detail::add_oscillation_marks(pts, w0, 0.0, window.t_upper, 0.5);
    if (window.tapered) pts.push_back(window.t_hard);
    const auto r = quad::integrate(integrand, 0.0, window.t_upper, pts, qc.quad_options);
    const Cx finite_part =
        prefactor * chi_prime_zero * c_f_integral_closed(pair, eps, window.t_hard);
    eps_phys.push_back(eps);
    values.push_back((r.value + finite_part).real());
  }

  auto record =
      quad::richardson_to_zero(std::move(eps_phys), std::move(values),
                               qc.tolerance * rate_scale(params));
  record.label = "vf";
  record.t_window = t_phys;
  return {record.value, record};
}

enum class RateMethod { Analytic, Numeric };

//! Full DDC breakdown: vf + rr = total. The rr part follows the requested
//! method; vf is exact for Bell states and quadrature for product states.
//! Non-convergence of a ladder is reported through diagnostics, not thrown.
inline RateBreakdown rate_total(const AtomPairParams& params, const WorldlinePair& pair,
                                const QuadratureConfig& qc,
                                RateMethod method = RateMethod::Analytic) {
  RateBreakdown out;
  std::optional<ExtrapolationRecord> worst;
  auto consider = [&worst](const ExtrapolationRecord& rec) {
    if (rec.epsilons.empty()) return;  // no quadrature actually ran
    if (!worst || rec.residual > worst->residual) worst = rec;
  };

  if (method == RateMethod::Numeric) {
    const QuadRate rr = rate_rr_numeric(params, pair, qc);
    out.rr = rr.value;
    out.method = Method::RegularizedQuadrature;
    consider(rr.record);
  } else {
    out.rr = rate_rr_analytic(params, pair);
    out.method = Method::AnalyticKernel;
  }

  const QuadRate vf = rate_vf(params, pair, qc);
  out.vf = vf.value;
  consider(vf.record);

  out.total = out.vf + out.rr;
  out.diagnostics = worst;
  return out;
}

//! Closed-form total rate for the Bell states in synchronized inertial
//! motion: -(mu^2 w0^2/8pi) - parity (mu^2 w0/8pi) sin(w0 L)/L.
inline double closed_form_inertial(double omega0, double mu, double separation, int parity) {
  if (!(omega0 > 0.0 && mu > 0.0 && separation > 0.0))
    throw std::invalid_argument("closed_form_inertial: omega0, mu, L must be > 0");
  if (parity != 1 && parity != -1)
    throw std::invalid_argument("closed_form_inertial: parity must be +1 or -1");
  const double base = mu * mu * omega0 / (8.0 * std::numbers::pi);
  return -base * omega0 - parity * base * std::sin(omega0 * separation) / separation;
}

//! Interference modulation factor of the separation-dependent term:
//! sin((2 w0/a) asinh(a L/2)) / (L sqrt(1 + a^2 L^2/4)); a = 0 gives the
//! inertial limit sin(w0 L)/L, and L -> 0 tends to w0 for any a.
inline double modulation_factor(double omega0, double separation, double a) {
  if (!(omega0 > 0.0 && separation > 0.0))
    throw std::invalid_argument("modulation_factor: omega0 and L must be > 0");
  if (a == 0.0) return std::sin(omega0 * separation) / separation;
  if (!(a > 0.0)) throw std::invalid_argument("modulation_factor: a must be >= 0");
  const double lag = 2.0 / a * std::asinh(0.5 * a * separation);
  return std::sin(omega0 * lag) /
         (separation * std::sqrt(1.0 + 0.25 * a * a * separation * separation));
}

//! Closed-form total rate for the Bell states in synchronized uniform
//! acceleration. Reduces to the inertial form as a -> 0 with O(a^2) error.
inline double closed_form_accelerated(double omega0, double mu, double separation, double a,
                                      int parity) {
  if (!(omega0 > 0.0 && mu > 0.0 && separation > 0.0 && a > 0.0))
    throw std::invalid_argument("closed_form_accelerated: omega0, mu, L, a must be > 0");
  if (parity != 1 && parity != -1)
    throw std::invalid_argument("closed_form_accelerated: parity must be +1 or -1");
  const double base = mu * mu * omega0 / (8.0 * std::numbers::pi);
  return -base * omega0 - parity * base * modulation_factor(omega0, separation, a);
}

//! Planck occupation number at the Unruh temperature a/2pi.
inline double planck_occupation(double omega0, double a) {
  if (!(a > 0.0)) return 0.0;
  const double x = 2.0 * std::numbers::pi * omega0 / a;
  const double denom = std::expm1(x);
  return std::isinf(denom) ? 0.0 : 1.0 / denom;
}

struct ThermalOptions {
  double separation = 1.0;     // L used for the acceleration sweep
  int parity = +1;
  double a_min_rel = 0.1;      // sweep bounds in units of omega0
  double a_max_rel = 10.0;
  std::size_t a_points = 25;
  std::size_t l_points = 33;
  double l_min = 0.05;         // modulation scan bounds (units 1/omega0)
  double l_max = 10.0;
  double tolerance = 1e-6;     // certificate bound on the fitted coefficient
  bool use_numeric_rates = false;  // fit on quadrature data instead of closed form
  QuadratureConfig quadrature;     // used when use_numeric_rates
};

//! Outcome of fitting total(a) = closed_form(a) + (c0 + c1 nbar(a)) * scale
//! over the acceleration grid; c0 and c1 are in units of mu^2 w0^2/(8 pi).
struct PlanckFit {
  double offset = 0.0;       // c0
  double coefficient = 0.0;  // c1, the thermal-occupation coefficient
  double max_abs_residual = 0.0;
  std::size_t points = 0;
};

struct ThermalReport {
  double omega0 = 0.0;
  double a = 0.0;
  std::vector<double> l_grid;
  std::vector<double> modulation;                 // at acceleration a
  std::vector<double> modulation_inertial_limit;  // sin(w0 L)/L
  double modulation_small_l = 0.0;                // -> omega0
  std::vector<double> a_grid;
  std::vector<double> totals_normalized;  // total / rate_scale on the a grid
  PlanckFit fit;
  bool nonthermal = false;
  double tolerance = 0.0;
};

//! Least-squares fit of residual = c0 + c1 nbar(a) over an acceleration grid.
inline PlanckFit fit_planck_occupation(const std::vector<double>& a_grid,
                                       const std::vector<double>& normalized_residuals,
                                       double omega0) {
  if (a_grid.size() != normalized_residuals.size() || a_grid.size() < 2)
    throw std::invalid_argument("fit_planck_occupation: need matching grids, >= 2 points");
  double s_nn = 0.0, s_n1 = 0.0, s_11 = 0.0, s_ny = 0.0, s_1y = 0.0;
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double nbar = planck_occupation(omega0, a_grid[i]);
    const double y = normalized_residuals[i];
    s_nn += nbar * nbar;
    s_n1 += nbar;
    s_11 += 1.0;
    s_ny += nbar * y;
    s_1y += y;
  }
  PlanckFit fit;
  fit.points = a_grid.size();
  const double det = s_11 * s_nn - s_n1 * s_n1;
  if (std::abs(det) > 1e-300) {
    fit.coefficient = (s_11 * s_ny - s_n1 * s_1y) / det;
    fit.offset = (s_nn * s_1y - s_n1 * s_ny) / det;
  }
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double model = fit.offset + fit.coefficient * planck_occupation(omega0, a_grid[i]);
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs(normalized_residuals[i] - model));
  }
  return fit;
}

//! Certifies the nonthermal character of the Bell-state rate: a least-squares
//! Planck-occupation term fitted on top of the nonthermal closed form over an
//! acceleration sweep comes out consistent with zero. A thermal rate in the
//! manner of a single accelerated atom would instead need c1 = O(1).
inline ThermalReport thermal_comparison(double omega0, double a,
                                        const ThermalOptions& opt = {}) {
  if (!(omega0 > 0.0 && a > 0.0))
    throw std::invalid_argument("thermal_comparison: omega0 and a must be > 0");

  ThermalReport rep;
  rep.omega0 = omega0;
  rep.a = a;
  rep.tolerance = opt.tolerance;

  rep.l_grid.reserve(opt.l_points);
  for (std::size_t i = 0; i < opt.l_points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(opt.l_points - 1);
    const double L = opt.l_min / omega0 * std::pow(opt.l_max / opt.l_min, f);
    rep.l_grid.push_back(L);
    rep.modulation.push_back(modulation_factor(omega0, L, a));
    rep.modulation_inertial_limit.push_back(modulation_factor(omega0, L, 0.0));
  }
  rep.modulation_small_l = modulation_factor(omega0, 1e-9 / omega0, a);

  const double mu = 1.0;  // rates scale with mu^2 overall; the fit is mu-independent
  const AtomPairParams params{omega0, mu,
                              opt.parity > 0 ? PreparedState::SymmetricBell
                                             : PreparedState::AntisymmetricBell};
  const double scale = rate_scale(params);

  rep.a_grid.reserve(opt.a_points);
  std::vector<double> residuals;
  residuals.reserve(opt.a_points);
  for (std::size_t i = 0; i < opt.a_points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(opt.a_points - 1);
    const double ai = omega0 * opt.a_min_rel * std::pow(opt.a_max_rel / opt.a_min_rel, f);
    rep.a_grid.push_back(ai);

    double total;
    if (opt.use_numeric_rates) {
      const WorldlinePair pair = WorldlinePair::uniformly_accelerated(ai, opt.separation);
      total = rate_rr_numeric(params, pair, opt.quadrature).value;
    } else {
      total = closed_form_accelerated(omega0, mu, opt.separation, ai, opt.parity);
    }
    rep.totals_normalized.push_back(total / scale);
    residuals.push_back(
        (total - closed_form_accelerated(omega0, mu, opt.separation, ai, opt.parity)) / scale);
  }

  rep.fit = fit_planck_occupation(rep.a_grid, residuals, omega0);
  rep.nonthermal = std::abs(rep.fit.coefficient) <= opt.tolerance;
  return rep;
}

}  // namespace ddc
