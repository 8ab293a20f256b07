#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddc/worldlines.hpp"

namespace ddc {

using Cx = std::complex<double>;

//! One Dirac delta of the antisymmetric field correlation function.
struct DeltaTerm {
  double location = 0.0;  // lag s0
  Cx weight{0.0, 0.0};
};

//! weight * delta(s) / d(s) sitting at the half-line origin, with d odd,
//! d(0) = 0, d'(0) = 1. On [0, inf) it acts on a test function f vanishing
//! at 0 as (weight/2) * lim_{s->0+} f(s)/d(s): a delta at the boundary of a
//! half-line integral carries half its weight.
struct BoundaryTerm {
  enum class Denominator { Linear, SinhScaled };

  Cx weight{0.0, 0.0};
  Denominator kind = Denominator::Linear;
  double a = 0.0;  // acceleration, used by SinhScaled: d(s) = (2/a) sinh(a s / 2)

  double denominator(double s) const {
    if (kind == Denominator::SinhScaled) return 2.0 / a * std::sinh(0.5 * a * s);
    return s;
  }
};

//! Exact representation of the field's antisymmetric correlation function on
//! a stationary trajectory pair: a finite set of deltas over the full lag
//! line plus an optional boundary term at s = 0.
class DistributionalKernel {
 public:
  DistributionalKernel(std::vector<DeltaTerm> deltas, std::optional<BoundaryTerm> boundary)
      : deltas_(std::move(deltas)), boundary_(std::move(boundary)) {
    for (const auto& d : deltas_)
      if (d.location == 0.0)
        throw std::invalid_argument(
            "DistributionalKernel: a delta at the origin must be a boundary term");
  }

  const std::vector<DeltaTerm>& deltas() const { return deltas_; }
  const std::optional<BoundaryTerm>& boundary_term() const { return boundary_; }

  double max_delta_location() const {
    double m = 0.0;
    for (const auto& d : deltas_) m = std::max(m, std::abs(d.location));
    return m;
  }

  //! Total weight of all deltas; zero for an antisymmetric kernel.
  Cx total_delta_weight() const {
    Cx acc{0.0, 0.0};
    for (const auto& d : deltas_) acc += d.weight;
    return acc;
  }

 private:
  std::vector<DeltaTerm> deltas_;
  std::optional<BoundaryTerm> boundary_;
};

namespace detail {

// Invariant interval with the proper-time lag shifted to dtau - i eps.
// Large-|a dtau| sinh overflow is guarded by the caller.
inline Cx regularized_interval(const WorldlinePair& pair, Pairing pairing, double dtau,
                               double eps) {
  const Cx z{dtau, -eps};
  Cx timelike;
  if (pair.is_accelerated()) {
    const double a = pair.acceleration();
    const Cx sh = std::sinh(0.5 * a * z);
    timelike = 4.0 / (a * a) * sh * sh;
  } else {
    timelike = z * z;
  }
  if (pairing == Pairing::Cross) timelike -= pair.separation() * pair.separation();
  return timelike;
}

}  // namespace detail

//! Regularized vacuum two-point function of the massless scalar field on the
//! trajectory pair, -1/(4 pi^2) / ((dt - i eps)^2 - |dx|^2), evaluated
//! through the invariant interval so stationarity is manifest.
inline Cx wightman_regularized(const WorldlinePair& pair, Pairing pairing, double dtau,
                               double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("wightman_regularized: eps must be > 0");
  if (pair.is_accelerated() && pair.acceleration() * std::abs(dtau) > 600.0)
    return Cx{0.0, 0.0};  // |W| ~ a^2 e^{-a|dtau|}, far below double precision
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return -1.0 / (four_pi_sq * detail::regularized_interval(pair, pairing, dtau, eps));
}

//! Antisymmetric part (W(s) - W(-s))/2: purely imaginary on the real line.
inline Cx chi_f_regularized(const WorldlinePair& pair, Pairing pairing, double dtau,
                            double eps) {
  return 0.5 * (wightman_regularized(pair, pairing, dtau, eps) -
                wightman_regularized(pair, pairing, -dtau, eps));
}

//! Symmetric part (W(s) + W(-s))/2: purely real on the real line.
inline Cx c_f_regularized(const WorldlinePair& pair, Pairing pairing, double dtau,
                          double eps) {
  return 0.5 * (wightman_regularized(pair, pairing, dtau, eps) +
                wightman_regularized(pair, pairing, -dtau, eps));
}

//! Exact distributional form of the antisymmetric correlation function.
//!
//! Same atom: -(i/4pi) delta(s)/s, the denominator turning into
//! (2/a) sinh(a s/2) under uniform acceleration. Cross atoms: a pair of
//! lightcone deltas at -+ lightcone_lag with weights +-i/(8 pi L) (inertial)
//! or +-i/(8 pi L sqrt(1 + a^2 L^2/4)) (accelerated).
inline DistributionalKernel chi_f_kernel(const WorldlinePair& pair, Pairing pairing) {
  constexpr double pi = std::numbers::pi;
  if (pairing == Pairing::Same) {
    BoundaryTerm b;
    b.weight = Cx{0.0, -1.0 / (4.0 * pi)};
    if (pair.is_accelerated()) {
      b.kind = BoundaryTerm::Denominator::SinhScaled;
      b.a = pair.acceleration();
    }
    return DistributionalKernel({}, b);
  }
  const double L = pair.separation();
  double location = L;
  double magnitude = 1.0 / (8.0 * pi * L);
  if (pair.is_accelerated()) {
    const double a = pair.acceleration();
    location = pair.lightcone_lag();
    magnitude /= std::sqrt(1.0 + 0.25 * a * a * L * L);
  }
  return DistributionalKernel(
      {DeltaTerm{-location, Cx{0.0, +magnitude}}, DeltaTerm{+location, Cx{0.0, -magnitude}}},
      std::nullopt);
}

//! Closed form of the truncated half-line integral of the regularized
//! symmetric correlation function, int_0^T C^F_eps(s) ds, same-atom pairing.
//! Used to add back the subtracted 1/s^2 finite part in the vf quadrature.
inline double c_f_integral_closed(const WorldlinePair& pair, double eps, double t_upper) {
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  if (!pair.is_accelerated())
    return t_upper / (four_pi_sq * (t_upper * t_upper + eps * eps));
  const double a = pair.acceleration();
  // antiderivative of 1/Q is -(a/2) coth(a (s - i eps)/2); the s = 0 end is
  // purely imaginary and drops out of the real part
  double re_coth;
  if (0.5 * a * t_upper > 350.0) {
    re_coth = 1.0;
  } else {
    const Cx z = 0.5 * a * Cx{t_upper, -eps};
    re_coth = (std::cosh(z) / std::sinh(z)).real();
  }
  return 0.5 * a * re_coth / four_pi_sq;
}

}  // namespace ddc
