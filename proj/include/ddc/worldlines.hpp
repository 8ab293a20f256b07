#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>

namespace ddc {

enum class AtomTag { A, B };
enum class Pairing { Same, Cross };

struct SpacetimeEvent {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

//! Both atoms move with the same constant velocity v along x; atom B is
//! displaced by the separation L along y.
struct InertialMotion {
  double v = 0.0;
  double x0 = 0.0;
};

//! Both atoms ride the same Rindler hyperbola x^2 - t^2 = 1/a^2, displaced
//! by L transverse to the acceleration.
struct UniformAcceleration {
  double a = 1.0;
};

//! Synchronized stationary trajectories of the two atoms with constant
//! transverse separation. All two-point functions evaluated on the pair
//! depend on the proper-time lag only.
class WorldlinePair {
 public:
  static constexpr double kMaxSpeed = 1.0 - 1e-12;  // subluminal cap, keeps gamma finite

  static WorldlinePair inertial(double v, double x0, double separation) {
    if (!(v >= 0.0 && v <= kMaxSpeed))
      throw std::invalid_argument("WorldlinePair: v must lie in [0, 1 - 1e-12]");
    return WorldlinePair(InertialMotion{v, x0}, separation);
  }

  static WorldlinePair uniformly_accelerated(double a, double separation) {
    if (!(a > 0.0)) throw std::invalid_argument("WorldlinePair: a must be > 0");
    return WorldlinePair(UniformAcceleration{a}, separation);
  }

  bool is_accelerated() const { return std::holds_alternative<UniformAcceleration>(kind_); }
  double separation() const { return separation_; }

  const InertialMotion& inertial_motion() const { return std::get<InertialMotion>(kind_); }
  double acceleration() const { return std::get<UniformAcceleration>(kind_).a; }

  double gamma() const {
    const auto& m = inertial_motion();
    return 1.0 / std::sqrt((1.0 - m.v) * (1.0 + m.v));
  }

  SpacetimeEvent event_at(AtomTag atom, double tau) const {
    const double y = (atom == AtomTag::B) ? separation_ : 0.0;
    if (is_accelerated()) {
      const double a = acceleration();
      return SpacetimeEvent{std::sinh(a * tau) / a, std::cosh(a * tau) / a, y, 0.0};
    }
    const auto& m = inertial_motion();
    const double g = gamma();
    return SpacetimeEvent{g * tau, m.x0 + m.v * g * tau, y, 0.0};
  }

  //! (Delta t, |Delta x|) at proper-time lag dtau. For the accelerated pair
  //! the two entries separately depend on absolute time; here they are taken
  //! at the symmetric midpoint tau + tau' = 0, where they reproduce the
  //! invariant combination exactly. Downstream code consumes only
  //! invariant_interval().
  std::pair<double, double> lag_interval(Pairing pairing, double dtau) const {
    if (is_accelerated()) {
      const double a = acceleration();
      const double dt = 2.0 / a * std::sinh(0.5 * a * dtau);
      const double dx = (pairing == Pairing::Cross) ? separation_ : 0.0;
      return {dt, dx};
    }
    const auto& m = inertial_motion();
    const double g = gamma();
    const double dt = g * dtau;
    const double dxx = m.v * g * std::abs(dtau);
    const double dx = (pairing == Pairing::Cross) ? std::hypot(dxx, separation_) : dxx;
    return {dt, dx};
  }

  //! Invariant interval Delta t^2 - |Delta x|^2 as a function of the lag.
  //! Inertial: dtau^2 [- L^2]; accelerated: (4/a^2) sinh^2(a dtau/2) [- L^2].
  double invariant_interval(Pairing pairing, double dtau) const {
    double timelike;
    if (is_accelerated()) {
      const double a = acceleration();
      const double sh = std::sinh(0.5 * a * dtau);
      timelike = 4.0 / (a * a) * sh * sh;
    } else {
      timelike = dtau * dtau;
    }
    return (pairing == Pairing::Cross) ? timelike - separation_ * separation_ : timelike;
  }

  //! Smallest positive lag with a lightlike cross interval: L for inertial
  //! motion, (2/a) asinh(a L / 2) under acceleration.
  double lightcone_lag() const {
    if (is_accelerated()) {
      const double a = acceleration();
      return 2.0 / a * std::asinh(0.5 * a * separation_);
    }
    return separation_;
  }

 private:
  WorldlinePair(std::variant<InertialMotion, UniformAcceleration> kind, double separation)
      : kind_(kind), separation_(separation) {
    if (!(separation_ > 0.0))
      throw std::invalid_argument("WorldlinePair: separation must be > 0");
  }

  std::variant<InertialMotion, UniformAcceleration> kind_;
  double separation_;
};

}  // namespace ddc
