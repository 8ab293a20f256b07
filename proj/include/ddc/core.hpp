#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddc {

//! Energy eigenstates of the free two-atom Hamiltonian.
//! GroundGround and ExcitedExcited are product states; the two Bell states
//! are the maximally entangled zero-energy eigenstates (|ge> +- |eg>)/sqrt(2).
enum class PreparedState {
  GroundGround,
  SymmetricBell,
  AntisymmetricBell,
  ExcitedExcited,
};

inline bool is_bell(PreparedState s) {
  return s == PreparedState::SymmetricBell || s == PreparedState::AntisymmetricBell;
}

inline bool is_product(PreparedState s) { return !is_bell(s); }

//! +1 for the symmetric Bell state, -1 for the antisymmetric one.
//! Parity is undefined on product states; those are rejected.
inline int parity_sign(PreparedState s) {
  switch (s) {
    case PreparedState::SymmetricBell: return +1;
    case PreparedState::AntisymmetricBell: return -1;
    default:
      throw std::invalid_argument("parity_sign: undefined for factorizable states");
  }
}

//! Eigenvalue of the free two-atom Hamiltonian: -omega0, 0, 0, +omega0.
inline double state_energy(PreparedState s, double omega0) {
  if (!(omega0 > 0.0)) throw std::invalid_argument("state_energy: omega0 must be > 0");
  switch (s) {
    case PreparedState::GroundGround: return -omega0;
    case PreparedState::ExcitedExcited: return +omega0;
    default: return 0.0;
  }
}

//! Two identical two-level atoms: energy gap omega0, scalar coupling mu,
//! prepared in one of the four eigenstates. Natural units (hbar = c = 1).
struct AtomPairParams {
  double omega0 = 1.0;
  double mu = 1.0;
  PreparedState state = PreparedState::SymmetricBell;

  void validate() const {
    if (!(omega0 > 0.0)) throw std::invalid_argument("AtomPairParams: omega0 must be > 0");
    if (!(mu > 0.0)) throw std::invalid_argument("AtomPairParams: mu must be > 0");
  }
};

//! Natural rate unit mu^2 omega0^2 / (8 pi); every closed form is a small
//! multiple of it, so reported rates are also emitted normalized by it.
inline double rate_scale(const AtomPairParams& p) {
  return p.mu * p.mu * p.omega0 * p.omega0 / (8.0 * std::numbers::pi);
}

enum class Method { AnalyticKernel, RegularizedQuadrature };

//! Ladder record of a Richardson extrapolation in the regulator epsilon.
struct ExtrapolationRecord {
  std::string label;                  // which integral the ladder belongs to
  std::vector<double> epsilons;      // physical regulator values, decreasing
  std::vector<double> values;        // I(eps_j)
  std::vector<double> extrapolants;  // Neville diagonal at eps -> 0
  double value = 0.0;
  double residual = 0.0;             // |last - previous| extrapolant
  double t_window = 0.0;             // physical upper integration limit
  bool converged = false;
};

//! Energy rate of the two-atom system split per the DDC prescription.
struct RateBreakdown {
  double vf = 0.0;     // vacuum-fluctuation contribution
  double rr = 0.0;     // radiation-reaction contribution
  double total = 0.0;  // vf + rr
  Method method = Method::AnalyticKernel;
  std::optional<ExtrapolationRecord> diagnostics;  // worst ladder, when quadrature ran
};

}  // namespace ddc
