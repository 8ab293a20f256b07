#pragma once

#include "ddc/core.hpp"
#include "ddc/exponential_sum.hpp"
#include "ddc/worldlines.hpp"

namespace ddc {

//! Antisymmetric atomic statistical function chi_n of one atom,
//! (1/2)<psi_n|[R2(tau), R2(tau')]|psi_n>, as a function of s = tau - tau'.
//!
//! Product states give -+(1/8)(e^{i w0 s} - e^{-i w0 s}); both Bell states
//! give the empty sum, identically zero: each atom then populates ground and
//! excited level with probability 1/2 and the commutator expectation cancels.
//! Identical for atoms A and B.
inline ExponentialSum chi_atom(PreparedState state, AtomTag /*atom*/, double omega0) {
  switch (state) {
    case PreparedState::GroundGround:
      return ExponentialSum{{{{-0.125, 0.0}, omega0}, {{+0.125, 0.0}, -omega0}}};
    case PreparedState::ExcitedExcited:
      return ExponentialSum{{{{+0.125, 0.0}, omega0}, {{-0.125, 0.0}, -omega0}}};
    default:
      return ExponentialSum::zero();
  }
}

//! Symmetric atomic statistical function C_n^{xi xi'},
//! (1/2)<psi_n|{R2^xi(tau), R2^xi'(tau')}|psi_n>, as a function of the lag.
//!
//! Same atom: (1/8)(e^{i w0 s} + e^{-i w0 s}) for every eigenstate.
//! Cross atoms: parity * same for the Bell states; zero for product states
//! (single-atom matrix elements of R2 vanish in energy eigenstates, so the
//! factorized expectation is zero).
inline ExponentialSum c_atoms(PreparedState state, AtomTag xi, AtomTag xi_prime,
                              double omega0) {
  const ExponentialSum same{
      {{{0.125, 0.0}, omega0}, {{0.125, 0.0}, -omega0}}};
  if (xi == xi_prime) return same;
  if (is_bell(state)) return same.scaled(static_cast<double>(parity_sign(state)));
  return ExponentialSum::zero();
}

}  // namespace ddc
