#pragma once

#include <array>
#include <complex>

#include "ddc/core.hpp"
#include "ddc/worldlines.hpp"

// Brute-force evaluation of the atomic statistical functions on the explicit
// 4-dimensional two-atom Hilbert space. Deliberately independent of the
// closed forms in atom_statistics.hpp: states and operators are built as
// literal matrices and the commutator/anticommutator expectations are taken
// directly. Serves as the oracle the closed forms are checked against.

namespace ddc::oracle {

using Cx = std::complex<double>;

//! Dense 4x4 complex matrix, row-major. Basis order: |gg>, |ge>, |eg>, |ee>
//! (atom A first, g before e).
struct Mat4 {
  std::array<Cx, 16> m{};

  Cx& operator()(int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
  const Cx& operator()(int r, int c) const { return m[static_cast<std::size_t>(4 * r + c)]; }

  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Cx acc{0.0, 0.0};
        for (int k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
        out(i, j) = acc;
      }
    return out;
  }
  friend Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 out;
    for (int i = 0; i < 16; ++i) out.m[static_cast<std::size_t>(i)] = a.m[static_cast<std::size_t>(i)] + b.m[static_cast<std::size_t>(i)];
    return out;
  }
  friend Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 out;
    for (int i = 0; i < 16; ++i) out.m[static_cast<std::size_t>(i)] = a.m[static_cast<std::size_t>(i)] - b.m[static_cast<std::size_t>(i)];
    return out;
  }
  friend Mat4 operator*(Cx s, const Mat4& a) {
    Mat4 out;
    for (int i = 0; i < 16; ++i) out.m[static_cast<std::size_t>(i)] = s * a.m[static_cast<std::size_t>(i)];
    return out;
  }
};

using Vec4 = std::array<Cx, 4>;

inline Cx expectation(const Vec4& psi, const Mat4& op) {
  Cx acc{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    Cx row{0.0, 0.0};
    for (int j = 0; j < 4; ++j) row += op(i, j) * psi[static_cast<std::size_t>(j)];
    acc += std::conj(psi[static_cast<std::size_t>(i)]) * row;
  }
  return acc;
}

//! Single-atom lowering operator |g><e| lifted to the tensor factor of xi.
inline Mat4 lowering(AtomTag xi) {
  Mat4 out;
  if (xi == AtomTag::A) {
    // |g?><e?|: rows |gg>,|ge> get columns |eg>,|ee>
    out(0, 2) = 1.0;
    out(1, 3) = 1.0;
  } else {
    out(0, 1) = 1.0;
    out(2, 3) = 1.0;
  }
  return out;
}

//! Free-evolved R2^{xi f}(tau) = (i/2)(R- e^{-i w0 tau} - R+ e^{+i w0 tau}).
inline Mat4 r2_free(AtomTag xi, double tau, double omega0) {
  const Mat4 rm = lowering(xi);
  Mat4 rp;  // raising = transpose of lowering (real entries)
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rp(i, j) = rm(j, i);
  const Cx half_i{0.0, 0.5};
  const Cx down = std::polar(1.0, -omega0 * tau);
  const Cx up = std::polar(1.0, +omega0 * tau);
  return half_i * ((down * rm) - (up * rp));
}

inline Vec4 state_vector(PreparedState s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case PreparedState::GroundGround: return {1.0, 0.0, 0.0, 0.0};
    case PreparedState::SymmetricBell: return {0.0, r, r, 0.0};
    case PreparedState::AntisymmetricBell: return {0.0, r, -r, 0.0};
    case PreparedState::ExcitedExcited: return {0.0, 0.0, 0.0, 1.0};
  }
  throw std::logic_error("state_vector: unreachable");
}

//! (1/2)<psi|[R2^{xi f}(tau), R2^{xi f}(tau')]|psi>, evaluated literally.
inline Cx brute_force_chi(PreparedState state, AtomTag xi, double tau, double tau_prime,
                          double omega0) {
  const Vec4 psi = state_vector(state);
  const Mat4 a = r2_free(xi, tau, omega0);
  const Mat4 b = r2_free(xi, tau_prime, omega0);
  return 0.5 * expectation(psi, (a * b) - (b * a));
}

//! (1/2)<psi|{R2^{xi f}(tau), R2^{xi' f}(tau')}|psi>, evaluated literally.
inline Cx brute_force_c(PreparedState state, AtomTag xi, AtomTag xi_prime, double tau,
                        double tau_prime, double omega0) {
  const Vec4 psi = state_vector(state);
  const Mat4 a = r2_free(xi, tau, omega0);
  const Mat4 b = r2_free(xi_prime, tau_prime, omega0);
  return 0.5 * expectation(psi, (a * b) + (b * a));
}

// Lag-only conveniences (tau = s, tau' = 0); stationarity in the pair of
// proper times is itself a tested property.
inline Cx brute_force_chi(PreparedState state, AtomTag xi, double s, double omega0) {
  return brute_force_chi(state, xi, s, 0.0, omega0);
}
inline Cx brute_force_c(PreparedState state, AtomTag xi, AtomTag xi_prime, double s,
                        double omega0) {
  return brute_force_c(state, xi, xi_prime, s, 0.0, omega0);
}

}  // namespace ddc::oracle
