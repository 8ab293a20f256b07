#include <cmath>
#include <complex>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "ddc/exponential_sum.hpp"
#include "ddc/field_correlations.hpp"
#include "ddc/quadrature.hpp"

using namespace ddc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// Wightman function straight from coordinate differences, the oracle for the
// invariant-interval evaluation. Regulator applied to the coordinate time.
Cx wightman_from_events(const WorldlinePair& pair, AtomTag a1, AtomTag a2, double tau,
                        double tau_prime, double eps) {
  const auto e1 = pair.event_at(a1, tau);
  const auto e2 = pair.event_at(a2, tau_prime);
  const Cx dt{e1.t - e2.t, -eps};
  const double dx2 = (e1.x - e2.x) * (e1.x - e2.x) + (e1.y - e2.y) * (e1.y - e2.y) +
                     (e1.z - e2.z) * (e1.z - e2.z);
  return -1.0 / (4.0 * kPi * kPi * (dt * dt - dx2));
}

}  // namespace

TEST_CASE("wightman function at spacelike and timelike separations") {
  // pure transverse offset: interval -L^2, spacelike
  const auto rest = WorldlinePair::inertial(0.0, 0.0, 1.0);
  const Cx w_space = wightman_regularized(rest, Pairing::Cross, 0.0, 1e-8);
  CHECK_THAT(w_space.real(), WithinRel(1.0 / (4.0 * kPi * kPi), 1e-10));
  CHECK_THAT(w_space.imag(), WithinAbs(0.0, 1e-10));

  // same atom at lag 2: timelike interval 4
  const Cx w_time = wightman_regularized(rest, Pairing::Same, 2.0, 1e-8);
  CHECK_THAT(w_time.real(), WithinRel(-1.0 / (16.0 * kPi * kPi), 1e-8));
}

TEST_CASE("accelerated wightman agrees with direct coordinate evaluation") {
  const auto pair = WorldlinePair::uniformly_accelerated(1.0, 1.0);
  const double expected = -1.0 / (4.0 * kPi * kPi * 4.0 * std::sinh(0.5) * std::sinh(0.5));
  // proper-time regulator vs coordinate-time regulator agree as eps -> 0
  double prev_err = 1.0;
  for (double eps : {1e-4, 1e-6}) {
    const Cx via_interval = wightman_regularized(pair, Pairing::Same, 1.0, eps);
    const Cx via_events = wightman_from_events(pair, AtomTag::A, AtomTag::A, 0.8, -0.2, eps);
    const double err = std::abs(via_interval - via_events) / std::abs(via_interval);
    CHECK(err < 1e2 * eps);
    CHECK(err < prev_err);
    prev_err = err;
    CHECK_THAT(via_interval.real(), WithinRel(expected, 1e2 * eps));
    CHECK(std::abs(via_interval.imag()) < 1e-2 * std::abs(expected));
  }
}

TEST_CASE("wightman rejects a non-positive regulator") {
  const auto rest = WorldlinePair::inertial(0.0, 0.0, 1.0);
  CHECK_THROWS_AS(wightman_regularized(rest, Pairing::Same, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(wightman_regularized(rest, Pairing::Same, 1.0, -1e-3),
                  std::invalid_argument);
}

TEST_CASE("chi is odd, C is even, chi(0) = 0") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> lags(-5.0, 5.0);
  const WorldlinePair pairs[] = {WorldlinePair::inertial(0.5, 0.0, 1.2),
                                 WorldlinePair::uniformly_accelerated(0.9, 1.2)};
  for (const auto& pair : pairs)
    for (Pairing pairing : {Pairing::Same, Pairing::Cross}) {
      CHECK(std::abs(chi_f_regularized(pair, pairing, 0.0, 1e-3)) == 0.0);
      for (int i = 0; i < 20; ++i) {
        const double s = lags(rng);
        const Cx chi_p = chi_f_regularized(pair, pairing, s, 1e-3);
        const Cx chi_m = chi_f_regularized(pair, pairing, -s, 1e-3);
        CHECK_THAT(std::abs(chi_p + chi_m), WithinAbs(0.0, 1e-14));
        const Cx c_p = c_f_regularized(pair, pairing, s, 1e-3);
        const Cx c_m = c_f_regularized(pair, pairing, -s, 1e-3);
        CHECK_THAT(std::abs(c_p - c_m), WithinAbs(0.0, 1e-14));
        // chi purely imaginary, C purely real on the real lag line
        CHECK_THAT(std::abs(chi_p.real()), WithinAbs(0.0, 1e-16));
        CHECK_THAT(std::abs(c_p.imag()), WithinAbs(0.0, 1e-16));
      }
    }
}

TEST_CASE("kernel forms match the trajectory pair") {
  SECTION("inertial same-atom boundary term") {
    const auto k = chi_f_kernel(WorldlinePair::inertial(0.3, 0.0, 2.0), Pairing::Same);
    CHECK(k.deltas().empty());
    REQUIRE(k.boundary_term());
    CHECK(k.boundary_term()->weight == Cx{0.0, -1.0 / (4.0 * kPi)});
    CHECK(k.boundary_term()->denominator(0.7) == 0.7);
  }
  SECTION("inertial cross deltas at -+L") {
    const auto k = chi_f_kernel(WorldlinePair::inertial(0.0, 0.0, 2.0), Pairing::Cross);
    CHECK_FALSE(k.boundary_term());
    REQUIRE(k.deltas().size() == 2);
    CHECK(k.deltas()[0].location == -2.0);
    CHECK_THAT(std::abs(k.deltas()[0].weight - Cx{0.0, 1.0 / (16.0 * kPi)}),
               WithinAbs(0.0, 1e-18));
    CHECK(k.deltas()[1].location == 2.0);
    CHECK_THAT(std::abs(k.deltas()[1].weight + Cx{0.0, 1.0 / (16.0 * kPi)}),
               WithinAbs(0.0, 1e-18));
  }
  SECTION("accelerated same-atom sinh denominator") {
    const auto k =
        chi_f_kernel(WorldlinePair::uniformly_accelerated(2.0, 1.0), Pairing::Same);
    REQUIRE(k.boundary_term());
    CHECK(k.boundary_term()->weight == Cx{0.0, -1.0 / (4.0 * kPi)});
    CHECK_THAT(k.boundary_term()->denominator(0.4), WithinRel(std::sinh(0.4), 1e-15));
    // d(s) = s + O(s^3) near the origin
    CHECK_THAT(k.boundary_term()->denominator(1e-6), WithinRel(1e-6, 1e-10));
  }
  SECTION("accelerated cross deltas at -+(2/a) asinh(aL/2)") {
    const auto k =
        chi_f_kernel(WorldlinePair::uniformly_accelerated(2.0, 1.0), Pairing::Cross);
    REQUIRE(k.deltas().size() == 2);
    const double loc = std::asinh(1.0);
    const double mag = 1.0 / (8.0 * kPi * std::sqrt(2.0));
    CHECK_THAT(k.deltas()[0].location, WithinRel(-loc, 1e-15));
    CHECK_THAT(k.deltas()[1].location, WithinRel(+loc, 1e-15));
    CHECK_THAT(std::abs(k.deltas()[0].weight - Cx{0.0, mag}), WithinAbs(0.0, 1e-17));
    CHECK_THAT(std::abs(k.deltas()[1].weight + Cx{0.0, mag}), WithinAbs(0.0, 1e-17));
  }
}

TEST_CASE("kernels are antisymmetric") {
  const WorldlinePair pairs[] = {WorldlinePair::inertial(0.2, 1.0, 0.7),
                                 WorldlinePair::uniformly_accelerated(3.0, 0.7)};
  for (const auto& pair : pairs)
    for (Pairing pairing : {Pairing::Same, Pairing::Cross}) {
      const auto k = chi_f_kernel(pair, pairing);
      CHECK(std::abs(k.total_delta_weight()) == 0.0);
      REQUIRE(k.deltas().size() % 2 == 0);
      for (std::size_t i = 0; i + 1 < k.deltas().size(); i += 2) {
        CHECK(k.deltas()[i].location == -k.deltas()[i + 1].location);
        CHECK(k.deltas()[i].weight == -k.deltas()[i + 1].weight);
      }
    }
}

TEST_CASE("accelerated kernels reduce to inertial kernels as a -> 0") {
  const double L = 1.5;
  const auto inertial = chi_f_kernel(WorldlinePair::inertial(0.0, 0.0, L), Pairing::Cross);
  double prev_loc_err = 1.0, prev_w_err = 1.0;
  for (double a : {1e-1, 1e-2, 1e-3}) {
    const auto k =
        chi_f_kernel(WorldlinePair::uniformly_accelerated(a, L), Pairing::Cross);
    const double loc_err = std::abs(k.deltas()[1].location - L);
    const double w_err =
        std::abs(k.deltas()[1].weight - inertial.deltas()[1].weight);
    CHECK(loc_err < 0.05 * a * a);  // L^3 a^2/24 + ...
    CHECK(w_err < 0.05 * a * a);
    CHECK(loc_err < prev_loc_err);
    CHECK(w_err < prev_w_err);
    prev_loc_err = loc_err;
    prev_w_err = w_err;
  }
}

TEST_CASE("regularized chi concentrates on the lightcone as eps -> 0") {
  const auto pair = WorldlinePair::inertial(0.0, 0.0, 1.0);
  for (double eps : {1e-2, 1e-3}) {
    double best_s = 0.0, best = 0.0;
    for (double s = 0.5; s <= 1.5; s += 1e-4) {
      const double mag = std::abs(chi_f_regularized(pair, Pairing::Cross, s, eps).imag());
      if (mag > best) {
        best = mag;
        best_s = s;
      }
    }
    CHECK(std::abs(best_s - 1.0) < 2.0 * eps);
  }
}

namespace {

// Half-line kernel action on a test exponential sum, and the same number from
// the regularized representation: int_0^T chi^F_eps f with eps -> 0.
Cx kernel_action(const DistributionalKernel& k, const ExponentialSum& f) {
  Cx acc{0.0, 0.0};
  if (k.boundary_term())
    acc += 0.5 * k.boundary_term()->weight * f.derivative().coefficient_sum();
  for (const auto& d : k.deltas())
    if (d.location > 0.0) acc += d.weight * f.evaluate(d.location);
  return acc;
}

Cx regularized_action(const WorldlinePair& pair, Pairing pairing, const ExponentialSum& f,
                      double t_upper) {
  std::vector<double> ladder, re, im;
  double e = 1e-2;
  for (int i = 0; i < 7; ++i, e *= 0.5) {
    auto integrand = [&](double s) { return chi_f_regularized(pair, pairing, s, e) * f.evaluate(s); };
    std::vector<double> pts{e, 3 * e, 10 * e, 0.5, 1.0, 2.0, 5.0};
    const double lc = pair.lightcone_lag();
    for (double d : {-3 * e, -e, 0.0, e, 3 * e}) pts.push_back(lc + d);
    const auto r = quad::integrate(integrand, 0.0, t_upper, pts);
    ladder.push_back(e);
    re.push_back(r.value.real());
    im.push_back(r.value.imag());
  }
  const auto re_rec = quad::richardson_to_zero(ladder, re, 1e-9);
  const auto im_rec = quad::richardson_to_zero(ladder, im, 1e-9);
  return {re_rec.value, im_rec.value};
}

}  // namespace

TEST_CASE("kernel action equals the eps -> 0 regularized integral") {
  const double w0 = 1.0;
  // odd test function vanishing at 0, as required by the boundary term
  const ExponentialSum odd{{{{0.0, -0.25}, w0}, {{0.0, 0.25}, -w0}}};  // (1/2) sin(w0 s)
  const WorldlinePair pairs[] = {WorldlinePair::inertial(0.0, 0.0, 1.3),
                                 WorldlinePair::uniformly_accelerated(1.7, 1.3)};
  for (const auto& pair : pairs)
    for (Pairing pairing : {Pairing::Same, Pairing::Cross}) {
      const Cx exact = kernel_action(chi_f_kernel(pair, pairing), odd);
      const Cx numeric = regularized_action(pair, pairing, odd, 40.0);
      CHECK_THAT(std::abs(numeric - exact), WithinAbs(0.0, 1e-6 * std::abs(exact) + 1e-12));
    }
}

TEST_CASE("closed-form half-line integral of C^F matches quadrature") {
  const WorldlinePair pairs[] = {WorldlinePair::inertial(0.0, 0.0, 1.0),
                                 WorldlinePair::uniformly_accelerated(1.4, 1.0)};
  for (const auto& pair : pairs)
    for (double eps : {1e-2, 1e-3})
      for (double t_upper : {5.0, 40.0}) {
        auto f = [&](double s) { return c_f_regularized(pair, Pairing::Same, s, eps); };
        std::vector<double> pts{eps / 4, eps, 3 * eps, 10 * eps, 1.0};
        quad::Options opt;
        opt.rel_tol = 1e-12;
        const auto direct = quad::integrate(f, 0.0, t_upper, pts, opt);
        const double closed = c_f_integral_closed(pair, eps, t_upper);
        CHECK_THAT(direct.value.real(), WithinRel(closed, 1e-8) || WithinAbs(closed, 1e-12));
      }
}

TEST_CASE("kernel construction rejects a delta parked at the origin") {
  CHECK_THROWS_AS(DistributionalKernel({DeltaTerm{0.0, Cx{0.0, 1.0}}}, std::nullopt),
                  std::invalid_argument);
}
