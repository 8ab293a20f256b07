#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "ddc/core.hpp"

namespace ddc::quad {

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 8000;
};

struct Result {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss nodes and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void g7k15(F& f, double a, double b, std::complex<double>& k15, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> f0 = f(mid);
  std::complex<double> kronrod = kWgk[7] * f0;
  std::complex<double> gauss = kWg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const std::complex<double> fsum = f(mid - dx) + f(mid + dx);
    kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  k15 = half * kronrod;
  err = std::abs(half * (kronrod - gauss));
}

struct Segment {
  double a, b;
  std::complex<double> value;
  double error;
  std::size_t id;  // insertion order, deterministic tie-break
};

struct SegmentWorse {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.id > rhs.id;
  }
};

}  // namespace detail

//! Adaptive Gauss-Kronrod integration of a complex-valued integrand over
//! [a, b]. Interior breakpoints seed the initial subdivision (peaks, kinks);
//! refinement always bisects the segment with the largest error estimate.
//! Single-threaded with a fixed subdivision order, so results are
//! bit-reproducible for identical inputs.
template <class F>
Result integrate(F&& f, double a, double b, std::span<const double> breakpoints,
                 const Options& opt = {}) {
  if (!(b > a)) throw std::invalid_argument("integrate: requires b > a");

  std::vector<double> edges;
  edges.push_back(a);
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Result res;
  std::priority_queue<detail::Segment, std::vector<detail::Segment>, detail::SegmentWorse> heap;
  std::size_t next_id = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    detail::Segment seg{edges[i], edges[i + 1], {}, 0.0, next_id++};
    detail::g7k15(f, seg.a, seg.b, seg.value, seg.error);
    res.evaluations += 15;
    heap.push(seg);
  }

  std::complex<double> total{0.0, 0.0};
  double total_err = 0.0;
  std::vector<detail::Segment> done;
  auto recompute = [&]() {
    total = {0.0, 0.0};
    total_err = 0.0;
    std::vector<detail::Segment> all = done;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    for (const auto& s : all) {
      total += s.value;
      total_err += s.error;
    }
  };

  recompute();
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
         done.size() + heap.size() < opt.max_intervals && !heap.empty()) {
    detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at double resolution
      done.push_back(worst);
      recompute();
      continue;
    }
    detail::Segment left{worst.a, mid, {}, 0.0, next_id++};
    detail::Segment right{mid, worst.b, {}, 0.0, next_id++};
    detail::g7k15(f, left.a, left.b, left.value, left.error);
    detail::g7k15(f, right.a, right.b, right.value, right.error);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // deterministic final summation: segments in ascending position
  std::vector<detail::Segment> all = std::move(done);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const detail::Segment& l, const detail::Segment& r) { return l.a < r.a; });
  res.value = {0.0, 0.0};
  res.error = 0.0;
  for (const auto& s : all) {
    res.value += s.value;
    res.error += s.error;
  }
  res.converged = res.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(res.value));
  return res;
}

//! Polynomial (Neville) extrapolation of I(eps) to eps -> 0 over a
//! decreasing regulator ladder. Convergence requires the last two diagonal
//! extrapolants to agree within tol_abs.
inline ExtrapolationRecord richardson_to_zero(std::vector<double> epsilons,
                                              std::vector<double> values, double tol_abs) {
  const std::size_t n = epsilons.size();
  if (n == 0 || values.size() != n)
    throw std::invalid_argument("richardson_to_zero: ladder and values must match, nonempty");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(epsilons[i] > epsilons[i + 1]) || !(epsilons[i + 1] > 0.0))
      throw std::invalid_argument("richardson_to_zero: ladder must be strictly decreasing, > 0");

  std::vector<std::vector<double>> tab(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) tab[i][0] = values[i];
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = j; i < n; ++i)
      tab[i][j] = (epsilons[i - j] * tab[i][j - 1] - epsilons[i] * tab[i - 1][j - 1]) /
                  (epsilons[i - j] - epsilons[i]);

  ExtrapolationRecord rec;
  rec.epsilons = std::move(epsilons);
  rec.values = std::move(values);
  rec.extrapolants.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rec.extrapolants.push_back(tab[i][i]);
  rec.value = rec.extrapolants.back();
  rec.residual = (n >= 2) ? std::abs(rec.extrapolants[n - 1] - rec.extrapolants[n - 2]) : 0.0;
  rec.converged = rec.residual <= tol_abs;
  return rec;
}

}  // namespace ddc::quad
