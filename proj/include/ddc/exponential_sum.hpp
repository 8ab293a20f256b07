#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace ddc {

//! One term coeff * exp(i freq s).
struct ExpTerm {
  std::complex<double> coeff;
  double freq = 0.0;
};

//! Finite sum of complex exponentials in the proper-time lag s.
//!
//! This is the exact carrier for the atomic statistical functions: pairing
//! one of these with a distributional field kernel involves no quadrature,
//! so rounding enters only at final evaluation.
class ExponentialSum {
 public:
  ExponentialSum() = default;
  explicit ExponentialSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}

  static ExponentialSum zero() { return ExponentialSum{}; }

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::complex<double> evaluate(double s) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& t : terms_) acc += t.coeff * std::polar(1.0, t.freq * s);
    return acc;
  }

  //! Term-wise derivative: coeff -> i freq coeff.
  ExponentialSum derivative() const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      out.push_back({std::complex<double>{0.0, 1.0} * t.freq * t.coeff, t.freq});
    return ExponentialSum{std::move(out)};
  }

  ExponentialSum scaled(std::complex<double> factor) const {
    std::vector<ExpTerm> out = terms_;
    for (auto& t : out) t.coeff *= factor;
    return ExponentialSum{std::move(out)};
  }

  ExponentialSum operator+(const ExponentialSum& rhs) const {
    std::vector<ExpTerm> out = terms_;
    out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
    return ExponentialSum{std::move(out)};
  }

  //! Exact value at s = 0 (plain coefficient sum, no rounding from polar()).
  std::complex<double> coefficient_sum() const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& t : terms_) acc += t.coeff;
    return acc;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
  }

 private:
  std::vector<ExpTerm> terms_;
};

}  // namespace ddc
