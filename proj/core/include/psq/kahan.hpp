#pragma once

#include <cmath>
#include <complex>

namespace psq {

// Kahan-Babuska (Neumaier) compensated accumulator. The series in this
// project run to 10^5-10^7 terms and feed squared statistics, so plain
// accumulation error is not acceptable.
class KahanSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Complex variant: two independent real accumulators.
class KahanCSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

}  // namespace psq
