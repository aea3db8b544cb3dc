#pragma once

#include <cmath>
#include <complex>

namespace olct::detail {

// Neumaier compensated sum, applied to real and imaginary parts separately.
class CompensatedSum {
 public:
  void add(std::complex<double> z) {
    add_part(re_, re_c_, z.real());
    add_part(im_, im_c_, z.imag());
  }

  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

}  // namespace olct::detail
