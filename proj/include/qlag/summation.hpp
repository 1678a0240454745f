#pragma once

#include "qlag/complex.hpp"

namespace qlag {

/// Neumaier-compensated accumulator for complex terms.
///
/// The result depends only on the order in which terms are added, so a fixed
/// addition order gives bit-identical sums.
class CompensatedSum {
 public:
  explicit CompensatedSum(mpfr_prec_t precision);

  void add(const Complex& term);
  CompensatedSum& operator+=(const Complex& term) {
    add(term);
    return *this;
  }
  Complex value() const;
  long count() const { return count_; }

 private:
  static void add_component(Real& sum, Real& carry, const Real& x, Real& scratch);

  Real sum_re_, sum_im_, carry_re_, carry_im_, scratch_;
  long count_ = 0;
};

}  // namespace qlag
