#include "qlag/summation.hpp"

namespace qlag {

CompensatedSum::CompensatedSum(mpfr_prec_t precision)
    : sum_re_(precision), sum_im_(precision), carry_re_(precision), carry_im_(precision), scratch_(precision) {}

void CompensatedSum::add_component(Real& sum, Real& carry, const Real& x, Real& scratch) {
  // scratch = sum + x; carry += (bigger - scratch) + smaller
  mpfr_add(scratch.raw(), sum.raw(), x.raw(), MPFR_RNDN);
  if (mpfr_cmpabs(sum.raw(), x.raw()) >= 0) {
    mpfr_sub(sum.raw(), sum.raw(), scratch.raw(), MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), x.raw(), MPFR_RNDN);
  } else {
    Real t(x.precision() > sum.precision() ? x.precision() : sum.precision());
    mpfr_sub(t.raw(), x.raw(), scratch.raw(), MPFR_RNDN);
    mpfr_add(sum.raw(), t.raw(), sum.raw(), MPFR_RNDN);
  }
  mpfr_add(carry.raw(), carry.raw(), sum.raw(), MPFR_RNDN);
  mpfr_swap(sum.raw(), scratch.raw());
}

void CompensatedSum::add(const Complex& term) {
  add_component(sum_re_, carry_re_, term.real(), scratch_);
  add_component(sum_im_, carry_im_, term.imag(), scratch_);
  ++count_;
}

Complex CompensatedSum::value() const { return Complex(sum_re_ + carry_re_, sum_im_ + carry_im_); }

}  // namespace qlag
