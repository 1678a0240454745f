#pragma once

#include "qlag/complex.hpp"
#include "qlag/precision.hpp"

namespace qlag {

/// Copy of `z` carried at the context precision (never lowers precision).
Complex at_precision(const Complex& z, const PrecisionContext& ctx);

/// (u; q)_inf, truncated where the geometric tail bound
/// |u| |q|^L / (1 - |q|) drops below eps_product.
Complex qpoch_inf(const Complex& u, const PrecisionContext& ctx);

/// (u; q)_nu for any integer nu, as a finite product. Throws PoleError when
/// nu < 0 and some 1 - u q^-l vanishes.
Complex qpoch(const Complex& u, long nu, const PrecisionContext& ctx);

/// Number of factors qpoch_inf uses for an argument of modulus 2^log2_abs_u.
long qpoch_inf_terms(double log2_abs_u, const PrecisionContext& ctx);

/// theta(u) = (u)_inf (q/u)_inf. The argument is first moved into the annulus
/// |q| <= |u| < 1 with theta(q^k v) = (-1)^k q^{-k(k-1)/2} v^{-k} theta(v).
/// Throws ZeroArgument for u = 0.
Complex theta(const Complex& u, const PrecisionContext& ctx);

/// e(a;b) = a^{-1} theta(ab) theta(a/b).
Complex e_symbol(const Complex& a, const Complex& b, const PrecisionContext& ctx);

/// e(a;b)_r = e(a;b) e(at;b) ... e(at^{r-1};b).
Complex e_factorial(const Complex& a, const Complex& b, const Complex& t, long r, const PrecisionContext& ctx);

/// |theta(u)| divided by its maximum over the circle of radius |u|, which is
/// (-|u|)_inf (-|q|/|u|)_inf. Lies in [0, 1]; 0 exactly on the zeros q^Z.
double theta_normalized(const Complex& u, const PrecisionContext& ctx);

}  // namespace qlag
