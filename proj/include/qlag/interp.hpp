#pragma once

#include "qlag/complex.hpp"
#include "qlag/indexsets.hpp"
#include "qlag/matrix.hpp"
#include "qlag/precision.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace qlag {

enum class InterpMethod { Explicit, Recursive, Triangular };

std::string_view method_name(InterpMethod m);

/// Psi(z; y) = prod_i prod_j e(z_i; y_j).
Complex kernel_psi(const std::vector<Complex>& z, const std::vector<Complex>& y, const PrecisionContext& ctx);

/// F_mu(x; y) = prod_i prod_j e(x_i; y_j)_{mu_i}.
Complex f_dual(const std::vector<Complex>& x, const Complex& t, const MultiIndex& mu, const std::vector<Complex>& y,
               const PrecisionContext& ctx);

/// Upper-triangular inverse of `a` from the alternating sum over strictly
/// increasing index chains. Exponential in the dimension; refuses N > max_dim.
ComplexMatrix neumann_inverse(const ComplexMatrix& a, std::size_t max_dim = 10);

/// The interpolation basis E_lambda(x; z), lambda in Z_{s,n}, for fixed x and t.
///
/// Evaluation methods:
///  - Explicit: sum over ordered set partitions with cached e-symbol tables.
///  - Recursive: one-variable peeling memoized on the prefix count vector.
///  - Triangular: sum_mu Psi(z; eta_mu(x)) G_{mu lambda} with G = F^{-1}.
///
/// Construction checks the e-symbol denominators and throws NonGenericError
/// when one is below `delta` after normalization. The F and G matrices are
/// built on first use, so a basis must not be shared across threads until
/// f() has been called once.
class LagrangeBasis {
 public:
  LagrangeBasis(std::vector<Complex> x, Complex t, int n, const PrecisionContext& ctx,
                double delta = kDefaultGenericityThreshold);
  LagrangeBasis(const ParameterSet& p, const PrecisionContext& ctx, double delta = kDefaultGenericityThreshold);

  int s() const { return static_cast<int>(x_.size()); }
  int n() const { return n_; }
  const std::vector<Complex>& x() const { return x_; }
  const Complex& t() const { return t_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  /// Position of lambda in the lexicographic list of Z_{s,n}.
  std::size_t position(const MultiIndex& lambda) const;

  Complex evaluate(const MultiIndex& lambda, const std::vector<Complex>& z,
                   InterpMethod method = InterpMethod::Explicit) const;
  /// E_lambda(x; z) for every lambda in index order.
  std::vector<Complex> evaluate_all(const std::vector<Complex>& z, InterpMethod method = InterpMethod::Explicit) const;

  /// F = (F_mu(x; eta_nu(x))) in lexicographic order; requires s >= 2.
  const ComplexMatrix& f() const;
  /// G = F^{-1} by back substitution.
  const ComplexMatrix& g() const;

  /// The point x_mu.
  std::vector<Complex> point(const MultiIndex& mu) const;
  /// The point eta_nu(x).
  std::vector<Complex> eta(const MultiIndex& nu) const;

 private:
  Complex explicit_value(const MultiIndex& lambda, const std::vector<Complex>& numer) const;
  Complex recursive_value(const MultiIndex& lambda, const std::vector<Complex>& z) const;
  Complex triangular_value(const MultiIndex& lambda, const std::vector<Complex>& z) const;
  std::vector<Complex> numerator_table(const std::vector<Complex>& z) const;
  void check_point(const std::vector<Complex>& z) const;

  const Complex& inv_denominator(int i, int ci, int j, int cj) const;
  const Complex& xt(int j, int c) const { return xt_[static_cast<std::size_t>(j * (n_ + 1) + c)]; }

  std::vector<Complex> x_;
  Complex t_;
  int n_;
  PrecisionContext ctx_;
  double delta_;
  std::vector<MultiIndex> indices_;
  std::vector<Complex> xt_;         // x_j t^c, c = 0..n
  std::vector<Complex> inv_denom_;  // 1 / e(x_i t^ci; x_j t^cj)
  mutable std::unique_ptr<ComplexMatrix> f_;
  mutable std::unique_ptr<ComplexMatrix> g_;
};

Complex e_interp(const MultiIndex& lambda, const std::vector<Complex>& z, InterpMethod method, const ParameterSet& p,
                 const PrecisionContext& ctx);

/// Relative residual of Psi(z; y) = sum_lambda E_lambda(x; z) F_lambda(x; y).
double duality_residual(const std::vector<Complex>& z, const std::vector<Complex>& y, const LagrangeBasis& basis,
                        const PrecisionContext& ctx);

}  // namespace qlag
