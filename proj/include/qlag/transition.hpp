#pragma once

#include "qlag/complex.hpp"
#include "qlag/indexsets.hpp"
#include "qlag/interp.hpp"
#include "qlag/matrix.hpp"
#include "qlag/precision.hpp"

#include <vector>

namespace qlag {

/// E(x; y) = (E_mu(x; y_nu)) with rows and columns in lexicographic order of Z_{s,n}.
struct TransitionMatrix {
  std::vector<Complex> x;
  std::vector<Complex> y;
  std::vector<MultiIndex> indices;
  ComplexMatrix entries;
};

TransitionMatrix transition_matrix(const std::vector<Complex>& x, const std::vector<Complex>& y, const Complex& t,
                                   int n, const PrecisionContext& ctx);
TransitionMatrix transition_matrix(const ParameterSet& p, const std::vector<Complex>& y, const PrecisionContext& ctx);

enum class DeterminantForm { ESymbol, Theta };

/// Closed product for det E(x; y): every factor carries the integer exponent
/// binom(s+k-3, k-1). Throws NonGenericError when a denominator factor vanishes.
Complex transition_det_closed(const std::vector<Complex>& x, const std::vector<Complex>& y, const Complex& t, int n,
                              const PrecisionContext& ctx, DeterminantForm form = DeterminantForm::ESymbol);

/// Transition between two parameter points that differ only in coordinate l
/// (0-based): from `x` to `x` with x_l replaced by `new_value`.
struct OneCoordinateFactor {
  int l = 0;
  TransitionMatrix matrix;
  std::vector<Complex> closed_diagonal;  // per index alpha, in matrix order
  Complex closed_determinant;            // product over k and r with integer exponents
  /// Largest |E_alpha(x; y_beta)| / row norm over entries with alpha_i < beta_i for some i != l.
  double forbidden_entry_ratio = 0.0;
  /// Largest relative deviation between the numeric and closed diagonals.
  double diagonal_residual = 0.0;
};

OneCoordinateFactor one_coordinate_factor(const std::vector<Complex>& x, const Complex& new_value, int l,
                                          const Complex& t, int n, const PrecisionContext& ctx);
/// Closed determinant of the one-coordinate transition matrix alone.
Complex one_coordinate_det_closed(const std::vector<Complex>& x, const Complex& new_value, int l, const Complex& t,
                                  int n, const PrecisionContext& ctx);
/// The default case l = s - 1 (the last coordinate changes).
OneCoordinateFactor one_coordinate_factor(const ParameterSet& p, const Complex& new_value, const PrecisionContext& ctx);

/// w^(i) = (x_1, ..., x_i, y_{i+1}, ..., y_s), i = 0..s.
std::vector<std::vector<Complex>> interpolating_chain(const std::vector<Complex>& x, const std::vector<Complex>& y);

struct TransitionDetCheck {
  Complex numeric;        // LU determinant of E(x; y)
  Complex closed;         // e-symbol form
  Complex closed_theta;   // theta form
  Complex chain_product;  // product of the closed one-coordinate determinants along w^(i)
  double residual = 0.0;        // numeric vs closed
  double form_residual = 0.0;   // closed vs closed_theta
  double chain_residual = 0.0;  // closed vs chain_product
  double condition = 0.0;
};

TransitionDetCheck transition_det_check(const std::vector<Complex>& x, const std::vector<Complex>& y, const Complex& t,
                                        int n, const PrecisionContext& ctx);
/// max of the numeric, form and chain residuals.
double transition_det_residual(const ParameterSet& p, const std::vector<Complex>& y, const PrecisionContext& ctx);

}  // namespace qlag
