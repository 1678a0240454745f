#pragma once

#include "qlag/complex.hpp"
#include "qlag/indexsets.hpp"
#include "qlag/interp.hpp"
#include "qlag/precision.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace qlag {

/// Weyl denominator of type C_n:
///   prod_i (1 - z_i^2)/z_i prod_{j<k} (1 - z_j/z_k)(1 - z_j z_k)/z_j.
Complex weyl_denominator(const std::vector<Complex>& z, const PrecisionContext& ctx);

/// chi_lambda(z) = det(z_i^{l_j} - z_i^{-l_j}) / det(z_i^{n-j+1} - z_i^{-(n-j+1)}) with
/// l_j = lambda_j + n - j + 1, so chi_0 = 1.
/// Throws DegenerateZ when Delta(z) is negligible against the numerator scale.
Complex symplectic_schur(const MultiIndex& lambda, const std::vector<Complex>& z, const PrecisionContext& ctx);
/// Numerator determinant det(z_i^{l_j} - z_i^{-l_j}) alone. The denominator
/// determinant is (-1)^n Delta(z), so this equals (-1)^n chi_lambda(z) Delta(z).
Complex schur_numerator(const MultiIndex& lambda, const std::vector<Complex>& z, const PrecisionContext& ctx);

/// Weight data of the Jackson integral: s, t and a_1..a_{2s+2}. x is unused here.
/// Phi(z)/Theta(z) with every fractional power cancelled:
///   prod_i z_i prod_m (q z_i/a_m)_inf (q/(a_m z_i))_inf / theta(z_i^2)
///   * prod_{j<k} z_j (q w/t, q/(t w), q w'/t, q/(t w'))_inf / (theta(w) theta(w')),
/// with w = z_j/z_k and w' = z_j z_k.
Complex phi_theta_ratio(const std::vector<Complex>& z, const ParameterSet& p, const PrecisionContext& ctx);

/// Phi(z q^nu)/Phi(z) as a product of finite q-shifted factorials:
///   prod_i q^{(s+1) nu_i} prod_m a_m^{-nu_i} (a_m z_i)_{nu_i} / (q z_i/a_m)_{nu_i}
///   * prod_{j<k} (q/t^2)^{nu_j} (t w)_{nu_j-nu_k}/(q w/t)_{nu_j-nu_k} (t w')_{nu_j+nu_k}/(q w'/t)_{nu_j+nu_k}.
Complex lattice_shift_factor(const std::vector<Complex>& z, const std::vector<long>& nu, const ParameterSet& p,
                             const PrecisionContext& ctx);

/// A batch of integrands evaluated together at each lattice point. Implementations
/// return phi_k(w) Delta(w) so that the Weyl denominator never has to be divided out.
class Integrand {
 public:
  virtual ~Integrand() = default;
  virtual std::size_t count() const = 0;
  virtual void weighted_values(const std::vector<Complex>& w, const PrecisionContext& ctx,
                               std::vector<Complex>& out) const = 0;
};

/// phi = 1.
std::shared_ptr<const Integrand> constant_integrand();
/// phi_k = chi_{lambda_k} for each lambda in the list.
std::shared_ptr<const Integrand> schur_integrand(std::vector<MultiIndex> lambdas);
/// Any scalar W_n-invariant function.
std::shared_ptr<const Integrand> function_integrand(std::function<Complex(const std::vector<Complex>&)> phi);

/// Largest relative deviation of phi under a random permutation and a random
/// inversion at `samples` random points; invariant integrands give ~eps.
double invariance_defect(const Integrand& phi, int n, const PrecisionContext& ctx, unsigned long seed,
                         int samples = 3);

struct LatticeTruncation {
  int radius = 40;
  double shell_stop = 1e-32;
  long max_terms = 5'000'000;
  /// Throw Unconverged when the stop rule never fires.
  bool require_convergence = true;

  /// Radius 40 and shell_stop 1e-30 for n <= 2; radius 25 and shell_stop 1e-20 beyond.
  static LatticeTruncation defaults_for(int n);
};

struct RegularizedValue {
  std::vector<Complex> values;  // one per integrand in the batch
  double last_shell_rel = 0.0;  // last summed shell relative to the running total
  double shell_error = 0.0;     // estimated relative truncation error
  double decay_ratio = 0.0;     // geometric mean shell ratio over the last shells
  long terms_used = 0;
  int radius_used = 0;
  bool converged = false;

  const Complex& value() const { return values.front(); }
};

/// <<phi, z>> = (1-q)^n (Phi/Theta)(z) sum_nu phi(z q^nu) (Phi(z q^nu)/Phi(z)) Delta(z q^nu),
/// summed over max-norm shells, lexicographic within a shell, until two
/// consecutive shells contribute less than shell_stop.
RegularizedValue regularized_integral(const Integrand& phi, const std::vector<Complex>& z, const ParameterSet& p,
                                      const LatticeTruncation& trunc, const PrecisionContext& ctx);

/// Product side of the van Diejen sum (s = 1).
Complex vandiejen_product(const ParameterSet& p, const PrecisionContext& ctx);

struct IdentityResidual {
  double residual = 0.0;
  double shell_error = 0.0;  // largest shell error among the lattice sums used
  /// Pass threshold: max(floor, 20 shell_error).
  double threshold(double floor) const { return std::max(floor, 20.0 * shell_error); }
};

IdentityResidual vandiejen_residual(const ParameterSet& p, const std::vector<Complex>& z,
                                    const LatticeTruncation& trunc, const PrecisionContext& ctx);

/// Closed form of det(<<chi_lambda, x_mu>>): the x-independent q-shifted
/// factorial block times the theta block in x.
Complex wronskian_closed(const ParameterSet& p, const PrecisionContext& ctx);
/// The matrix (<<chi_lambda, x_mu>>), lambda in B_{s,n} (rows), mu in Z_{s,n} (columns).
struct WronskianMatrix {
  ComplexMatrix entries;
  double shell_error = 0.0;
  long terms_used = 0;
};
WronskianMatrix wronskian_matrix(const ParameterSet& p, const LatticeTruncation& trunc, const PrecisionContext& ctx);

struct WronskianCheck {
  Complex numeric;
  Complex closed;
  IdentityResidual residual;
};
/// Rejects |B_{s,n}| > max_dim with ConfigError.
WronskianCheck wronskian_check(const ParameterSet& p, const LatticeTruncation& trunc, const PrecisionContext& ctx,
                               std::size_t max_dim = 4);

enum class ConnectionIntegrand { One, Schur };

struct ConnectionCheck {
  std::vector<Complex> lhs;  // <<phi, z>> per integrand
  std::vector<Complex> rhs;  // sum_mu <<phi, x_mu>> E_mu(x; z)
  IdentityResidual residual;
};
ConnectionCheck connection_check(ConnectionIntegrand kind, const std::vector<Complex>& z, const ParameterSet& p,
                                 const LatticeTruncation& trunc, const PrecisionContext& ctx);

/// At s = 2, n = 1 with phi = 1 the connection formula is Slater's
/// transformation of a very-well-poised 8psi8 series.
struct SlaterMatch {
  double slater_residual = 0.0;    // residual of the 8psi8 transformation itself
  double lhs_match = 0.0;          // <<1, z>> vs the rescaled 8psi8 series
  std::vector<double> term_match;  // <<1, x_i>> E_{eps_i}(x; z) vs the rescaled i-th transformation term
  double shell_error = 0.0;
};
SlaterMatch slater_match(const Complex& z, const ParameterSet& p, const LatticeTruncation& trunc,
                         const PrecisionContext& ctx);

/// Relative deviation of <<phi, z>> (z_i -> q z_i) (q z_i^2)^{s-1} from <<phi, z>>, max over i.
IdentityResidual quasi_periodicity_residual(const Integrand& phi, const std::vector<Complex>& z,
                                            const ParameterSet& p, const LatticeTruncation& trunc,
                                            const PrecisionContext& ctx);
/// Relative deviation of <<phi, z>> under a random signed permutation of z.
IdentityResidual weyl_invariance_residual(const Integrand& phi, const std::vector<Complex>& z, const ParameterSet& p,
                                          const LatticeTruncation& trunc, const PrecisionContext& ctx,
                                          unsigned long seed);
/// Re-centres the lattice at z q^shift and compares with the quasi-periodic transform of <<phi, z>>.
IdentityResidual lattice_invariance_residual(const Integrand& phi, const std::vector<Complex>& z,
                                             const std::vector<long>& shift, const ParameterSet& p,
                                             const LatticeTruncation& trunc, const PrecisionContext& ctx);

}  // namespace qlag
