#pragma once

#include "qlag/complex.hpp"
#include "qlag/precision.hpp"

#include <compare>
#include <string>
#include <vector>

namespace qlag {

enum class IndexKind { B, Z, L };

/// Element of B_{s,n} (partitions in an n x (s-1) box), Z_{s,n} (compositions
/// of n into s parts) or L_{s,n} (Z with the last part dropped).
struct MultiIndex {
  std::vector<int> entries;
  IndexKind kind = IndexKind::Z;

  std::size_t size() const { return entries.size(); }
  int operator[](std::size_t i) const { return entries[i]; }
  int sum() const;
  std::string to_string() const;

  /// Lexicographic: the first differing coordinate decides.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.entries <=> b.entries;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries == b.entries; }
};

/// All elements of the chosen set in increasing lexicographic order.
std::vector<MultiIndex> enumerate(IndexKind kind, int s, int n);
bool is_valid(const MultiIndex& m, int s, int n);

MultiIndex z_to_l(const MultiIndex& mu);
MultiIndex l_to_z(const MultiIndex& nu, int s, int n);

/// binom(n, k) as an integer; 0 outside 0 <= k <= n.
long binomial(long n, long k);
/// n! / (k_1! ... k_s!)
long multinomial(const std::vector<int>& parts);

/// Dimensions, the deformation parameter t, characters a_1..a_{2s+2} and base
/// points x_1..x_s.
struct ParameterSet {
  int s = 1;
  int n = 1;
  Complex t;
  std::vector<Complex> a;
  std::vector<Complex> x;

  /// Throws DomainError on wrong list lengths or zero entries.
  void validate() const;
};

/// (x_1, x_1 t, ..., x_1 t^{mu_1 - 1}, x_2, ..., x_s t^{mu_s - 1})
std::vector<Complex> point_x_mu(const ParameterSet& p, const MultiIndex& mu);
/// (x_1 t^{nu_1}, ..., x_{s-1} t^{nu_{s-1}}); DomainError when s = 1.
std::vector<Complex> point_eta(const ParameterSet& p, const MultiIndex& nu);
/// (x_1 t^{mu_1}, ..., x_s t^{mu_s})
std::vector<Complex> shift_x(const ParameterSet& p, const MultiIndex& mu);
/// Same as shift_x on an explicit coordinate list.
std::vector<Complex> shift_x(const std::vector<Complex>& x, const Complex& t, const MultiIndex& mu);

/// An ordered set partition K_1 u ... u K_s = {1..n} stored as a label per
/// position: label[k] = i means k+1 belongs to K_{i+1}. profile(i, k) is
/// |K_{i+1} n {1..k}| for k = 0..n.
class SetPartition {
 public:
  SetPartition(std::vector<int> labels, int s);
  const std::vector<int>& labels() const { return labels_; }
  int profile(int i, int k) const { return profile_[static_cast<std::size_t>(k) * s_ + i]; }

 private:
  std::vector<int> labels_;
  int s_;
  std::vector<int> profile_;
};

/// Lazy enumeration of the ordered set partitions with |K_i| = lambda_i,
/// in lexicographic order of the label sequence.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(const MultiIndex& lambda);
  /// False once every partition has been produced.
  bool next(SetPartition& out);
  long count() const;

 private:
  MultiIndex lambda_;
  std::vector<int> labels_;
  bool done_ = false;
};

std::vector<SetPartition> enumerate_partitions(const MultiIndex& lambda);

struct GenericityReport {
  double score = 0.0;
  bool generic = false;
  std::string worst;  // description of the smallest normalized factor
};

inline constexpr double kDefaultGenericityThreshold = 1e-20;

/// Smallest normalized theta magnitude over the factor families that appear
/// as denominators in the interpolation, transition and Jackson formulas.
GenericityReport genericity_check(const ParameterSet& p, const PrecisionContext& ctx,
                                  double delta = kDefaultGenericityThreshold);

}  // namespace qlag
