#include "qlag/indexsets.hpp"

#include "qlag/errors.hpp"
#include "qlag/qnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qlag {

int MultiIndex::sum() const { return std::accumulate(entries.begin(), entries.end(), 0); }

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries[i]);
  }
  return out + ")";
}

namespace {

// Compositions of `total` into `parts` nonnegative entries, appended in lex order.
void compositions(int parts, int total, bool exact, std::vector<int>& prefix, std::vector<MultiIndex>& out,
                  IndexKind kind) {
  if (static_cast<int>(prefix.size()) == parts) {
    int used = std::accumulate(prefix.begin(), prefix.end(), 0);
    if (!exact || used == total) out.push_back({prefix, kind});
    return;
  }
  int used = std::accumulate(prefix.begin(), prefix.end(), 0);
  for (int v = 0; v <= total - used; ++v) {
    prefix.push_back(v);
    compositions(parts, total, exact, prefix, out, kind);
    prefix.pop_back();
  }
}

// Weakly decreasing sequences of length n with entries in [0, top], lex order.
void box_partitions(int n, int top, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == n) {
    out.push_back({prefix, IndexKind::B});
    return;
  }
  int bound = prefix.empty() ? top : prefix.back();
  for (int v = 0; v <= bound; ++v) {
    prefix.push_back(v);
    box_partitions(n, top, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate(IndexKind kind, int s, int n) {
  if (s < 1 || n < 1) throw DomainError("index sets need s, n >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  switch (kind) {
    case IndexKind::B:
      box_partitions(n, s - 1, prefix, out);
      break;
    case IndexKind::Z:
      compositions(s, n, true, prefix, out, kind);
      break;
    case IndexKind::L:
      compositions(s - 1, n, false, prefix, out, kind);
      break;
  }
  return out;
}

bool is_valid(const MultiIndex& m, int s, int n) {
  auto nonneg = std::all_of(m.entries.begin(), m.entries.end(), [](int v) { return v >= 0; });
  switch (m.kind) {
    case IndexKind::B:
      return static_cast<int>(m.size()) == n && nonneg && (n == 0 || m[0] <= s - 1) &&
             std::is_sorted(m.entries.rbegin(), m.entries.rend());
    case IndexKind::Z:
      return static_cast<int>(m.size()) == s && nonneg && m.sum() == n;
    case IndexKind::L:
      return static_cast<int>(m.size()) == s - 1 && nonneg && m.sum() <= n;
  }
  return false;
}

MultiIndex z_to_l(const MultiIndex& mu) {
  if (mu.kind != IndexKind::Z || mu.size() == 0) throw DomainError("z_to_l expects an element of Z");
  return {{mu.entries.begin(), mu.entries.end() - 1}, IndexKind::L};
}

MultiIndex l_to_z(const MultiIndex& nu, int s, int n) {
  if (nu.kind != IndexKind::L || static_cast<int>(nu.size()) != s - 1 || nu.sum() > n) {
    throw DomainError("l_to_z expects an element of L_{s,n}");
  }
  MultiIndex out{nu.entries, IndexKind::Z};
  out.entries.push_back(n - nu.sum());
  return out;
}

long binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long multinomial(const std::vector<int>& parts) {
  long r = 1;
  long total = 0;
  for (int p : parts) {
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

void ParameterSet::validate() const {
  if (s < 1 || n < 1) throw DomainError("ParameterSet needs s, n >= 1");
  if (a.size() != static_cast<std::size_t>(2 * s + 2)) throw DomainError("ParameterSet needs 2s+2 characters a_m");
  if (x.size() != static_cast<std::size_t>(s)) throw DomainError("ParameterSet needs s base points x_i");
  if (t.is_zero()) throw DomainError("t must be nonzero");
  for (const auto& v : a) {
    if (v.is_zero()) throw DomainError("a_m must be nonzero");
  }
  for (const auto& v : x) {
    if (v.is_zero()) throw DomainError("x_i must be nonzero");
  }
}

std::vector<Complex> point_x_mu(const ParameterSet& p, const MultiIndex& mu) {
  if (!is_valid(mu, p.s, p.n) || mu.kind != IndexKind::Z) throw DomainError("point_x_mu expects mu in Z_{s,n}");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.s; ++i) {
    Complex v = p.x[static_cast<std::size_t>(i)];
    for (int k = 0; k < mu[static_cast<std::size_t>(i)]; ++k) {
      out.push_back(v);
      v *= p.t;
    }
  }
  return out;
}

std::vector<Complex> point_eta(const ParameterSet& p, const MultiIndex& nu) {
  if (p.s < 2) throw DomainError("point_eta needs s >= 2");
  if (nu.size() + 1 < static_cast<std::size_t>(p.s)) throw DomainError("point_eta index too short");
  std::vector<Complex> out;
  for (int i = 0; i + 1 < p.s; ++i) {
    out.push_back(p.x[static_cast<std::size_t>(i)] * pow(p.t, nu[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::vector<Complex> shift_x(const std::vector<Complex>& x, const Complex& t, const MultiIndex& mu) {
  if (mu.size() != x.size()) throw DomainError("shift_x length mismatch");
  std::vector<Complex> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] * pow(t, mu[i]));
  return out;
}

std::vector<Complex> shift_x(const ParameterSet& p, const MultiIndex& mu) { return shift_x(p.x, p.t, mu); }

SetPartition::SetPartition(std::vector<int> labels, int s) : labels_(std::move(labels)), s_(s) {
  const std::size_t n = labels_.size();
  profile_.assign((n + 1) * static_cast<std::size_t>(s_), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::copy_n(profile_.begin() + static_cast<long>(k * s_), s_, profile_.begin() + static_cast<long>((k + 1) * s_));
    ++profile_[(k + 1) * s_ + labels_[k]];
  }
}

PartitionEnumerator::PartitionEnumerator(const MultiIndex& lambda) : lambda_(lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0) throw DomainError("partition sizes must be nonnegative");
    labels_.insert(labels_.end(), static_cast<std::size_t>(lambda[i]), static_cast<int>(i));
  }
}

bool PartitionEnumerator::next(SetPartition& out) {
  if (done_) return false;
  out = SetPartition(labels_, static_cast<int>(lambda_.size()));
  done_ = !std::next_permutation(labels_.begin(), labels_.end());
  return true;
}

long PartitionEnumerator::count() const { return multinomial(lambda_.entries); }

std::vector<SetPartition> enumerate_partitions(const MultiIndex& lambda) {
  PartitionEnumerator it(lambda);
  std::vector<SetPartition> out;
  SetPartition part({}, static_cast<int>(lambda.size()));
  while (it.next(part)) out.push_back(part);
  return out;
}

GenericityReport genericity_check(const ParameterSet& p, const PrecisionContext& ctx, double delta) {
  p.validate();
  GenericityReport report;
  report.score = std::numeric_limits<double>::infinity();
  auto consider = [&](const Complex& u, const std::string& what) {
    double v = theta_normalized(u, ctx);
    if (v < report.score) {
      report.score = v;
      report.worst = what;
    }
  };
  const int n = p.n;
  std::vector<Complex> tpow;  // t^c for c = -2n..2n
  for (int c = -2 * n; c <= 2 * n; ++c) tpow.push_back(pow(at_precision(p.t, ctx), c));
  auto tp = [&](int c) -> const Complex& { return tpow[static_cast<std::size_t>(c + 2 * n)]; };

  for (int c = 1; c <= n; ++c) consider(tp(c), "t^" + std::to_string(c));
  for (int i = 0; i < p.s; ++i) {
    const Complex& xi = p.x[static_cast<std::size_t>(i)];
    Complex sq = xi * xi;
    for (int c = 0; c <= 2 * n - 2; ++c) {
      consider(sq * tp(c), "x" + std::to_string(i + 1) + "^2 t^" + std::to_string(c));
    }
    for (int j = i + 1; j < p.s; ++j) {
      const Complex& xj = p.x[static_cast<std::size_t>(j)];
      Complex prod = xi * xj;
      Complex ratio = xi / xj;
      for (int c = -2 * n; c <= 2 * n; ++c) {
        std::string tag = "x" + std::to_string(i + 1) + "x" + std::to_string(j + 1);
        consider(prod * tp(c), tag + " t^" + std::to_string(c));
        consider(ratio * tp(c), tag + "^-1 t^" + std::to_string(c));
      }
    }
    for (std::size_t m = 0; m < p.a.size(); ++m) {
      for (int c = -n; c <= n; ++c) {
        std::string tag = "a" + std::to_string(m + 1) + "x" + std::to_string(i + 1);
        consider(p.a[m] * xi * tp(c), tag + " t^" + std::to_string(c));
        consider(p.a[m] / xi * tp(c), tag + "^-1 t^" + std::to_string(c));
      }
    }
  }
  report.generic = report.score >= delta;
  return report;
}

}  // namespace qlag
