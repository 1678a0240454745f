#include "doctest.h"

#include "qlag/errors.hpp"
#include "qlag/indexsets.hpp"
#include "support.hpp"

#include <map>
#include <random>
#include <set>

using namespace qlag;
using qlag::testing::random_in_annulus;

namespace {

std::vector<std::vector<int>> entries_of(const std::vector<MultiIndex>& v) {
  std::vector<std::vector<int>> out;
  for (const auto& m : v) out.push_back(m.entries);
  return out;
}

ParameterSet sample_parameters(std::mt19937_64& rng, const PrecisionContext& ctx, int s, int n) {
  ParameterSet p;
  p.s = s;
  p.n = n;
  p.t = random_in_annulus(rng, ctx, 0.1, 0.3);
  for (int m = 0; m < 2 * s + 2; ++m) p.a.push_back(random_in_annulus(rng, ctx, -0.35, -0.1));
  for (int i = 0; i < s; ++i) p.x.push_back(random_in_annulus(rng, ctx, -0.5, 0.5));
  return p;
}

}  // namespace

TEST_CASE("small index sets") {
  using V = std::vector<std::vector<int>>;
  CHECK(entries_of(enumerate(IndexKind::Z, 2, 2)) == V{{0, 2}, {1, 1}, {2, 0}});
  CHECK(entries_of(enumerate(IndexKind::B, 2, 2)) == V{{0, 0}, {1, 0}, {1, 1}});
  CHECK(entries_of(enumerate(IndexKind::Z, 1, 4)) == V{{4}});
  CHECK(entries_of(enumerate(IndexKind::L, 3, 1)) == V{{0, 0}, {0, 1}, {1, 0}});
  CHECK_THROWS_AS(enumerate(IndexKind::Z, 0, 1), DomainError);
}

TEST_CASE("cardinalities and strict lexicographic order") {
  for (int s = 1; s <= 6; ++s) {
    for (int n = 1; n <= 6; ++n) {
      auto z = enumerate(IndexKind::Z, s, n);
      auto b = enumerate(IndexKind::B, s, n);
      CHECK(static_cast<long>(z.size()) == binomial(s + n - 1, n));
      CHECK(static_cast<long>(b.size()) == binomial(s + n - 1, n));
      for (const auto* list : {&z, &b}) {
        for (std::size_t k = 0; k + 1 < list->size(); ++k) CHECK((*list)[k] < (*list)[k + 1]);
        for (const auto& m : *list) CHECK(is_valid(m, s, n));
      }
    }
  }
}

TEST_CASE("lexicographic comparison is a strict total order") {
  auto all = enumerate(IndexKind::Z, 4, 4);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& a = all[pick(rng)];
    const auto& b = all[pick(rng)];
    const auto& c = all[pick(rng)];
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
    if (a < b && b < c) CHECK(a < c);
  }
}

TEST_CASE("Z to L bijection") {
  CHECK(z_to_l({{2, 1, 0}, IndexKind::Z}).entries == std::vector<int>{2, 1});
  CHECK(l_to_z({{2, 1}, IndexKind::L}, 3, 3).entries == std::vector<int>{2, 1, 0});
  auto z = enumerate(IndexKind::Z, 3, 3);
  auto l = enumerate(IndexKind::L, 3, 3);
  REQUIRE(z.size() == l.size());
  std::set<std::vector<int>> images;
  for (const auto& mu : z) {
    CHECK(l_to_z(z_to_l(mu), 3, 3) == mu);
    images.insert(z_to_l(mu).entries);
  }
  CHECK(images.size() == l.size());
}

TEST_CASE("special points") {
  auto ctx = PrecisionContext::with_real_q(128, "0.3");
  std::mt19937_64 rng(1);
  ParameterSet p = sample_parameters(rng, ctx, 3, 3);

  auto first = point_x_mu(p, {{3, 0, 0}, IndexKind::Z});
  REQUIRE(first.size() == 3);
  CHECK(first[0] == p.x[0]);
  CHECK(relative_difference(first[2], p.x[0] * p.t * p.t) < 1e-35);
  auto diag = point_x_mu(p, {{1, 1, 1}, IndexKind::Z});
  for (int i = 0; i < 3; ++i) CHECK(diag[static_cast<std::size_t>(i)] == p.x[static_cast<std::size_t>(i)]);
  auto last = point_x_mu(p, {{0, 0, 3}, IndexKind::Z});
  CHECK(last[0] == p.x[2]);

  // block structure: each block i contributes mu_i points x_i t^k
  for (const auto& mu : enumerate(IndexKind::Z, 3, 3)) {
    auto pts = point_x_mu(p, mu);
    CHECK(static_cast<int>(pts.size()) == 3);
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < mu[static_cast<std::size_t>(i)]; ++k, ++pos) {
        CHECK(relative_difference(pts[pos], p.x[static_cast<std::size_t>(i)] * pow(p.t, k)) < 1e-35);
      }
    }
  }

  auto eta = point_eta(p, {{0, 0, 3}, IndexKind::Z});
  REQUIRE(eta.size() == 2);
  CHECK(eta[0] == p.x[0]);
  CHECK(eta[1] == p.x[1]);
  auto e1 = point_eta(p, {{1, 2, 0}, IndexKind::Z});
  auto e2 = point_eta(p, {{1, 2, 7}, IndexKind::Z});
  CHECK(e1[0] == e2[0]);
  CHECK(e1[1] == e2[1]);
  ParameterSet one = sample_parameters(rng, ctx, 1, 2);
  CHECK_THROWS_AS(point_eta(one, {{2}, IndexKind::Z}), DomainError);

  MultiIndex zero{{0, 0, 0}, IndexKind::Z};
  auto same = shift_x(p, zero);
  for (int i = 0; i < 3; ++i) CHECK(same[static_cast<std::size_t>(i)] == p.x[static_cast<std::size_t>(i)]);
  MultiIndex mu{{1, 0, 2}, IndexKind::Z}, nu{{0, 2, 1}, IndexKind::Z}, sum{{1, 2, 3}, IndexKind::Z};
  auto twice = shift_x(shift_x(p, mu), p.t, nu);
  auto once = shift_x(p, sum);
  for (int i = 0; i < 3; ++i) {
    CHECK(relative_difference(twice[static_cast<std::size_t>(i)], once[static_cast<std::size_t>(i)]) < 1e-35);
  }
}

TEST_CASE("ordered set partitions") {
  CHECK(enumerate_partitions({{0, 3, 0}, IndexKind::Z}).size() == 1);
  auto two = enumerate_partitions({{1, 1}, IndexKind::Z});
  REQUIRE(two.size() == 2);
  // K_1 = {2}, K_2 = {1} has labels (1, 0)
  const SetPartition& p = two[1];
  CHECK(p.labels() == std::vector<int>{1, 0});
  CHECK(p.profile(0, 1) == 0);
  CHECK(p.profile(0, 2) == 1);
  CHECK(p.profile(1, 1) == 1);

  for (const auto& lambda : enumerate(IndexKind::Z, 3, 5)) {
    auto parts = enumerate_partitions(lambda);
    CHECK(static_cast<long>(parts.size()) == multinomial(lambda.entries));
    CHECK(PartitionEnumerator(lambda).count() == multinomial(lambda.entries));
    std::set<std::vector<int>> distinct;
    for (const auto& part : parts) {
      distinct.insert(part.labels());
      for (int i = 0; i < 3; ++i) CHECK(part.profile(i, 5) == lambda[static_cast<std::size_t>(i)]);
    }
    CHECK(distinct.size() == parts.size());
  }
}

TEST_CASE("genericity check") {
  auto ctx = PrecisionContext::with_real_q(256, "0.3");
  std::mt19937_64 rng(7);
  int generic = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ParameterSet p = sample_parameters(rng, ctx, 2, 2);
    generic += genericity_check(p, ctx).generic;
  }
  CHECK(generic == 20);

  ParameterSet p = sample_parameters(rng, ctx, 2, 2);
  p.x[1] = p.x[0];
  CHECK_FALSE(genericity_check(p, ctx).generic);
  // x_1 x_2 = t^-1
  p = sample_parameters(rng, ctx, 2, 2);
  p.x[1] = inverse(p.x[0] * p.t);
  auto report = genericity_check(p, ctx);
  CHECK_FALSE(report.generic);
  CHECK(report.score < 1e-60);
}
