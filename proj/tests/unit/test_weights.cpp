#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "esv/weights.hpp"
#include "oracles.hpp"

using namespace esv;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an esv::Error");
  return ErrorCode::ParseError;
}

std::vector<std::vector<double>> random_matrix(oracle::Rng& rng, std::size_t m, std::size_t n) {
  std::vector<std::vector<double>> r(m, std::vector<double>(n));
  for (auto& row : r)
    for (double& v : row) v = rng.uniform(0.01, 10.0);
  return r;
}

}  // namespace

TEST_CASE("system entropy") {
  const double half[] = {0.5, 0.5};
  CHECK(std::abs(system_entropy(half) - std::log(2.0)) <= 1e-12);
  const double one[] = {1.0, 0.0};
  CHECK(system_entropy(one) == 0.0);
  const double q[] = {0.25, 0.75};
  CHECK(std::abs(system_entropy(q) - 0.5623351446188083) <= 1e-15);
  const double bad[] = {0.5, 0.4};
  CHECK(code_of([&] { system_entropy(bad); }) == ErrorCode::NotNormalized);
}

TEST_CASE("index entropies of hand columns") {
  const EvaluationMatrix r = validate_matrix({{1, 2, 1}, {3, 2, 0}});
  const EvaluationMatrix p = column_shares(r);
  CHECK(p(0, 0) == 0.25);
  CHECK(p(1, 0) == 0.75);
  const auto s = index_entropies(p);
  CHECK(std::abs(s[0] - 0.8112781244591328) <= 1e-12);
  CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s[2] == 0.0);

  // the uniform column carries no weight
  const WeightVector w = entropy_weights(s);
  CHECK(w[1] <= 1e-15);
  CHECK(w[2] > w[0]);
  CHECK(std::accumulate(w.values().begin(), w.values().end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("entropy weight errors") {
  CHECK(code_of([] { column_shares(validate_matrix({{1, 0}, {2, 0}})); }) == ErrorCode::AllZeroColumn);
  CHECK(code_of([] { index_entropies(column_shares(validate_matrix({{1, 2}}))); }) == ErrorCode::SingleRow);
  const std::vector<double> flat = {1.0, 1.0, 1.0};
  CHECK(code_of([&] { entropy_weights(flat); }) == ErrorCode::AllMaxEntropy);
  const WeightVector u = entropy_weights(flat, {true});
  CHECK(u == WeightVector::uniform(3));
}

TEST_CASE("combining with expert priors") {
  const WeightVector w = WeightVector::from_normalized({0.2, 0.3, 0.5});
  const std::vector<double> gamma = {1.0, 1.0, 2.0};
  const WeightVector d = combine_with_prior(w, gamma);
  // gamma.w = 0.2 + 0.3 + 1.0 = 1.5
  CHECK(d[0] == doctest::Approx(0.2 / 1.5));
  CHECK(d[2] == doctest::Approx(1.0 / 1.5));

  const std::vector<double> short_gamma = {1.0};
  CHECK(code_of([&] { combine_with_prior(w, short_gamma); }) == ErrorCode::DimensionMismatch);
  const WeightVector sparse = WeightVector::from_normalized({1.0, 0.0, 0.0});
  const std::vector<double> disjoint = {0.0, 1.0, 1.0};
  CHECK(code_of([&] { combine_with_prior(sparse, disjoint); }) == ErrorCode::ZeroOverlap);
}

TEST_CASE("entropy chain matches the straight-line oracle") {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto raw = random_matrix(rng, rng.integer(2, 6), rng.integer(2, 6));
    const auto expected = oracle::entropy_weights(raw);
    const EntropyReport rep = entropy_report(validate_matrix(raw));
    REQUIRE(rep.w.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(rep.w[k] - expected[k]) <= 1e-12);
  }
}

TEST_CASE("entropy weights are invariant to column scaling") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto raw = random_matrix(rng, rng.integer(2, 6), rng.integer(2, 6));
    const WeightVector w = entropy_report(validate_matrix(raw)).w;
    for (std::size_t k = 0; k < raw[0].size(); ++k) {
      const double c = rng.uniform(0.1, 1000.0);
      for (auto& row : raw) row[k] *= c;
    }
    const WeightVector scaled = entropy_report(validate_matrix(raw)).w;
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(std::abs(w[k] - scaled[k]) <= 1e-10);
  }
}

TEST_CASE("entropy weights follow permutations of rows and columns") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = rng.integer(2, 6), n = rng.integer(2, 6);
    const auto raw = random_matrix(rng, m, n);
    std::vector<std::size_t> rows(m), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng.engine());
    std::shuffle(cols.begin(), cols.end(), rng.engine());
    std::vector<std::vector<double>> perm(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k) perm[i][k] = raw[rows[i]][cols[k]];
    const WeightVector w = entropy_report(validate_matrix(raw)).w;
    const WeightVector wp = entropy_report(validate_matrix(perm)).w;
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(wp[k] - w[cols[k]]) <= 1e-12);
  }
}

TEST_CASE("entropy report with a prior") {
  const auto raw = std::vector<std::vector<double>>{{1, 2, 3}, {2, 2, 1}, {3, 1, 1}};
  const EntropyReport plain = entropy_report(validate_matrix(raw));
  CHECK_FALSE(plain.combined);
  CHECK(&plain.effective() == &plain.w);
  const EntropyReport r = entropy_report(validate_matrix(raw), std::vector<double>{1, 1, 1});
  REQUIRE(r.combined);
  for (std::size_t k = 0; k < 3; ++k) CHECK((*r.combined)[k] == doctest::Approx(r.w[k]).epsilon(1e-14));
}
