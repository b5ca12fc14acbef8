// Copyright 2026 The lrisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "lrisim/strategy.hpp"

namespace lrisim {
namespace {

StrategyMatrix with_row(std::vector<double> row, int beta = 1) {
  StrategyMatrix s(beta, static_cast<int>(row.size()));
  s.set_row(1, row);
  return s;
}

std::vector<double> frequencies(const StrategyMatrix& s, int draws, Rng& rng) {
  std::vector<double> f(static_cast<std::size_t>(s.slots()), 0.0);
  for (int i = 0; i < draws; ++i) f[sample_slot(s, 1, rng) - 1] += 1.0;
  for (double& v : f) v /= draws;
  return f;
}

TEST_CASE("init_uniform") {
  const auto s = init_uniform(4, 5);
  CHECK(s.attempts() == 5);
  CHECK(s.slots() == 4);
  for (int i = 1; i <= 5; ++i) {
    double sum = 0.0;
    for (double v : s.row(i)) {
      CHECK(v == 0.25);
      sum += v;
    }
    CHECK(sum == 1.0);
  }
  const auto single = init_uniform(1, 3);
  for (int i = 1; i <= 3; ++i) CHECK(single.at(i, 1) == 1.0);
  CHECK_THROWS_AS(init_uniform(0, 1), std::invalid_argument);
}

TEST_CASE("sample_slot") {
  Rng rng(1);
  SUBCASE("deterministic row") {
    const auto s = with_row({1, 0, 0, 0});
    for (int i = 0; i < 1000; ++i) CHECK(sample_slot(s, 1, rng) == 1);
  }
  SUBCASE("uniform row") {
    for (double f : frequencies(init_uniform(4, 1), 1000000, rng)) {
      CHECK(std::abs(f - 0.25) < 0.002);
    }
  }
  SUBCASE("skewed row") {
    const auto f = frequencies(with_row({0.7, 0.1, 0.1, 0.1}), 1000000, rng);
    CHECK(std::abs(f[0] - 0.700) < 0.002);
  }
  SUBCASE("never returns a zero-probability slot") {
    const auto s = with_row({0, 0.5, 0, 0.5});
    for (int i = 0; i < 10000; ++i) {
      const int k = sample_slot(s, 1, rng);
      CHECK((k == 2 || k == 4));
    }
  }
  SUBCASE("attempt out of range") {
    const auto s = init_uniform(4, 2);
    CHECK_THROWS_AS(sample_slot(s, 0, rng), std::out_of_range);
    CHECK_THROWS_AS(sample_slot(s, 3, rng), std::out_of_range);
  }
}

TEST_CASE("lri_update examples") {
  SUBCASE("no reward, no change") {
    auto s = with_row({0.4, 0.3, 0.2, 0.1});
    const auto before = s;
    lri_update(s, 1, 3, false, 0.1);
    CHECK(s == before);
  }
  SUBCASE("reward on a uniform row") {
    auto s = init_uniform(4, 1);
    lri_update(s, 1, 2, true, 0.1);
    CHECK(s.at(1, 1) == doctest::Approx(0.225).epsilon(1e-15));
    CHECK(s.at(1, 2) == doctest::Approx(0.325).epsilon(1e-15));
    CHECK(s.at(1, 3) == doctest::Approx(0.225).epsilon(1e-15));
    CHECK(s.at(1, 4) == doctest::Approx(0.225).epsilon(1e-15));
  }
  SUBCASE("pure rows are absorbing") {
    auto s = with_row({1, 0, 0, 0});
    const auto before = s;
    lri_update(s, 1, 1, true, 0.3);
    CHECK(s == before);
  }
  SUBCASE("only the played attempt moves") {
    auto s = init_uniform(4, 3);
    lri_update(s, 2, 4, true, 0.5);
    for (int k = 1; k <= 4; ++k) {
      CHECK(s.at(1, k) == 0.25);
      CHECK(s.at(3, k) == 0.25);
    }
    CHECK(s.at(2, 4) > 0.25);
  }
  SUBCASE("range checks") {
    auto s = init_uniform(4, 2);
    CHECK_THROWS_AS(lri_update(s, 3, 1, true, 0.1), std::out_of_range);
    CHECK_THROWS_AS(lri_update(s, 1, 5, true, 0.1), std::out_of_range);
  }
}

TEST_CASE("lri_update keeps rows on the simplex (property)") {
  Rng rng(2024);
  std::uniform_int_distribution<int> slots(1, 6);
  std::uniform_real_distribution<double> alpha_dist(1e-4, 0.999);
  std::exponential_distribution<double> mass(1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = slots(rng);
    std::vector<double> row(static_cast<std::size_t>(k));
    for (double& v : row) v = mass(rng);
    if (trial % 5 == 0) row[0] = 0.0;  // sparse rows too
    double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (sum == 0.0) {
      row[0] = 1.0;
      sum = 1.0;
    }
    for (double& v : row) v /= sum;
    // Force an exact sum by absorbing the residual into the largest entry.
    const double residual = 1.0 - std::accumulate(row.begin(), row.end(), 0.0);
    *std::max_element(row.begin(), row.end()) += residual;

    StrategyMatrix s(2, k);
    s.set_row(2, row);
    const double alpha = alpha_dist(rng);
    for (int step = 0; step < 50; ++step) {
      const int chosen = std::uniform_int_distribution<int>(1, k)(rng);
      const bool reward = uniform01(rng) < 0.5;
      const double before = s.at(2, chosen);
      lri_update(s, 2, chosen, reward, alpha);
      const auto r = s.row(2);
      double total = 0.0;
      for (double v : r) {
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
        total += v;
      }
      REQUIRE(std::abs(total - 1.0) <= 1e-12);
      if (reward && before < 1.0) REQUIRE(s.at(2, chosen) > before);
      for (int j = 1; j <= k; ++j) REQUIRE(s.at(1, j) == 1.0 / k);
    }
  }
}

TEST_CASE("set_row validates") {
  StrategyMatrix s(1, 3);
  const std::vector<double> short_row{0.5, 0.5};
  const std::vector<double> negative{1.5, -0.5, 0.0};
  const std::vector<double> not_normalized{0.5, 0.4, 0.0};
  CHECK_THROWS_AS(s.set_row(1, short_row), std::invalid_argument);
  CHECK_THROWS_AS(s.set_row(1, negative), std::invalid_argument);
  CHECK_THROWS_AS(s.set_row(1, not_normalized), std::invalid_argument);
}

TEST_CASE("is_pure") {
  CHECK_FALSE(is_pure(init_uniform(4, 5), 0.01));

  StrategyMatrix identity(2, 4);
  identity.set_row(1, std::vector<double>{0, 1, 0, 0});
  identity.set_row(2, std::vector<double>{0, 0, 0, 1});
  CHECK(is_pure(identity, 0.01));
  CHECK(is_pure(identity, 1e-9));

  const auto near = with_row({0.995, 0.005, 0, 0});
  CHECK(is_pure(near, 0.01));
  CHECK_FALSE(is_pure(near, 0.001));
}

TEST_CASE("pure_assignment") {
  StrategyMatrix s(2, 4);
  s.set_row(1, std::vector<double>{0, 1, 0, 0});
  s.set_row(2, std::vector<double>{0, 0, 0, 1});
  CHECK(pure_assignment(s) == std::vector<int>{2, 4});
  CHECK(pure_assignment(init_uniform(4, 1)) == std::vector<int>{1});
  CHECK(pure_assignment(with_row({0.2, 0.5, 0.2, 0.1})) == std::vector<int>{2});
}

TEST_CASE("strategy snapshot CSV") {
  std::vector<StrategyMatrix> s{init_uniform(2, 2), with_row({1, 0})};
  s[1] = StrategyMatrix(2, 2);
  s[1].set_row(1, std::vector<double>{1, 0});
  std::ostringstream os;
  write_strategies_csv(os, s);
  CHECK(os.str() ==
        "device_id,attempt,p_1,p_2\n"
        "1,1,0.5,0.5\n"
        "1,2,0.5,0.5\n"
        "2,1,1,0\n"
        "2,2,0.5,0.5\n");
}

}  // namespace
}  // namespace lrisim
