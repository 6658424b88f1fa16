#include "rabc/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace rabc;

TEST_CASE("auction cost")
{
  std::vector<double> two{2, 3};
  CHECK(auction_cost(two) == 5.0);
  CHECK(auction_cost({}) == 0.0);
  std::vector<double> twenty(20, 5.0);
  CHECK(auction_cost(twenty) == 100.0);
}

TEST_CASE("auction cost is additive over disjoint winner sets")
{
  std::mt19937_64                        gen(4);
  std::uniform_real_distribution<double> pay(0.0, 10.0);
  for (int i = 0; i < 500; ++i)
  {
    std::vector<double> a(gen() % 20), b(gen() % 20);
    for (auto &x : a)
      x = pay(gen);
    for (auto &x : b)
      x = pay(gen);
    std::vector<double> both = a;
    both.insert(both.end(), b.begin(), b.end());
    CHECK(auction_cost(both) == doctest::Approx(auction_cost(a) + auction_cost(b)));
  }
}

TEST_CASE("monopoly prevention index anchors")
{
  std::vector<double> even{0.5, 0.5}, monopoly{1.0, 0.0}, none{0.0, 0.0};
  CHECK(mpi(even).value() == 0.75);
  CHECK(mpi(monopoly).value() == 0.0);
  CHECK_FALSE(mpi(none).has_value());
  CHECK_THROWS_AS(mpi({}), UndefinedMetricError);
  std::vector<double> negative{0.5, -0.1};
  CHECK_THROWS_AS(mpi(negative), UndefinedMetricError);
}

TEST_CASE("monopoly prevention index is permutation invariant")
{
  std::mt19937_64                        gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i)
  {
    std::vector<double> w(1 + gen() % 50);
    for (auto &x : w)
      x = u(gen);
    auto shuffled = w;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(mpi(shuffled).value() == doctest::Approx(mpi(w).value()).epsilon(1e-12));
  }
}

TEST_CASE("bid accuracy ratio")
{
  CHECK(bar(5, 5) == 0.0);
  CHECK(bar(6, 5) == doctest::Approx(0.2));
  CHECK(bar(0, 5) == 1.0);
  CHECK_THROWS_AS(bar(1, 0), UndefinedMetricError);

  std::mt19937_64                        gen(9);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 1000; ++i)
  {
    double const b = u(gen), c = u(gen) + 0.01;
    CHECK(bar(b, c) >= 0.0);
    CHECK((bar(b, c) == 0.0) == (b == c));
  }
}

TEST_CASE("win tally")
{
  std::vector<Participant> ps(3);
  ps[0].rounds_won = 4;
  ps[1].rounds_won = 1;
  ps[2].rounds_won = 2;
  ps[2].status     = Status::Exited;

  auto const current = tally_wins(ps, 4, MpiPopulation::Current);
  CHECK(current.frequencies() == std::vector<double>{1.0, 0.25});
  auto const all = tally_wins(ps, 4, MpiPopulation::EverSeen);
  CHECK(all.frequencies() == std::vector<double>{1.0, 0.25, 0.5});
}

TEST_CASE("retention versus average")
{
  std::vector<LabeledSeries> same{{"a", {1, 2, 3}}, {"b", {1, 2, 3}}, {"c", {1, 2, 3}}};
  for (auto const &e : retention_vs_average(same).entries)
  {
    CHECK(e.percent_delta == 0.0);
  }

  std::vector<LabeledSeries> constructed{{"dr", {123.3, 123.3}},
                                         {"abc", {102.7, 102.7}},
                                         {"tullock", {75.3, 75.3}}};
  auto const report = retention_vs_average(constructed);
  CHECK(report.grand_mean == doctest::Approx(100.4333333));
  CHECK(std::round(report.entries[0].percent_delta * 10) / 10 == doctest::Approx(22.8));
  CHECK(std::round(report.entries[1].percent_delta * 10) / 10 == doctest::Approx(2.3));
  CHECK(std::round(report.entries[2].percent_delta * 10) / 10 == doctest::Approx(-25.0));

  std::vector<LabeledSeries> single{{"only", {4, 5}}};
  CHECK(retention_vs_average(single).entries[0].percent_delta == 0.0);

  CHECK_THROWS_AS(retention_vs_average({}), ConfigError);
  std::vector<LabeledSeries> empty{{"x", {}}};
  CHECK_THROWS_AS(retention_vs_average(empty), ConfigError);
  std::vector<LabeledSeries> ragged{{"x", {1}}, {"y", {1, 2}}};
  CHECK_THROWS_AS(retention_vs_average(ragged), ConfigError);
}
