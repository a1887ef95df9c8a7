#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "rhea/domain.hpp"
#include "rhea/io.hpp"

using namespace rhea;

namespace {

InterventionSet labeled(std::initializer_list<std::size_t> one_based) {
  InterventionSet s;
  for (std::size_t i : one_based) s.insert(i - 1);
  return s;
}

const DomainConfig kDefault{};

std::vector<OutcomePair> read_golden(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::string line;
  io::read_line(in, line);
  CHECK(line == "utility,cost");
  std::vector<OutcomePair> out;
  while (io::read_line(in, line)) {
    if (line.empty()) continue;
    const auto cells = io::split_csv_line(line);
    out.push_back({io::parse_int(cells[0], "utility"), io::parse_int(cells[1], "cost")});
  }
  return out;
}

}  // namespace

TEST_SUITE("domain") {
  TEST_CASE("utility table cases") {
    CHECK(utility(ContextId(0), labeled({1, 2}), kDefault) == 1);
    CHECK(utility(ContextId(1), labeled({1, 2, 3, 4, 6}), kDefault) == 5);
    CHECK(utility(ContextId(4), labeled({7, 8, 9, 10}), kDefault) == 1);
    CHECK(utility(ContextId(0), labeled({1, 2, 7}), kDefault) == 0);
  }

  TEST_CASE("utility agrees with the transcribed table on random actions") {
    std::mt19937_64 rng(11);
    std::bernoulli_distribution bit(0.4);
    for (int trial = 0; trial < 20000; ++trial) {
      const std::size_t c = rng() % 7;
      InterventionSet a;
      for (std::size_t k = 0; k < 10; ++k) {
        if (bit(rng)) a.insert(k);
      }
      const auto u = utility(ContextId(c), a, kDefault);
      CHECK(u == oracle::utility(static_cast<int>(c) + 1, oracle::labels(a)));
      CHECK(u >= 0);
      CHECK(u <= 5);
      CHECK(u == utility(ContextId(c), a, kDefault));
    }
  }

  TEST_CASE("every named action scores its entry") {
    for (const auto& na : named_actions()) {
      for (std::size_t c = 0; c < 7; ++c) {
        if (na.context && *na.context != c) continue;
        CHECK(oracle::utility(static_cast<int>(c) + 1, oracle::labels(na.action)) == na.utility);
      }
    }
  }

  TEST_CASE("contexts past c2 only score the context-free set") {
    for (std::size_t c = 2; c < 7; ++c) {
      CHECK(utility(ContextId(c), labeled({1, 2}), kDefault) == 0);
      CHECK(utility(ContextId(c), labeled({1, 2, 3, 4, 5, 6}), kDefault) == 0);
      CHECK(utility(ContextId(c), labeled({3, 4, 5}), kDefault) == 0);
      CHECK(utility(ContextId(c), labeled({7, 8, 9, 10}), kDefault) == 1);
    }
  }

  TEST_CASE("out of range inputs are rejected") {
    CHECK_THROWS_AS((void)utility(ContextId(7), {}, kDefault), DomainError);
    CHECK_THROWS_AS((void)utility(ContextId(0), labeled({11}), kDefault), DomainError);
    CHECK_THROWS_AS(DomainConfig({6, 10}).validate(), DomainError);
    CHECK_THROWS_AS(DomainConfig({7, 9}).validate(), DomainError);
    CHECK_NOTHROW(DomainConfig({7, 50}).validate());
  }

  TEST_CASE("action cost is cardinality") {
    CHECK(action_cost({}) == 0);
    CHECK(action_cost(labeled({1, 2, 5})) == 3);
    CHECK(action_cost(InterventionSet::range(0, 10)) == 10);
    InterventionSet a = labeled({1, 2});
    InterventionSet b = a | labeled({9});
    CHECK(action_cost(a) < action_cost(b));
  }

  TEST_CASE("evaluate sums over contexts") {
    auto pi1 = [](ContextId c) { return c.index == 0 ? labeled({1, 2}) : InterventionSet{}; };
    auto pi3 = [](ContextId) { return labeled({7, 8, 9, 10}); };
    auto empty = [](ContextId) { return InterventionSet{}; };
    CHECK(evaluate(pi1, kDefault) == OutcomePair{1, 2});
    CHECK(evaluate(pi3, kDefault) == OutcomePair{7, 28});
    CHECK(evaluate(empty, kDefault) == OutcomePair{0, 0});
  }

  TEST_CASE("optimal front endpoints and golden file") {
    const auto front = optimal_front(kDefault);
    CHECK(std::find(front.begin(), front.end(), OutcomePair{0, 0}) != front.end());
    CHECK(std::find(front.begin(), front.end(), OutcomePair{1, 2}) != front.end());
    CHECK(front == read_golden(RHEA_TEST_DATA "/optimal_front_m7_n10.csv"));
    CHECK(max_utility(kDefault) == 13);
  }

  TEST_CASE("extra interventions do not change the optimal front") {
    CHECK(optimal_front({7, 50}) == optimal_front(kDefault));
    CHECK(optimal_front({7, 256}) == optimal_front(kDefault));
  }

  TEST_CASE("optimal front equals exhaustive enumeration") {
    for (std::size_t n : {10u, 11u, 12u}) {
      CAPTURE(n);
      const auto brute = oracle::brute_force_front(7, n);
      const auto front = optimal_front({7, n});
      REQUIRE(front.size() == brute.size());
      for (std::size_t i = 0; i < front.size(); ++i) {
        CHECK(front[i].utility == brute[i].first);
        CHECK(front[i].cost == brute[i].second);
      }
    }
    const auto brute8 = oracle::brute_force_front(8, 10);
    CHECK(optimal_front({8, 10}).size() == brute8.size());
  }

  TEST_CASE("optimal front is mutually nondominated") {
    const auto front = optimal_front({9, 20});
    for (const auto& p : front) {
      for (const auto& q : front) CHECK_FALSE(oracle::dominates_outcome(p, q));
    }
  }

  TEST_CASE("outcome pareto filter matches the naive filter") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<OutcomePair> pts;
      std::set<oracle::Pair> naive;
      for (int i = 0; i < 30; ++i) {
        OutcomePair p{static_cast<std::int64_t>(rng() % 15), static_cast<std::int64_t>(rng() % 15)};
        pts.push_back(p);
        naive.insert({p.utility, p.cost});
      }
      const auto got = outcome_pareto_filter(pts);
      const auto want = oracle::naive_outcome_front(naive);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].utility == want[i].first);
        CHECK(got[i].cost == want[i].second);
      }
    }
  }
}
