#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "rhea/lineage.hpp"

using namespace rhea;

namespace {

// x=0, y=1, z=2 initial; 3=(x,y), 4=(y,z); 5=(3,4), 6=(3,3); 7=(5,z).
LineageLog three_generations() {
  LineageLog log;
  log.add({0, std::nullopt, {0, 0}, 0, std::string("pi1")});
  log.add({1, std::nullopt, {0, 1}, 0, std::nullopt});
  log.add({2, std::nullopt, {0, 2}, 0, std::nullopt});
  log.add({3, ParentPair{0, 1}, {0, 3}, 1, std::nullopt});
  log.add({4, ParentPair{1, 2}, {0, 4}, 1, std::nullopt});
  log.add({5, ParentPair{3, 4}, {0, 5}, 2, std::nullopt});
  log.add({6, ParentPair{3, 3}, {0, 6}, 2, std::nullopt});
  log.add({7, ParentPair{5, 2}, {0, 7}, 3, std::nullopt});
  return log;
}

}  // namespace

TEST_SUITE("lineage") {
  TEST_CASE("log ordering rules") {
    LineageLog log;
    log.add({0, std::nullopt, {}, 0, std::nullopt});
    CHECK_THROWS_AS(log.add({0, std::nullopt, {}, 0, std::nullopt}), DomainError);
    CHECK_THROWS_AS(log.add({1, ParentPair{0, 9}, {}, 1, std::nullopt}), DomainError);
    CHECK_THROWS_AS((void)log.at(42), LookupError);
    CHECK_THROWS_AS((void)ancestors(42, log), LookupError);
  }

  TEST_CASE("ancestors") {
    const auto log = three_generations();
    CHECK(ancestors(0, log).empty());
    CHECK(ancestors(3, log) == std::set<IndividualId>{0, 1});
    CHECK(ancestors(5, log) == std::set<IndividualId>{0, 1, 2, 3, 4});
    CHECK(ancestors(7, log) == std::set<IndividualId>{0, 1, 2, 3, 4, 5});
    CHECK(ancestors(6, log) == std::set<IndividualId>{0, 1, 3});
  }

  TEST_CASE("pc count") {
    const auto log = three_generations();
    const std::vector<IndividualId> front{6, 7};
    CHECK(pc_count(0, log, front) == 2);
    CHECK(pc_count(2, log, front) == 1);
    CHECK(pc_count(4, log, front) == 1);
    CHECK(pc_count(6, log, front) == 0);
    CHECK(pc_count(7, log, {0, 1}) == 0);

    LineageLog single;
    single.add({0, std::nullopt, {}, 0, std::nullopt});
    single.add({1, ParentPair{0, 0}, {}, 1, std::nullopt});
    single.add({2, ParentPair{1, 0}, {}, 2, std::nullopt});
    single.add({3, ParentPair{1, 2}, {}, 3, std::nullopt});
    CHECK(pc_count(0, single, {1, 2, 3}) == 3);
  }

  TEST_CASE("a percent by hand") {
    const auto log = three_generations();
    CHECK(a_percent(0, 0, log) == 1.0);
    CHECK(a_percent(1, 0, log) == 0.0);
    CHECK(a_percent(0, 3, log) == 0.5);
    CHECK(a_percent(1, 3, log) == 0.5);
    CHECK(a_percent(0, 5, log) == 0.25);
    CHECK(a_percent(1, 5, log) == 0.5);
    CHECK(a_percent(2, 5, log) == 0.25);
    CHECK(a_percent(0, 6, log) == 0.5);
    CHECK(a_percent(0, 7, log) == 0.125);
    CHECK(a_percent(1, 7, log) == 0.25);
    CHECK(a_percent(2, 7, log) == 0.625);
    const auto shares = ancestry_shares(2, log);
    for (const auto& r : log.records()) CHECK(shares[log.position(r.id)] == a_percent(2, r.id, log));
  }

  TEST_CASE("pc percent by hand") {
    const auto log = three_generations();
    const std::vector<IndividualId> front{6, 7};
    CHECK(pc_percent(0, log, front) == 0.3125);
    CHECK(pc_percent(1, log, front) == 0.375);
    CHECK(pc_percent(2, log, front) == 0.3125);
    CHECK_THROWS_AS((void)pc_percent(0, log, {}), DomainError);

    LineageLog single;
    single.add({0, std::nullopt, {}, 0, std::nullopt});
    single.add({1, ParentPair{0, 0}, {}, 1, std::nullopt});
    CHECK(pc_percent(0, single, {1}) == 1.0);

    const auto origin = origin_contributions(log, front);
    CHECK(origin.at("pi1") == 0.3125);
    CHECK(origin.at("random") == 0.6875);
  }

  TEST_CASE("ancestry matches direct recursion on random logs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const auto log = oracle::random_log(rng, 6, 60);
      for (IndividualId anc = 0; anc < 6; ++anc) {
        std::map<std::uint64_t, double> memo;
        const auto shares = ancestry_shares(anc, log);
        for (const auto& r : log.records()) {
          const double want = oracle::a_percent(anc, r.id, log, memo);
          CHECK(a_percent(anc, r.id, log) == doctest::Approx(want).epsilon(1e-15));
          CHECK(shares[log.position(r.id)] == doctest::Approx(want).epsilon(1e-15));
        }
      }
    }
  }

  TEST_CASE("jsonl export") {
    std::ostringstream os;
    three_generations().write_jsonl(os);
    const std::string text = os.str();
    std::istringstream in(text);
    std::string first;
    std::getline(in, first);
    const auto j = nlohmann::json::parse(first);
    CHECK(j.at("id") == 0);
    CHECK(j.at("parents").empty());
    CHECK(j.at("expert") == "pi1");
    CHECK(j.at("cost") == 0);
    std::size_t lines = 0;
    std::istringstream all(text);
    for (std::string l; std::getline(all, l);) ++lines;
    CHECK(lines == 8);
  }
}
