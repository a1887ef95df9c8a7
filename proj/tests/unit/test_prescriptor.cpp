#include <random>

#include "doctest.h"
#include "rhea/prescriptor.hpp"

using namespace rhea;

namespace {

const DomainConfig kDefault{};

InterventionSet labeled(std::initializer_list<std::size_t> one_based) {
  InterventionSet s;
  for (std::size_t i : one_based) s.insert(i - 1);
  return s;
}

RuleSetPrescriptor random_rules(std::mt19937_64& rng, const DomainConfig& cfg) {
  RuleSetPrescriptor pi;
  const std::size_t r = rng() % 5;
  for (std::size_t i = 0; i < r; ++i) {
    Rule rule;
    for (std::size_t c = 0; c < cfg.m; ++c) {
      if (rng() % 3 == 0) rule.contexts.insert(c);
    }
    if (rule.contexts.empty()) rule.contexts.insert(rng() % cfg.m);
    for (std::size_t k = 0; k < cfg.n; ++k) {
      if (rng() % 4 == 0) rule.action.insert(k);
    }
    pi.rules.push_back(rule);
  }
  return pi;
}

BehaviorTable random_table(std::mt19937_64& rng, const DomainConfig& cfg) {
  BehaviorTable t(cfg.m, cfg.n);
  // Few distinct rows so that contexts share actions.
  std::vector<InterventionSet> palette(3);
  for (auto& a : palette) {
    for (std::size_t k = 0; k < cfg.n; ++k) {
      if (rng() % 3 == 0) a.insert(k);
    }
  }
  for (std::size_t c = 0; c < cfg.m; ++c) {
    const std::size_t pick = rng() % 4;
    t.set_row(c, pick == 3 ? InterventionSet{} : palette[pick]);
  }
  return t;
}

}  // namespace

TEST_SUITE("prescriptor") {
  TEST_CASE("rule application") {
    const auto experts = gather_experts(kDefault);
    const auto& pi1 = experts[0];
    CHECK(apply_rules(pi1, ContextId(0)) == labeled({1, 2}));
    CHECK(apply_rules(pi1, ContextId(2)).empty());
    RuleSetPrescriptor overlap{{{ContextSet{0}, labeled({1})}, {ContextSet{0}, labeled({2})}}};
    CHECK(apply_rules(overlap, ContextId(0)) == labeled({1}));
  }

  TEST_CASE("distilled networks") {
    const auto experts = gather_experts(kDefault);
    const auto nn1 = distill_to_nn(behavior_table(experts[0], kDefault));
    CHECK(apply_nn(nn1, ContextId(0)) == labeled({1, 2}));
    CHECK(apply_nn(nn1, ContextId(1)).empty());
    const auto nn3 = distill_to_nn(behavior_table(experts[2], kDefault));
    CHECK(apply_nn(nn3, ContextId(5)) == labeled({7, 8, 9, 10}));
    CHECK(nn1.in_edges == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}});
    CHECK(nn1.out_edges == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 1}});
  }

  TEST_CASE("behavior tables") {
    const auto experts = gather_experts(kDefault);
    const auto t1 = behavior_table(experts[0], kDefault);
    for (std::size_t c = 0; c < 7; ++c) {
      for (std::size_t a = 0; a < 10; ++a) CHECK(t1.at(c, a) == (c == 0 && a < 2));
    }
    const auto t0 = behavior_table(RuleSetPrescriptor{}, kDefault);
    for (const auto& row : t0.rows()) CHECK(row.empty());
    const auto t3 = behavior_table(experts[2], kDefault);
    for (std::size_t c = 0; c < 7; ++c) {
      for (std::size_t a = 0; a < 10; ++a) CHECK(t3.at(c, a) == (a >= 6));
    }
    BehaviorTable t(7, 10);
    CHECK_THROWS_AS(t.set_row(0, labeled({11})), DomainError);
  }

  TEST_CASE("rule distillation") {
    const auto experts = gather_experts(kDefault);
    const auto r1 = distill_to_rules(behavior_table(experts[0], kDefault));
    CHECK(r1 == RuleSetPrescriptor{{{ContextSet{0}, labeled({1, 2})}}});
    CHECK(distill_to_rules(BehaviorTable(7, 10)).rules.empty());
    const auto r3 = distill_to_rules(behavior_table(experts[2], kDefault));
    CHECK(r3 == RuleSetPrescriptor{{{ContextSet::range(0, 7), labeled({7, 8, 9, 10})}}});
  }

  TEST_CASE("network distillation") {
    const auto experts = gather_experts(kDefault);
    const auto nn2 = distill_to_nn(behavior_table(experts[1], kDefault));
    CHECK(nn2.hidden_count == 1);
    CHECK(nn2.in_edges == std::set<std::pair<std::size_t, std::size_t>>{{1, 0}});
    CHECK(nn2.out_edges == std::set<std::pair<std::size_t, std::size_t>>{{0, 2}, {0, 3}, {0, 4}});
    CHECK(distill_to_nn(BehaviorTable(7, 10)).hidden_count == 0);
    const auto nn3 = distill_to_nn(behavior_table(experts[2], kDefault));
    CHECK(nn3.hidden_count == 1);
    CHECK(nn3.in_edges.size() == 7);
    CHECK(nn3.out_edges.size() == 4);
  }

  TEST_CASE("gathered experts") {
    const auto experts = gather_experts(kDefault);
    REQUIRE(experts.size() == 3);
    CHECK(experts[1] == RuleSetPrescriptor{{{ContextSet{1}, labeled({3, 4, 5})}}});
    CHECK(evaluate(experts[0], kDefault) == OutcomePair{1, 2});
    CHECK(evaluate(experts[1], kDefault) == OutcomePair{1, 3});
    CHECK(evaluate(experts[2], kDefault) == OutcomePair{7, 28});
    CHECK(distilled_experts(kDefault) == experts);
    CHECK_THROWS_AS((void)gather_experts({6, 10}), DomainError);
    CHECK(expert_labels().size() == 3);
  }

  TEST_CASE("round trip through the behavior table") {
    std::mt19937_64 rng(5);
    const DomainConfig cfg{9, 14};
    for (int trial = 0; trial < 500; ++trial) {
      const auto pi = random_rules(rng, cfg);
      const auto t = behavior_table(pi, cfg);
      const auto rules = distill_to_rules(t);
      const auto nn = distill_to_nn(t);
      for (std::size_t c = 0; c < cfg.m; ++c) {
        CHECK(rules(ContextId(c)) == pi(ContextId(c)));
        CHECK(nn(ContextId(c)) == pi(ContextId(c)));
      }
    }
  }

  TEST_CASE("rule and network distillations agree on random tables") {
    std::mt19937_64 rng(6);
    const DomainConfig cfg{7, 10};
    for (int trial = 0; trial < 500; ++trial) {
      const auto t = random_table(rng, cfg);
      const auto rules = distill_to_rules(t);
      const auto nn = distill_to_nn(t);
      for (std::size_t c = 0; c < cfg.m; ++c) CHECK(rules(ContextId(c)) == nn(ContextId(c)));
      for (std::size_t i = 0; i < rules.rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rules.rules.size(); ++j) {
          CHECK((rules.rules[i].contexts & rules.rules[j].contexts).empty());
        }
        if (i > 0) {
          CHECK(rules.rules[i - 1].contexts.indices().front() <
                rules.rules[i].contexts.indices().front());
        }
      }
    }
  }

  TEST_CASE("json round trip and validation") {
    const auto experts = gather_experts(kDefault);
    for (const auto& pi : experts) {
      const nlohmann::json j = pi;
      CHECK(j.get<RuleSetPrescriptor>() == pi);
    }
    const auto j = nlohmann::json::parse(R"({"rules":[{"contexts":[0],"action":[0,1]}]})");
    CHECK(j.get<RuleSetPrescriptor>() == experts[0]);
    CHECK_THROWS_AS(validate(RuleSetPrescriptor{{{ContextSet{}, labeled({1})}}}, kDefault),
                    DomainError);
    CHECK_THROWS_AS(validate(RuleSetPrescriptor{{{ContextSet{7}, labeled({1})}}}, kDefault),
                    DomainError);
    CHECK_NOTHROW(validate(experts[2], kDefault));
  }
}
