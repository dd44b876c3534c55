#include <doctest.h>

#include <set>

#include "nchatl/family.hpp"
#include "nchatl/model_io.hpp"
#include "nchatl/oracle.hpp"
#include "nchatl/profiles.hpp"
#include "nchatl/semantics.hpp"

using namespace nchatl;

TEST_CASE("expand materializes every action tuple") {
  Model m = coordination_model(3);
  ExplicitCgs cgs = expand(m);
  REQUIRE(cgs.states.size() == 5);
  CHECK(cgs.agent_count == 3);
  CHECK(cgs.states[0].successors.size() == 8);  // 2^3 at the hub
  for (size_t i = 1; i < cgs.states.size(); ++i)
    CHECK(cgs.states[i].successors.size() == 1);

  // n=3 bands: two agents on action 1 reach the p2 outcome, else q_else.
  CHECK(cgs.step(0, {1, 1, 2}) == 3);
  CHECK(cgs.step(0, {1, 2, 1}) == 3);
  CHECK(cgs.step(0, {2, 1, 1}) == 3);
  CHECK(cgs.step(0, {1, 1, 1}) == 4);
  CHECK(cgs.step(0, {2, 2, 2}) == 4);
}

TEST_CASE("expand refuses oversized models") {
  Model m = coordination_model(40);  // 2^40 tuples at the hub
  CHECK_THROWS_AS(expand(m), BudgetExceeded);
  CHECK_THROWS_AS(expand(coordination_model(3), 7), BudgetExceeded);
  CHECK_NOTHROW(expand(coordination_model(3), 12));
}

TEST_CASE("expansion is invariant under transposing agents") {
  SUBCASE("coordination family") {
    Model model = coordination_model(3);
    ExplicitCgs cgs = expand(model);
    for (int q = 0; q < 5; ++q) {
      const int m = model.actions_at(q);
      std::vector<int> tuple = {1, std::min(2, m), 1};
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          auto swapped = tuple;
          std::swap(swapped[static_cast<size_t>(i)],
                    swapped[static_cast<size_t>(j)]);
          CHECK(cgs.step(q, tuple) == cgs.step(q, swapped));
        }
    }
  }
  SUBCASE("illegal tuples are rejected") {
    ExplicitCgs cgs = expand(coordination_model(3));
    CHECK_THROWS_AS(cgs.step(1, {1, 2, 1}), std::invalid_argument);  // 1-action state
    CHECK_THROWS_AS(cgs.step(0, {1, 2}), std::invalid_argument);     // arity
    CHECK_THROWS_AS(cgs.step(0, {0, 1, 1}), std::invalid_argument);  // below range
  }
  SUBCASE("random models") {
    Rng rng(808);
    for (int t = 0; t < 20; ++t) {
      auto inst = random_instance(rng);
      ExplicitCgs cgs = expand(inst.model);
      const int n = inst.model.agent_count;
      for (int trial = 0; trial < 100; ++trial) {
        int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(
            inst.model.num_states())));
        const int m = inst.model.actions_at(q);
        std::vector<int> tuple(static_cast<size_t>(n));
        for (auto& a : tuple)
          a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        auto swapped = tuple;
        std::swap(swapped[static_cast<size_t>(i)],
                  swapped[static_cast<size_t>(j)]);
        CAPTURE(t);
        CAPTURE(trial);
        CHECK(cgs.step(q, tuple) == cgs.step(q, swapped));
      }
    }
  }
}

TEST_CASE("explicit json lists full tuples") {
  Model m = coordination_model(1);
  ExplicitCgs cgs = expand(m);
  std::string doc = explicit_to_json(cgs);
  CHECK(doc.find("\"tuple\"") != std::string::npos);
  CHECK(doc.find("\"agents\": 1") != std::string::npos);
}

TEST_CASE("brute compliant profiles on the regression scenario") {
  auto s = fixed_scenario();
  auto brute =
      brute_compliant_profiles(s.model, s.norm, s.compliance, 0, s.acting);
  std::vector<Profile> expected = {
      {0, 0, 3}, {0, 1, 2}, {1, 0, 2}, {1, 1, 1}, {2, 0, 1}};
  CHECK(brute == expected);

  SUBCASE("agrees with the fast path") {
    auto fast = compliant_profiles(s.model, s.norm, s.compliance, 0, s.acting);
    CHECK(brute == fast.profiles);
  }
  SUBCASE("empty coalition yields the zero vector") {
    auto zero = brute_compliant_profiles(s.model, s.norm, s.compliance, 0, {});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == Profile{0, 0, 0});
  }
  SUBCASE("empty norm yields all compositions") {
    NormativeSystem empty;
    auto all = brute_compliant_profiles(s.model, empty, s.compliance, 0,
                                        make_coalition({1, 2}));
    CHECK(all == partial_profiles(s.model, 0, 2));
  }
}

TEST_CASE("matching_check on the regression scenario") {
  auto s = fixed_scenario();
  Coalition cd = {3, 4};
  CHECK(matching_check(s.model, s.norm, 0, {0, 0, 2}, cd));
  CHECK(matching_check(s.model, s.norm, 0, {1, 0, 1}, cd));
  CHECK_FALSE(matching_check(s.model, s.norm, 0, {0, 2, 0}, cd));
  CHECK_FALSE(matching_check(s.model, s.norm, 0, {2, 0, 0}, cd));
  CHECK_FALSE(matching_check(s.model, s.norm, 0, {0, 1, 1}, cd));

  NormativeSystem empty;
  CHECK(matching_check(s.model, empty, 0, {2, 0, 0}, cd));
  CHECK(matching_check(s.model, empty, 0, {0, 2, 0}, cd));
}

TEST_CASE("matching_check equals hall_condition everywhere") {
  Rng rng(616);
  for (int t = 0; t < 60; ++t) {
    auto inst = random_instance(rng);
    Coalition members = random_coalition(rng, inst.model.agent_count);
    for (int q = 0; q < inst.model.num_states(); ++q)
      for (const auto& f2 : partial_profiles(
               inst.model, q, static_cast<Count>(members.size()))) {
        CAPTURE(t);
        CAPTURE(q);
        CHECK(matching_check(inst.model, inst.norm, q, f2, members) ==
              hall_condition(inst.model, inst.norm, q, f2, members));
      }
  }
}

TEST_CASE("naive evaluation on the five-agent split game") {
  // p1 needs exactly four agents on action 1; p2 needs one to three
  // agents on action 2.
  Model m = coordination_model(5);
  NormativeSystem empty;

  Formula both = parse_formula("<<all>> X (p1 & p2)", m);
  StateSet s1 = naive_mcheck(m, empty, {}, both);
  CHECK(s1.contains(0));

  Formula pair = parse_formula("<<{1,2}>> X (p1 & p2)", m);
  StateSet s2 = naive_mcheck(m, empty, {}, pair);
  CHECK_FALSE(s2.contains(0));

  CHECK(naive_mcheck(m, empty, {}, f_top()).count() == m.num_states());
}

TEST_CASE("rng reproduces sequences per seed") {
  Rng a(12345), b(12345), c(54321);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a.below(1000));
    vb.push_back(b.below(1000));
    vc.push_back(c.below(1000));
  }
  CHECK(va == vb);
  CHECK(va != vc);
}

TEST_CASE("random instances are valid and reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 25; ++i) {
    auto one = random_instance(a);
    auto two = random_instance(b);
    CHECK(model_to_json(one.model) == model_to_json(two.model));
    CHECK(one.norm.forbids == two.norm.forbids);
    CHECK(validate_model(one.model).empty());
    CHECK(validate_norm(one.model, one.norm).empty());
  }
}

TEST_CASE("fixed scenario is well formed") {
  auto s = fixed_scenario();
  CHECK(validate_model(s.model).empty());
  CHECK(validate_norm(s.model, s.norm).empty());
  CHECK(s.model.agent_count == 5);
  CHECK(s.model.actions_at(0) == 3);
}
