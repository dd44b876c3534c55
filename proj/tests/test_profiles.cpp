#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "nchatl/model.hpp"
#include "nchatl/oracle.hpp"
#include "nchatl/profiles.hpp"

using namespace nchatl;

namespace {

// One state, three actions, all seven agents loop there.
Model one_state_model(int n, int actions) {
  Model m;
  m.agent_count = n;
  m.propositions = {};
  State s;
  s.name = "q";
  s.action_count = actions;
  s.transitions.default_target = 0;
  m.states.push_back(s);
  return m;
}

}  // namespace

TEST_CASE("partial_profiles enumerates weak compositions in order") {
  Model m = one_state_model(5, 3);
  auto ps = partial_profiles(m, 0, 1);
  REQUIRE(ps.size() == 3);
  CHECK(ps[0] == Profile{0, 0, 1});
  CHECK(ps[1] == Profile{0, 1, 0});
  CHECK(ps[2] == Profile{1, 0, 0});

  Model m2 = one_state_model(5, 2);
  auto ps2 = partial_profiles(m2, 0, 2);
  REQUIRE(ps2.size() == 3);
  CHECK(ps2[0] == Profile{0, 2});
  CHECK(ps2[1] == Profile{1, 1});
  CHECK(ps2[2] == Profile{2, 0});

  auto ps3 = partial_profiles(m, 0, 0);
  REQUIRE(ps3.size() == 1);
  CHECK(ps3[0] == Profile{0, 0, 0});
}

TEST_CASE("partial_profiles cardinality matches the binomial") {
  for (int actions = 1; actions <= 4; ++actions) {
    Model m = one_state_model(25, actions);
    for (Count k = 0; k <= 20; ++k) {
      CAPTURE(actions);
      CAPTURE(k);
      CHECK(partial_profiles(m, 0, k).size() == count_profiles(actions, k));
    }
  }
}

TEST_CASE("profile order and sum") {
  CHECK(profile_leq({1, 0, 1}, {2, 0, 1}));
  CHECK_FALSE(profile_leq({1, 1, 0}, {2, 0, 1}));
  CHECK(profile_leq({2, 0, 1}, {2, 0, 1}));
  CHECK(profile_sum({1, 0, 1}, {1, 0, 0}) == Profile{2, 0, 1});
  CHECK(profile_sum({0, 1}, {1, 1}) == Profile{1, 2});
  CHECK_THROWS_AS(profile_leq({1, 0}, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(profile_sum({1, 0}, {1, 0, 0}), std::invalid_argument);
}

// The five-agent regression scenario: three actions at q0, agent 3 must
// avoid action 2, agent 4 must avoid actions 1 and 2.
TEST_CASE("legal_count on the regression scenario") {
  auto s = fixed_scenario();
  Coalition cd = {3, 4};
  CHECK(legal_count(s.model, s.norm, 0, {1}, cd) == 1);
  CHECK(legal_count(s.model, s.norm, 0, {2}, cd) == 0);
  CHECK(legal_count(s.model, s.norm, 0, {3}, cd) == 2);
  CHECK(legal_count(s.model, s.norm, 0, {1, 2}, cd) == 1);
  CHECK(legal_count(s.model, s.norm, 0, {1, 2, 3}, cd) == 2);
  CHECK(legal_count(s.model, s.norm, 0, {}, cd) == 0);
  CHECK(legal_count(s.model, s.norm, 0, {2}, {1, 2, 5}) == 3);
}

TEST_CASE("hall_condition on the regression scenario") {
  auto s = fixed_scenario();
  Coalition cd = {3, 4};
  CHECK(hall_condition(s.model, s.norm, 0, {1, 0, 1}, cd));
  CHECK(hall_condition(s.model, s.norm, 0, {0, 0, 2}, cd));
  CHECK_FALSE(hall_condition(s.model, s.norm, 0, {2, 0, 0}, cd));
  CHECK_FALSE(hall_condition(s.model, s.norm, 0, {0, 1, 1}, cd));
  CHECK_FALSE(hall_condition(s.model, s.norm, 0, {0, 2, 0}, cd));
}

TEST_CASE("hall_condition is trivially true under an empty norm") {
  Model m = one_state_model(6, 3);
  NormativeSystem empty;
  Coalition c = {1, 2, 3, 4};
  for (const auto& f2 : partial_profiles(m, 0, 4))
    CHECK(hall_condition(m, empty, 0, f2, c));
}

TEST_CASE("the planted wrong variant disagrees on the regression scenario") {
  auto s = fixed_scenario();
  Coalition cd = {3, 4};
  // Under the wrong reading, agents count when their *forbidden* set meets
  // E, which accepts the unrealizable all-on-action-2 vector...
  CHECK(hall_condition(s.model, s.norm, 0, {0, 2, 0}, cd,
                       LegalCountRule::ForbiddenMeets));
  // ...and rejects a realizable one.
  CHECK_FALSE(hall_condition(s.model, s.norm, 0, {1, 0, 1}, cd,
                             LegalCountRule::ForbiddenMeets));
}

TEST_CASE("compliant_profiles matches the frozen regression set") {
  auto s = fixed_scenario();
  auto set = compliant_profiles(s.model, s.norm, s.compliance, 0, s.acting);
  std::vector<Profile> expected = {
      {0, 0, 3}, {0, 1, 2}, {1, 0, 2}, {1, 1, 1}, {2, 0, 1}};
  CHECK(set.profiles == expected);
}

TEST_CASE("compliant_profiles trivial cases") {
  Model m = one_state_model(4, 2);
  NormativeSystem empty;

  SUBCASE("empty norm yields all partial profiles") {
    auto set = compliant_profiles(m, empty, {1, 2}, 0, {1, 2, 3});
    CHECK(set.profiles == partial_profiles(m, 0, 3));
  }
  SUBCASE("disjoint compliance yields all partial profiles") {
    NormativeSystem norm;
    norm.add(0, 1, 1);
    auto set = compliant_profiles(m, norm, {1}, 0, {2, 3});
    CHECK(set.profiles == partial_profiles(m, 0, 2));
  }
  SUBCASE("empty acting coalition yields the zero profile") {
    auto set = compliant_profiles(m, empty, {1, 2}, 0, {});
    REQUIRE(set.profiles.size() == 1);
    CHECK(set.profiles[0] == Profile{0, 0});
  }
}

TEST_CASE("compliant_profiles shrinks as the norm or compliance grows") {
  auto s = fixed_scenario();
  const Model& m = s.model;

  auto base = compliant_profiles(m, s.norm, s.compliance, 0, s.acting);

  SUBCASE("stricter norm") {
    NormativeSystem stricter = s.norm;
    stricter.add(0, 3, 1);  // agent 3 now locked to action 3
    auto tighter = compliant_profiles(m, stricter, s.compliance, 0, s.acting);
    CHECK(std::includes(base.profiles.begin(), base.profiles.end(),
                        tighter.profiles.begin(), tighter.profiles.end()));
    CHECK(tighter.profiles.size() < base.profiles.size());
  }
  SUBCASE("larger compliance coalition") {
    NormativeSystem norm = s.norm;
    norm.add(0, 5, 1);  // only matters once agent 5 complies
    auto loose = compliant_profiles(m, norm, s.compliance, 0, s.acting);
    auto strict = compliant_profiles(m, norm, full_coalition(5), 0, s.acting);
    CHECK(std::includes(loose.profiles.begin(), loose.profiles.end(),
                        strict.profiles.begin(), strict.profiles.end()));
  }
}

TEST_CASE("compliant_profiles is never empty on a valid norm") {
  Rng rng(2024);
  for (int i = 0; i < 50; ++i) {
    auto inst = random_instance(rng);
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Coalition b = random_coalition(rng, inst.model.agent_count);
    ProfileEngine engine(inst.model, inst.norm);
    for (int q = 0; q < inst.model.num_states(); ++q) {
      CAPTURE(i);
      CAPTURE(q);
      CHECK_FALSE(engine.compliant(q, a, b).empty());
    }
  }
}

TEST_CASE("profile engine memoizes across equivalent coalitions") {
  auto s = fixed_scenario();
  ProfileEngine engine(s.model, s.norm);
  const auto& first = engine.compliant(0, s.compliance, s.acting);
  const auto& again = engine.compliant(0, s.compliance, s.acting);
  CHECK(&first == &again);  // same cached vector

  // Agents 1, 2, 5 are unconstrained, so swapping one free agent for
  // another lands on the same cache entry.
  const auto& swapped =
      engine.compliant(0, s.compliance, make_coalition({3, 4, 1}));
  CHECK(&first == &swapped);
}

TEST_CASE("every compliant profile sums to the acting coalition size") {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    auto inst = random_instance(rng);
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Coalition b = random_coalition(rng, inst.model.agent_count);
    ProfileEngine engine(inst.model, inst.norm);
    for (int q = 0; q < inst.model.num_states(); ++q)
      for (const auto& p : engine.compliant(q, a, b)) {
        Count sum = 0;
        for (Count c : p) sum += c;
        CHECK(sum == static_cast<Count>(b.size()));
      }
  }
}
