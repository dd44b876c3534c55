#include <doctest.h>

#include "nchatl/family.hpp"
#include "nchatl/formula.hpp"
#include "nchatl/oracle.hpp"
#include "nchatl/profiles.hpp"
#include "nchatl/semantics.hpp"

using namespace nchatl;

namespace {

struct Fixture {
  Model model;
  NormativeSystem norm;
  ProfileEngine engine;
  CheckContext ctx;

  Fixture(Model m, NormativeSystem n, Coalition compliance)
      : model(std::move(m)),
        norm(std::move(n)),
        engine(model, norm),
        ctx{&model, &norm, std::move(compliance), &engine} {}
};

StateSet run(Fixture& fx, const std::string& text) {
  Formula f = parse_formula(text, fx.model);
  return mcheck(fx.ctx, f);
}

bool at_hub(Fixture& fx, const std::string& text) {
  return run(fx, text).contains(0);
}

}  // namespace

TEST_CASE("state set algebra") {
  StateSet s(4);
  s.insert(1);
  s.insert(3);
  CHECK(s.count() == 2);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(0));
  CHECK(s.members() == std::vector<int>{1, 3});

  StateSet t(4);
  t.insert(0);
  t.insert(1);
  CHECK(s.union_with(t).members() == std::vector<int>{0, 1, 3});
  CHECK(s.intersect(t).members() == std::vector<int>{1});
  CHECK(s.complement().members() == std::vector<int>{0, 2});
  CHECK(s.intersect(t).subset_of(s));
  CHECK_FALSE(s.subset_of(t));
  CHECK(StateSet::all(4).count() == 4);
  CHECK(StateSet(4).empty());
}

TEST_CASE("one-step enforcement on the ten-agent coordination game") {
  Fixture fx(coordination_model(10), {}, {});
  const int hub = 0;
  StateSet both(fx.model.num_states());
  both.insert(1);  // q_both

  SUBCASE("the grand coalition hits the narrow band") {
    CHECK(enforce(fx.ctx, hub, full_coalition(10), both));
  }
  SUBCASE("any nine agents cannot") {
    CHECK_FALSE(enforce(fx.ctx, hub, make_coalition({1, 2, 3, 4, 5, 6, 7, 8, 9}),
                        both));
    CHECK_FALSE(
        enforce(fx.ctx, hub, make_coalition({2, 3, 4, 5, 6, 7, 8, 9, 10}), both));
  }
  SUBCASE("everyone or no one for the trivial targets") {
    CHECK(enforce(fx.ctx, hub, {}, StateSet::all(fx.model.num_states())));
    CHECK_FALSE(enforce(fx.ctx, hub, {}, StateSet(fx.model.num_states())));
    CHECK_FALSE(enforce(fx.ctx, hub, full_coalition(10),
                        StateSet(fx.model.num_states())));
  }
}

TEST_CASE("golden coordination checks at the hub") {
  SUBCASE("grand coalition reaches both goals, no norm") {
    Fixture fx(coordination_model(10), {}, {});
    CHECK(at_hub(fx, "<<all>> X (p1 & p2)"));
  }
  SUBCASE("proper subcoalitions cannot") {
    Fixture fx(coordination_model(10), {}, {});
    CHECK_FALSE(at_hub(fx, "<<{1-9}>> X (p1 & p2)"));
    CHECK_FALSE(at_hub(fx, "<<{2-10}>> X (p1 & p2)"));
    CHECK_FALSE(at_hub(fx, "<<{1-5}>> X (p1 & p2)"));
  }
  SUBCASE("outsiders can spoil the precise split") {
    Fixture fx(coordination_model(10), {}, {});
    CHECK(at_hub(fx, "<<{7-10}>> X !p1"));
  }
  SUBCASE("norm compliance turns spoilers into help") {
    Model m = coordination_model(10);
    NormativeSystem norm = coordination_norm(m);
    Fixture fx(std::move(m), std::move(norm), {});
    CHECK(at_hub(fx, "[{9,10}] !<<{7,8,9,10}>> X !(p1 & p2)"));
    CHECK(at_hub(fx, "[{9,10}] [[{7-10}]] X (p1 & p2)"));
    // Without the compliance operator the ability stays with the spoilers.
    CHECK(at_hub(fx, "<<{7,8,9,10}>> X !(p1 & p2)"));
  }
  SUBCASE("split norm gives the rest a free choice of goal") {
    Model m = coordination_model(10);
    NormativeSystem norm = choice_norm(m);
    Fixture fx(std::move(m), std::move(norm), {});
    CHECK(at_hub(fx, "[{7,8,9}] (<<{1-6}>> X p1 & <<{1-6}>> X p2)"));
  }
}

TEST_CASE("temporal operators on the coordination game") {
  Fixture fx(coordination_model(10), {}, {});
  const int ns = fx.model.num_states();

  SUBCASE("globally via self-loops") {
    // Outcome states loop forever, so a coalition holds p2 exactly there.
    StateSet g = run(fx, "<<{1}>> G p2");
    CHECK(g.members() == std::vector<int>{1, 3});  // q_both, q_p2
  }
  SUBCASE("until reaches the goal through the hub") {
    StateSet u = run(fx, "<<all>> true U (p1 & p2)");
    // Hub can move into the band; q_both already satisfies the goal.
    CHECK(u.contains(0));
    CHECK(u.contains(1));
    CHECK(u.count() == 2);
    // Goal states belong to the until set with any coalition.
    StateSet u2 = run(fx, "<<{}>> true U (p1 & p2)");
    CHECK(u2.contains(1));
    CHECK_FALSE(u2.contains(0));
  }
  SUBCASE("true and negation") {
    CHECK(run(fx, "true").count() == ns);
    CHECK(run(fx, "!true").count() == 0);
  }
}

TEST_CASE("mcheck rejects formulas that do not fit the model") {
  Fixture fx(coordination_model(3), {}, {});
  CHECK_THROWS_AS(mcheck(fx.ctx, f_prop("zzz")), std::invalid_argument);
  CHECK_THROWS_AS(mcheck(fx.ctx, f_next({5}, f_top())), std::invalid_argument);
  CHECK_THROWS_AS(check_at(fx.ctx, 99, f_top()), std::invalid_argument);
}

TEST_CASE("negation duality on random instances") {
  Rng rng(99);
  for (int i = 0; i < 40; ++i) {
    auto inst = random_instance(rng);
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Formula f = random_formula(rng, inst.model, 3);
    ProfileEngine engine(inst.model, inst.norm);
    CheckContext ctx{&inst.model, &inst.norm, a, &engine};
    CAPTURE(i);
    CHECK(mcheck(ctx, f_not(f)) == mcheck(ctx, f).complement());
  }
}

TEST_CASE("fixed point identities on random instances") {
  Rng rng(2718);
  for (int i = 0; i < 40; ++i) {
    auto inst = random_instance(rng);
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Coalition b = random_coalition(rng, inst.model.agent_count);
    Formula phi = random_formula(rng, inst.model, 2);
    Formula psi = random_formula(rng, inst.model, 2);
    ProfileEngine engine(inst.model, inst.norm);
    CheckContext ctx{&inst.model, &inst.norm, a, &engine};
    CAPTURE(i);

    Formula box = f_globally(b, phi);
    CHECK(mcheck(ctx, box) == mcheck(ctx, f_and(phi, f_next(b, box))));

    Formula until = f_until(b, phi, psi);
    CHECK(mcheck(ctx, until) ==
          mcheck(ctx, f_or(psi, f_and(phi, f_next(b, until)))));
  }
}

TEST_CASE("containment properties of the temporal operators") {
  Rng rng(31337);
  for (int i = 0; i < 30; ++i) {
    auto inst = random_instance(rng);
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Coalition b = random_coalition(rng, inst.model.agent_count);
    Formula phi = random_formula(rng, inst.model, 2);
    Formula psi = random_formula(rng, inst.model, 2);
    ProfileEngine engine(inst.model, inst.norm);
    CheckContext ctx{&inst.model, &inst.norm, a, &engine};
    CAPTURE(i);

    CHECK(mcheck(ctx, f_globally(b, phi)).subset_of(mcheck(ctx, phi)));
    CHECK(mcheck(ctx, psi).subset_of(mcheck(ctx, f_until(b, phi, psi))));

    // Growing the coalition can only help a one-step goal.
    Coalition bigger = coalition_union(b, random_coalition(rng, inst.model.agent_count));
    CHECK(mcheck(ctx, f_next(b, phi)).subset_of(mcheck(ctx, f_next(bigger, phi))));
  }
}

TEST_CASE("compliance operator replaces the ambient coalition") {
  Rng rng(555);
  for (int i = 0; i < 30; ++i) {
    auto inst = random_instance(rng);
    const int n = inst.model.agent_count;
    Coalition a1 = random_coalition(rng, n);
    Coalition a2 = random_coalition(rng, n);
    Coalition inner = random_coalition(rng, n);
    Formula f = random_formula(rng, inst.model, 2);
    ProfileEngine engine(inst.model, inst.norm);
    CAPTURE(i);

    // The ambient compliance set is irrelevant under [inner].
    CheckContext c1{&inst.model, &inst.norm, a1, &engine};
    CheckContext c2{&inst.model, &inst.norm, a2, &engine};
    Formula wrapped = f_comply(inner, f);
    CHECK(mcheck(c1, wrapped) == mcheck(c2, wrapped));

    // Stacked compliance operators collapse to the innermost.
    Formula twice = f_comply(a2, f_comply(inner, f));
    CHECK(mcheck(c1, twice) == mcheck(c1, wrapped));
  }
}

TEST_CASE("empty norms make compliance irrelevant") {
  Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    auto inst = random_instance(rng);
    NormativeSystem empty;
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Formula f = random_formula(rng, inst.model, 3);
    ProfileEngine engine(inst.model, empty);
    CheckContext with{&inst.model, &empty, a, &engine};
    CheckContext without{&inst.model, &empty, {}, &engine};
    CAPTURE(i);
    CHECK(mcheck(with, f) == mcheck(without, f));
  }
}

TEST_CASE("mcheck agrees with the brute-force evaluation") {
  Rng rng(4242);
  for (int i = 0; i < 60; ++i) {
    auto inst = random_instance(rng);
    Coalition a = random_coalition(rng, inst.model.agent_count);
    Formula f = random_formula(rng, inst.model, 3);
    ProfileEngine engine(inst.model, inst.norm);
    CheckContext ctx{&inst.model, &inst.norm, a, &engine};
    CAPTURE(i);
    CAPTURE(print_formula(f));
    CHECK(mcheck(ctx, f) == naive_mcheck(inst.model, inst.norm, a, f));
  }
}

TEST_CASE("state_names sorts the output") {
  Model m = coordination_model(10);
  StateSet s(m.num_states());
  s.insert(4);  // q_else
  s.insert(1);  // q_both
  s.insert(0);  // q0
  CHECK(state_names(m, s) ==
        std::vector<std::string>{"q0", "q_both", "q_else"});
}
