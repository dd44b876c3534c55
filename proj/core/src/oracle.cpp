#include "nchatl/oracle.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

namespace nchatl {

namespace {

// base^exp with saturation.
std::uint64_t pow_sat(std::uint64_t base, int exp) {
  const std::uint64_t cap = ~std::uint64_t{0};
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap;
    r *= base;
  }
  return r;
}

}  // namespace

int ExplicitCgs::step(int q, const std::vector<int>& tuple) const {
  const ExplicitState& st = states[static_cast<size_t>(q)];
  if (tuple.size() != static_cast<size_t>(agent_count))
    throw std::invalid_argument("action tuple has wrong arity");
  std::uint64_t index = 0;
  std::uint64_t radix = 1;
  for (int a : tuple) {
    if (a < 1 || a > st.action_count)
      throw std::invalid_argument("action " + std::to_string(a) +
                                  " is out of range at state " + st.name);
    index += static_cast<std::uint64_t>(a - 1) * radix;
    radix *= static_cast<std::uint64_t>(st.action_count);
  }
  return st.successors[index];
}

ExplicitCgs expand(const Model& model, std::uint64_t budget) {
  std::uint64_t total = 0;
  for (const auto& st : model.states) {
    std::uint64_t entries = pow_sat(
        static_cast<std::uint64_t>(st.action_count), model.agent_count);
    if (entries > budget - total)
      throw BudgetExceeded("expansion needs more than " +
                           std::to_string(budget) + " transition entries");
    total += entries;
  }

  ExplicitCgs cgs;
  cgs.agent_count = model.agent_count;
  cgs.propositions = model.propositions;
  const int n = model.agent_count;
  for (int q = 0; q < model.num_states(); ++q) {
    const State& st = model.states[static_cast<size_t>(q)];
    ExplicitCgs::ExplicitState es;
    es.name = st.name;
    es.label = st.label;
    es.action_count = st.action_count;
    const std::uint64_t entries =
        pow_sat(static_cast<std::uint64_t>(st.action_count), n);
    es.successors.resize(entries);
    std::vector<int> tuple(static_cast<size_t>(n), 1);
    for (std::uint64_t idx = 0; idx < entries; ++idx) {
      Profile counts(static_cast<size_t>(st.action_count), 0);
      for (int a : tuple) ++counts[static_cast<size_t>(a - 1)];
      es.successors[idx] = successor(model, q, counts);
      // Next tuple, agent 1 least significant.
      for (int i = 0; i < n; ++i) {
        if (tuple[static_cast<size_t>(i)] < st.action_count) {
          ++tuple[static_cast<size_t>(i)];
          break;
        }
        tuple[static_cast<size_t>(i)] = 1;
      }
    }
    cgs.states.push_back(std::move(es));
  }
  return cgs;
}

std::string explicit_to_json(const ExplicitCgs& cgs) {
  nlohmann::ordered_json doc;
  doc["agents"] = cgs.agent_count;
  doc["propositions"] = cgs.propositions;
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  for (const auto& st : cgs.states) {
    nlohmann::ordered_json s;
    s["id"] = st.name;
    s["label"] = st.label;
    s["actions"] = st.action_count;
    nlohmann::ordered_json transitions = nlohmann::ordered_json::array();
    std::vector<int> tuple(static_cast<size_t>(cgs.agent_count), 1);
    for (std::uint64_t idx = 0; idx < st.successors.size(); ++idx) {
      nlohmann::ordered_json t;
      t["tuple"] = tuple;
      t["to"] = cgs.states[static_cast<size_t>(st.successors[idx])].name;
      transitions.push_back(std::move(t));
      for (int i = 0; i < cgs.agent_count; ++i) {
        if (tuple[static_cast<size_t>(i)] < st.action_count) {
          ++tuple[static_cast<size_t>(i)];
          break;
        }
        tuple[static_cast<size_t>(i)] = 1;
      }
    }
    s["transitions"] = std::move(transitions);
    states.push_back(std::move(s));
  }
  doc["states"] = std::move(states);
  return doc.dump(2) + "\n";
}

namespace {

// Enumerates every tuple ρ: acting → actions at q in which members of
// `compliance` avoid their forbidden actions; fn receives the per-action
// count vector of each tuple.
template <typename Fn>
void for_each_compliant_tuple(const Model& model, const NormativeSystem& norm,
                              const Coalition& compliance, int q,
                              const Coalition& acting, std::uint64_t budget,
                              Fn&& fn) {
  const int m = model.actions_at(q);
  if (pow_sat(static_cast<std::uint64_t>(m),
              static_cast<int>(acting.size())) > budget)
    throw BudgetExceeded("tuple enumeration needs more than " +
                         std::to_string(budget) + " entries");

  Profile counts(static_cast<size_t>(m), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == acting.size()) {
      fn(static_cast<const Profile&>(counts));
      return;
    }
    const int agent = acting[i];
    const bool bound = coalition_contains(compliance, agent);
    for (int act = 1; act <= m; ++act) {
      if (bound && norm.is_forbidden(q, agent, act)) continue;
      ++counts[static_cast<size_t>(act - 1)];
      rec(i + 1);
      --counts[static_cast<size_t>(act - 1)];
    }
  };
  rec(0);
}

}  // namespace

std::vector<Profile> brute_compliant_profiles(
    const Model& model, const NormativeSystem& norm,
    const Coalition& compliance, int q, const Coalition& acting,
    std::uint64_t budget) {
  std::vector<Profile> out;
  for_each_compliant_tuple(model, norm, compliance, q, acting, budget,
                           [&](const Profile& counts) { out.push_back(counts); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool matching_check(const Model& model, const NormativeSystem& norm, int q,
                    const Profile& f2, const Coalition& members) {
  const int m = model.actions_at(q);

  // Slot j corresponds to one unit of slot_action[j].
  std::vector<int> slot_action;
  for (int act = 1; act <= m; ++act)
    for (Count c = 0; c < f2[static_cast<size_t>(act - 1)]; ++c)
      slot_action.push_back(act);

  const int slots = static_cast<int>(slot_action.size());
  const int agents = static_cast<int>(members.size());
  std::vector<int> matched_agent(static_cast<size_t>(slots), -1);
  std::vector<char> visited;

  // Classic augmenting path search from each slot.
  std::function<bool(int)> try_slot = [&](int slot) {
    for (int ai = 0; ai < agents; ++ai) {
      if (visited[static_cast<size_t>(ai)]) continue;
      if (norm.is_forbidden(q, members[static_cast<size_t>(ai)],
                            slot_action[static_cast<size_t>(slot)]))
        continue;
      visited[static_cast<size_t>(ai)] = 1;
      // Agent free, or its slot can be re-homed.
      int other = -1;
      for (int sj = 0; sj < slots; ++sj)
        if (matched_agent[static_cast<size_t>(sj)] == ai) {
          other = sj;
          break;
        }
      if (other < 0 || try_slot(other)) {
        matched_agent[static_cast<size_t>(slot)] = ai;
        return true;
      }
    }
    return false;
  };

  for (int slot = 0; slot < slots; ++slot) {
    visited.assign(static_cast<size_t>(agents), 0);
    // Clear this slot's assignment before re-searching.
    if (matched_agent[static_cast<size_t>(slot)] >= 0) continue;
    if (!try_slot(slot)) return false;
  }
  return true;
}

namespace {

// ∃ own tuple ∀ adversary tuple: the combined step lands in target.
bool naive_enforce(const ExplicitCgs& cgs, const Model& model,
                   const NormativeSystem& norm, const Coalition& compliance,
                   int q, const Coalition& acting, const StateSet& target,
                   std::uint64_t budget) {
  const int m = model.actions_at(q);
  const Coalition adversary =
      coalition_complement(acting, model.agent_count);

  // Collect compliant tuples as full-length skeletons.
  auto collect = [&](const Coalition& who) {
    if (pow_sat(static_cast<std::uint64_t>(m),
                static_cast<int>(who.size())) > budget)
      throw BudgetExceeded("tuple enumeration needs more than " +
                           std::to_string(budget) + " entries");
    std::vector<std::vector<int>> tuples;
    std::vector<int> current(who.size());
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == who.size()) {
        tuples.push_back(current);
        return;
      }
      const int agent = who[i];
      const bool bound = coalition_contains(compliance, agent);
      for (int act = 1; act <= m; ++act) {
        if (bound && norm.is_forbidden(q, agent, act)) continue;
        current[i] = act;
        rec(i + 1);
      }
    };
    rec(0);
    return tuples;
  };

  const auto own = collect(acting);
  const auto rest = collect(adversary);
  std::vector<int> full(static_cast<size_t>(model.agent_count), 1);
  for (const auto& to : own) {
    bool all_land = true;
    for (const auto& tr : rest) {
      for (size_t i = 0; i < acting.size(); ++i)
        full[static_cast<size_t>(acting[i] - 1)] = to[i];
      for (size_t i = 0; i < adversary.size(); ++i)
        full[static_cast<size_t>(adversary[i] - 1)] = tr[i];
      if (!target.contains(cgs.step(q, full))) {
        all_land = false;
        break;
      }
    }
    if (all_land) return true;
  }
  return false;
}

StateSet naive_eval(const ExplicitCgs& cgs, const Model& model,
                    const NormativeSystem& norm, const Coalition& compliance,
                    const Formula& f, std::uint64_t budget) {
  const int ns = static_cast<int>(cgs.states.size());
  auto prop_set = [&](const std::string& p) {
    StateSet s(ns);
    for (int q = 0; q < ns; ++q) {
      const auto& lab = cgs.states[static_cast<size_t>(q)].label;
      if (std::find(lab.begin(), lab.end(), p) != lab.end()) s.insert(q);
    }
    return s;
  };
  switch (f.kind) {
    case FormulaKind::Top:
      return StateSet::all(ns);
    case FormulaKind::Prop:
      return prop_set(f.prop);
    case FormulaKind::Not:
      return naive_eval(cgs, model, norm, compliance, f.kids[0], budget)
          .complement();
    case FormulaKind::Or:
      return naive_eval(cgs, model, norm, compliance, f.kids[0], budget)
          .union_with(
              naive_eval(cgs, model, norm, compliance, f.kids[1], budget));
    case FormulaKind::And:
      return naive_eval(cgs, model, norm, compliance, f.kids[0], budget)
          .intersect(
              naive_eval(cgs, model, norm, compliance, f.kids[1], budget));
    case FormulaKind::Next: {
      StateSet target =
          naive_eval(cgs, model, norm, compliance, f.kids[0], budget);
      StateSet s(ns);
      for (int q = 0; q < ns; ++q)
        if (naive_enforce(cgs, model, norm, compliance, q, f.coalition,
                          target, budget))
          s.insert(q);
      return s;
    }
    case FormulaKind::Globally: {
      const StateSet body =
          naive_eval(cgs, model, norm, compliance, f.kids[0], budget);
      StateSet current = StateSet::all(ns);
      for (;;) {
        StateSet next(ns);
        for (int q = 0; q < ns; ++q)
          if (body.contains(q) &&
              naive_enforce(cgs, model, norm, compliance, q, f.coalition,
                            current, budget))
            next.insert(q);
        if (next == current) return current;
        current = next;
      }
    }
    case FormulaKind::Until: {
      const StateSet body =
          naive_eval(cgs, model, norm, compliance, f.kids[0], budget);
      StateSet accumulated =
          naive_eval(cgs, model, norm, compliance, f.kids[1], budget);
      for (;;) {
        StateSet grown = accumulated;
        for (int q = 0; q < ns; ++q)
          if (!grown.contains(q) && body.contains(q) &&
              naive_enforce(cgs, model, norm, compliance, q, f.coalition,
                            accumulated, budget))
            grown.insert(q);
        if (grown == accumulated) return accumulated;
        accumulated = grown;
      }
    }
    case FormulaKind::Comply:
      return naive_eval(cgs, model, norm, f.coalition, f.kids[0], budget);
  }
  throw std::logic_error("unhandled formula kind");
}

}  // namespace

StateSet naive_mcheck(const Model& model, const NormativeSystem& norm,
                      const Coalition& compliance, const Formula& f,
                      std::uint64_t budget) {
  ExplicitCgs cgs = expand(model, budget);
  return naive_eval(cgs, model, norm, compliance, f, budget);
}

Instance random_instance(Rng& rng) {
  Instance inst;
  Model& model = inst.model;
  model.agent_count = 1 + static_cast<int>(rng.below(4));
  model.propositions = {"p1", "p2"};
  const int ns = 1 + static_cast<int>(rng.below(4));
  for (int q = 0; q < ns; ++q) {
    State st;
    st.name = "s" + std::to_string(q);
    for (const auto& p : model.propositions)
      if (rng.chance(0.5)) st.label.push_back(p);
    st.action_count = 1 + static_cast<int>(rng.below(3));
    model.states.push_back(std::move(st));
  }
  // Explicit tables with uniform random targets.
  for (int q = 0; q < ns; ++q) {
    State& st = model.states[static_cast<size_t>(q)];
    st.transitions.form = TransitionSpec::Form::Table;
    Profile p(static_cast<size_t>(st.action_count), 0);
    std::function<void(size_t, Count)> rec = [&](size_t pos, Count rem) {
      if (pos + 1 == p.size()) {
        p[pos] = rem;
        st.transitions.table.push_back(
            {p, static_cast<int>(rng.below(static_cast<std::uint64_t>(ns)))});
        p[pos] = 0;
        return;
      }
      for (Count c = 0; c <= rem; ++c) {
        p[pos] = c;
        rec(pos + 1, rem - c);
      }
      p[pos] = 0;
    };
    rec(0, model.agent_count);
  }
  // Random forbiddances, then repair legality.
  for (int q = 0; q < ns; ++q) {
    const int m = model.states[static_cast<size_t>(q)].action_count;
    for (int agent = 1; agent <= model.agent_count; ++agent) {
      for (int act = 1; act <= m; ++act)
        if (rng.chance(0.3)) inst.norm.add(q, agent, act);
      if (static_cast<int>(inst.norm.forbidden(q, agent).size()) == m) {
        int keep = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        auto& v = inst.norm.forbids[{q, agent}];
        v.erase(std::find(v.begin(), v.end(), keep));
      }
    }
  }
  return inst;
}

Coalition random_coalition(Rng& rng, int n) {
  std::vector<int> agents;
  for (int a = 1; a <= n; ++a)
    if (rng.chance(0.5)) agents.push_back(a);
  return make_coalition(std::move(agents));
}

Formula random_formula(Rng& rng, const Model& model, int depth) {
  const int n = model.agent_count;
  if (depth <= 0) {
    switch (rng.below(3)) {
      case 0: return f_top();
      case 1: return f_prop("p1");
      default: return f_prop("p2");
    }
  }
  switch (rng.below(8)) {
    case 0: return random_formula(rng, model, 0);
    case 1: return f_not(random_formula(rng, model, depth - 1));
    case 2:
      return f_or(random_formula(rng, model, depth - 1),
                  random_formula(rng, model, depth - 1));
    case 3:
      return f_and(random_formula(rng, model, depth - 1),
                   random_formula(rng, model, depth - 1));
    case 4:
      return f_next(random_coalition(rng, n),
                    random_formula(rng, model, depth - 1));
    case 5:
      return f_globally(random_coalition(rng, n),
                        random_formula(rng, model, depth - 1));
    case 6:
      return f_until(random_coalition(rng, n),
                     random_formula(rng, model, depth - 1),
                     random_formula(rng, model, depth - 1));
    default:
      return f_comply(random_coalition(rng, n),
                      random_formula(rng, model, depth - 1));
  }
}

FixedScenario fixed_scenario() {
  FixedScenario s;
  s.model.agent_count = 5;
  s.model.propositions = {"p1", "p2"};
  State st;
  st.name = "q0";
  st.action_count = 3;
  st.transitions.form = TransitionSpec::Form::Rules;
  st.transitions.default_target = 0;
  s.model.states.push_back(std::move(st));
  s.norm.add(0, 3, 2);
  s.norm.add(0, 4, 1);
  s.norm.add(0, 4, 2);
  s.compliance = make_coalition({2, 3, 4});
  s.acting = make_coalition({3, 4, 5});
  s.state = 0;
  return s;
}

}  // namespace nchatl
