#include "nchatl/family.hpp"

#include <stdexcept>

namespace nchatl {

Model coordination_model(int n) {
  if (n < 1) throw std::invalid_argument("coordination_model needs n >= 1");
  Model model;
  model.agent_count = n;
  model.propositions = {"p1", "p2"};

  // Bands measured in agents on action 1 (k): p1 iff k in [lo1, hi1],
  // p2 iff k in [lo2, hi2].
  const Count lo1 = (8 * static_cast<Count>(n) + 9) / 10;  // ceil(0.8 n)
  const Count hi1 = 9 * static_cast<Count>(n) / 10;        // floor(0.9 n)
  const Count lo2 = static_cast<Count>(n) - 6 * static_cast<Count>(n) / 10;
  const Count hi2 = static_cast<Count>(n) - (2 * static_cast<Count>(n) + 9) / 10;

  auto outcome = [&](const char* name, std::vector<std::string> label) {
    State st;
    st.name = name;
    st.label = std::move(label);
    st.action_count = 1;
    st.transitions.form = TransitionSpec::Form::Rules;
    st.transitions.default_target = static_cast<int>(model.states.size());
    model.states.push_back(std::move(st));
  };

  State hub;
  hub.name = "q0";
  hub.action_count = 2;
  hub.transitions.form = TransitionSpec::Form::Rules;
  model.states.push_back(std::move(hub));
  outcome("q_both", {"p1", "p2"});  // index 1
  outcome("q_p1", {"p1"});          // index 2
  outcome("q_p2", {"p2"});          // index 3
  outcome("q_else", {});            // index 4

  auto band_rule = [&](Count lo, Count hi, int target) {
    if (lo > hi) return;  // empty band at this n
    GuardedRule r;
    r.guards.push_back({1, lo, hi});
    r.target = target;
    model.states[0].transitions.rules.push_back(std::move(r));
  };
  band_rule(std::max(lo1, lo2), std::min(hi1, hi2), 1);
  band_rule(lo1, hi1, 2);
  band_rule(lo2, hi2, 3);
  model.states[0].transitions.default_target = 4;
  return model;
}

NormativeSystem coordination_norm(const Model& model) {
  if (model.agent_count < 10)
    throw std::invalid_argument("coordination_norm needs n >= 10");
  NormativeSystem norm;
  norm.add(0, 9, 2);
  norm.add(0, 10, 2);
  return norm;
}

NormativeSystem choice_norm(const Model& model) {
  if (model.agent_count < 9)
    throw std::invalid_argument("choice_norm needs n >= 9");
  NormativeSystem norm;
  norm.add(0, 7, 2);
  norm.add(0, 8, 2);
  norm.add(0, 9, 1);
  return norm;
}

}  // namespace nchatl
