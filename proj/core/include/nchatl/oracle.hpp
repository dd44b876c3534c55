// Ground truth for small instances, kept deliberately independent of the
// fast path: transitions by explicit table expansion instead of guard
// resolution, compliant sets by enumerating per-agent action tuples
// instead of count-vector feasibility, realizability by bipartite
// matching instead of subset counting, and formula evaluation by direct
// quantification over those tuples.

#ifndef NCHATL_ORACLE_HPP
#define NCHATL_ORACLE_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nchatl/formula.hpp"
#include "nchatl/model.hpp"
#include "nchatl/semantics.hpp"

namespace nchatl {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fully expanded concurrent game structure.  Transitions are stored per
// state as a dense vector indexed by the mixed-radix encoding of the
// agents' action tuple, agent 1 least significant, actions 0-based in the
// encoding.
struct ExplicitCgs {
  struct ExplicitState {
    std::string name;
    std::vector<std::string> label;
    int action_count = 1;
    std::vector<int> successors;  // size action_count^agent_count
  };

  int agent_count = 0;
  std::vector<std::string> propositions;
  std::vector<ExplicitState> states;

  // Successor under the 1-based action tuple (one entry per agent).
  int step(int q, const std::vector<int>& tuple) const;
};

inline constexpr std::uint64_t kDefaultExpandBudget = 1000000;

// Materializes every transition.  Throws BudgetExceeded when the total
// table size would exceed the budget.
ExplicitCgs expand(const Model& model,
                   std::uint64_t budget = kDefaultExpandBudget);

std::string explicit_to_json(const ExplicitCgs& cgs);

// Count vectors realizable by coalition `acting` at q when its members
// inside `compliance` avoid their forbidden actions: enumerates all
// per-agent tuples and projects to counts.  Throws BudgetExceeded when
// there are more than `budget` tuples.
std::vector<Profile> brute_compliant_profiles(
    const Model& model, const NormativeSystem& norm,
    const Coalition& compliance, int q, const Coalition& acting,
    std::uint64_t budget = kDefaultExpandBudget);

// Whether the count vector f2 over `members` is realizable with every
// member avoiding its forbidden actions: builds the bipartite graph of
// agents versus f2[i] copies of action i+1 (edge when the action is
// permitted) and looks for a matching saturating the slot side.
bool matching_check(const Model& model, const NormativeSystem& norm, int q,
                    const Profile& f2, const Coalition& members);

// Direct semantics evaluation over the expanded structure.  Must agree
// with mcheck wherever the budget allows it to run.
StateSet naive_mcheck(const Model& model, const NormativeSystem& norm,
                      const Coalition& compliance, const Formula& f,
                      std::uint64_t budget = kDefaultExpandBudget);

// Deterministic generator: identical sequences on every platform for a
// given seed (std::mt19937_64 plus modulo reduction; the slight modulo
// bias is irrelevant for test-case generation).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  // Uniform-ish value in [0, k).
  std::uint64_t below(std::uint64_t k) { return k ? gen_() % k : 0; }
  bool chance(double p) {
    return static_cast<double>(below(1u << 20)) < p * (1u << 20);
  }

 private:
  std::mt19937_64 gen_;
};

struct Instance {
  Model model;
  NormativeSystem norm;
};

// Small random instance: 1-4 agents, 1-4 states, 1-3 actions per state,
// explicit-table transitions with uniform targets, each (state, agent,
// action) forbidden with probability 0.3 and then repaired so every agent
// keeps a legal action everywhere.
Instance random_instance(Rng& rng);

Coalition random_coalition(Rng& rng, int n);

// Random formula of the given depth over the instance's propositions,
// covering every operator including nested compliance.
Formula random_formula(Rng& rng, const Model& model, int depth);

// The hand-checked five-agent regression scenario: one state with three
// actions, agent 3 forbidden action 2, agent 4 forbidden actions 1 and 2,
// compliance {2,3,4}, acting coalition {3,4,5}.
struct FixedScenario {
  Model model;
  NormativeSystem norm;
  Coalition compliance;
  Coalition acting;
  int state = 0;
};

FixedScenario fixed_scenario();

}  // namespace nchatl

#endif
