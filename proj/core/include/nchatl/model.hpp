// Compact anonymous concurrent game structures with one role, plus
// normative systems (per-state, per-agent forbidden-action sets).
//
// Agents are the integers 1..n.  A state with m available actions is left
// through a *profile*: a vector of m non-negative counts summing to the
// number of agents moving, recording how many of them take each action.

#ifndef NCHATL_MODEL_HPP
#define NCHATL_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nchatl {

using Count = std::int64_t;

// Counts per action; index i holds the count for action i+1.
using Profile = std::vector<Count>;

// Sorted, duplicate-free agent ids in 1..n.  May be empty.
using Coalition = std::vector<int>;

Coalition make_coalition(std::vector<int> agents);
Coalition full_coalition(int n);
Coalition coalition_union(const Coalition& a, const Coalition& b);
Coalition coalition_intersect(const Coalition& a, const Coalition& b);
Coalition coalition_diff(const Coalition& a, const Coalition& b);
Coalition coalition_complement(const Coalition& a, int n);
bool coalition_contains(const Coalition& c, int agent);

// Inclusive bounds on the count of one action; actions are 1-based.
struct Guard {
  int action = 1;
  Count min = 0;
  Count max = 0;
};

// Matches a profile iff every guard is satisfied.  An empty guard list
// matches everything.
struct GuardedRule {
  std::vector<Guard> guards;
  int target = -1;  // state index
};

struct TableEntry {
  Profile profile;
  int target = -1;
};

// Either an explicit profile table or an ordered first-match-wins rule
// list, with an optional default target catching unmatched profiles.
struct TransitionSpec {
  enum class Form { Table, Rules };
  Form form = Form::Rules;
  std::vector<TableEntry> table;
  std::vector<GuardedRule> rules;
  std::optional<int> default_target;
};

struct State {
  std::string name;
  std::vector<std::string> label;  // sorted proposition names
  int action_count = 1;
  TransitionSpec transitions;
};

struct Model {
  int agent_count = 0;
  std::vector<std::string> propositions;
  std::vector<State> states;

  int num_states() const { return static_cast<int>(states.size()); }
  int actions_at(int q) const { return states[static_cast<size_t>(q)].action_count; }
  // Index of the first state with this name, or -1.
  int state_index(std::string_view name) const;
  bool has_proposition(std::string_view p) const;
  bool label_contains(int q, std::string_view p) const;
};

// Sparse map from (state, agent) to the forbidden actions there.  Pairs
// without an entry forbid nothing.
struct NormativeSystem {
  std::map<std::pair<int, int>, std::vector<int>> forbids;

  void add(int state, int agent, int action);
  // Sorted forbidden actions for (state, agent); empty when unmentioned.
  const std::vector<int>& forbidden(int state, int agent) const;
  bool is_forbidden(int state, int agent, int action) const;
};

// Keeps entries only for agents in C: (eta|C)(q,a) = eta(q,a) when a in C,
// empty otherwise.
NormativeSystem restrict_norm(const NormativeSystem& norm, const Coalition& c);

struct ValidateOptions {
  // At or below this many profiles per state, rule coverage is checked by
  // exhaustive enumeration; above it, by interval reasoning over guard
  // boundaries.
  std::uint64_t exhaustive_threshold = 10000;
  // Cap on interval cells inspected per state before giving up with a
  // violation asking for a default target.
  std::uint64_t coverage_cell_budget = 2000000;
};

// Every structural violation found, empty when the model is valid.
std::vector<std::string> validate_model(const Model& model,
                                        const ValidateOptions& opts = {});

// Flags forbidden actions outside 1..actions_at(q), agents outside 1..n,
// unknown states, and (state, agent) pairs left without a legal action.
std::vector<std::string> validate_norm(const Model& model,
                                       const NormativeSystem& norm);

// The unique state the transition spec resolves a full profile to.
// Throws std::invalid_argument on a malformed profile and
// std::runtime_error if the profile is unresolved (impossible on a
// validated model).
int successor(const Model& model, int q, const Profile& full);

// C(k + parts - 1, parts - 1), saturating at UINT64_MAX on overflow:
// the number of count vectors of the given length summing to k.
std::uint64_t count_profiles(int parts, Count k);

std::string profile_to_string(const Profile& p);

}  // namespace nchatl

#endif
