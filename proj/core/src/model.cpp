#include "nchatl/model.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nchatl {

Coalition make_coalition(std::vector<int> agents) {
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  return agents;
}

Coalition full_coalition(int n) {
  Coalition c(static_cast<size_t>(std::max(n, 0)));
  std::iota(c.begin(), c.end(), 1);
  return c;
}

Coalition coalition_union(const Coalition& a, const Coalition& b) {
  Coalition out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Coalition coalition_intersect(const Coalition& a, const Coalition& b) {
  Coalition out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

Coalition coalition_diff(const Coalition& a, const Coalition& b) {
  Coalition out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

Coalition coalition_complement(const Coalition& a, int n) {
  return coalition_diff(full_coalition(n), a);
}

bool coalition_contains(const Coalition& c, int agent) {
  return std::binary_search(c.begin(), c.end(), agent);
}

int Model::state_index(std::string_view name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Model::has_proposition(std::string_view p) const {
  return std::find(propositions.begin(), propositions.end(), p) !=
         propositions.end();
}

bool Model::label_contains(int q, std::string_view p) const {
  const auto& lab = states[static_cast<size_t>(q)].label;
  return std::find(lab.begin(), lab.end(), p) != lab.end();
}

void NormativeSystem::add(int state, int agent, int action) {
  auto& v = forbids[{state, agent}];
  auto it = std::lower_bound(v.begin(), v.end(), action);
  if (it == v.end() || *it != action) v.insert(it, action);
}

const std::vector<int>& NormativeSystem::forbidden(int state, int agent) const {
  static const std::vector<int> empty;
  auto it = forbids.find({state, agent});
  return it == forbids.end() ? empty : it->second;
}

bool NormativeSystem::is_forbidden(int state, int agent, int action) const {
  const auto& v = forbidden(state, agent);
  return std::binary_search(v.begin(), v.end(), action);
}

NormativeSystem restrict_norm(const NormativeSystem& norm, const Coalition& c) {
  NormativeSystem out;
  for (const auto& [key, actions] : norm.forbids)
    if (coalition_contains(c, key.second)) out.forbids.emplace(key, actions);
  return out;
}

std::uint64_t count_profiles(int parts, Count k) {
  if (parts <= 0) return k == 0 ? 1 : 0;
  if (k < 0) return 0;
  // C(k + parts - 1, parts - 1) with saturation.
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  std::uint64_t nn = static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(parts) - 1;
  std::uint64_t rr = static_cast<std::uint64_t>(parts) - 1;
  if (rr > nn - rr) rr = nn - rr;
  for (std::uint64_t i = 1; i <= rr; ++i) {
    std::uint64_t factor = nn - rr + i;
    if (result > cap / factor) return cap;
    result = result * factor / i;
  }
  return result;
}

std::string profile_to_string(const Profile& p) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  os << ')';
  return os.str();
}

namespace {

bool guard_matches(const Guard& g, const Profile& p) {
  Count c = p[static_cast<size_t>(g.action - 1)];
  return g.min <= c && c <= g.max;
}

bool rule_matches(const GuardedRule& r, const Profile& p) {
  for (const auto& g : r.guards)
    if (!guard_matches(g, p)) return false;
  return true;
}

// Resolves a profile against a spec; -1 when nothing matches.
int resolve(const TransitionSpec& t, const Profile& p) {
  if (t.form == TransitionSpec::Form::Table) {
    for (const auto& e : t.table)
      if (e.profile == p) return e.target;
  } else {
    for (const auto& r : t.rules)
      if (rule_matches(r, p)) return r.target;
  }
  return t.default_target.value_or(-1);
}

template <typename Fn>
bool for_each_profile_rec(Profile& p, size_t pos, Count remaining, Fn& fn) {
  if (pos + 1 == p.size()) {
    p[pos] = remaining;
    bool keep = fn(static_cast<const Profile&>(p));
    p[pos] = 0;
    return keep;
  }
  for (Count c = 0; c <= remaining; ++c) {
    p[pos] = c;
    if (!for_each_profile_rec(p, pos + 1, remaining - c, fn)) {
      p[pos] = 0;
      return false;
    }
  }
  p[pos] = 0;
  return true;
}

// Enumerates all length-m count vectors summing to k in ascending
// lexicographic order, invoking fn on each.  Returns false if fn ever
// returns false (early stop).
template <typename Fn>
bool for_each_profile(int m, Count k, Fn&& fn) {
  if (m <= 0) {
    Profile empty;
    return k != 0 || fn(static_cast<const Profile&>(empty));
  }
  Profile p(static_cast<size_t>(m), 0);
  return for_each_profile_rec(p, 0, k, fn);
}

struct BoundaryCells {
  // Sorted distinct cut points delimiting elementary intervals per action.
  std::vector<std::vector<Count>> cuts;
};

// Checks rule coverage symbolically: guard boundaries cut each action's
// count axis into elementary intervals; within one product cell every
// profile matches the same rule set, so testing one representative per
// reachable cell suffices.
void check_coverage_symbolic(const Model& model, int q,
                             const ValidateOptions& opts,
                             std::vector<std::string>& out) {
  const State& st = model.states[static_cast<size_t>(q)];
  const int m = st.action_count;
  const Count n = model.agent_count;

  std::vector<std::set<Count>> cutset(static_cast<size_t>(m));
  for (int a = 0; a < m; ++a) {
    cutset[static_cast<size_t>(a)].insert(0);
    cutset[static_cast<size_t>(a)].insert(n + 1);
  }
  for (const auto& r : st.transitions.rules)
    for (const auto& g : r.guards) {
      auto& s = cutset[static_cast<size_t>(g.action - 1)];
      s.insert(std::clamp<Count>(g.min, 0, n + 1));
      s.insert(std::clamp<Count>(g.max + 1, 0, n + 1));
    }

  // cuts[a] = c0 < c1 < ... ; elementary intervals are [c_i, c_{i+1}-1].
  std::vector<std::vector<Count>> cuts;
  std::uint64_t cells = 1;
  for (auto& s : cutset) {
    cuts.emplace_back(s.begin(), s.end());
    std::uint64_t intervals = cuts.back().size() - 1;
    if (cells > opts.coverage_cell_budget / std::max<std::uint64_t>(intervals, 1)) {
      out.push_back("state '" + st.name +
                    "': rule coverage check exceeded its cell budget; add a "
                    "default target or simplify the guards");
      return;
    }
    cells *= intervals;
  }

  // Walk the cell grid; for each cell pick the profile with every free
  // coordinate at its interval minimum and the remainder pushed into the
  // slack of later coordinates — any profile in the cell works since all
  // share matching behaviour.
  std::vector<size_t> idx(static_cast<size_t>(m), 0);
  for (;;) {
    Count lo_sum = 0, hi_sum = 0;
    for (int a = 0; a < m; ++a) {
      const auto& c = cuts[static_cast<size_t>(a)];
      lo_sum += c[idx[static_cast<size_t>(a)]];
      hi_sum += c[idx[static_cast<size_t>(a)] + 1] - 1;
    }
    if (lo_sum <= n && n <= hi_sum) {
      // Construct a representative summing to n.
      Profile rep(static_cast<size_t>(m));
      Count rem = n;
      for (int a = 0; a < m; ++a) {
        const auto& c = cuts[static_cast<size_t>(a)];
        rep[static_cast<size_t>(a)] = c[idx[static_cast<size_t>(a)]];
        rem -= rep[static_cast<size_t>(a)];
      }
      for (int a = 0; a < m && rem > 0; ++a) {
        const auto& c = cuts[static_cast<size_t>(a)];
        Count room = (c[idx[static_cast<size_t>(a)] + 1] - 1) -
                     rep[static_cast<size_t>(a)];
        Count add = std::min(room, rem);
        rep[static_cast<size_t>(a)] += add;
        rem -= add;
      }
      if (resolve(st.transitions, rep) < 0) {
        out.push_back("state '" + st.name + "': no rule matches profile " +
                      profile_to_string(rep) + " and no default is given");
        return;  // one witness per state is enough
      }
    }
    // Advance the mixed-radix cell index.
    int a = 0;
    for (; a < m; ++a) {
      if (++idx[static_cast<size_t>(a)] <
          cuts[static_cast<size_t>(a)].size() - 1)
        break;
      idx[static_cast<size_t>(a)] = 0;
    }
    if (a == m) break;
  }
}

void check_coverage(const Model& model, int q, const ValidateOptions& opts,
                    std::vector<std::string>& out) {
  const State& st = model.states[static_cast<size_t>(q)];
  if (st.transitions.default_target.has_value()) return;

  const std::uint64_t total =
      count_profiles(st.action_count, model.agent_count);
  if (st.transitions.form == TransitionSpec::Form::Table ||
      total <= opts.exhaustive_threshold) {
    bool ok = for_each_profile(
        st.action_count, model.agent_count, [&](const Profile& p) {
          if (resolve(st.transitions, p) < 0) {
            out.push_back("state '" + st.name + "': no rule matches profile " +
                          profile_to_string(p) + " and no default is given");
            return false;
          }
          return true;
        });
    (void)ok;
  } else {
    check_coverage_symbolic(model, q, opts, out);
  }
}

}  // namespace

std::vector<std::string> validate_model(const Model& model,
                                        const ValidateOptions& opts) {
  std::vector<std::string> out;
  if (model.agent_count < 1)
    out.push_back("agent count must be at least 1, got " +
                  std::to_string(model.agent_count));
  if (model.states.empty()) out.push_back("model has no states");

  {
    std::set<std::string> seen;
    for (const auto& st : model.states)
      if (!seen.insert(st.name).second)
        out.push_back("duplicate state name '" + st.name + "'");
    std::set<std::string> props(model.propositions.begin(),
                                model.propositions.end());
    if (props.size() != model.propositions.size())
      out.push_back("duplicate proposition names");
    for (const auto& st : model.states)
      for (const auto& p : st.label)
        if (!props.count(p))
          out.push_back("state '" + st.name + "': label uses undeclared proposition '" +
                        p + "'");
  }

  const int ns = model.num_states();
  for (int q = 0; q < ns; ++q) {
    const State& st = model.states[static_cast<size_t>(q)];
    const std::string where = "state '" + st.name + "'";
    if (st.action_count < 1) {
      out.push_back(where + ": action count must be at least 1");
      continue;
    }
    const auto& t = st.transitions;
    auto check_target = [&](int tgt) {
      if (tgt < 0 || tgt >= ns)
        out.push_back(where + ": transition target index " +
                      std::to_string(tgt) + " is out of range");
    };
    if (t.default_target) check_target(*t.default_target);
    if (t.form == TransitionSpec::Form::Table) {
      std::set<Profile> seen;
      for (const auto& e : t.table) {
        check_target(e.target);
        if (static_cast<int>(e.profile.size()) != st.action_count) {
          out.push_back(where + ": table profile " +
                        profile_to_string(e.profile) + " has wrong arity");
          continue;
        }
        Count sum = 0;
        bool neg = false;
        for (Count c : e.profile) {
          if (c < 0) neg = true;
          sum += c;
        }
        if (neg)
          out.push_back(where + ": table profile " +
                        profile_to_string(e.profile) + " has a negative count");
        else if (sum != model.agent_count)
          out.push_back(where + ": table profile " +
                        profile_to_string(e.profile) + " sums to " +
                        std::to_string(sum) + ", expected " +
                        std::to_string(model.agent_count));
        if (!seen.insert(e.profile).second)
          out.push_back(where + ": duplicate table profile " +
                        profile_to_string(e.profile));
      }
    } else {
      for (const auto& r : t.rules) {
        check_target(r.target);
        for (const auto& g : r.guards) {
          if (g.action < 1 || g.action > st.action_count)
            out.push_back(where + ": guard refers to action " +
                          std::to_string(g.action) + ", valid range is 1.." +
                          std::to_string(st.action_count));
          if (g.min < 0 || g.max < g.min || g.min > model.agent_count)
            out.push_back(where + ": guard on action " +
                          std::to_string(g.action) + " has an empty or " +
                          "out-of-range interval [" + std::to_string(g.min) +
                          "," + std::to_string(g.max) + "]");
        }
      }
    }
  }

  // Coverage only once the structure above is sound.
  if (out.empty())
    for (int q = 0; q < ns; ++q) check_coverage(model, q, opts, out);
  return out;
}

std::vector<std::string> validate_norm(const Model& model,
                                       const NormativeSystem& norm) {
  std::vector<std::string> out;
  const int ns = model.num_states();
  for (const auto& [key, actions] : norm.forbids) {
    auto [q, agent] = key;
    if (q < 0 || q >= ns) {
      out.push_back("norm entry refers to state index " + std::to_string(q) +
                    ", which does not exist");
      continue;
    }
    const State& st = model.states[static_cast<size_t>(q)];
    if (agent < 1 || agent > model.agent_count)
      out.push_back("norm entry at state '" + st.name + "' refers to agent " +
                    std::to_string(agent) + ", valid range is 1.." +
                    std::to_string(model.agent_count));
    for (int act : actions)
      if (act < 1 || act > st.action_count)
        out.push_back("norm entry at state '" + st.name + "' for agent " +
                      std::to_string(agent) + " forbids action " +
                      std::to_string(act) + ", valid range is 1.." +
                      std::to_string(st.action_count));
    if (agent >= 1 && agent <= model.agent_count) {
      bool has_legal = false;
      for (int act = 1; act <= st.action_count && !has_legal; ++act)
        has_legal = !std::binary_search(actions.begin(), actions.end(), act);
      if (!has_legal)
        out.push_back("norm leaves agent " + std::to_string(agent) +
                      " with no legal action at state '" + st.name + "'");
    }
  }
  return out;
}

int successor(const Model& model, int q, const Profile& full) {
  const State& st = model.states[static_cast<size_t>(q)];
  if (static_cast<int>(full.size()) != st.action_count)
    throw std::invalid_argument("profile arity mismatch at state '" + st.name +
                                "'");
  Count sum = 0;
  for (Count c : full) {
    if (c < 0) throw std::invalid_argument("negative count in profile");
    sum += c;
  }
  if (sum != model.agent_count)
    throw std::invalid_argument("profile sums to " + std::to_string(sum) +
                                ", expected " +
                                std::to_string(model.agent_count));
  int tgt = resolve(st.transitions, full);
  if (tgt < 0)
    throw std::runtime_error("no transition for profile " +
                             profile_to_string(full) + " at state '" +
                             st.name + "'");
  return tgt;
}

}  // namespace nchatl
