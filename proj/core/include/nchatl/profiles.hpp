// Partial-profile enumeration and computation of the compliant profile
// sets a coalition can realize at a state while the agents inside the
// compliance coalition respect the norm.
//
// The core characterization: a count vector F2 over the constrained agents
// M = A ∩ B is realizable iff for every action subset E, the number of
// agents in M with a permitted action inside E is at least the number of
// agents F2 commits to E (a Hall-style marriage condition).  Unconstrained
// agents (B \ A) contribute any count vector of matching size, so the full
// set is a coordinate-wise Minkowski sum of the two parts.

#ifndef NCHATL_PROFILES_HPP
#define NCHATL_PROFILES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "nchatl/model.hpp"

namespace nchatl {

// Subset of the actions 1..m at a state, as sorted indices.
using ActionSubset = std::vector<int>;

// All length-𝔸(q) count vectors summing to k, ascending lexicographic.
std::vector<Profile> partial_profiles(const Model& model, int q, Count k);

// Coordinate-wise order and sum.  Both throw std::invalid_argument on
// length mismatch (profiles from different states must not mix).
bool profile_leq(const Profile& f, const Profile& g);
Profile profile_sum(const Profile& f, const Profile& g);

// Selects which per-agent test `legal_count` applies.  PermittedInside is
// the correct semantics (the agent has a permitted action within E);
// ForbiddenMeets is a deliberately planted wrong variant (the agent's
// forbidden set intersects E) kept solely so the oracle suite can prove it
// detects the difference.
enum class LegalCountRule { PermittedInside, ForbiddenMeets };

// |{x ∈ A : E \ forbidden(q,x) ≠ ∅}| under PermittedInside.
int legal_count(const Model& model, const NormativeSystem& norm, int q,
                const ActionSubset& e, const Coalition& a,
                LegalCountRule rule = LegalCountRule::PermittedInside);

// True iff every action subset E satisfies
//   legal_count(q, E, members) ≥ Σ_{i∈E} f2[i-1].
bool hall_condition(const Model& model, const NormativeSystem& norm, int q,
                    const Profile& f2, const Coalition& members,
                    LegalCountRule rule = LegalCountRule::PermittedInside);

struct ProfileSet {
  int state = -1;
  Coalition compliance;  // A
  Coalition acting;      // B
  std::vector<Profile> profiles;  // ascending lexicographic, duplicate-free
};

// Computes and memoizes compliant profile sets for one (model, norm)
// pair.  Two (q, B) queries share a cache entry when the free part |B\A|
// matches and the constrained agents have the same multiset of per-agent
// permitted-action sets at q.
class ProfileEngine {
 public:
  ProfileEngine(const Model& model, const NormativeSystem& norm,
                LegalCountRule rule = LegalCountRule::PermittedInside);

  const Model& model() const { return *model_; }
  const NormativeSystem& norm() const { return *norm_; }
  LegalCountRule rule() const { return rule_; }

  // The set of count vectors coalition B can realize at q while agents in
  // compliance ∩ B obey the norm.  Returned by reference into the cache.
  const std::vector<Profile>& compliant(int q, const Coalition& compliance,
                                        const Coalition& acting);

 private:
  struct Key {
    int state;
    int free_size;
    std::vector<std::uint64_t> permitted_masks;  // sorted, one per agent
    bool operator<(const Key& o) const {
      if (state != o.state) return state < o.state;
      if (free_size != o.free_size) return free_size < o.free_size;
      return permitted_masks < o.permitted_masks;
    }
  };

  const Model* model_;
  const NormativeSystem* norm_;
  LegalCountRule rule_;
  std::map<Key, std::vector<Profile>> cache_;
};

// One-shot convenience wrapper around ProfileEngine.
ProfileSet compliant_profiles(const Model& model, const NormativeSystem& norm,
                              const Coalition& compliance, int q,
                              const Coalition& acting,
                              LegalCountRule rule = LegalCountRule::PermittedInside);

}  // namespace nchatl

#endif
