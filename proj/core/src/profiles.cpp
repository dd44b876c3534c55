#include "nchatl/profiles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nchatl {

namespace {

void profiles_rec(Profile& p, size_t pos, Count remaining,
                  std::vector<Profile>& out) {
  if (pos + 1 == p.size()) {
    p[pos] = remaining;
    out.push_back(p);
    p[pos] = 0;
    return;
  }
  for (Count c = 0; c <= remaining; ++c) {
    p[pos] = c;
    profiles_rec(p, pos + 1, remaining - c, out);
  }
  p[pos] = 0;
}

// Largest action count the 2^m subset sweep accepts.
constexpr int kMaxSubsetActions = 22;

// Bit i-1 set iff the rule counts agent-action pair (x, i).
std::uint64_t rule_mask(const NormativeSystem& norm, int q, int agent, int m,
                        LegalCountRule rule) {
  std::uint64_t forbidden = 0;
  for (int act : norm.forbidden(q, agent))
    if (act >= 1 && act <= m) forbidden |= std::uint64_t{1} << (act - 1);
  std::uint64_t all = m >= 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << m) - 1;
  return rule == LegalCountRule::PermittedInside ? (all & ~forbidden)
                                                 : forbidden;
}

}  // namespace

std::vector<Profile> partial_profiles(const Model& model, int q, Count k) {
  const int m = model.actions_at(q);
  if (k < 0) throw std::invalid_argument("coalition size must be >= 0");
  std::vector<Profile> out;
  Profile p(static_cast<size_t>(m), 0);
  profiles_rec(p, 0, k, out);
  return out;
}

bool profile_leq(const Profile& f, const Profile& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("profile length mismatch");
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] > g[i]) return false;
  return true;
}

Profile profile_sum(const Profile& f, const Profile& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("profile length mismatch");
  Profile out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = f[i] + g[i];
  return out;
}

int legal_count(const Model& model, const NormativeSystem& norm, int q,
                const ActionSubset& e, const Coalition& a,
                LegalCountRule rule) {
  const int m = model.actions_at(q);
  std::uint64_t emask = 0;
  for (int act : e) {
    if (act < 1 || act > m)
      throw std::invalid_argument("action subset member out of range");
    emask |= std::uint64_t{1} << (act - 1);
  }
  int count = 0;
  for (int x : a)
    if (rule_mask(norm, q, x, m, rule) & emask) ++count;
  return count;
}

bool hall_condition(const Model& model, const NormativeSystem& norm, int q,
                    const Profile& f2, const Coalition& members,
                    LegalCountRule rule) {
  const int m = model.actions_at(q);
  if (static_cast<int>(f2.size()) != m)
    throw std::invalid_argument("profile length mismatch");
  if (m > kMaxSubsetActions)
    throw std::runtime_error(
        "action count too large for the subset feasibility check");

  std::vector<std::uint64_t> masks;
  masks.reserve(members.size());
  for (int x : members) masks.push_back(rule_mask(norm, q, x, m, rule));

  const std::uint64_t top = std::uint64_t{1} << m;
  for (std::uint64_t e = 1; e < top; ++e) {
    Count committed = 0;
    for (std::uint64_t bits = e; bits; bits &= bits - 1)
      committed += f2[static_cast<size_t>(std::countr_zero(bits))];
    if (committed == 0) continue;
    Count legal = 0;
    for (std::uint64_t mk : masks)
      if (mk & e) ++legal;
    if (legal < committed) return false;
  }
  return true;
}

ProfileEngine::ProfileEngine(const Model& model, const NormativeSystem& norm,
                             LegalCountRule rule)
    : model_(&model), norm_(&norm), rule_(rule) {}

const std::vector<Profile>& ProfileEngine::compliant(int q,
                                                     const Coalition& compliance,
                                                     const Coalition& acting) {
  const int m = model_->actions_at(q);
  const Coalition constrained = coalition_intersect(compliance, acting);
  const int free_size =
      static_cast<int>(acting.size() - constrained.size());

  Key key;
  key.state = q;
  key.free_size = free_size;
  for (int x : constrained)
    key.permitted_masks.push_back(
        rule_mask(*norm_, q, x, m, LegalCountRule::PermittedInside));
  std::sort(key.permitted_masks.begin(), key.permitted_masks.end());

  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  // Feasible count vectors for the constrained agents.
  std::vector<Profile> feasible;
  if (constrained.empty()) {
    feasible.push_back(Profile(static_cast<size_t>(m), 0));
  } else {
    if (m > kMaxSubsetActions)
      throw std::runtime_error(
          "action count too large for the subset feasibility check");
    std::vector<std::uint64_t> masks;
    for (int x : constrained)
      masks.push_back(rule_mask(*norm_, q, x, m, rule_));
    const std::uint64_t top = std::uint64_t{1} << m;
    std::vector<Count> legal(static_cast<size_t>(top), 0);
    for (std::uint64_t e = 1; e < top; ++e)
      for (std::uint64_t mk : masks)
        if (mk & e) ++legal[static_cast<size_t>(e)];

    std::vector<Count> committed(static_cast<size_t>(top), 0);
    for (const Profile& f2 :
         partial_profiles(*model_, q, static_cast<Count>(constrained.size()))) {
      bool ok = true;
      for (std::uint64_t e = 1; e < top && ok; ++e) {
        committed[static_cast<size_t>(e)] =
            committed[static_cast<size_t>(e & (e - 1))] +
            f2[static_cast<size_t>(std::countr_zero(e))];
        ok = legal[static_cast<size_t>(e)] >= committed[static_cast<size_t>(e)];
      }
      if (ok) feasible.push_back(f2);
    }
  }

  // Minkowski-sum with the unconstrained part and canonicalize.
  std::vector<Profile> result;
  for (const Profile& f1 : partial_profiles(*model_, q, free_size))
    for (const Profile& f2 : feasible) result.push_back(profile_sum(f1, f2));
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());

  return cache_.emplace(std::move(key), std::move(result)).first->second;
}

ProfileSet compliant_profiles(const Model& model, const NormativeSystem& norm,
                              const Coalition& compliance, int q,
                              const Coalition& acting, LegalCountRule rule) {
  ProfileEngine engine(model, norm, rule);
  ProfileSet out;
  out.state = q;
  out.compliance = compliance;
  out.acting = acting;
  out.profiles = engine.compliant(q, compliance, acting);
  return out;
}

}  // namespace nchatl
