#include "nchatl/semantics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nchatl {

StateSet StateSet::all(int num_states) {
  StateSet s(num_states);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  return s;
}

int StateSet::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

StateSet StateSet::union_with(const StateSet& o) const {
  StateSet out(*this);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= o.bits_[i];
  return out;
}

StateSet StateSet::intersect(const StateSet& o) const {
  StateSet out(*this);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= o.bits_[i];
  return out;
}

StateSet StateSet::complement() const {
  StateSet out(*this);
  for (auto& b : out.bits_) b = !b;
  return out;
}

bool StateSet::subset_of(const StateSet& o) const {
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_[i]) return false;
  return true;
}

std::vector<int> StateSet::members() const {
  std::vector<int> out;
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::string> state_names(const Model& model, const StateSet& s) {
  std::vector<std::string> out;
  for (int q : s.members())
    out.push_back(model.states[static_cast<size_t>(q)].name);
  std::sort(out.begin(), out.end());
  return out;
}

bool enforce(CheckContext& ctx, int q, const Coalition& acting,
             const StateSet& target) {
  const Coalition adversary =
      coalition_complement(acting, ctx.model->agent_count);
  const auto& own = ctx.engine->compliant(q, ctx.compliance, acting);
  const auto& rest = ctx.engine->compliant(q, ctx.compliance, adversary);
  for (const Profile& f_own : own) {
    bool all_land = true;
    for (const Profile& f_rest : rest) {
      if (!target.contains(successor(*ctx.model, q,
                                     profile_sum(f_own, f_rest)))) {
        all_land = false;
        break;
      }
    }
    if (all_land) return true;
  }
  return false;
}

namespace {

StateSet eval(CheckContext& ctx, const Formula& f) {
  const int ns = ctx.model->num_states();
  switch (f.kind) {
    case FormulaKind::Top:
      return StateSet::all(ns);
    case FormulaKind::Prop: {
      StateSet s(ns);
      for (int q = 0; q < ns; ++q)
        if (ctx.model->label_contains(q, f.prop)) s.insert(q);
      return s;
    }
    case FormulaKind::Not:
      return eval(ctx, f.kids[0]).complement();
    case FormulaKind::Or:
      return eval(ctx, f.kids[0]).union_with(eval(ctx, f.kids[1]));
    case FormulaKind::And:
      return eval(ctx, f.kids[0]).intersect(eval(ctx, f.kids[1]));
    case FormulaKind::Next: {
      StateSet target = eval(ctx, f.kids[0]);
      StateSet s(ns);
      for (int q = 0; q < ns; ++q)
        if (enforce(ctx, q, f.coalition, target)) s.insert(q);
      return s;
    }
    case FormulaKind::Globally: {
      // Greatest fixed point: start from all states satisfying the body
      // and shrink to those that can stay inside forever.
      const StateSet body = eval(ctx, f.kids[0]);
      StateSet current = StateSet::all(ns);
      for (;;) {
        StateSet next(ns);
        for (int q = 0; q < ns; ++q)
          if (body.contains(q) && enforce(ctx, q, f.coalition, current))
            next.insert(q);
        if (next == current) return current;
        current = next;
      }
    }
    case FormulaKind::Until: {
      // Least fixed point: start from the goal states and grow backwards
      // through body states that can push into the accumulated set.
      const StateSet body = eval(ctx, f.kids[0]);
      StateSet accumulated = eval(ctx, f.kids[1]);
      for (;;) {
        StateSet grown = accumulated;
        for (int q = 0; q < ns; ++q)
          if (!grown.contains(q) && body.contains(q) &&
              enforce(ctx, q, f.coalition, accumulated))
            grown.insert(q);
        if (grown == accumulated) return accumulated;
        accumulated = grown;
      }
    }
    case FormulaKind::Comply: {
      CheckContext inner = ctx;
      inner.compliance = f.coalition;
      return eval(inner, f.kids[0]);
    }
  }
  throw std::logic_error("unhandled formula kind");
}

}  // namespace

StateSet mcheck(CheckContext& ctx, const Formula& f) {
  auto problems = validate_formula(*ctx.model, f);
  if (!problems.empty()) throw std::invalid_argument(problems.front());
  return eval(ctx, f);
}

bool check_at(CheckContext& ctx, int q, const Formula& f) {
  if (q < 0 || q >= ctx.model->num_states())
    throw std::invalid_argument("state index out of range");
  return mcheck(ctx, f).contains(q);
}

}  // namespace nchatl
