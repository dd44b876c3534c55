// The model-checking engine: one-step enforceability and the recursive
// state-set evaluation with fixed points.
//
// Truth is relative to a compliance coalition A: whenever a coalition
// acts, the agents it shares with A choose only actions the norm permits
// them.  The compliance operator [A'] φ re-evaluates φ with A replaced by
// A', leaving the ambient coalition behind entirely.

#ifndef NCHATL_SEMANTICS_HPP
#define NCHATL_SEMANTICS_HPP

#include <string>
#include <vector>

#include "nchatl/formula.hpp"
#include "nchatl/model.hpp"
#include "nchatl/profiles.hpp"

namespace nchatl {

// Subset of a model's states as a membership vector.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int num_states) : bits_(static_cast<size_t>(num_states), 0) {}
  static StateSet all(int num_states);

  int size() const { return static_cast<int>(bits_.size()); }
  bool contains(int q) const { return bits_[static_cast<size_t>(q)] != 0; }
  void insert(int q) { bits_[static_cast<size_t>(q)] = 1; }
  void erase(int q) { bits_[static_cast<size_t>(q)] = 0; }
  int count() const;
  bool empty() const { return count() == 0; }

  StateSet union_with(const StateSet& o) const;
  StateSet intersect(const StateSet& o) const;
  StateSet complement() const;
  bool subset_of(const StateSet& o) const;
  bool operator==(const StateSet& o) const { return bits_ == o.bits_; }

  // Member indices, ascending.
  std::vector<int> members() const;

 private:
  std::vector<char> bits_;
};

// Sorted names of the member states.
std::vector<std::string> state_names(const Model& model, const StateSet& s);

struct CheckContext {
  const Model* model = nullptr;
  const NormativeSystem* norm = nullptr;
  Coalition compliance;           // A
  ProfileEngine* engine = nullptr;  // bound to the same model and norm
};

// True iff the acting coalition has a one-step profile choice such that
// every completion by the remaining agents (those in the compliance
// coalition still obeying the norm) lands in target.
bool enforce(CheckContext& ctx, int q, const Coalition& acting,
             const StateSet& target);

// The exact set of states satisfying f.  Throws std::invalid_argument if
// validate_formula(model, f) reports problems.
StateSet mcheck(CheckContext& ctx, const Formula& f);

// q ∈ mcheck(ctx, f).
bool check_at(CheckContext& ctx, int q, const Formula& f);

}  // namespace nchatl

#endif
