// A scalable two-action coordination scenario: all agents split between
// two actions at the hub state; hitting a narrow band around an 80/20
// split satisfies both goals, wider bands satisfy one of them.  Used by
// the benchmarks and the scaling tests because the state count stays
// constant while the agent count grows.

#ifndef NCHATL_FAMILY_HPP
#define NCHATL_FAMILY_HPP

#include "nchatl/model.hpp"

namespace nchatl {

// Hub state "q0" with two actions plus outcome states "q_both" {p1,p2},
// "q_p1" {p1}, "q_p2" {p2}, "q_else" {}.  From the hub, with k agents on
// action 1: p1 requires k in [ceil(0.8 n), floor(0.9 n)], p2 requires
// n - k in [ceil(0.2 n), floor(0.6 n)]; outcome states loop to
// themselves.  Requires n >= 1.
Model coordination_model(int n);

// Forbids action 2 at the hub for agents 9 and 10.  Requires n >= 10.
NormativeSystem coordination_norm(const Model& model);

// Forbids action 2 at the hub for agents 7 and 8, and action 1 for
// agent 9.  Requires n >= 9.
NormativeSystem choice_norm(const Model& model);

}  // namespace nchatl

#endif
