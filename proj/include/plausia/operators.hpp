#pragma once

#include "plausia/model.hpp"

#include <vector>

namespace plausia {

/// Iteration history of a fixpoint run; the sequence is subset-decreasing
/// and never longer than |W| steps.
struct OperatorTrace {
    Event initial;
    std::vector<Event> steps;
    Event result;

    int iterations() const { return static_cast<int>(steps.size()); }
};

/// K_i(E) = { w | Pi_i(w) subseteq E }.
Event knows(const EpistemicModel& m, int agent, Event e);

/// K(E) = intersection of K_i(E) over all agents.
Event everyone_knows(const EpistemicModel& m, Event e);

bool self_evident_for(const EpistemicModel& m, int agent, Event e);
bool self_evident(const EpistemicModel& m, Event e);

/// Largest self-evident subset of E, via Z <- Z & K(Z) from above.
Event common_knowledge(const EpistemicModel& m, Event e, OperatorTrace* trace = nullptr);

/// B_i^d(E) = { w | Pl_i(E | Pi_i(w)) >= d }. States with an undefined
/// posterior are excluded, and so are incomparable-to-d posteriors ("not
/// >= d" includes incomparability in a partial order).
Event d_believes(const EpistemicModel& m, int agent, const Value& d, Event e);

/// B^d(E) = intersection over agents.
Event mutual_belief(const EpistemicModel& m, const Value& d, Event e);

bool d_self_evident_for(const EpistemicModel& m, int agent, const Value& d, Event e);
bool d_self_evident(const EpistemicModel& m, const Value& d, Event e);

/// Largest d-self-evident subset of B^d(E): Z0 = B^d(E), Z <- Z & B^d(Z).
/// Throws MonotonicityError if B^d turns out non-monotone along the chain
/// (possible only when a table measure breaks CP3).
Event common_belief(const EpistemicModel& m, const Value& d, Event e,
                    OperatorTrace* trace = nullptr);

}  // namespace plausia
