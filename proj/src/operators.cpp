#include "plausia/operators.hpp"

#include "plausia/errors.hpp"

namespace plausia {

Event knows(const EpistemicModel& m, int agent, Event e) {
    m.require_agent(agent);
    Event out;
    for (const auto& b : m.partitions[agent].blocks)
        if (!b.empty() && b.subset_of(e)) out = out | b;
    return out;
}

Event everyone_knows(const EpistemicModel& m, Event e) {
    Event out = m.universe();
    for (int i = 0; i < m.n_agents(); ++i) out = out & knows(m, i, e);
    return out;
}

bool self_evident_for(const EpistemicModel& m, int agent, Event e) {
    return e.subset_of(knows(m, agent, e));
}

bool self_evident(const EpistemicModel& m, Event e) {
    for (int i = 0; i < m.n_agents(); ++i)
        if (!self_evident_for(m, i, e)) return false;
    return true;
}

Event common_knowledge(const EpistemicModel& m, Event e, OperatorTrace* trace) {
    Event z = e;
    if (trace) {
        trace->initial = e;
        trace->steps = {z};
    }
    for (;;) {
        Event next = z & everyone_knows(m, z);
        if (next == z) break;
        z = next;
        if (trace) trace->steps.push_back(z);
    }
    if (trace) trace->result = z;
    return z;
}

Event d_believes(const EpistemicModel& m, int agent, const Value& d, Event e) {
    m.require_agent(agent);
    if (!m.domain.contains(d))
        throw DomainMismatchError("threshold " + d.str() + " is not in domain " +
                                  m.domain.token());
    Event out;
    for (const auto& b : m.partitions[agent].blocks) {
        if (b.empty()) continue;
        auto v = cond(m.measure(agent), e, b);
        // Undefined posteriors and incomparable-to-d posteriors both fall
        // outside "P >= d".
        if (v && m.domain.geq(*v, d)) out = out | b;
    }
    return out;
}

Event mutual_belief(const EpistemicModel& m, const Value& d, Event e) {
    Event out = m.universe();
    for (int i = 0; i < m.n_agents(); ++i) out = out & d_believes(m, i, d, e);
    return out;
}

bool d_self_evident_for(const EpistemicModel& m, int agent, const Value& d, Event e) {
    return e.subset_of(d_believes(m, agent, d, e));
}

bool d_self_evident(const EpistemicModel& m, const Value& d, Event e) {
    for (int i = 0; i < m.n_agents(); ++i)
        if (!d_self_evident_for(m, i, d, e)) return false;
    return true;
}

Event common_belief(const EpistemicModel& m, const Value& d, Event e, OperatorTrace* trace) {
    Event z = mutual_belief(m, d, e);
    if (trace) {
        trace->initial = e;
        trace->steps = {z};
    }
    bool have_prev = false;
    Event prev_b;
    for (;;) {
        Event b = mutual_belief(m, d, z);
        // The iterates shrink, so CP3 must give B(Z_{n+1}) subseteq B(Z_n).
        // Prior-derived measures guarantee it; an explicit table can break
        // it, and then the fixpoint would be meaningless.
        if (have_prev && !b.subset_of(prev_b))
            throw MonotonicityError("mutual d-belief is not monotone at Z=" +
                                    m.states.format_event(z) + " (CP3 violation)");
        prev_b = b;
        have_prev = true;
        Event next = z & b;
        if (next == z) break;
        z = next;
        if (trace) trace->steps.push_back(z);
    }
    if (trace) trace->result = z;
    return z;
}

}  // namespace plausia
