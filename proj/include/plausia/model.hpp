#pragma once

#include "plausia/errors.hpp"
#include "plausia/rational.hpp"
#include "plausia/report.hpp"
#include "plausia/values.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace plausia {

/// An event is a set of states, held as a bitmask over state indices.
/// State spaces are capped at 16 states, so uint32 is plenty.
struct Event {
    std::uint32_t bits = 0;

    constexpr Event() = default;
    constexpr explicit Event(std::uint32_t b) : bits(b) {}

    static constexpr Event none() { return Event(0); }
    static constexpr Event universe(int n) { return Event((n >= 32) ? ~0u : ((1u << n) - 1u)); }
    static constexpr Event single(int state) { return Event(1u << state); }

    bool empty() const { return bits == 0; }
    int count() const { return __builtin_popcount(bits); }
    bool contains(int state) const { return (bits >> state) & 1u; }
    bool subset_of(Event o) const { return (bits & ~o.bits) == 0; }

    Event operator&(Event o) const { return Event(bits & o.bits); }
    Event operator|(Event o) const { return Event(bits | o.bits); }
    Event operator-(Event o) const { return Event(bits & ~o.bits); }
    Event complement(int n) const { return Event(universe(n).bits & ~bits); }

    bool operator==(Event o) const { return bits == o.bits; }
    bool operator!=(Event o) const { return bits != o.bits; }
    bool operator<(Event o) const { return bits < o.bits; }
};

/// Ordered set of distinct state labels; indices 0..size-1 are the
/// canonical encoding everywhere else.
class StateSpace {
public:
    static constexpr int kDefaultCap = 12;
    static constexpr int kHardCap = 16;

    StateSpace() = default;
    explicit StateSpace(std::vector<std::string> names, int cap = kDefaultCap);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view label) const;
    Event universe() const { return Event::universe(size()); }

    /// Canonical event text: "{w1 w3}" with members in index order.
    std::string format_event(Event e) const;
    /// Parses "{w1 w3}" (the braces are required).
    std::optional<Event> parse_event(std::string_view text) const;

    bool operator==(const StateSpace& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

/// Pairwise-disjoint nonempty blocks covering the state space.
struct Partition {
    std::vector<Event> blocks;
    std::vector<int> block_index;  // state -> position in blocks

    static Partition from_blocks(std::vector<Event> blocks, int n_states);
    Event block_of(int state) const { return blocks[block_index[state]]; }
    bool operator==(const Partition& o) const { return blocks == o.blocks; }
};

// --- Measures -------------------------------------------------------------
//
// Three representations cover everything in scope:
//   PriorMeasure        one rational prior; Pl(E|F) = prior(E&F)/prior(F)
//   ProductPriorMeasure two rational priors; Pl(E|F) = (p(E|F), q(E|F))
//   TableMeasure        a PriorMeasure plus finitely many (E|F) overrides
//
// The conditioning family F' is derived from the measure: events of
// positive prior (both components positive for the product case).

struct PriorMeasure {
    std::vector<Rational> prior;
    // Integer fast path: prior[i] == weights[i]/weight_denom when
    // weight_denom != 0. Sweeps over thousands of models live on this.
    std::int64_t weight_denom = 0;
    std::vector<std::int64_t> weights;

    static PriorMeasure make(std::vector<Rational> prior);
    Rational mass(Event e) const;
    bool positive(Event e) const;
};

struct ProductPriorMeasure {
    PriorMeasure p;
    PriorMeasure q;

    static ProductPriorMeasure make(std::vector<Rational> p, std::vector<Rational> q);
};

struct TableOverride {
    Event event;
    Event given;
    Value value;

    bool operator==(const TableOverride& o) const {
        return event == o.event && given == o.given && value == o.value;
    }
};

struct TableMeasure {
    PriorMeasure base;
    std::vector<TableOverride> overrides;
};

using Measure = std::variant<PriorMeasure, ProductPriorMeasure, TableMeasure>;

/// F' membership: is F an event that can be learned under this measure?
bool learnable(const Measure& m, Event f);

/// Pl(E | F); nullopt iff F is not in F'. The undefined marker is distinct
/// from bottom by construction.
std::optional<Value> cond(const Measure& m, Event e, Event f);

bool measures_equal(const Measure& a, const Measure& b);

/// Explicit view of F x F': the full algebra is the powerset of W, the
/// conditioning family is materialised as a membership table.
class PopperAlgebra {
public:
    PopperAlgebra() = default;
    static PopperAlgebra from_measure(const Measure& m, int n_states);

    int n_states() const { return n_; }
    bool contains(Event f) const { return member_[f.bits]; }
    std::vector<Event> conditioning_events() const;

private:
    int n_ = 0;
    std::vector<char> member_;
};

// --- The model ------------------------------------------------------------

struct EpistemicModel {
    std::string name;
    Domain domain;
    StateSpace states;
    std::vector<std::string> agents;
    std::vector<Partition> partitions;          // one per agent
    bool common_prior_declared = false;
    std::vector<Measure> measures;              // size 1 when declared common
    std::map<std::string, Event> named_events;  // from `event` lines

    int n_states() const { return states.size(); }
    int n_agents() const { return static_cast<int>(agents.size()); }
    Event universe() const { return states.universe(); }

    const Measure& measure(int agent) const {
        return measures.size() == 1 ? measures[0] : measures[agent];
    }
    Event block(int agent, int state) const { return partitions[agent].block_of(state); }

    std::optional<int> agent_index(std::string_view label) const;
    int require_agent(int agent) const;  // range check; returns agent

    /// True when a single prior is shared, whether declared or because the
    /// per-agent measures happen to be structurally equal.
    bool common_prior() const;

    bool operator==(const EpistemicModel& o) const;
};

/// Posterior belief Pl(E | Pi_i(w)); nullopt propagates from cond.
std::optional<Value> posterior(const EpistemicModel& m, int agent, int state, Event e);

/// Structural validation: partition well-formedness, measure normalisation,
/// learnable information sets, Popper superset closure, measure values in
/// the domain, and finite additivity of table overrides. Report-based, in a
/// fixed order; nothing throws.
std::vector<CheckReport> validate_model(const EpistemicModel& m);

inline bool validation_clean(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (r.failed()) return false;
    return true;
}

}  // namespace plausia
