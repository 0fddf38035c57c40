#include "plausia/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace plausia {

// --- StateSpace -------------------------------------------------------------

StateSpace::StateSpace(std::vector<std::string> names, int cap) {
    if (names.empty()) throw Error("state space must be non-empty");
    cap = std::min(cap, kHardCap);
    if (static_cast<int>(names.size()) > cap)
        throw Error("state space exceeds the cap of " + std::to_string(cap) + " states");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw Error("empty state label");
        if (!seen.insert(n).second) throw Error("duplicate state label: " + n);
    }
    names_ = std::move(names);
}

std::optional<int> StateSpace::index_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == label) return i;
    return std::nullopt;
}

std::string StateSpace::format_event(Event e) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if (!e.contains(i)) continue;
        if (!first) out += " ";
        first = false;
        out += names_[i];
    }
    out += "}";
    return out;
}

std::optional<Event> StateSpace::parse_event(std::string_view text) const {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
    text = text.substr(1, text.size() - 2);
    Event e;
    std::istringstream is{std::string(text)};
    std::string label;
    while (is >> label) {
        auto idx = index_of(label);
        if (!idx) return std::nullopt;
        e = e | Event::single(*idx);
    }
    return e;
}

// --- Partition ---------------------------------------------------------------

Partition Partition::from_blocks(std::vector<Event> blocks, int n_states) {
    Partition p;
    p.blocks = std::move(blocks);
    p.block_index.assign(n_states, -1);
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (int w = 0; w < n_states; ++w)
            if (p.blocks[b].contains(w) && p.block_index[w] < 0)
                p.block_index[w] = static_cast<int>(b);
    // Unassigned states point at a synthetic empty block so lookups stay
    // total even for malformed partitions; validate_model reports those.
    for (int w = 0; w < n_states; ++w) {
        if (p.block_index[w] < 0) {
            p.blocks.push_back(Event::none());
            for (int u = 0; u < n_states; ++u)
                if (p.block_index[u] < 0) p.block_index[u] = static_cast<int>(p.blocks.size()) - 1;
            break;
        }
    }
    return p;
}

// --- Measures -----------------------------------------------------------------

PriorMeasure PriorMeasure::make(std::vector<Rational> prior) {
    PriorMeasure m;
    m.prior = std::move(prior);
    // Common-denominator integer weights; conditionals in hot sweeps then
    // cost two integer sums and one rational normalisation.
    BigInt lcm = 1;
    for (const auto& r : m.prior) lcm = boost::multiprecision::lcm(lcm, denominator(r));
    if (auto den = to_int64(lcm); den && *den > 0 && *den < (std::int64_t{1} << 32)) {
        bool ok = true;
        std::vector<std::int64_t> ws;
        ws.reserve(m.prior.size());
        for (const auto& r : m.prior) {
            BigInt w = numerator(r) * (lcm / denominator(r));
            auto wi = to_int64(w);
            if (!wi || *wi < 0 || *wi > *den) {
                ok = false;
                break;
            }
            ws.push_back(*wi);
        }
        if (ok) {
            m.weight_denom = *den;
            m.weights = std::move(ws);
        }
    }
    return m;
}

Rational PriorMeasure::mass(Event e) const {
    if (weight_denom != 0) {
        std::int64_t s = 0;
        for (std::size_t w = 0; w < weights.size(); ++w)
            if (e.contains(static_cast<int>(w))) s += weights[w];
        return Rational(s, weight_denom);
    }
    Rational s = 0;
    for (std::size_t w = 0; w < prior.size(); ++w)
        if (e.contains(static_cast<int>(w))) s += prior[w];
    return s;
}

bool PriorMeasure::positive(Event e) const {
    if (weight_denom != 0) {
        for (std::size_t w = 0; w < weights.size(); ++w)
            if (e.contains(static_cast<int>(w)) && weights[w] > 0) return true;
        return false;
    }
    for (std::size_t w = 0; w < prior.size(); ++w)
        if (e.contains(static_cast<int>(w)) && prior[w] > 0) return true;
    return false;
}

ProductPriorMeasure ProductPriorMeasure::make(std::vector<Rational> p, std::vector<Rational> q) {
    return ProductPriorMeasure{PriorMeasure::make(std::move(p)), PriorMeasure::make(std::move(q))};
}

namespace {

std::optional<Value> cond_prior(const PriorMeasure& m, Event e, Event f) {
    if (m.weight_denom != 0) {
        std::int64_t sf = 0, sef = 0;
        for (std::size_t w = 0; w < m.weights.size(); ++w) {
            if (!f.contains(static_cast<int>(w))) continue;
            sf += m.weights[w];
            if (e.contains(static_cast<int>(w))) sef += m.weights[w];
        }
        if (sf == 0) return std::nullopt;
        return Value::scalar(Rational(sef, sf));
    }
    Rational pf = m.mass(f);
    if (pf == 0) return std::nullopt;
    return Value::scalar(m.mass(e & f) / pf);
}

}  // namespace

bool learnable(const Measure& m, Event f) {
    if (f.empty()) return false;
    return std::visit(
        [&](const auto& mm) -> bool {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, PriorMeasure>) {
                return mm.positive(f);
            } else if constexpr (std::is_same_v<T, ProductPriorMeasure>) {
                return mm.p.positive(f) && mm.q.positive(f);
            } else {
                return mm.base.positive(f);
            }
        },
        m);
}

std::optional<Value> cond(const Measure& m, Event e, Event f) {
    return std::visit(
        [&](const auto& mm) -> std::optional<Value> {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, PriorMeasure>) {
                return cond_prior(mm, e, f);
            } else if constexpr (std::is_same_v<T, ProductPriorMeasure>) {
                auto a = cond_prior(mm.p, e, f);
                auto b = cond_prior(mm.q, e, f);
                if (!a || !b) return std::nullopt;
                return Value::pair(a->scalar_value(), b->scalar_value());
            } else {
                if (!mm.base.positive(f)) return std::nullopt;
                for (const auto& o : mm.overrides)
                    if (o.event == e && o.given == f) return o.value;
                return cond_prior(mm.base, e, f);
            }
        },
        m);
}

bool measures_equal(const Measure& a, const Measure& b) {
    if (a.index() != b.index()) return false;
    if (const auto* pa = std::get_if<PriorMeasure>(&a))
        return pa->prior == std::get<PriorMeasure>(b).prior;
    if (const auto* pp = std::get_if<ProductPriorMeasure>(&a)) {
        const auto& qb = std::get<ProductPriorMeasure>(b);
        return pp->p.prior == qb.p.prior && pp->q.prior == qb.q.prior;
    }
    const auto& ta = std::get<TableMeasure>(a);
    const auto& tb = std::get<TableMeasure>(b);
    return ta.base.prior == tb.base.prior && ta.overrides == tb.overrides;
}

PopperAlgebra PopperAlgebra::from_measure(const Measure& m, int n_states) {
    PopperAlgebra p;
    p.n_ = n_states;
    std::uint32_t total = 1u << n_states;
    p.member_.assign(total, 0);
    for (std::uint32_t f = 1; f < total; ++f) p.member_[f] = learnable(m, Event(f)) ? 1 : 0;
    return p;
}

std::vector<Event> PopperAlgebra::conditioning_events() const {
    std::vector<Event> out;
    for (std::uint32_t f = 0; f < member_.size(); ++f)
        if (member_[f]) out.push_back(Event(f));
    return out;
}

// --- EpistemicModel ------------------------------------------------------------

std::optional<int> EpistemicModel::agent_index(std::string_view label) const {
    for (int i = 0; i < n_agents(); ++i)
        if (agents[i] == label) return i;
    return std::nullopt;
}

int EpistemicModel::require_agent(int agent) const {
    if (agent < 0 || agent >= n_agents())
        throw UnknownAgentError("unknown agent index " + std::to_string(agent));
    return agent;
}

bool EpistemicModel::common_prior() const {
    if (measures.size() <= 1) return true;
    for (std::size_t i = 1; i < measures.size(); ++i)
        if (!measures_equal(measures[0], measures[i])) return false;
    return true;
}

bool EpistemicModel::operator==(const EpistemicModel& o) const {
    if (name != o.name || domain != o.domain || !(states == o.states) || agents != o.agents ||
        partitions.size() != o.partitions.size() ||
        common_prior_declared != o.common_prior_declared ||
        measures.size() != o.measures.size() || named_events != o.named_events)
        return false;
    for (std::size_t i = 0; i < partitions.size(); ++i)
        if (!(partitions[i] == o.partitions[i])) return false;
    for (std::size_t i = 0; i < measures.size(); ++i)
        if (!measures_equal(measures[i], o.measures[i])) return false;
    return true;
}

std::optional<Value> posterior(const EpistemicModel& m, int agent, int state, Event e) {
    m.require_agent(agent);
    if (state < 0 || state >= m.n_states())
        throw UnknownStateError("unknown state index " + std::to_string(state));
    return cond(m.measure(agent), e, m.block(agent, state));
}

// --- validation -----------------------------------------------------------------

namespace {

void validate_partitions(const EpistemicModel& m, std::vector<CheckReport>& out) {
    CheckReport r;
    r.id = "partitions";
    for (int i = 0; i < m.n_agents(); ++i) {
        Event seen;
        for (const auto& b : m.partitions[i].blocks) {
            ++r.examined;
            if (b.empty()) {
                r.fail(Witness().put("agent", m.agents[i]).put("reason", "empty block"));
                continue;
            }
            if (!(b & seen).empty()) {
                Event overlap = b & seen;
                int w = __builtin_ctz(overlap.bits);
                r.fail(Witness()
                           .put("agent", m.agents[i])
                           .put("state", m.states.name(w))
                           .put("reason", "state in two blocks"));
            }
            seen = seen | b;
        }
        if (seen != m.universe()) {
            Event missing = m.universe() - seen;
            int w = __builtin_ctz(missing.bits);
            r.fail(Witness()
                       .put("agent", m.agents[i])
                       .put("state", m.states.name(w))
                       .put("reason", "state not covered"));
        }
    }
    out.push_back(std::move(r));
}

void validate_normalization(const EpistemicModel& m, std::vector<CheckReport>& out) {
    CheckReport r;
    r.id = "normalization";
    auto check_prior = [&](const PriorMeasure& p, const std::string& who) {
        ++r.examined;
        Rational total = p.mass(m.universe());
        if (total != 1)
            r.fail(Witness().put("measure", who).put("sum", format_rational(total)));
        for (const auto& v : p.prior)
            if (v < 0 || v > 1)
                r.fail(Witness().put("measure", who).put("prior", format_rational(v)));
    };
    for (std::size_t i = 0; i < m.measures.size(); ++i) {
        std::string who = m.measures.size() == 1 ? "common" : m.agents[i];
        std::visit(
            [&](const auto& mm) {
                using T = std::decay_t<decltype(mm)>;
                if constexpr (std::is_same_v<T, PriorMeasure>) {
                    check_prior(mm, who);
                } else if constexpr (std::is_same_v<T, ProductPriorMeasure>) {
                    check_prior(mm.p, who + ".p");
                    check_prior(mm.q, who + ".q");
                } else {
                    check_prior(mm.base, who + ".base");
                }
            },
            m.measures[i]);
    }
    out.push_back(std::move(r));
}

void validate_information_sets(const EpistemicModel& m, std::vector<CheckReport>& out) {
    CheckReport r;
    r.id = "information-sets-learnable";
    for (int i = 0; i < m.n_agents(); ++i) {
        for (const auto& b : m.partitions[i].blocks) {
            ++r.examined;
            if (!b.empty() && !learnable(m.measure(i), b))
                r.fail(Witness()
                           .put("agent", m.agents[i])
                           .put("block", m.states.format_event(b))
                           .put("reason", "information set not in F'"));
        }
    }
    out.push_back(std::move(r));
}

// Popper condition 3: F' is closed under supersets. The measure-derived
// families satisfy it by construction; this confirms it instance by
// instance for small W.
void validate_popper(const EpistemicModel& m, std::vector<CheckReport>& out) {
    CheckReport r;
    r.id = "popper-superset-closure";
    const int n = m.n_states();
    if (n > 10) {
        r.note = "skipped above 10 states (family is superset-closed by construction)";
        out.push_back(std::move(r));
        return;
    }
    std::uint32_t total = 1u << n;
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const Measure& meas = m.measures[mi];
        for (std::uint32_t f = 1; f < total; ++f) {
            if (!learnable(meas, Event(f))) continue;
            // supersets of f
            std::uint32_t rest = (total - 1) & ~f;
            for (std::uint32_t add = rest;; add = (add - 1) & rest) {
                ++r.examined;
                if (!learnable(meas, Event(f | add)))
                    r.fail(Witness()
                               .put("F", m.states.format_event(Event(f)))
                               .put("superset", m.states.format_event(Event(f | add))));
                if (add == 0) break;
            }
        }
    }
    out.push_back(std::move(r));
}

void validate_range(const EpistemicModel& m, std::vector<CheckReport>& out) {
    CheckReport r;
    r.id = "measure-range-in-domain";
    const int n = m.n_states();
    if (n > 6) {
        r.note = "checked on information sets only above 6 states";
        for (int i = 0; i < m.n_agents(); ++i)
            for (const auto& b : m.partitions[i].blocks)
                for (std::uint32_t e = 0; e < (1u << n); ++e) {
                    ++r.examined;
                    auto v = cond(m.measure(i), Event(e), b);
                    if (v && !m.domain.contains(*v))
                        r.fail(Witness()
                                   .put("E", m.states.format_event(Event(e)))
                                   .put("F", m.states.format_event(b))
                                   .put("value", v->str()));
                }
        out.push_back(std::move(r));
        return;
    }
    std::uint32_t total = 1u << n;
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        for (std::uint32_t f = 1; f < total; ++f) {
            if (!learnable(m.measures[mi], Event(f))) continue;
            for (std::uint32_t e = 0; e < total; ++e) {
                ++r.examined;
                auto v = cond(m.measures[mi], Event(e), Event(f));
                if (v && !m.domain.contains(*v))
                    r.fail(Witness()
                               .put("E", m.states.format_event(Event(e)))
                               .put("F", m.states.format_event(Event(f)))
                               .put("value", v->str()));
            }
        }
    }
    out.push_back(std::move(r));
}

// Finite additivity of table overrides (A3 at the measure level). Checked
// at load so override tables cannot silently break the
// additive structure they rely on.
void validate_table(const EpistemicModel& m, std::vector<CheckReport>& out) {
    CheckReport r;
    r.id = "table-overrides";
    const int n = m.n_states();
    std::uint32_t total = 1u << n;
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const auto* tm = std::get_if<TableMeasure>(&m.measures[mi]);
        if (!tm) continue;
        for (const auto& o : tm->overrides) {
            ++r.examined;
            if (!learnable(m.measures[mi], o.given))
                r.fail(Witness()
                           .put("given", m.states.format_event(o.given))
                           .put("reason", "override conditions on an unlearnable event"));
            if (!m.domain.contains(o.value))
                r.fail(Witness().put("value", o.value.str()).put("reason", "value not in domain"));
            if (!o.event.subset_of(Event::universe(n)))
                r.fail(Witness().put("reason", "override event outside the state space"));
        }
        if (n > 8) continue;
        for (std::uint32_t z = 1; z < total; ++z) {
            if (!learnable(m.measures[mi], Event(z))) continue;
            for (std::uint32_t x = 0; x < total; ++x) {
                std::uint32_t rest = (total - 1) & ~x;
                for (std::uint32_t y = rest;; y = (y - 1) & rest) {
                    ++r.examined;
                    auto vx = cond(m.measures[mi], Event(x), Event(z));
                    auto vy = cond(m.measures[mi], Event(y), Event(z));
                    auto vxy = cond(m.measures[mi], Event(x | y), Event(z));
                    if (vx && vy && vxy) {
                        auto sum = m.domain.oplus(*vx, *vy);
                        if (!sum || *sum != *vxy)
                            r.fail(Witness()
                                       .put("X", m.states.format_event(Event(x)))
                                       .put("Y", m.states.format_event(Event(y)))
                                       .put("Z", m.states.format_event(Event(z)))
                                       .put("Pl(X|Z)", vx->str())
                                       .put("Pl(Y|Z)", vy->str())
                                       .put("Pl(XuY|Z)", vxy->str()));
                    }
                    if (y == 0) break;
                }
            }
        }
    }
    out.push_back(std::move(r));
}

}  // namespace

std::vector<CheckReport> validate_model(const EpistemicModel& m) {
    std::vector<CheckReport> out;
    validate_partitions(m, out);
    validate_normalization(m, out);
    validate_information_sets(m, out);
    validate_popper(m, out);
    validate_range(m, out);
    validate_table(m, out);
    return out;
}

}  // namespace plausia
