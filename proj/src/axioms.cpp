#include "plausia/axioms.hpp"

#include "plausia/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace plausia {

const char* to_string(AxiomId id) {
    switch (id) {
        case AxiomId::CP1: return "CP1";
        case AxiomId::CP2: return "CP2";
        case AxiomId::CP3: return "CP3";
        case AxiomId::CP4: return "CP4";
        case AxiomId::ACC: return "ACC";
        case AxiomId::A1: return "A1";
        case AxiomId::A2: return "A2";
        case AxiomId::A3: return "A3";
        case AxiomId::A4: return "A4";
        case AxiomId::M1: return "M1";
        case AxiomId::M2: return "M2";
        case AxiomId::M3: return "M3";
        case AxiomId::M4: return "M4";
        case AxiomId::CP6: return "CP6";
        case AxiomId::CP7: return "CP7";
        case AxiomId::ASSOC: return "ASSOC";
    }
    return "?";
}

std::optional<AxiomId> axiom_from_string(std::string_view name) {
    static const std::pair<const char*, AxiomId> table[] = {
        {"CP1", AxiomId::CP1}, {"CP2", AxiomId::CP2}, {"CP3", AxiomId::CP3},
        {"CP4", AxiomId::CP4}, {"ACC", AxiomId::ACC}, {"A1", AxiomId::A1},
        {"A2", AxiomId::A2},   {"A3", AxiomId::A3},   {"A4", AxiomId::A4},
        {"M1", AxiomId::M1},   {"M2", AxiomId::M2},   {"M3", AxiomId::M3},
        {"M4", AxiomId::M4},   {"CP6", AxiomId::CP6}, {"CP7", AxiomId::CP7},
        {"ASSOC", AxiomId::ASSOC}};
    std::string upper(name);
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (const auto& [n, id] : table)
        if (upper == n) return id;
    return std::nullopt;
}

namespace {

/// Lazy per-measure conditional cache; exhaustive checks revisit the same
/// (E,F) pairs constantly.
class CondTable {
public:
    CondTable(const Measure& m, int n) : m_(m), n_(n) {
        if (n_ <= 8) {
            cache_.resize(std::size_t(1) << (2 * n_));
            filled_.assign(cache_.size(), 0);
        }
    }
    const std::optional<Value>& operator()(Event e, Event f) const {
        if (filled_.empty()) {
            scratch_ = cond(m_, e, f);
            return scratch_;
        }
        std::size_t idx = (std::size_t(f.bits) << n_) | e.bits;
        if (!filled_[idx]) {
            cache_[idx] = cond(m_, e, f);
            filled_[idx] = 1;
        }
        return cache_[idx];
    }

private:
    const Measure& m_;
    int n_;
    mutable std::vector<std::optional<Value>> cache_;
    mutable std::vector<char> filled_;
    mutable std::optional<Value> scratch_;
};

std::string agent_label(const EpistemicModel& m, std::size_t measure_idx) {
    return m.measures.size() == 1 ? std::string("common") : m.agents[measure_idx];
}

std::vector<Event> learnable_events(const Measure& meas, int n) {
    return PopperAlgebra::from_measure(meas, n).conditioning_events();
}

bool exhaustive(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    return m.n_states() <= opts.exhaustive_cap;
}

void note_sampled(CheckReport& r, const AxiomCheckOptions& opts) {
    r.note = "sampled (seed " + std::to_string(opts.seed) + ", budget " +
             std::to_string(opts.sample_budget) + ")";
}

Event random_event(std::mt19937_64& rng, int n) {
    return Event(static_cast<std::uint32_t>(rng()) & Event::universe(n).bits);
}

Event random_learnable(std::mt19937_64& rng, const Measure& meas, int n) {
    for (int tries = 0; tries < 64; ++tries) {
        Event f = random_event(rng, n);
        if (!f.empty() && learnable(meas, f)) return f;
    }
    return Event::universe(n);  // always learnable for normalised measures
}

}  // namespace

// --- realized values ---------------------------------------------------------

std::vector<Value> realized_conditionals(const EpistemicModel& m, int cap) {
    std::set<Value, ValueLess> out;
    const int n = m.n_states();
    if (n <= cap) {
        for (const auto& meas : m.measures)
            for (const auto& f : learnable_events(meas, n))
                for (std::uint32_t e = 0; e < (1u << n); ++e)
                    if (auto v = cond(meas, Event(e), f)) out.insert(*v);
    } else {
        // Block conditionals only; enough for threshold grids at this size.
        std::uint32_t total = n <= 12 ? (1u << n) : (1u << 12);
        for (int i = 0; i < m.n_agents(); ++i)
            for (const auto& b : m.partitions[i].blocks)
                for (std::uint32_t e = 0; e < total; ++e)
                    if (auto v = cond(m.measure(i), Event(e), b)) out.insert(*v);
    }
    return {out.begin(), out.end()};
}

std::vector<Value> realized_posteriors(const EpistemicModel& m) {
    std::set<Value, ValueLess> out;
    const int n = m.n_states();
    std::uint32_t total = n <= 12 ? (1u << n) : (1u << 12);
    for (int i = 0; i < m.n_agents(); ++i)
        for (const auto& b : m.partitions[i].blocks)
            for (std::uint32_t e = 0; e < total; ++e)
                if (auto v = cond(m.measure(i), Event(e), b)) out.insert(*v);
    return {out.begin(), out.end()};
}

// --- CP1-CP4 -------------------------------------------------------------------

std::vector<CheckReport> check_cp(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport cp1, cp2, cp3, cp4;
    cp1.id = "CP1";
    cp2.id = "CP2";
    cp3.id = "CP3";
    cp4.id = "CP4";
    const int n = m.n_states();
    const Value top = m.domain.top();
    const Value bot = m.domain.bot();

    auto run_measure = [&](std::size_t mi) {
        const Measure& meas = m.measures[mi];
        CondTable ct(meas, n);
        std::string who = agent_label(m, mi);

        auto check_pair = [&](Event x, Event y, Event f) {
            ++cp3.examined;
            const auto& vx = ct(x, f);
            const auto& vy = ct(y, f);
            if (!m.domain.leq(*vx, *vy))
                cp3.fail(Witness()
                             .put("agent", who)
                             .put("X", m.states.format_event(x))
                             .put("Y", m.states.format_event(y))
                             .put("E", m.states.format_event(f))
                             .put("Pl(X|E)", vx->str())
                             .put("Pl(Y|E)", vy->str()));
        };
        auto check_cp4_one = [&](Event x, Event f) {
            ++cp4.examined;
            const auto& a = ct(x, f);
            const auto& b = ct(x & f, f);
            if (*a != *b)
                cp4.fail(Witness()
                             .put("agent", who)
                             .put("X", m.states.format_event(x))
                             .put("E", m.states.format_event(f))
                             .put("Pl(X|E)", a->str())
                             .put("Pl(X&E|E)", b->str()));
        };

        if (exhaustive(m, opts)) {
            for (const auto& f : learnable_events(meas, n)) {
                ++cp1.examined;
                if (*ct(f, f) != top)
                    cp1.fail(Witness()
                                 .put("agent", who)
                                 .put("E", m.states.format_event(f))
                                 .put("Pl(E|E)", ct(f, f)->str()));
                ++cp2.examined;
                if (*ct(Event::none(), f) != bot)
                    cp2.fail(Witness()
                                 .put("agent", who)
                                 .put("E", m.states.format_event(f))
                                 .put("Pl({}|E)", ct(Event::none(), f)->str()));
                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                    std::uint32_t rest = Event::universe(n).bits & ~x;
                    for (std::uint32_t add = rest;; add = (add - 1) & rest) {
                        check_pair(Event(x), Event(x | add), f);
                        if (add == 0) break;
                    }
                    check_cp4_one(Event(x), f);
                }
            }
        } else {
            std::mt19937_64 rng(opts.seed);
            for (std::int64_t t = 0; t < opts.sample_budget; ++t) {
                Event f = random_learnable(rng, meas, n);
                ++cp1.examined;
                if (*ct(f, f) != top) cp1.fail(Witness().put("agent", who).put("E", m.states.format_event(f)));
                ++cp2.examined;
                if (*ct(Event::none(), f) != bot)
                    cp2.fail(Witness().put("agent", who).put("E", m.states.format_event(f)));
                Event x = random_event(rng, n);
                Event y = x | random_event(rng, n);
                check_pair(x, y, f);
                check_cp4_one(x, f);
            }
        }
    };

    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) run_measure(mi);
    if (!exhaustive(m, opts))
        for (auto* r : {&cp1, &cp2, &cp3, &cp4}) note_sampled(*r, opts);
    return {cp1, cp2, cp3, cp4};
}

// --- acceptability ---------------------------------------------------------------

CheckReport check_acceptability(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "ACC";
    const int n = m.n_states();
    const Value bot = m.domain.bot();
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const Measure& meas = m.measures[mi];
        CondTable ct(meas, n);
        auto check_one = [&](Event e, Event f) {
            ++r.examined;
            const auto& v = ct(e, f);
            if (*v != bot && !learnable(meas, e & f))
                r.fail(Witness()
                           .put("agent", agent_label(m, mi))
                           .put("E", m.states.format_event(e))
                           .put("F", m.states.format_event(f))
                           .put("Pl(E|F)", v->str()));
        };
        if (exhaustive(m, opts)) {
            for (const auto& f : learnable_events(meas, n))
                for (std::uint32_t e = 0; e < (1u << n); ++e) check_one(Event(e), f);
        } else {
            std::mt19937_64 rng(opts.seed);
            for (std::int64_t t = 0; t < opts.sample_budget; ++t)
                check_one(random_event(rng, n), random_learnable(rng, meas, n));
            note_sampled(r, opts);
        }
    }
    return r;
}

// --- A3 ---------------------------------------------------------------------------

CheckReport check_a3(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "A3";
    const int n = m.n_states();
    const Value bot = m.domain.bot();
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const Measure& meas = m.measures[mi];
        CondTable ct(meas, n);
        auto check_one = [&](Event x, Event y, Event z) {
            const auto& vx = ct(x, z);
            const auto& vy = ct(y, z);
            if (opts.exempt_bot_bot && *vx == bot && *vy == bot) {
                ++r.skipped;
                return;
            }
            ++r.examined;
            const auto& vxy = ct(x | y, z);
            auto sum = m.domain.oplus(*vx, *vy);
            if (!sum || *sum != *vxy)
                r.fail(Witness()
                           .put("agent", agent_label(m, mi))
                           .put("X", m.states.format_event(x))
                           .put("Y", m.states.format_event(y))
                           .put("Z", m.states.format_event(z))
                           .put("Pl(X|Z)", vx->str())
                           .put("Pl(Y|Z)", vy->str())
                           .put("Pl(XuY|Z)", vxy->str()));
        };
        if (exhaustive(m, opts)) {
            for (const auto& z : learnable_events(meas, n))
                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                    std::uint32_t rest = Event::universe(n).bits & ~x;
                    for (std::uint32_t y = rest;; y = (y - 1) & rest) {
                        check_one(Event(x), Event(y), z);
                        if (y == 0) break;
                    }
                }
        } else {
            std::mt19937_64 rng(opts.seed);
            for (std::int64_t t = 0; t < opts.sample_budget; ++t) {
                Event x = random_event(rng, n);
                Event y = random_event(rng, n) - x;
                check_one(x, y, random_learnable(rng, meas, n));
            }
            note_sampled(r, opts);
        }
    }
    return r;
}

// --- A4 ---------------------------------------------------------------------------

namespace {

// All families of pairwise-disjoint learnable events (each family listed
// once, members ascending by bitmask).
void disjoint_families(const std::vector<Event>& learnables, std::size_t start, Event used,
                       std::vector<Event>& current,
                       const std::function<void(const std::vector<Event>&)>& emit) {
    for (std::size_t i = start; i < learnables.size(); ++i) {
        if (!(learnables[i] & used).empty()) continue;
        current.push_back(learnables[i]);
        emit(current);
        disjoint_families(learnables, i + 1, used | learnables[i], current, emit);
        current.pop_back();
    }
}

}  // namespace

CheckReport check_a4(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "A4";
    const int n = m.n_states();
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const Measure& meas = m.measures[mi];
        CondTable ct(meas, n);

        auto check_family = [&](const std::vector<Event>& fam) {
            Event u;
            for (const auto& s : fam) u = u | s;
            if (!learnable(meas, u)) return;
            for (std::uint32_t e = 0; e < (1u << n); ++e) {
                ++r.examined;
                // Tightest a,b realized over the family: the lattice
                // meet/join. All shipped domains are lattices, so this is
                // exactly the axiom's "for all a,b" quantifier.
                std::optional<Value> lo, hi;
                for (const auto& s : fam) {
                    const auto& v = ct(Event(e), s);
                    lo = lo ? m.domain.meet(*lo, *v) : *v;
                    hi = hi ? m.domain.join(*hi, *v) : *v;
                }
                const auto& vu = ct(Event(e), u);
                if (!m.domain.leq(*lo, *vu) || !m.domain.leq(*vu, *hi)) {
                    Witness w;
                    w.put("agent", agent_label(m, mi)).put("E", m.states.format_event(Event(e)));
                    std::string famtext;
                    for (const auto& s : fam) famtext += m.states.format_event(s);
                    w.put("S", famtext)
                        .put("lo", lo->str())
                        .put("hi", hi->str())
                        .put("Pl(E|US)", vu->str());
                    r.fail(std::move(w));
                }
            }
        };

        if (n <= 5 || exhaustive(m, opts)) {
            auto learns = learnable_events(meas, n);
            std::vector<Event> current;
            disjoint_families(learns, 0, Event::none(), current, check_family);
        } else {
            std::mt19937_64 rng(opts.seed);
            for (std::int64_t t = 0; t < opts.sample_budget / 64; ++t) {
                // Random disjoint family: shuffle states, cut into blocks.
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                std::vector<Event> fam;
                Event cur;
                for (int s : perm) {
                    cur = cur | Event::single(s);
                    if (rng() % 2 == 0) {
                        if (learnable(meas, cur)) fam.push_back(cur);
                        cur = Event::none();
                    }
                }
                if (!cur.empty() && learnable(meas, cur)) fam.push_back(cur);
                if (!fam.empty()) check_family(fam);
            }
            note_sampled(r, opts);
        }
    }
    return r;
}

// --- M3 and M3-satisfiability -----------------------------------------------------

CheckReport check_m3(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    if (!m.domain.has_multiplication())
        throw NoMultiplicationError("M3 needs a multiplication on " + m.domain.token());
    CheckReport r;
    r.id = "M3";
    const int n = m.n_states();
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const Measure& meas = m.measures[mi];
        CondTable ct(meas, n);
        auto check_chain = [&](Event x, Event y, Event z) {
            ++r.examined;
            const auto& lhs = ct(x, z);
            const auto& level1 = ct(x, y);
            const auto& level2 = ct(y, z);
            auto rhs = m.domain.otimes(*level1, *level2);
            if (!rhs || *rhs != *lhs) {
                Witness w;
                w.put("agent", agent_label(m, mi))
                    .put("X", m.states.format_event(x))
                    .put("Y", m.states.format_event(y))
                    .put("Z", m.states.format_event(z))
                    .put("Pl(X|Y)", level1->str())
                    .put("Pl(Y|Z)", level2->str())
                    .put("Pl(X|Z)", lhs->str());
                if (!rhs)
                    w.put("reason", "product undefined");
                else
                    w.put("product", rhs->str());
                r.fail(std::move(w));
            }
        };
        if (exhaustive(m, opts)) {
            for (const auto& z : learnable_events(meas, n))
                for (std::uint32_t y = z.bits;; y = (y - 1) & z.bits) {
                    if (y != 0 && learnable(meas, Event(y)))
                        for (std::uint32_t x = y;; x = (x - 1) & y) {
                            check_chain(Event(x), Event(y), z);
                            if (x == 0) break;
                        }
                    if (y == 0) break;
                }
        } else {
            std::mt19937_64 rng(opts.seed);
            for (std::int64_t t = 0; t < opts.sample_budget; ++t) {
                Event z = random_learnable(rng, meas, n);
                Event y = Event(static_cast<std::uint32_t>(rng()) & z.bits);
                if (y.empty() || !learnable(meas, y)) continue;
                Event x = Event(static_cast<std::uint32_t>(rng()) & y.bits);
                check_chain(x, y, z);
            }
            note_sampled(r, opts);
        }
    }
    return r;
}

CheckReport check_m3_satisfiable(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "M3-SAT";
    const int n = m.n_states();
    if (n > std::max(opts.exhaustive_cap, 6)) {
        r.verdict = Verdict::NotApplicable;
        r.note = "exhaustive chain scan only (model too large)";
        return r;
    }
    struct KeyLess {
        bool operator()(const std::pair<Value, Value>& a, const std::pair<Value, Value>& b) const {
            ValueLess vl;
            if (vl(a.first, b.first)) return true;
            if (vl(b.first, a.first)) return false;
            return vl(a.second, b.second);
        }
    };
    for (std::size_t mi = 0; mi < m.measures.size(); ++mi) {
        const Measure& meas = m.measures[mi];
        CondTable ct(meas, n);
        std::map<std::pair<Value, Value>, std::tuple<Value, Event, Event, Event>, KeyLess> seen;
        for (const auto& z : learnable_events(meas, n)) {
            for (std::uint32_t y = z.bits;; y = (y - 1) & z.bits) {
                if (y != 0 && learnable(meas, Event(y))) {
                    for (std::uint32_t x = y;; x = (x - 1) & y) {
                        ++r.examined;
                        auto key = std::make_pair(*ct(Event(x), Event(y)), *ct(Event(y), z));
                        const auto& direct = *ct(Event(x), z);
                        auto it = seen.find(key);
                        if (it == seen.end()) {
                            seen.emplace(key, std::make_tuple(direct, Event(x), Event(y), z));
                        } else if (std::get<0>(it->second) != direct) {
                            const auto& [v0, ox, oy, oz] = it->second;
                            r.fail(Witness()
                                       .put("agent", agent_label(m, mi))
                                       .put("chain1",
                                            m.states.format_event(ox) + "<=" +
                                                m.states.format_event(oy) + "<=" +
                                                m.states.format_event(oz))
                                       .put("chain2",
                                            m.states.format_event(Event(x)) + "<=" +
                                                m.states.format_event(Event(y)) + "<=" +
                                                m.states.format_event(z))
                                       .put("level-one", key.first.str() + "," + key.second.str())
                                       .put("direct1", v0.str())
                                       .put("direct2", direct.str()));
                        }
                        if (x == 0) break;
                    }
                }
                if (y == 0) break;
            }
        }
    }
    if (r.failed()) r.note = "no multiplication can satisfy M3 on this model";
    return r;
}

// --- CP6 / CP7 ----------------------------------------------------------------------

CheckReport check_cp6(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "CP6";
    if (!m.common_prior()) {
        r.verdict = Verdict::NotApplicable;
        r.note = "no common prior";
        return r;
    }
    const int n = m.n_states();
    const Measure& meas = m.measure(0);
    CondTable ct(meas, n);
    const Value bot = m.domain.bot();
    std::int64_t outside = 0;

    auto check_pair = [&](Event a1, Event a2) {
        Event inter = a1 & a2;
        if (!inter.empty() && !learnable(meas, inter)) ++outside;
        // One scan over E subseteq A1&A2 finds an antecedent witness E1 and
        // a consequent failure E2 independently.
        std::optional<Event> e1;
        std::optional<Value> e1v1, e1v2;
        std::optional<Event> e2;
        std::optional<Value> e2v1, e2v2;
        for (std::uint32_t e = inter.bits;; e = (e - 1) & inter.bits) {
            ++r.examined;
            const auto& c1 = ct(Event(e), a1);
            const auto& c2 = ct(Event(e), a2);
            bool geq = m.domain.geq(*c1, *c2);
            if (!e1 && *c1 != bot && geq) {
                e1 = Event(e);
                e1v1 = *c1;
                e1v2 = *c2;
            }
            if (!e2 && !geq) {
                e2 = Event(e);
                e2v1 = *c1;
                e2v2 = *c2;
            }
            if (e == 0) break;
        }
        if (e1 && e2)
            r.fail(Witness()
                       .put("A1", m.states.format_event(a1))
                       .put("A2", m.states.format_event(a2))
                       .put("E1", m.states.format_event(*e1))
                       .put("Pl(E1|A1)", e1v1->str())
                       .put("Pl(E1|A2)", e1v2->str())
                       .put("E2", m.states.format_event(*e2))
                       .put("Pl(E2|A1)", e2v1->str())
                       .put("Pl(E2|A2)", e2v2->str()));
    };

    if (exhaustive(m, opts)) {
        auto learns = learnable_events(meas, n);
        for (const auto& a1 : learns)
            for (const auto& a2 : learns) check_pair(a1, a2);
    } else {
        std::mt19937_64 rng(opts.seed);
        for (std::int64_t t = 0; t < opts.sample_budget / 16; ++t)
            check_pair(random_learnable(rng, meas, n), random_learnable(rng, meas, n));
        note_sampled(r, opts);
    }
    if (outside > 0) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "pairs with A1&A2 outside F': " + std::to_string(outside);
    }
    return r;
}

std::vector<Value> default_cp7_thresholds(const EpistemicModel& m) {
    auto base = realized_posteriors(m);
    if (m.domain.kind() != DomainKind::ProductUnitRational) return base;
    // Every meet of a subset of realized pairs is (min firsts, min seconds),
    // so the component cross product covers the whole meet closure.
    std::set<Rational> firsts, seconds;
    for (const auto& v : base) {
        firsts.insert(v.first());
        seconds.insert(v.second());
    }
    std::set<Value, ValueLess> out(base.begin(), base.end());
    if (firsts.size() * seconds.size() <= 256)
        for (const auto& x : firsts)
            for (const auto& y : seconds) out.insert(Value::pair(x, y));
    return {out.begin(), out.end()};
}

CheckReport check_cp7(const EpistemicModel& m, std::vector<Value> thresholds,
                      std::optional<Event> only_event, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "CP7";
    if (!m.common_prior()) {
        r.verdict = Verdict::NotApplicable;
        r.note = "no common prior";
        return r;
    }
    if (thresholds.empty()) thresholds = default_cp7_thresholds(m);
    const int n = m.n_states();
    const Measure& meas = m.measure(0);

    auto check_event = [&](Event e) {
        for (const auto& d : thresholds) {
            std::vector<std::optional<Value>> vals(m.n_agents());
            for (int i = 0; i < m.n_agents(); ++i) {
                Event bi = Event::none();
                for (const auto& blk : m.partitions[i].blocks) {
                    if (blk.empty()) continue;
                    auto v = cond(meas, e, blk);
                    if (v && m.domain.geq(*v, d)) bi = bi | blk;
                }
                if (!bi.empty() && learnable(meas, bi)) vals[i] = cond(meas, e, bi);
            }
            for (int i = 0; i < m.n_agents(); ++i)
                for (int j = i + 1; j < m.n_agents(); ++j) {
                    ++r.examined;
                    if (!vals[i] || !vals[j]) {
                        ++r.skipped;
                        continue;
                    }
                    if (m.domain.compare(*vals[i], *vals[j]) == Comparison::Incomparable)
                        r.fail(Witness()
                                   .put("E", m.states.format_event(e))
                                   .put("d", d.str())
                                   .put("i", m.agents[i])
                                   .put("j", m.agents[j])
                                   .put("Pl(E|Bi)", vals[i]->str())
                                   .put("Pl(E|Bj)", vals[j]->str()));
                }
        }
    };

    if (only_event) {
        check_event(*only_event);
    } else if (exhaustive(m, opts)) {
        for (std::uint32_t e = 0; e < (1u << n); ++e) check_event(Event(e));
    } else {
        std::mt19937_64 rng(opts.seed);
        for (std::int64_t t = 0; t < opts.sample_budget / 16; ++t)
            check_event(random_event(rng, n));
        note_sampled(r, opts);
    }
    return r;
}

// --- multiplication implies CP6 ---------------------------------------------------

CheckReport check_mult_implies_cp6(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    CheckReport r;
    r.id = "M1M3M4=>CP6";
    if (!m.common_prior()) {
        r.verdict = Verdict::NotApplicable;
        r.note = "no common prior";
        return r;
    }
    if (!m.domain.has_multiplication()) {
        r.note = "vacuous: no multiplication";
        return r;
    }

    DomainAxiomOptions dopts;
    dopts.close_under_ops = !opts.light_domain_checks;
    auto domain_reports = check_domain_axioms(m.domain, realized_conditionals(m), dopts);
    const CheckReport* m1 = nullptr;
    const CheckReport* m4 = nullptr;
    for (const auto& dr : domain_reports) {
        if (dr.id == "M1") m1 = &dr;
        if (dr.id == "M4") m4 = &dr;
    }
    CheckReport m3 = check_m3(m, opts);

    std::string premises = std::string("M1=") + to_string(m1->verdict) +
                           " M3=" + to_string(m3.verdict) + " M4=" + to_string(m4->verdict);
    if (!m1->passed() || !m3.passed() || !m4->passed()) {
        r.note = "vacuous: premises not all satisfied (" + premises + ")";
        r.examined = m1->examined + m3.examined + m4->examined;
        r.skipped = 1;  // marks the implication as vacuous on this model
        return r;
    }

    CheckReport cp6 = check_cp6(m, opts);
    r.examined = cp6.examined;
    r.note = "premises hold (" + premises + "); " +
             (cp6.note.empty() ? std::string("CP6 checked") : cp6.note);
    if (cp6.failed()) {
        // The implication itself is falsified; this should never happen.
        r.verdict = Verdict::Fail;
        r.violations = cp6.violations;
        r.witnesses = cp6.witnesses;
    }
    return r;
}

// --- suite -----------------------------------------------------------------------

std::vector<CheckReport> run_axiom_suite(const EpistemicModel& m, const AxiomCheckOptions& opts,
                                         const std::set<AxiomId>& only) {
    auto want = [&](AxiomId id) { return only.empty() || only.count(id) > 0; };

    std::vector<CheckReport> out;
    bool need_cp = want(AxiomId::CP1) || want(AxiomId::CP2) || want(AxiomId::CP3) ||
                   want(AxiomId::CP4);
    std::vector<CheckReport> cp;
    if (need_cp) cp = check_cp(m, opts);

    bool need_domain = want(AxiomId::A1) || want(AxiomId::A2) || want(AxiomId::M1) ||
                       want(AxiomId::M2) || want(AxiomId::M4) || want(AxiomId::ASSOC);
    std::vector<CheckReport> dom;
    if (need_domain) dom = check_domain_axioms(m.domain, realized_conditionals(m));
    auto dom_by_id = [&](const char* id) -> CheckReport {
        for (auto& d : dom)
            if (d.id == id) return d;
        return {};
    };

    for (int i = 0; i < 4; ++i) {
        AxiomId id = static_cast<AxiomId>(i);
        if (want(id)) out.push_back(cp[static_cast<std::size_t>(i)]);
    }
    if (want(AxiomId::ACC)) out.push_back(check_acceptability(m, opts));
    if (want(AxiomId::A1)) out.push_back(dom_by_id("A1"));
    if (want(AxiomId::A2)) out.push_back(dom_by_id("A2"));
    if (want(AxiomId::A3)) out.push_back(check_a3(m, opts));
    if (want(AxiomId::A4)) out.push_back(check_a4(m, opts));
    if (want(AxiomId::M1)) out.push_back(dom_by_id("M1"));
    if (want(AxiomId::M2)) out.push_back(dom_by_id("M2"));
    if (want(AxiomId::M3)) {
        if (m.domain.has_multiplication()) {
            out.push_back(check_m3(m, opts));
        } else {
            CheckReport r;
            r.id = "M3";
            r.verdict = Verdict::NotApplicable;
            r.note = "domain declares no multiplication";
            out.push_back(std::move(r));
        }
    }
    if (want(AxiomId::M4)) out.push_back(dom_by_id("M4"));
    if (want(AxiomId::CP6)) out.push_back(check_cp6(m, opts));
    if (want(AxiomId::CP7)) out.push_back(check_cp7(m, {}, std::nullopt, opts));
    if (want(AxiomId::ASSOC)) out.push_back(dom_by_id("ASSOC"));
    return out;
}

}  // namespace plausia
