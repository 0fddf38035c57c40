#include "plausia/agreement.hpp"

#include "plausia/operators.hpp"

#include <algorithm>
#include <sstream>

namespace plausia {

const char* to_string(GroupStatus s) {
    switch (s) {
        case GroupStatus::Holds: return "holds";
        case GroupStatus::Vacuous: return "holds-vacuously";
        case GroupStatus::Violated: return "violated";
        case GroupStatus::Skipped: return "skipped";
        case GroupStatus::Excluded: return "excluded";
    }
    return "?";
}

const char* to_string(AgreementStatus s) {
    switch (s) {
        case AgreementStatus::Holds: return "holds";
        case AgreementStatus::HoldsVacuously: return "holds-vacuously";
        case AgreementStatus::Violated: return "violated";
        case AgreementStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::vector<ProfileGroup> posterior_profiles(const EpistemicModel& m, Event e) {
    std::vector<ProfileGroup> groups;
    ProfileGroup undefined_group;
    undefined_group.defined = false;
    undefined_group.posteriors.resize(m.n_agents());

    for (int w = 0; w < m.n_states(); ++w) {
        std::vector<std::optional<Value>> profile(m.n_agents());
        bool all_defined = true;
        for (int i = 0; i < m.n_agents(); ++i) {
            profile[i] = posterior(m, i, w, e);
            if (!profile[i]) all_defined = false;
        }
        if (!all_defined) {
            // The theorems presuppose defined posteriors; everything else
            // lands in one excluded group.
            undefined_group.states = undefined_group.states | Event::single(w);
            continue;
        }
        bool placed = false;
        for (auto& g : groups) {
            if (g.posteriors == profile) {
                g.states = g.states | Event::single(w);
                placed = true;
                break;
            }
        }
        if (!placed) {
            ProfileGroup g;
            g.states = Event::single(w);
            g.posteriors = std::move(profile);
            groups.push_back(std::move(g));
        }
    }
    if (!undefined_group.states.empty()) groups.push_back(std::move(undefined_group));
    return groups;
}

namespace {

void finalize_status(AgreementVerdict& v) {
    bool any_violated = false, any_holds = false;
    for (const auto& g : v.groups) {
        if (g.status == GroupStatus::Violated) any_violated = true;
        if (g.status == GroupStatus::Holds) any_holds = true;
    }
    if (any_violated)
        v.status = AgreementStatus::Violated;
    else if (any_holds)
        v.status = AgreementStatus::Holds;
    else
        v.status = AgreementStatus::HoldsVacuously;
}

// Shared body of all four agreement checks: group by posterior profile,
// compute the closure (C or CB^d) of each cell, then test the pairwise
// conclusion inside non-empty cells.
template <typename Closure, typename PairCheck>
void run_groups(const EpistemicModel& m, Event e, AgreementVerdict& v, Closure closure,
                PairCheck pair_check) {
    for (auto& pg : posterior_profiles(m, e)) {
        GroupVerdict gv;
        gv.group = pg;
        if (!pg.defined) {
            gv.status = GroupStatus::Excluded;
            v.groups.push_back(std::move(gv));
            continue;
        }
        gv.closure = closure(pg.states);
        if (gv.closure.empty()) {
            gv.status = GroupStatus::Vacuous;
            v.groups.push_back(std::move(gv));
            continue;
        }
        gv.status = GroupStatus::Holds;
        for (int i = 0; i < m.n_agents(); ++i) {
            for (int j = 0; j < m.n_agents(); ++j) {
                if (i == j) continue;
                pair_check(pg, gv, i, j);
            }
        }
        if (gv.status == GroupStatus::Holds && gv.pairs_checked == 0 && gv.pairs_skipped > 0)
            gv.status = GroupStatus::Skipped;
        v.groups.push_back(std::move(gv));
    }
    finalize_status(v);
}

}  // namespace

namespace {

AgreementVerdict conclusion_aumann(const EpistemicModel& m, Event e) {
    AgreementVerdict v;
    v.theorem = "aumann";
    v.event = e;
    run_groups(
        m, e, v, [&](Event x) { return common_knowledge(m, x); },
        [&](const ProfileGroup& pg, GroupVerdict& gv, int i, int j) {
            if (j < i) return;  // equality is symmetric
            ++gv.pairs_checked;
            if (*pg.posteriors[i] != *pg.posteriors[j]) {
                gv.status = GroupStatus::Violated;
                gv.witnesses.push_back(Witness()
                                           .put("X", m.states.format_event(pg.states))
                                           .put("C(X)", m.states.format_event(gv.closure))
                                           .put("i", m.agents[i])
                                           .put("j", m.agents[j])
                                           .put("r_i", pg.posteriors[i]->str())
                                           .put("r_j", pg.posteriors[j]->str()));
            }
        });
    return v;
}

AgreementVerdict conclusion_msn_classical(const EpistemicModel& m, Event e, const Rational& p) {
    AgreementVerdict v;
    v.theorem = "msn";
    v.event = e;
    v.threshold = Value::scalar(p);
    const Value d = Value::scalar(p);
    const Rational bound = Rational(1) - p;
    run_groups(
        m, e, v, [&](Event x) { return common_belief(m, d, x); },
        [&](const ProfileGroup& pg, GroupVerdict& gv, int i, int j) {
            if (j < i) return;  // |r_i - r_j| is symmetric
            ++gv.pairs_checked;
            Rational ri = pg.posteriors[i]->scalar_value();
            Rational rj = pg.posteriors[j]->scalar_value();
            Rational diff = ri >= rj ? ri - rj : rj - ri;
            if (diff > bound) {
                gv.status = GroupStatus::Violated;
                gv.witnesses.push_back(Witness()
                                           .put("X", m.states.format_event(pg.states))
                                           .put("CB(X)", m.states.format_event(gv.closure))
                                           .put("p", format_rational(p))
                                           .put("i", m.agents[i])
                                           .put("j", m.agents[j])
                                           .put("r_i", format_rational(ri))
                                           .put("r_j", format_rational(rj))
                                           .put("|r_i-r_j|", format_rational(diff))
                                           .put("bound", format_rational(bound)));
            }
        });
    return v;
}

}  // namespace

AgreementVerdict check_aumann(const EpistemicModel& m, Event e) {
    if (!m.common_prior()) {
        AgreementVerdict v;
        v.theorem = "aumann";
        v.event = e;
        v.status = AgreementStatus::NotApplicable;
        CheckReport r;
        r.id = "common-prior";
        r.verdict = Verdict::Fail;
        r.note = "agents have different priors";
        v.failed_hypotheses.push_back(std::move(r));
        return v;
    }
    return conclusion_aumann(m, e);
}

AgreementVerdict check_msn_classical(const EpistemicModel& m, Event e, const Rational& p) {
    std::vector<CheckReport> failed;
    if (!m.common_prior()) {
        CheckReport r;
        r.id = "common-prior";
        r.verdict = Verdict::Fail;
        failed.push_back(std::move(r));
    }
    if (m.domain.kind() == DomainKind::ProductUnitRational) {
        CheckReport r;
        r.id = "scalar-domain";
        r.verdict = Verdict::Fail;
        r.note = "classical MSN needs probability-valued posteriors";
        failed.push_back(std::move(r));
    }
    if (p <= 0 || p > 1) {
        CheckReport r;
        r.id = "threshold-range";
        r.verdict = Verdict::Fail;
        r.note = "p must lie in (0,1]";
        failed.push_back(std::move(r));
    }
    if (!failed.empty()) {
        AgreementVerdict v;
        v.theorem = "msn";
        v.event = e;
        v.threshold = Value::scalar(p);
        v.status = AgreementStatus::NotApplicable;
        v.failed_hypotheses = std::move(failed);
        return v;
    }
    return conclusion_msn_classical(m, e, p);
}

namespace {

void collect_failed(std::vector<CheckReport>& failed, CheckReport r) {
    if (!r.passed()) failed.push_back(std::move(r));
}

// A-axiom hypotheses shared by both generalized theorems. The value-level
// parts hold identically on every shipped domain: rational addition is
// monotone with complements to top (A1/A2), associative, and the shipped
// multiplications are monotone and distributive (M1/M2), componentwise for
// pairs. Gating therefore runs only the model-level checks; run_axiom_suite
// still audits the value level on realized samples.
void additive_hypotheses(const EpistemicModel& m, const AxiomCheckOptions& opts,
                         std::vector<CheckReport>& failed) {
    collect_failed(failed, check_a3(m, opts));
    collect_failed(failed, check_a4(m, opts));
}

AgreementVerdict run_generalized(const EpistemicModel& m, Event e, const Value& d,
                                 const char* theorem, std::vector<CheckReport> failed,
                                 const Value& bound_base) {
    AgreementVerdict v;
    v.theorem = theorem;
    v.event = e;
    v.threshold = d;
    if (!failed.empty()) {
        v.status = AgreementStatus::NotApplicable;
        v.failed_hypotheses = std::move(failed);
        return v;
    }
    auto bound = m.domain.ominus(m.domain.top(), bound_base);
    if (!bound) {
        v.status = AgreementStatus::NotApplicable;
        CheckReport r;
        r.id = "bound";
        r.verdict = Verdict::Fail;
        r.note = "top (-) " + bound_base.str() + " does not exist";
        v.failed_hypotheses.push_back(std::move(r));
        return v;
    }
    if (d == m.domain.bot()) v.note = "threshold is bottom; the belief operator is degenerate";

    run_groups(
        m, e, v, [&](Event x) { return common_belief(m, d, x); },
        [&](const ProfileGroup& pg, GroupVerdict& gv, int i, int j) {
            auto diff = m.domain.ominus(*pg.posteriors[i], *pg.posteriors[j]);
            if (!diff) {
                ++gv.pairs_skipped;  // the theorem only binds existing differences
                return;
            }
            ++gv.pairs_checked;
            if (!m.domain.leq(*diff, *bound)) {
                gv.status = GroupStatus::Violated;
                gv.witnesses.push_back(Witness()
                                           .put("X", m.states.format_event(pg.states))
                                           .put("CB(X)", m.states.format_event(gv.closure))
                                           .put("i", m.agents[i])
                                           .put("j", m.agents[j])
                                           .put("r_i", pg.posteriors[i]->str())
                                           .put("r_j", pg.posteriors[j]->str())
                                           .put("r_i(-)r_j", diff->str())
                                           .put("bound", bound->str()));
            }
        });
    return v;
}

}  // namespace

std::vector<CheckReport> msn_with_mult_hypotheses(const EpistemicModel& m,
                                                  const AxiomCheckOptions& opts) {
    std::vector<CheckReport> failed;
    if (!m.common_prior()) {
        CheckReport r;
        r.id = "common-prior";
        r.verdict = Verdict::Fail;
        failed.push_back(std::move(r));
    }
    if (!m.domain.has_multiplication()) {
        CheckReport r;
        r.id = "multiplication";
        r.verdict = Verdict::Fail;
        r.note = "domain declares no multiplication";
        failed.push_back(std::move(r));
        return failed;
    }
    collect_failed(failed, check_acceptability(m, opts));
    additive_hypotheses(m, opts, failed);
    collect_failed(failed, check_m3(m, opts));
    return failed;
}

std::vector<CheckReport> msn_without_mult_hypotheses(const EpistemicModel& m,
                                                     const AxiomCheckOptions& opts,
                                                     const std::optional<Value>& d) {
    std::vector<CheckReport> failed;
    if (!m.common_prior()) {
        CheckReport r;
        r.id = "common-prior";
        r.verdict = Verdict::Fail;
        failed.push_back(std::move(r));
    }
    additive_hypotheses(m, opts, failed);
    collect_failed(failed, check_cp6(m, opts));
    auto grid = default_cp7_thresholds(m);
    if (d && m.domain.contains(*d) &&
        std::find(grid.begin(), grid.end(), *d) == grid.end())
        grid.push_back(*d);
    collect_failed(failed, check_cp7(m, grid, std::nullopt, opts));
    return failed;
}

AgreementVerdict check_msn_with_mult(const EpistemicModel& m, Event e, const Value& d,
                                     const AxiomCheckOptions& opts) {
    std::vector<CheckReport> failed = msn_with_mult_hypotheses(m, opts);
    if (!failed.empty())
        return run_generalized(m, e, d, "msn-mult", std::move(failed), m.domain.top());
    auto top_times_d = m.domain.otimes(m.domain.top(), d);
    if (!top_times_d) {
        CheckReport r;
        r.id = "bound";
        r.verdict = Verdict::Fail;
        r.note = "top (x) d does not exist";
        failed.push_back(std::move(r));
        return run_generalized(m, e, d, "msn-mult", std::move(failed), m.domain.top());
    }
    return run_generalized(m, e, d, "msn-mult", {}, *top_times_d);
}

AgreementVerdict check_msn_without_mult(const EpistemicModel& m, Event e, const Value& d,
                                        const AxiomCheckOptions& opts) {
    std::vector<CheckReport> failed = msn_without_mult_hypotheses(m, opts, d);
    return run_generalized(m, e, d, "msn-nomult", std::move(failed), d);
}

AgreementVerdict check_agreement_conclusion(const EpistemicModel& m, std::string_view theorem,
                                            Event e, const std::optional<Value>& d) {
    auto need_threshold = [&]() -> std::optional<AgreementVerdict> {
        if (d) return std::nullopt;
        AgreementVerdict v;
        v.theorem = std::string(theorem);
        v.event = e;
        v.status = AgreementStatus::NotApplicable;
        v.note = "theorem needs a threshold";
        return v;
    };
    if (theorem == "aumann") return conclusion_aumann(m, e);
    if (theorem == "msn") {
        if (auto bad = need_threshold()) return *bad;
        if (d->is_pair() || m.domain.kind() == DomainKind::ProductUnitRational) {
            AgreementVerdict v;
            v.theorem = "msn";
            v.event = e;
            v.threshold = d;
            v.status = AgreementStatus::NotApplicable;
            v.note = "classical MSN needs a scalar domain";
            return v;
        }
        return conclusion_msn_classical(m, e, d->scalar_value());
    }
    if (theorem == "msn-mult") {
        if (auto bad = need_threshold()) return *bad;
        if (!m.domain.has_multiplication()) {
            AgreementVerdict v;
            v.theorem = "msn-mult";
            v.event = e;
            v.threshold = d;
            v.status = AgreementStatus::NotApplicable;
            v.note = "domain declares no multiplication";
            return v;
        }
        auto top_times_d = m.domain.otimes(m.domain.top(), *d);
        if (!top_times_d) {
            AgreementVerdict v;
            v.theorem = "msn-mult";
            v.event = e;
            v.threshold = d;
            v.status = AgreementStatus::NotApplicable;
            v.note = "top (x) d does not exist";
            return v;
        }
        return run_generalized(m, e, *d, "msn-mult", {}, *top_times_d);
    }
    if (theorem == "msn-nomult") {
        if (auto bad = need_threshold()) return *bad;
        return run_generalized(m, e, *d, "msn-nomult", {}, *d);
    }
    AgreementVerdict v;
    v.theorem = std::string(theorem);
    v.event = e;
    v.status = AgreementStatus::NotApplicable;
    v.note = "unknown theorem";
    return v;
}

CheckReport check_characterization_cond2(const EpistemicModel& m, const Value& d, Event e,
                                         Event a, Event b) {
    CheckReport r;
    r.id = "characterization-cond2";
    if (!m.common_prior()) {
        r.verdict = Verdict::NotApplicable;
        r.note = "no common prior";
        return r;
    }
    const Measure& meas = m.measure(0);
    if (!learnable(meas, a) || !learnable(meas, b)) {
        r.verdict = Verdict::NotApplicable;
        r.note = "A or B is not in F'";
        return r;
    }
    ++r.examined;
    auto pl_ab = cond(meas, a, b);
    auto pl_ba = cond(meas, b, a);
    if (!m.domain.geq(*pl_ab, d) || !m.domain.geq(*pl_ba, d)) {
        r.note = "vacuous: antecedent fails (Pl(A|B)=" + pl_ab->str() +
                 ", Pl(B|A)=" + pl_ba->str() + ")";
        return r;
    }
    auto bound = m.domain.ominus(m.domain.top(), d);
    if (!bound) {
        r.note = "vacuous: top (-) d does not exist";
        return r;
    }
    auto ea = cond(meas, e, a);
    auto eb = cond(meas, e, b);
    auto diff = m.domain.ominus(*ea, *eb);
    if (!diff) {
        r.note = "vacuous: Pl(E|A) (-) Pl(E|B) does not exist (Pl(E|A)=" + ea->str() +
                 ", Pl(E|B)=" + eb->str() + ")";
        return r;
    }
    // b (-) b comes out as bottom here because bottom is the additive unit
    // in every shipped domain; the check flags the convention.
    if (a == b) r.note = "A=B: difference reported as bottom";
    if (!m.domain.leq(*diff, *bound))
        r.fail(Witness()
                   .put("A", m.states.format_event(a))
                   .put("B", m.states.format_event(b))
                   .put("E", m.states.format_event(e))
                   .put("d", d.str())
                   .put("Pl(E|A)", ea->str())
                   .put("Pl(E|B)", eb->str())
                   .put("difference", diff->str())
                   .put("bound", bound->str()));
    return r;
}

CheckReport check_useful_lemma(const EpistemicModel& m, Event e, const Rational& p) {
    CheckReport r;
    r.id = "useful-lemma";
    if (!m.common_prior() || m.domain.kind() == DomainKind::ProductUnitRational) {
        r.verdict = Verdict::NotApplicable;
        r.note = "needs a scalar common-prior model";
        return r;
    }
    if (p <= 0 || p > 1) {
        r.verdict = Verdict::NotApplicable;
        r.note = "p must lie in (0,1]";
        return r;
    }
    const Value d = Value::scalar(p);
    const Measure& meas = m.measure(0);

    // Part 1: B_i^p(E) is a union of information sets.
    for (int i = 0; i < m.n_agents(); ++i) {
        ++r.examined;
        Event bi = d_believes(m, i, d, e);
        for (const auto& blk : m.partitions[i].blocks) {
            Event overlap = blk & bi;
            if (!overlap.empty() && overlap != blk)
                r.fail(Witness()
                           .put("part", "1")
                           .put("agent", m.agents[i])
                           .put("B", m.states.format_event(bi))
                           .put("block", m.states.format_event(blk)));
        }
    }

    // Part 2: CB^p(E) is p-evident to every agent.
    Event cb = common_belief(m, d, e);
    for (int i = 0; i < m.n_agents(); ++i) {
        ++r.examined;
        if (!cb.subset_of(d_believes(m, i, d, cb)))
            r.fail(Witness()
                       .put("part", "2")
                       .put("agent", m.agents[i])
                       .put("CB", m.states.format_event(cb)));
    }

    // Part 3: Pl(E | B_i^p(E)) >= p when B_i^p(E) is non-empty.
    for (int i = 0; i < m.n_agents(); ++i) {
        Event bi = d_believes(m, i, d, e);
        if (bi.empty()) continue;
        ++r.examined;
        auto v = cond(meas, e, bi);
        if (!v || !m.domain.geq(*v, d))
            r.fail(Witness()
                       .put("part", "3")
                       .put("agent", m.agents[i])
                       .put("B", m.states.format_event(bi))
                       .put("Pl(E|B)", v ? v->str() : "undefined")
                       .put("p", format_rational(p)));
    }

    // Part 4: on profile cells X with CB^p(X) non-empty, conditioning on
    // B_i^p(CB^p(X)) recovers r_i exactly.
    for (const auto& pg : posterior_profiles(m, e)) {
        if (!pg.defined) continue;
        Event cbx = common_belief(m, d, pg.states);
        if (cbx.empty()) continue;
        for (int i = 0; i < m.n_agents(); ++i) {
            ++r.examined;
            Event bi = d_believes(m, i, d, cbx);
            auto v = cond(meas, e, bi);
            if (!v || *v != *pg.posteriors[i])
                r.fail(Witness()
                           .put("part", "4")
                           .put("agent", m.agents[i])
                           .put("X", m.states.format_event(pg.states))
                           .put("CB(X)", m.states.format_event(cbx))
                           .put("B_i(CB(X))", m.states.format_event(bi))
                           .put("Pl(E|B_i(CB(X)))", v ? v->str() : "undefined")
                           .put("r_i", pg.posteriors[i]->str()));
        }
    }
    return r;
}

CheckReport check_comparison_lemma(const EpistemicModel& m, Event e, Event x, const Rational& p) {
    CheckReport r;
    r.id = "comparison-lemma";
    if (!m.common_prior() || m.domain.kind() == DomainKind::ProductUnitRational) {
        r.verdict = Verdict::NotApplicable;
        r.note = "needs a scalar common-prior model";
        return r;
    }
    if (p <= 0 || p > 1) {
        r.verdict = Verdict::NotApplicable;
        r.note = "p must lie in (0,1]";
        return r;
    }
    const Value d = Value::scalar(p);
    Event cb = common_belief(m, d, x);
    if (cb.empty()) {
        r.verdict = Verdict::NotApplicable;
        r.note = "CB^p(X) is empty";
        return r;
    }
    const Measure& meas = m.measure(0);
    std::vector<Event> b(m.n_agents());
    std::vector<std::optional<Value>> minus(m.n_agents()), inter(m.n_agents());
    for (int i = 0; i < m.n_agents(); ++i) {
        b[i] = d_believes(m, i, d, cb);
        minus[i] = cond(meas, cb - e, b[i]);
        inter[i] = cond(meas, e & cb, b[i]);
    }
    for (int i = 0; i < m.n_agents(); ++i) {
        for (int j = 0; j < m.n_agents(); ++j) {
            ++r.examined;
            if (!minus[i] || !minus[j] || !inter[i] || !inter[j]) {
                ++r.skipped;
                continue;
            }
            bool low = m.domain.leq(*minus[i], *minus[j]) && m.domain.leq(*inter[i], *inter[j]);
            bool high = m.domain.geq(*minus[i], *minus[j]) && m.domain.geq(*inter[i], *inter[j]);
            if (!low && !high)
                r.fail(Witness()
                           .put("i", m.agents[i])
                           .put("j", m.agents[j])
                           .put("X", m.states.format_event(x))
                           .put("CB(X)", m.states.format_event(cb))
                           .put("P(CB-E|B_i)", minus[i]->str())
                           .put("P(CB-E|B_j)", minus[j]->str())
                           .put("P(E&CB|B_i)", inter[i]->str())
                           .put("P(E&CB|B_j)", inter[j]->str()));
        }
    }
    return r;
}

}  // namespace plausia
