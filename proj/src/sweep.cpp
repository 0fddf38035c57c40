#include "plausia/sweep.hpp"

#include "plausia/agreement.hpp"
#include "plausia/operators.hpp"
#include "plausia/search.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plausia {

bool SweepResult::operator==(const SweepResult& o) const {
    if (models != o.models || instances != o.instances || violations != o.violations ||
        not_applicable != o.not_applicable || issues.size() != o.issues.size())
        return false;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (issues[i].model_index != o.issues[i].model_index) return false;
        if (issues[i].detail.fields != o.issues[i].detail.fields) return false;
    }
    return true;
}

namespace {

ModelOutcome guarded(const ModelKernel& kernel, const EpistemicModel& m) {
    try {
        return kernel(m);
    } catch (const std::exception& e) {
        ModelOutcome out;
        out.violations = 1;
        out.issues.push_back(Witness().put("exception", e.what()));
        return out;
    }
}

}  // namespace

SweepResult run_sweep(const std::vector<EpistemicModel>& corpus, const ModelKernel& kernel,
                      ExecMode mode, std::size_t issue_cap) {
    const std::int64_t n = static_cast<std::int64_t>(corpus.size());
    std::vector<ModelOutcome> outcomes(corpus.size());

    if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < n; ++i) outcomes[i] = guarded(kernel, corpus[i]);
    } else {
        for (std::int64_t i = 0; i < n; ++i) outcomes[i] = guarded(kernel, corpus[i]);
    }

    // Deterministic merge in enumeration order, identical for both modes.
    SweepResult result;
    result.models = n;
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& o = outcomes[i];
        result.instances += o.instances;
        result.violations += o.violations;
        result.not_applicable += o.not_applicable;
        for (const auto& w : o.issues)
            if (result.issues.size() < issue_cap) result.issues.push_back(SweepIssue{i, w});
    }
    return result;
}

// --- kernels -------------------------------------------------------------------

ModelOutcome oracle_diff_outcome(const EpistemicModel& m, const std::vector<Value>& thresholds) {
    ModelOutcome out;
    const std::uint32_t total = 1u << m.n_states();
    for (std::uint32_t e = 0; e < total; ++e) {
        Event ev(e);
        ++out.instances;
        Event fix = common_knowledge(m, ev);
        Event brute = brute_force_common_knowledge(m, ev);
        if (fix != brute) {
            ++out.violations;
            if (out.issues.size() < 4)
                out.issues.push_back(Witness()
                                         .put("operator", "C")
                                         .put("E", m.states.format_event(ev))
                                         .put("fixpoint", m.states.format_event(fix))
                                         .put("brute-force", m.states.format_event(brute)));
        }
        for (const auto& d : thresholds) {
            if (!m.domain.contains(d)) continue;
            ++out.instances;
            Event fixb = common_belief(m, d, ev);
            Event bruteb = brute_force_common_belief(m, d, ev);
            if (fixb != bruteb) {
                ++out.violations;
                if (out.issues.size() < 4)
                    out.issues.push_back(Witness()
                                             .put("operator", "CB")
                                             .put("E", m.states.format_event(ev))
                                             .put("d", d.str())
                                             .put("fixpoint", m.states.format_event(fixb))
                                             .put("brute-force", m.states.format_event(bruteb)));
            }
        }
    }
    return out;
}

ModelOutcome msn_soundness_outcome(const EpistemicModel& m, const std::vector<Rational>& ps) {
    ModelOutcome out;
    const std::uint32_t total = 1u << m.n_states();
    for (std::uint32_t e = 0; e < total; ++e) {
        Event ev(e);
        for (const auto& p : ps) {
            ++out.instances;
            auto v = check_msn_classical(m, ev, p);
            if (v.status == AgreementStatus::NotApplicable) {
                ++out.not_applicable;
                continue;
            }
            if (v.violated()) {
                ++out.violations;
                for (const auto& g : v.groups)
                    if (!g.witnesses.empty() && out.issues.size() < 4)
                        out.issues.push_back(g.witnesses.front());
            }
            if (p == 1) {
                auto au = check_aumann(m, ev);
                if (au.violated()) {
                    ++out.violations;
                    if (out.issues.size() < 4)
                        out.issues.push_back(
                            Witness().put("check", "aumann@p=1").put(
                                "E", m.states.format_event(ev)));
                }
                // C(X) sits inside CB^1(X); the Aumann-degeneration claim
                // rides on this inclusion.
                for (const auto& g : v.groups) {
                    if (!g.group.defined) continue;
                    Event c = common_knowledge(m, g.group.states);
                    if (!c.subset_of(g.closure)) {
                        ++out.violations;
                        if (out.issues.size() < 4)
                            out.issues.push_back(Witness()
                                                     .put("check", "C-subset-CB1")
                                                     .put("X", m.states.format_event(
                                                                   g.group.states)));
                    }
                }
            }
        }
    }
    return out;
}

ModelOutcome lemma_suite_outcome(const EpistemicModel& m, const std::vector<Rational>& ps) {
    ModelOutcome out;
    const std::uint32_t total = 1u << m.n_states();
    for (std::uint32_t e = 0; e < total; ++e) {
        Event ev(e);
        for (const auto& p : ps) {
            ++out.instances;
            auto lemma = check_useful_lemma(m, ev, p);
            if (lemma.failed()) {
                out.violations += lemma.violations;
                for (const auto& w : lemma.witnesses)
                    if (out.issues.size() < 4) out.issues.push_back(w);
            }
            // The comparison lemma quantifies over a free X; the profile
            // cells (the X the MSN proof instantiates) plus E itself cover
            // the load-bearing instances.
            auto cells = posterior_profiles(m, ev);
            std::vector<Event> xs;
            xs.push_back(ev);
            for (const auto& c : cells)
                if (c.defined) xs.push_back(c.states);
            for (const auto& x : xs) {
                ++out.instances;
                auto cmp = check_comparison_lemma(m, ev, x, p);
                if (cmp.failed()) {
                    out.violations += cmp.violations;
                    for (const auto& w : cmp.witnesses)
                        if (out.issues.size() < 4) out.issues.push_back(w);
                }
            }
        }
    }
    return out;
}

namespace {

ModelOutcome gating_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts,
                            bool with_mult) {
    ModelOutcome out;
    auto failed = with_mult ? msn_with_mult_hypotheses(m, opts)
                            : msn_without_mult_hypotheses(m, opts);
    if (!failed.empty()) {
        ++out.not_applicable;
        return out;
    }
    const char* theorem = with_mult ? "msn-mult" : "msn-nomult";
    auto thresholds = default_cp7_thresholds(m);
    const std::uint32_t total = 1u << m.n_states();
    for (std::uint32_t e = 0; e < total; ++e) {
        for (const auto& d : thresholds) {
            if (!m.domain.contains(d)) continue;
            ++out.instances;
            auto v = check_agreement_conclusion(m, theorem, Event(e), d);
            if (v.violated()) {
                ++out.violations;
                for (const auto& g : v.groups)
                    if (!g.witnesses.empty() && out.issues.size() < 4)
                        out.issues.push_back(g.witnesses.front());
            }
        }
    }
    return out;
}

}  // namespace

ModelOutcome gating_with_mult_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    return gating_outcome(m, opts, true);
}

ModelOutcome gating_without_mult_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    return gating_outcome(m, opts, false);
}

ModelOutcome mult_implies_cp6_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts) {
    ModelOutcome out;
    ++out.instances;
    AxiomCheckOptions light = opts;
    light.light_domain_checks = true;
    auto r = check_mult_implies_cp6(m, light);
    if (r.verdict == Verdict::NotApplicable || r.skipped > 0) {
        // No common prior, or the premises fail and the implication is
        // vacuous here; either way this model confirms nothing.
        ++out.not_applicable;
    } else if (r.failed()) {
        ++out.violations;
        for (const auto& w : r.witnesses)
            if (out.issues.size() < 4) out.issues.push_back(w);
    }
    return out;
}

}  // namespace plausia
