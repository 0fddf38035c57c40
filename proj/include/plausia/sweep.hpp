#pragma once

#include "plausia/axioms.hpp"
#include "plausia/model.hpp"
#include "plausia/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace plausia {

/// Corpus sweeps are embarrassingly parallel across models. Parallel runs
/// the per-model kernel under OpenMP; Serial is the reference
/// implementation the parallel path is tested against. Results are merged
/// in enumeration order either way, so both modes produce identical output.
enum class ExecMode { Serial, Parallel };

struct ModelOutcome {
    std::int64_t instances = 0;
    std::int64_t violations = 0;
    std::int64_t not_applicable = 0;
    std::vector<Witness> issues;  // capped per model
};

struct SweepIssue {
    std::int64_t model_index = 0;
    Witness detail;
};

struct SweepResult {
    std::int64_t models = 0;
    std::int64_t instances = 0;
    std::int64_t violations = 0;
    std::int64_t not_applicable = 0;
    std::vector<SweepIssue> issues;

    bool clean() const { return violations == 0; }
    bool operator==(const SweepResult& o) const;
};

using ModelKernel = std::function<ModelOutcome(const EpistemicModel&)>;

SweepResult run_sweep(const std::vector<EpistemicModel>& corpus, const ModelKernel& kernel,
                      ExecMode mode, std::size_t issue_cap = 16);

// --- Per-model kernels ----------------------------------------------------

/// Fixpoint operators vs brute-force subset enumeration: common knowledge
/// plus common d-belief at each threshold, over every event.
ModelOutcome oracle_diff_outcome(const EpistemicModel& m, const std::vector<Value>& thresholds);

/// MSN soundness on a scalar common-prior model: zero bound violations for
/// each (event, p); at p = 1 the verdicts must coincide with Aumann
/// equality (and C(X) must sit inside CB^1(X)).
ModelOutcome msn_soundness_outcome(const EpistemicModel& m, const std::vector<Rational>& ps);

/// UsefulLemma parts 1-4 plus the comparison-lemma disjunction over every
/// event and profile cell.
ModelOutcome lemma_suite_outcome(const EpistemicModel& m, const std::vector<Rational>& ps);

/// Generalized-MSN gating: models passing the stated hypotheses must show
/// zero violations; hypothesis failures count as not_applicable.
ModelOutcome gating_with_mult_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts);
ModelOutcome gating_without_mult_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts);

/// The M1 & M3 & M4 => CP6 implication on one model.
ModelOutcome mult_implies_cp6_outcome(const EpistemicModel& m, const AxiomCheckOptions& opts);

}  // namespace plausia
