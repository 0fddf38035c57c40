#pragma once

#include "plausia/model.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace plausia {

enum class AxiomId {
    CP1, CP2, CP3, CP4, ACC, A1, A2, A3, A4, M1, M2, M3, M4, CP6, CP7, ASSOC
};

const char* to_string(AxiomId id);
std::optional<AxiomId> axiom_from_string(std::string_view name);

struct AxiomCheckOptions {
    /// Models up to this many states are checked exhaustively; larger ones
    /// fall back to seeded sampling (4096 event pairs at the default cap).
    int exhaustive_cap = 6;
    std::uint64_t seed = 0;
    std::int64_t sample_budget = 20000;
    /// Skip A3 tuples where both conditionals are bottom (Remark on the
    /// bot-plus-bot case); they are counted in `skipped`.
    bool exempt_bot_bot = false;
    /// Evaluate value-level premises on the bare realized sample instead of
    /// its depth-1 closure; corpus sweeps set this.
    bool light_domain_checks = false;
};

/// CP1..CP4 over F x F' per agent, in that order.
std::vector<CheckReport> check_cp(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// Acceptability: Pl_i(E|F) != bot implies E&F in F'.
CheckReport check_acceptability(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// A3 finite additivity over disjoint pairs per conditioning event.
CheckReport check_a3(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// A4 sandwich over disjoint families of learnable events whose union is
/// learnable; bounds are the lattice meet/join of the realized values.
CheckReport check_a4(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// M3 chain rule Pl(X|Z) = Pl(X|Y) (x) Pl(Y|Z) over X subseteq Y subseteq Z.
/// Throws NoMultiplicationError when the domain has no multiplication.
CheckReport check_m3(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// Is there ANY function (x) that could satisfy M3? Fails when two chains
/// share both level-one conditionals but disagree on the direct one.
CheckReport check_m3_satisfiable(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// CP6 cross-conditioning monotonicity (common-prior models only).
CheckReport check_cp6(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// CP7 comparability of Pl(E | B_i^d(E)) across agents, over a threshold
/// grid (defaults to every realized posterior value). `only_event`
/// restricts the event quantifier.
CheckReport check_cp7(const EpistemicModel& m, std::vector<Value> thresholds = {},
                      std::optional<Event> only_event = std::nullopt,
                      const AxiomCheckOptions& opts = {});

/// Implication check: if M1, M3 and M4 hold then CP6 must. Fail means
/// the implication itself was falsified (premises pass, CP6 does not).
CheckReport check_mult_implies_cp6(const EpistemicModel& m, const AxiomCheckOptions& opts = {});

/// Every distinct value Pl_i(E|F) realized over F x F' (exhaustive up to the
/// cap, block-conditionals only above it). This is the default sample for
/// the value-level axiom checks and the default CP7 threshold grid.
std::vector<Value> realized_conditionals(const EpistemicModel& m, int cap = 6);

/// Distinct posterior values Pl_i(E | Pi_i(w)).
std::vector<Value> realized_posteriors(const EpistemicModel& m);

/// Default CP7 threshold grid: the realized posteriors closed under lattice
/// meet. In a partial order the belief sets of two agents can both be
/// non-empty only below the meet of their posteriors, so realized values
/// alone would miss exactly the thresholds where CP7 can fail.
std::vector<Value> default_cp7_thresholds(const EpistemicModel& m);

/// Full suite in AxiomId order. `only` (if nonempty) selects a subset.
/// CP6/CP7 report NotApplicable without a common prior; M-axioms report
/// NotApplicable without a multiplication.
std::vector<CheckReport> run_axiom_suite(const EpistemicModel& m,
                                         const AxiomCheckOptions& opts = {},
                                         const std::set<AxiomId>& only = {});

}  // namespace plausia
