#pragma once

#include "plausia/axioms.hpp"
#include "plausia/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plausia {

/// One cell of the profile partition: the states whose posterior vector for
/// the checked event is exactly `posteriors`. States with any undefined
/// posterior are lumped into a single group with defined == false; the
/// theorems presuppose defined posteriors, so that group is excluded.
struct ProfileGroup {
    Event states;
    std::vector<std::optional<Value>> posteriors;
    bool defined = true;
};

std::vector<ProfileGroup> posterior_profiles(const EpistemicModel& m, Event e);

enum class GroupStatus { Holds, Vacuous, Violated, Skipped, Excluded };
enum class AgreementStatus { Holds, HoldsVacuously, Violated, NotApplicable };

const char* to_string(GroupStatus s);
const char* to_string(AgreementStatus s);

struct GroupVerdict {
    ProfileGroup group;
    Event closure;  // C(X) or CB^d(X)
    GroupStatus status = GroupStatus::Vacuous;
    std::int64_t pairs_checked = 0;
    std::int64_t pairs_skipped = 0;  // r_i (-) r_j undefined
    std::vector<Witness> witnesses;
};

struct AgreementVerdict {
    std::string theorem;
    Event event;
    std::optional<Value> threshold;
    AgreementStatus status = AgreementStatus::HoldsVacuously;
    std::vector<CheckReport> failed_hypotheses;  // nonempty iff NotApplicable
    std::vector<GroupVerdict> groups;
    std::string note;

    bool violated() const { return status == AgreementStatus::Violated; }
};

/// Aumann: common knowledge of the posterior profile forces equal
/// posteriors. NotApplicable without a common prior.
AgreementVerdict check_aumann(const EpistemicModel& m, Event e);

/// Monderer-Samet-Neeman: CB^p of the profile forces |r_i - r_j| <= 1-p.
/// Scalar common-prior models, p in (0,1].
AgreementVerdict check_msn_classical(const EpistemicModel& m, Event e, const Rational& p);

/// Generalized MSN with multiplication: bound top (-) (top (x) d).
/// Hypotheses verified first: common prior, acceptability, associativity of
/// (+), A1-A4, M1-M3. Unmet hypotheses => NotApplicable with their reports.
AgreementVerdict check_msn_with_mult(const EpistemicModel& m, Event e, const Value& d,
                                     const AxiomCheckOptions& opts = {});

/// Generalized MSN without multiplication: bound top (-) d, hypotheses
/// common prior, A1-A4, CP6 and CP7.
AgreementVerdict check_msn_without_mult(const EpistemicModel& m, Event e, const Value& d,
                                        const AxiomCheckOptions& opts = {});

/// The hypothesis batteries the generalized checkers gate on, as failed
/// reports (empty means all hold). Hypotheses are per-model, so sweeps
/// verify them once and then run conclusions per (event, threshold).
std::vector<CheckReport> msn_with_mult_hypotheses(const EpistemicModel& m,
                                                  const AxiomCheckOptions& opts = {});
/// `d` (when given) joins the CP7 threshold grid, per the grid convention
/// "realized posteriors plus the supplied threshold".
std::vector<CheckReport> msn_without_mult_hypotheses(const EpistemicModel& m,
                                                     const AxiomCheckOptions& opts = {},
                                                     const std::optional<Value>& d = {});

/// Conclusion-only evaluation, skipping hypothesis gating. This is what
/// counterexample mining replays: with a hypothesis deliberately dropped,
/// the gated checker would report not-applicable instead of showing the
/// violation. `theorem` is one of aumann | msn | msn-mult | msn-nomult
/// (threshold required for all but aumann).
AgreementVerdict check_agreement_conclusion(const EpistemicModel& m, std::string_view theorem,
                                            Event e, const std::optional<Value>& d);

/// Condition 2 of the MSN characterization: if Pl(A|B) >= d and
/// Pl(B|A) >= d then Pl(E|A) (-) Pl(E|B) <= top (-) d when everything
/// involved exists; reports which clause made it vacuous otherwise.
CheckReport check_characterization_cond2(const EpistemicModel& m, const Value& d, Event e,
                                         Event a, Event b);

/// Parts 1-4 of the key lemma behind the MSN proof, on scalar common-prior
/// models: B_i^p(E) is a union of blocks; CB^p(E) is p-evident to everyone;
/// Pl(E | B_i^p(E)) >= p; and on profile cells X with CB^p(X) nonempty,
/// Pl(E | B_i^p(CB^p(X))) recovers r_i exactly.
CheckReport check_useful_lemma(const EpistemicModel& m, Event e, const Rational& p);

/// The comparison-lemma disjunction: for every agent pair, the conditionals
/// of CB-E and E&CB given B_i^p(CB^p(X)) move in the same direction.
CheckReport check_comparison_lemma(const EpistemicModel& m, Event e, Event x, const Rational& p);

}  // namespace plausia
