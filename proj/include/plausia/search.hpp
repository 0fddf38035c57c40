#pragma once

#include "plausia/model.hpp"
#include "plausia/report.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace plausia {

enum class MeasureFamily { Prior, ProductPrior, Table };

struct SearchParams {
    int min_states = 1;
    int max_states = 4;
    int agents = 2;
    /// Priors are drawn from the grid of rationals with denominator at most
    /// this bound; never from real-valued samplers.
    int prior_denominator = 4;
    MeasureFamily family = MeasureFamily::Prior;
    /// Per-agent (non-common) priors; only used when a mining target drops
    /// the common-prior hypothesis.
    bool per_agent_priors = false;
    /// 0 enumerates every partition shape; a positive value keeps a seeded
    /// sample of that many shapes per state count (for larger spaces where
    /// the Bell numbers take off).
    int sampled_partitions = 0;
    std::vector<Value> thresholds;
    std::uint64_t seed = 0;
    std::int64_t budget = 1000000;
};

/// Deterministic enumeration of canonical models: state count ascending,
/// partition tuples in restricted-growth order, priors in grid order.
/// Isomorphic duplicates are removed by keeping only the model whose
/// encoding is least under state relabelling. Stops at params.budget.
std::vector<EpistemicModel> enumerate_models(const SearchParams& params);

/// Seeded random common-prior probability model; every partition block gets
/// positive prior so the model always validates.
EpistemicModel random_probability_model(std::mt19937_64& rng, int max_states, int agents,
                                        int prior_denominator);

/// Literal implementations of the fixpoint definitions by subset
/// enumeration; the oracles the fast operators are tested against.
/// Throw SizeCapError above 16 states.
Event brute_force_common_knowledge(const EpistemicModel& m, Event e);
Event brute_force_common_belief(const EpistemicModel& m, const Value& d, Event e);

struct MinedWitness {
    std::string model_text;  // serialized .epm
    std::string target;
    Witness payload;
    /// CLI argv that reproduces the violation once the model text is saved
    /// to <file>; the search command substitutes the real path.
    std::vector<std::string> reproduce;
};

struct MineResult {
    std::vector<MinedWitness> witnesses;
    std::int64_t examined = 0;
    std::int64_t candidates = 0;  // models that met the kept hypotheses
    bool budget_exhausted = false;
};

/// Streams the enumerated corpus, keeps the models satisfying the target's
/// hypotheses minus `dropped`, runs the target checker and collects
/// violations. An empty result is a valid outcome (evidence of soundness).
///
/// Targets: cp6 cp7 m3 m3-sat a3 a4 acc aumann msn-classical msn-mult
/// msn-nomult. Hypothesis names: common-prior acceptability a-axioms
/// m-axioms cp6 cp7.
MineResult mine_counterexamples(const std::string& target, const std::set<std::string>& dropped,
                                const SearchParams& params, int max_witnesses = 4);

std::vector<std::string> known_mine_targets();

}  // namespace plausia
