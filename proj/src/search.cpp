#include "plausia/search.hpp"

#include "plausia/agreement.hpp"
#include "plausia/axioms.hpp"
#include "plausia/errors.hpp"
#include "plausia/modelfile.hpp"
#include "plausia/operators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace plausia {

namespace {

std::vector<std::string> default_state_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
    return names;
}

std::vector<std::string> default_agent_names(int a) {
    std::vector<std::string> names;
    for (int i = 0; i < a; ++i) names.push_back(std::to_string(i + 1));
    return names;
}

// Set partitions as restricted growth strings: a[0]=0 and
// a[i] <= 1 + max(a[0..i-1]); lexicographic enumeration.
std::vector<std::vector<int>> all_rgs(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[i] = v;
            rec(i + 1, std::max(mx, v));
        }
    };
    rec(1, 0);
    return out;
}

Partition partition_from_rgs(const std::vector<int>& rgs) {
    int n = static_cast<int>(rgs.size());
    int k = 1 + *std::max_element(rgs.begin(), rgs.end());
    std::vector<Event> blocks(k);
    for (int i = 0; i < n; ++i) blocks[rgs[i]] = blocks[rgs[i]] | Event::single(i);
    return Partition::from_blocks(std::move(blocks), n);
}

// Distinct priors on the denominator-bounded grid: weight vectors summing
// to d for d = 1..bound, skipping vectors whose gcd with d exceeds 1 (those
// already appeared at a smaller denominator). Lexicographic within d.
std::vector<std::vector<Rational>> grid_priors(int n, int bound) {
    std::vector<std::vector<Rational>> out;
    for (int d = 1; d <= bound; ++d) {
        std::vector<int> w(n, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1) {
                w[i] = left;
                int g = d;
                for (int x : w) g = std::gcd(g, x);
                if (g == 1) {
                    std::vector<Rational> prior;
                    prior.reserve(n);
                    for (int x : w) prior.emplace_back(x, d);
                    out.push_back(std::move(prior));
                }
                return;
            }
            for (int v = 0; v <= left; ++v) {
                w[i] = v;
                rec(i + 1, left - v);
            }
        };
        rec(0, d);
    }
    return out;
}

bool blocks_positive(const EpistemicModel& m) {
    for (int i = 0; i < m.n_agents(); ++i)
        for (const auto& b : m.partitions[i].blocks)
            if (!b.empty() && !learnable(m.measure(i), b)) return false;
    return true;
}

Event permute_event(Event e, const std::vector<int>& perm) {
    Event out;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (e.contains(perm[i])) out = out | Event::single(static_cast<int>(i));
    return out;
}

// Compact relabel-invariant encoding: per agent the canonical RGS of the
// permuted partition, then the prior numerators in the new state order.
// A model is kept iff no relabelling encodes strictly smaller.
std::vector<std::int64_t> encode_permuted(const EpistemicModel& m, const std::vector<int>& perm) {
    const int n = m.n_states();
    std::vector<std::int64_t> code;
    for (int a = 0; a < m.n_agents(); ++a) {
        std::vector<int> label(n, -1);
        int next = 0;
        for (int i = 0; i < n; ++i) {
            int blk = m.partitions[a].block_index[perm[i]];
            bool fresh = true;
            for (int j = 0; j < i; ++j)
                if (m.partitions[a].block_index[perm[j]] == blk) {
                    code.push_back(label[j]);
                    fresh = false;
                    break;
                }
            if (fresh) {
                label[i] = next++;
                code.push_back(label[i]);
            } else {
                label[i] = code.back();
            }
        }
    }
    auto encode_prior = [&](const PriorMeasure& p) {
        for (int i = 0; i < n; ++i) {
            const Rational& r = p.prior[perm[i]];
            code.push_back(*to_int64(numerator(r)));
            code.push_back(*to_int64(denominator(r)));
        }
    };
    for (const auto& meas : m.measures) {
        std::visit(
            [&](const auto& mm) {
                using T = std::decay_t<decltype(mm)>;
                if constexpr (std::is_same_v<T, PriorMeasure>) {
                    encode_prior(mm);
                } else if constexpr (std::is_same_v<T, ProductPriorMeasure>) {
                    encode_prior(mm.p);
                    encode_prior(mm.q);
                } else {
                    encode_prior(mm.base);
                    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int64_t,
                                           std::int64_t>>
                        ovs;
                    for (const auto& o : mm.overrides)
                        ovs.emplace_back(permute_event(o.given, perm).bits,
                                         permute_event(o.event, perm).bits,
                                         *to_int64(numerator(o.value.first())),
                                         *to_int64(denominator(o.value.first())));
                    std::sort(ovs.begin(), ovs.end());
                    for (const auto& [g, e, num, den] : ovs) {
                        code.push_back(g);
                        code.push_back(e);
                        code.push_back(num);
                        code.push_back(den);
                    }
                }
            },
            meas);
    }
    return code;
}

bool is_canonical(const EpistemicModel& m) {
    const int n = m.n_states();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto identity_code = encode_permuted(m, perm);
    while (std::next_permutation(perm.begin(), perm.end()))
        if (encode_permuted(m, perm) < identity_code) return false;
    return true;
}

EpistemicModel base_model(int n, int agents) {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    m.states = StateSpace(default_state_names(n));
    m.agents = default_agent_names(agents);
    m.common_prior_declared = true;
    return m;
}

}  // namespace

std::vector<EpistemicModel> enumerate_models(const SearchParams& params) {
    if (params.budget < 1) throw Error("search budget must be >= 1");
    if (params.prior_denominator < 1) throw Error("prior denominator must be >= 1");
    std::vector<EpistemicModel> out;
    for (int n = std::max(1, params.min_states); n <= params.max_states; ++n) {
        auto rgss = all_rgs(n);
        if (params.sampled_partitions > 0 &&
            static_cast<int>(rgss.size()) > params.sampled_partitions) {
            std::mt19937_64 rng(params.seed + static_cast<std::uint64_t>(n));
            std::shuffle(rgss.begin(), rgss.end(), rng);
            rgss.resize(params.sampled_partitions);
            std::sort(rgss.begin(), rgss.end());
        }
        auto priors = grid_priors(n, params.prior_denominator);

        std::vector<std::vector<int>> tuple(params.agents);
        std::function<void(int)> over_partitions = [&](int agent) {
            if (static_cast<std::int64_t>(out.size()) >= params.budget) return;
            if (agent == params.agents) {
                auto emit = [&](EpistemicModel&& m) {
                    if (static_cast<std::int64_t>(out.size()) >= params.budget) return;
                    if (!blocks_positive(m)) return;
                    if (!is_canonical(m)) return;
                    out.push_back(std::move(m));
                };
                if (params.family == MeasureFamily::Prior && !params.per_agent_priors) {
                    for (const auto& prior : priors) {
                        EpistemicModel m = base_model(n, params.agents);
                        for (int a = 0; a < params.agents; ++a)
                            m.partitions.push_back(partition_from_rgs(tuple[a]));
                        m.measures.push_back(PriorMeasure::make(prior));
                        emit(std::move(m));
                    }
                } else if (params.family == MeasureFamily::Prior) {
                    for (const auto& p1 : priors)
                        for (const auto& p2 : priors) {
                            EpistemicModel m = base_model(n, params.agents);
                            m.common_prior_declared = false;
                            for (int a = 0; a < params.agents; ++a)
                                m.partitions.push_back(partition_from_rgs(tuple[a]));
                            m.measures.push_back(PriorMeasure::make(p1));
                            for (int a = 1; a < params.agents; ++a)
                                m.measures.push_back(PriorMeasure::make(p2));
                            emit(std::move(m));
                        }
                } else if (params.family == MeasureFamily::ProductPrior) {
                    for (const auto& p : priors)
                        for (const auto& q : priors) {
                            EpistemicModel m = base_model(n, params.agents);
                            m.domain = Domain::product_unit_rational();
                            for (int a = 0; a < params.agents; ++a)
                                m.partitions.push_back(partition_from_rgs(tuple[a]));
                            m.measures.push_back(ProductPriorMeasure::make(p, q));
                            emit(std::move(m));
                        }
                } else {
                    // Perturbed-table family: shift +delta/-delta
                    // between two states on every event conditioned on W
                    // that separates them; additivity survives by
                    // construction, everything else is checked downstream.
                    for (const auto& prior : priors) {
                        bool full_support = std::all_of(prior.begin(), prior.end(),
                                                        [](const Rational& r) { return r > 0; });
                        if (!full_support) continue;
                        for (int sa = 0; sa < n; ++sa)
                            for (int sb = 0; sb < n; ++sb) {
                                if (sa == sb) continue;
                                for (int dk = 2; dk <= 4; dk *= 2) {
                                    Rational delta(1, dk * params.prior_denominator);
                                    if (delta >= prior[sb]) continue;
                                    EpistemicModel m = base_model(n, params.agents);
                                    for (int a = 0; a < params.agents; ++a)
                                        m.partitions.push_back(partition_from_rgs(tuple[a]));
                                    TableMeasure tm;
                                    tm.base = PriorMeasure::make(prior);
                                    Event w = Event::universe(n);
                                    for (std::uint32_t s = 1; s < w.bits; ++s) {
                                        bool has_a = Event(s).contains(sa);
                                        bool has_b = Event(s).contains(sb);
                                        if (has_a == has_b) continue;
                                        Rational base = tm.base.mass(Event(s));
                                        Rational v =
                                            has_a ? Rational(base + delta) : Rational(base - delta);
                                        tm.overrides.push_back(
                                            TableOverride{Event(s), w, Value::scalar(v)});
                                    }
                                    std::sort(tm.overrides.begin(), tm.overrides.end(),
                                              [](const TableOverride& x, const TableOverride& y) {
                                                  if (x.given != y.given) return x.given < y.given;
                                                  return x.event < y.event;
                                              });
                                    m.measures.push_back(std::move(tm));
                                    emit(std::move(m));
                                }
                            }
                    }
                }
                return;
            }
            for (const auto& rgs : rgss) {
                tuple[agent] = rgs;
                over_partitions(agent + 1);
            }
        };
        over_partitions(0);
        if (static_cast<std::int64_t>(out.size()) >= params.budget) break;
    }
    return out;
}

EpistemicModel random_probability_model(std::mt19937_64& rng, int max_states, int agents,
                                        int prior_denominator) {
    int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_states - 1)));
    EpistemicModel m = base_model(n, agents);
    for (int a = 0; a < agents; ++a) {
        std::vector<int> rgs(n, 0);
        int mx = 0;
        for (int i = 1; i < n; ++i) {
            rgs[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(mx + 2));
            mx = std::max(mx, rgs[i]);
        }
        m.partitions.push_back(partition_from_rgs(rgs));
    }
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<int> weights(n, 0);
        for (int b = 0; b < prior_denominator; ++b)
            ++weights[rng() % static_cast<std::uint64_t>(n)];
        std::vector<Rational> prior;
        for (int w : weights) prior.emplace_back(w, prior_denominator);
        m.measures.assign(1, PriorMeasure::make(prior));
        if (blocks_positive(m)) return m;
    }
    // Uniform prior always validates: every block is non-empty.
    std::vector<Rational> uniform(n, Rational(1, n));
    m.measures.assign(1, PriorMeasure::make(uniform));
    return m;
}

Event brute_force_common_knowledge(const EpistemicModel& m, Event e) {
    if (m.n_states() > 16)
        throw SizeCapError("brute-force oracle capped at 16 states");
    Event out;
    for (std::uint32_t z = e.bits;; z = (z - 1) & e.bits) {
        if (self_evident(m, Event(z))) out = out | Event(z);
        if (z == 0) break;
    }
    return out;
}

Event brute_force_common_belief(const EpistemicModel& m, const Value& d, Event e) {
    if (m.n_states() > 16)
        throw SizeCapError("brute-force oracle capped at 16 states");
    Event b = mutual_belief(m, d, e);
    Event out;
    for (std::uint32_t z = b.bits;; z = (z - 1) & b.bits) {
        if (d_self_evident(m, d, Event(z))) out = out | Event(z);
        if (z == 0) break;
    }
    return out;
}

// --- counterexample mining -----------------------------------------------------

namespace {

struct TargetSpec {
    std::set<std::string> hypotheses;
    // Returns the first violation witness, if any.
    std::function<std::optional<Witness>(const EpistemicModel&, const SearchParams&)> check;
    std::function<std::vector<std::string>(const Witness&)> reproduce;
};

std::vector<Value> mining_thresholds(const EpistemicModel& m, const SearchParams& params) {
    if (!params.thresholds.empty()) return params.thresholds;
    if (m.domain.kind() == DomainKind::ProductUnitRational) return default_cp7_thresholds(m);
    std::vector<Value> out;
    for (int k = 1; k <= 4; ++k) out.push_back(Value::scalar(Rational(k, 4)));
    return out;
}

std::optional<Witness> first_report_witness(const CheckReport& r) {
    if (!r.failed()) return std::nullopt;
    if (!r.witnesses.empty()) return r.witnesses.front();
    return Witness().put("check", r.id);
}

std::optional<Witness> theorem_violation(const EpistemicModel& m, const SearchParams& params,
                                         const std::string& theorem) {
    const bool needs_threshold = theorem != "aumann";
    auto thresholds = mining_thresholds(m, params);
    for (std::uint32_t e = 0; e < (1u << m.n_states()); ++e) {
        if (!needs_threshold) {
            auto v = check_agreement_conclusion(m, theorem, Event(e), std::nullopt);
            if (v.violated())
                for (const auto& g : v.groups)
                    if (!g.witnesses.empty()) {
                        Witness w = g.witnesses.front();
                        w.put("event", m.states.format_event(Event(e)));
                        return w;
                    }
            continue;
        }
        for (const auto& d : thresholds) {
            AgreementVerdict v;
            try {
                v = check_agreement_conclusion(m, theorem, Event(e), d);
            } catch (const MonotonicityError&) {
                continue;
            }
            if (v.violated())
                for (const auto& g : v.groups)
                    if (!g.witnesses.empty()) {
                        Witness w = g.witnesses.front();
                        w.put("event", m.states.format_event(Event(e)));
                        w.put("threshold", d.str());
                        return w;
                    }
        }
    }
    return std::nullopt;
}

std::map<std::string, TargetSpec> make_registry() {
    std::map<std::string, TargetSpec> reg;
    AxiomCheckOptions opts;

    auto axiom_repro = [](std::string id) {
        return [id](const Witness&) -> std::vector<std::string> {
            return {"axioms", "{file}", "--only", id};
        };
    };
    auto theorem_repro = [](std::string id) {
        return [id](const Witness& w) -> std::vector<std::string> {
            std::vector<std::string> args = {"agreement", "{file}", "--theorem", id, "--assume"};
            if (const auto* e = w.find("event")) {
                args.push_back("--event");
                args.push_back(*e);
            }
            if (const auto* d = w.find("threshold")) {
                args.push_back("--threshold");
                args.push_back(*d);
            }
            return args;
        };
    };

    reg["cp7"] = TargetSpec{
        {"common-prior", "a-axioms", "m-axioms"},
        [opts](const EpistemicModel& m, const SearchParams&) {
            return first_report_witness(check_cp7(m, {}, std::nullopt, opts));
        },
        axiom_repro("CP7")};
    reg["cp6"] = TargetSpec{
        {"common-prior", "m-axioms"},
        [opts](const EpistemicModel& m, const SearchParams&) {
            return first_report_witness(check_cp6(m, opts));
        },
        axiom_repro("CP6")};
    reg["m3"] = TargetSpec{
        {"common-prior", "a-axioms", "cp6", "cp7"},
        [opts](const EpistemicModel& m, const SearchParams&) -> std::optional<Witness> {
            if (!m.domain.has_multiplication()) return std::nullopt;
            return first_report_witness(check_m3(m, opts));
        },
        axiom_repro("M3")};
    reg["m3-sat"] = TargetSpec{
        {"common-prior", "a-axioms", "cp6", "cp7"},
        [opts](const EpistemicModel& m, const SearchParams&) {
            return first_report_witness(check_m3_satisfiable(m, opts));
        },
        axiom_repro("M3-SAT")};
    reg["a3"] = TargetSpec{
        {"common-prior"},
        [opts](const EpistemicModel& m, const SearchParams&) {
            return first_report_witness(check_a3(m, opts));
        },
        axiom_repro("A3")};
    reg["a4"] = TargetSpec{
        {"common-prior"},
        [opts](const EpistemicModel& m, const SearchParams&) {
            return first_report_witness(check_a4(m, opts));
        },
        axiom_repro("A4")};
    reg["acc"] = TargetSpec{
        {"common-prior"},
        [opts](const EpistemicModel& m, const SearchParams&) {
            return first_report_witness(check_acceptability(m, opts));
        },
        axiom_repro("ACC")};

    for (const char* theorem : {"aumann", "msn-classical", "msn-mult", "msn-nomult"}) {
        std::string id = theorem;
        std::string conclusion_id = id == "msn-classical" ? "msn" : id;
        std::set<std::string> hyps = {"common-prior"};
        if (id == "msn-mult") hyps = {"common-prior", "acceptability", "a-axioms", "m-axioms"};
        if (id == "msn-nomult") hyps = {"common-prior", "a-axioms", "cp6", "cp7"};
        reg[id] = TargetSpec{
            hyps,
            [conclusion_id](const EpistemicModel& m, const SearchParams& p) {
                return theorem_violation(m, p, conclusion_id);
            },
            theorem_repro(conclusion_id)};
    }
    return reg;
}

bool hypothesis_holds(const EpistemicModel& m, const std::string& hyp,
                      const AxiomCheckOptions& opts) {
    if (hyp == "common-prior") return m.common_prior();
    if (hyp == "acceptability") return check_acceptability(m, opts).passed();
    if (hyp == "cp6") return check_cp6(m, opts).passed();
    if (hyp == "cp7") return check_cp7(m, {}, std::nullopt, opts).passed();
    // A1/A2/ASSOC and M1/M2 hold identically on the shipped domains, so the
    // hypothesis filters reduce to the model-level checks plus M4 on the
    // realized values (M4 is the one value-level premise that genuinely
    // depends on which values the model hits).
    if (hyp == "a-axioms") return check_a3(m, opts).passed() && check_a4(m, opts).passed();
    if (hyp == "m-axioms") {
        if (!m.domain.has_multiplication()) return false;
        if (!check_m3(m, opts).passed()) return false;
        DomainAxiomOptions dopts;
        dopts.close_under_ops = false;
        auto dom = check_domain_axioms(m.domain, realized_conditionals(m), dopts);
        for (const auto& r : dom)
            if (r.id == "M4" && !r.passed()) return false;
        return true;
    }
    throw Error("unknown hypothesis: " + hyp);
}

}  // namespace

std::vector<std::string> known_mine_targets() {
    std::vector<std::string> out;
    for (const auto& [k, v] : make_registry()) out.push_back(k);
    return out;
}

MineResult mine_counterexamples(const std::string& target, const std::set<std::string>& dropped,
                                const SearchParams& params, int max_witnesses) {
    auto registry = make_registry();
    auto it = registry.find(target);
    if (it == registry.end()) throw Error("unknown search target: " + target);
    const TargetSpec& spec = it->second;

    AxiomCheckOptions opts;
    opts.seed = params.seed;

    SearchParams eparams = params;
    if (dropped.count("common-prior") && params.family == MeasureFamily::Prior)
        eparams.per_agent_priors = true;

    MineResult result;
    auto corpus = enumerate_models(eparams);
    result.budget_exhausted = static_cast<std::int64_t>(corpus.size()) >= params.budget;

    for (const auto& m : corpus) {
        ++result.examined;
        bool keep = true;
        for (const auto& hyp : spec.hypotheses) {
            if (dropped.count(hyp)) continue;
            if (!hypothesis_holds(m, hyp, opts)) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        ++result.candidates;
        std::optional<Witness> w;
        try {
            w = spec.check(m, params);
        } catch (const MonotonicityError&) {
            continue;
        }
        if (!w) continue;
        MinedWitness mw;
        mw.model_text = serialize_model(m);
        mw.target = target;
        mw.payload = *w;
        mw.reproduce = spec.reproduce(*w);
        result.witnesses.push_back(std::move(mw));
        if (static_cast<int>(result.witnesses.size()) >= max_witnesses) break;
    }
    return result;
}

}  // namespace plausia
