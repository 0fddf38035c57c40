#include "plausia/cli.hpp"

#include "plausia/agreement.hpp"
#include "plausia/axioms.hpp"
#include "plausia/errors.hpp"
#include "plausia/expr.hpp"
#include "plausia/modelfile.hpp"
#include "plausia/operators.hpp"
#include "plausia/search.hpp"
#include "plausia/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace plausia {

namespace {

using Json = nlohmann::ordered_json;

Json witness_json(const Witness& w) {
    Json j = Json::object();
    for (const auto& [k, v] : w.fields) j[k] = v;
    return j;
}

Json report_json(const CheckReport& r) {
    Json j;
    j["axiom"] = r.id;
    j["verdict"] = to_string(r.verdict);
    j["examined"] = r.examined;
    j["skipped"] = r.skipped;
    j["violations"] = r.violations;
    j["witnesses"] = Json::array();
    for (const auto& w : r.witnesses) j["witnesses"].push_back(witness_json(w));
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json verdict_json(const AgreementVerdict& v, const EpistemicModel& m) {
    Json j;
    j["theorem"] = v.theorem;
    j["event"] = m.states.format_event(v.event);
    if (v.threshold) j["threshold"] = v.threshold->str();
    j["status"] = to_string(v.status);
    if (!v.note.empty()) j["note"] = v.note;
    j["failed_hypotheses"] = Json::array();
    for (const auto& r : v.failed_hypotheses) j["failed_hypotheses"].push_back(report_json(r));
    j["groups"] = Json::array();
    for (const auto& g : v.groups) {
        Json gj;
        gj["X"] = m.states.format_event(g.group.states);
        Json profile = Json::array();
        for (const auto& p : g.group.posteriors)
            profile.push_back(p ? p->str() : "undefined");
        gj["profile"] = profile;
        gj["closure"] = m.states.format_event(g.closure);
        gj["status"] = to_string(g.status);
        gj["pairs_checked"] = g.pairs_checked;
        gj["pairs_skipped"] = g.pairs_skipped;
        gj["witnesses"] = Json::array();
        for (const auto& w : g.witnesses) gj["witnesses"].push_back(witness_json(w));
        j["groups"].push_back(std::move(gj));
    }
    return j;
}

std::string verdict_text(const AgreementVerdict& v, const EpistemicModel& m) {
    std::ostringstream os;
    os << "theorem: " << v.theorem << "\n";
    os << "event: " << m.states.format_event(v.event) << "\n";
    if (v.threshold) os << "threshold: " << v.threshold->str() << "\n";
    os << "status: " << to_string(v.status) << "\n";
    if (!v.note.empty()) os << "note: " << v.note << "\n";
    for (const auto& r : v.failed_hypotheses) os << "failed hypothesis: " << to_text(r) << "\n";
    for (const auto& g : v.groups) {
        os << "group X=" << m.states.format_event(g.group.states) << " profile (";
        for (std::size_t i = 0; i < g.group.posteriors.size(); ++i) {
            if (i) os << ",";
            os << (g.group.posteriors[i] ? g.group.posteriors[i]->str() : "undefined");
        }
        os << ") closure=" << m.states.format_event(g.closure) << " -> " << to_string(g.status);
        if (g.pairs_skipped > 0) os << " (skipped pairs: " << g.pairs_skipped << ")";
        os << "\n";
        for (const auto& w : g.witnesses) os << "  witness: " << w.str() << "\n";
    }
    return os.str();
}

int load_or_fail(const std::string& path, std::ostream& out, std::ostream& err, bool json,
                 std::optional<EpistemicModel>& model) {
    auto result = load_model_file(path);
    if (result.ok()) {
        model = std::move(result.model);
        return kExitPass;
    }
    if (json) {
        Json j;
        j["file"] = path;
        j["errors"] = Json::array();
        for (const auto& e : result.errors) {
            Json ej;
            ej["line"] = e.line;
            ej["column"] = e.column;
            ej["message"] = e.message;
            if (!e.token.empty()) ej["token"] = e.token;
            j["errors"].push_back(std::move(ej));
        }
        j["validation"] = Json::array();
        for (const auto& r : result.validation) j["validation"].push_back(report_json(r));
        out << j.dump(2) << "\n";
    } else {
        for (const auto& e : result.errors) err << path << ": " << e.str() << "\n";
        for (const auto& r : result.validation) err << path << ": validation " << to_text(r) << "\n";
    }
    return result.errors.empty() ? kExitViolation : kExitUsage;
}

int env_exhaustive_cap() {
    if (const char* s = std::getenv("PLAUSIA_MAX_STATES")) {
        int v = std::atoi(s);
        if (v >= 1 && v <= 16) return v;
    }
    return 6;
}

struct CommonFlags {
    std::string format = "text";
    std::uint64_t seed = 0;
    bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", flags.seed, "Seed for sampled checks");
}

// --- validate ----------------------------------------------------------------

int cmd_validate(const std::string& file, const CommonFlags& flags, std::ostream& out,
                 std::ostream& err) {
    std::optional<EpistemicModel> model;
    int rc = load_or_fail(file, out, err, flags.json(), model);
    if (rc != kExitPass) return rc;
    if (flags.json()) {
        Json j;
        j["file"] = file;
        j["valid"] = true;
        j["name"] = model->name;
        j["domain"] = model->domain.token();
        j["states"] = model->n_states();
        j["agents"] = model->n_agents();
        j["common_prior"] = model->common_prior();
        out << j.dump(2) << "\n";
    } else {
        out << "ok: " << (model->name.empty() ? file : model->name) << " ("
            << model->domain.token() << ", " << model->n_states() << " states, "
            << model->n_agents() << " agents)\n";
    }
    return kExitPass;
}

// --- eval --------------------------------------------------------------------

int cmd_eval(const std::string& file, const std::string& text, bool trace,
             const CommonFlags& flags, std::ostream& out, std::ostream& err) {
    std::optional<EpistemicModel> model;
    int rc = load_or_fail(file, out, err, flags.json(), model);
    if (rc != kExitPass) return rc;

    auto parsed = parse_expression(text, *model);
    if (!parsed.ok()) {
        err << "expression error: " << parsed.error->str() << "\n";
        return kExitUsage;
    }
    EvalOptions opts;
    opts.record_traces = trace;
    EvalResult result;
    try {
        result = eval_expression(*parsed.expr, *model, opts);
    } catch (const Error& e) {
        err << "evaluation error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (flags.json()) {
        Json j;
        j["expression"] = expr_to_string(*parsed.expr, *model);
        j["result"] = model->states.format_event(result.value);
        if (result.bottom_threshold)
            j["note"] = "bottom threshold: belief operator is degenerate";
        j["traces"] = Json::array();
        for (const auto& [label, tr] : result.traces) {
            Json tj;
            tj["operator"] = label;
            tj["initial"] = model->states.format_event(tr.initial);
            tj["steps"] = Json::array();
            for (const auto& s : tr.steps) tj["steps"].push_back(model->states.format_event(s));
            tj["result"] = model->states.format_event(tr.result);
            j["traces"].push_back(std::move(tj));
        }
        out << j.dump(2) << "\n";
    } else {
        out << model->states.format_event(result.value) << "\n";
        if (result.bottom_threshold)
            out << "# note: bottom threshold, belief operator is degenerate\n";
        for (const auto& [label, tr] : result.traces) {
            out << "# trace " << label << "\n";
            for (std::size_t i = 0; i < tr.steps.size(); ++i)
                out << "#   " << i << ": " << model->states.format_event(tr.steps[i]) << "\n";
            out << "#   fix: " << model->states.format_event(tr.result) << "\n";
        }
    }
    return kExitPass;
}

// --- axioms --------------------------------------------------------------------

int cmd_axioms(const std::string& file, const std::string& only, bool exempt_bot_bot,
               const CommonFlags& flags, std::ostream& out, std::ostream& err) {
    std::optional<EpistemicModel> model;
    int rc = load_or_fail(file, out, err, flags.json(), model);
    if (rc != kExitPass) return rc;

    std::set<AxiomId> subset;
    bool m3sat = false;
    if (!only.empty()) {
        std::stringstream ss(only);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token == "M3-SAT" || token == "m3-sat" || token == "M3SAT") {
                m3sat = true;
                continue;
            }
            auto id = axiom_from_string(token);
            if (!id) {
                err << "unknown axiom id: " << token << "\n";
                return kExitUsage;
            }
            subset.insert(*id);
        }
    }

    AxiomCheckOptions opts;
    opts.seed = flags.seed;
    opts.exempt_bot_bot = exempt_bot_bot;
    opts.exhaustive_cap = env_exhaustive_cap();

    std::vector<CheckReport> reports;
    if (subset.empty() && !m3sat) {
        reports = run_axiom_suite(*model, opts);
    } else if (!subset.empty()) {
        reports = run_axiom_suite(*model, opts, subset);
    }
    if (m3sat) reports.push_back(check_m3_satisfiable(*model, opts));

    if (flags.json()) {
        Json j;
        j["file"] = file;
        j["seed"] = flags.seed;
        j["reports"] = Json::array();
        for (const auto& r : reports) j["reports"].push_back(report_json(r));
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) out << to_text(r) << "\n";
    }

    bool any_fail = false, any_na = false;
    for (const auto& r : reports) {
        if (r.failed()) any_fail = true;
        if (r.verdict == Verdict::NotApplicable) any_na = true;
    }
    if (any_fail) return kExitViolation;
    // Explicitly requested checks that cannot run are a distinct outcome;
    // on a default full run they are informational only.
    if ((!subset.empty() || m3sat) && any_na) return kExitNotApplicable;
    return kExitPass;
}

// --- agreement -------------------------------------------------------------------

int cmd_agreement(const std::string& file, const std::string& theorem,
                  const std::string& event_text, const std::string& threshold_text, bool assume,
                  const CommonFlags& flags, std::ostream& out, std::ostream& err) {
    std::optional<EpistemicModel> model;
    int rc = load_or_fail(file, out, err, flags.json(), model);
    if (rc != kExitPass) return rc;

    Event e;
    if (auto it = model->named_events.find(event_text); it != model->named_events.end()) {
        e = it->second;
    } else if (auto parsed = model->states.parse_event(event_text)) {
        e = *parsed;
    } else {
        err << "unknown event: " << event_text << " (use a name or a literal like {w1 w2})\n";
        return kExitUsage;
    }

    std::optional<Value> d;
    if (!threshold_text.empty()) {
        d = model->domain.parse(threshold_text);
        if (!d) {
            err << "threshold '" << threshold_text << "' is not a value of domain "
                << model->domain.token() << "\n";
            return kExitUsage;
        }
    }
    if (theorem != "aumann" && !d) {
        err << "--theorem " << theorem << " needs --threshold\n";
        return kExitUsage;
    }

    AxiomCheckOptions opts;
    opts.seed = flags.seed;
    opts.exhaustive_cap = env_exhaustive_cap();

    AgreementVerdict v;
    try {
        if (assume) {
            v = check_agreement_conclusion(*model, theorem, e, d);
        } else if (theorem == "aumann") {
            v = check_aumann(*model, e);
        } else if (theorem == "msn") {
            if (d->is_pair()) {
                err << "--theorem msn needs a scalar threshold\n";
                return kExitUsage;
            }
            v = check_msn_classical(*model, e, d->scalar_value());
        } else if (theorem == "msn-mult") {
            v = check_msn_with_mult(*model, e, *d, opts);
        } else if (theorem == "msn-nomult") {
            v = check_msn_without_mult(*model, e, *d, opts);
        } else {
            err << "unknown theorem: " << theorem << "\n";
            return kExitUsage;
        }
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    }

    if (flags.json())
        out << verdict_json(v, *model).dump(2) << "\n";
    else
        out << verdict_text(v, *model);

    switch (v.status) {
        case AgreementStatus::Violated: return kExitViolation;
        case AgreementStatus::NotApplicable: return kExitNotApplicable;
        default: return kExitPass;
    }
}

// --- search ----------------------------------------------------------------------

int cmd_search(const std::string& target, const std::string& drop, SearchParams params,
               const std::string& family, const std::string& out_dir, const CommonFlags& flags,
               std::ostream& out, std::ostream& err) {
    if (family == "prior")
        params.family = MeasureFamily::Prior;
    else if (family == "product")
        params.family = MeasureFamily::ProductPrior;
    else if (family == "table")
        params.family = MeasureFamily::Table;
    else {
        err << "unknown family: " << family << "\n";
        return kExitUsage;
    }
    params.seed = flags.seed;

    std::set<std::string> dropped;
    if (!drop.empty()) {
        std::stringstream ss(drop);
        std::string token;
        while (std::getline(ss, token, ',')) dropped.insert(token);
    }

    MineResult result;
    try {
        result = mine_counterexamples(target, dropped, params);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    Json manifest;
    manifest["target"] = target;
    manifest["dropped"] = Json::array();
    for (const auto& h : dropped) manifest["dropped"].push_back(h);
    manifest["params"] = {{"min_states", params.min_states},
                          {"max_states", params.max_states},
                          {"agents", params.agents},
                          {"prior_denominator", params.prior_denominator},
                          {"family", family},
                          {"seed", params.seed},
                          {"budget", params.budget}};
    manifest["examined"] = result.examined;
    manifest["candidates"] = result.candidates;
    manifest["budget_exhausted"] = result.budget_exhausted;
    manifest["witnesses"] = Json::array();

    for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
        const auto& w = result.witnesses[i];
        std::ostringstream base;
        base << "witness_" << std::setw(3) << std::setfill('0') << i << ".epm";
        std::string filename = base.str();
        std::string path = filename;
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            path = (std::filesystem::path(out_dir) / filename).string();
            std::ofstream f(path);
            f << w.model_text;
        }
        Json wj;
        wj["file"] = path;
        wj["target"] = w.target;
        wj["payload"] = witness_json(w.payload);
        Json repro = Json::array();
        std::string joined = "plausia";
        for (auto arg : w.reproduce) {
            if (arg == "{file}") arg = path;
            repro.push_back(arg);
            joined += " " + (arg.find(' ') == std::string::npos ? arg : "'" + arg + "'");
        }
        wj["reproduce"] = repro;
        wj["reproduce_command"] = joined;
        manifest["witnesses"].push_back(std::move(wj));
    }

    if (!out_dir.empty()) {
        std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json");
        mf << manifest.dump(2) << "\n";
    }

    if (flags.json()) {
        out << manifest.dump(2) << "\n";
    } else {
        out << "target: " << target << "\n";
        out << "examined: " << result.examined << " models, candidates: " << result.candidates
            << (result.budget_exhausted ? " (budget exhausted)" : "") << "\n";
        if (result.witnesses.empty()) {
            out << "no counterexamples found (a valid outcome: the checked property held "
                   "everywhere)\n";
        } else {
            for (const auto& wj : manifest["witnesses"])
                out << "witness: " << wj["file"].get<std::string>() << "  reproduce: "
                    << wj["reproduce_command"].get<std::string>() << "\n";
        }
    }
    return kExitPass;
}

// --- oracle-diff -------------------------------------------------------------------

int cmd_oracle_diff(const std::vector<std::string>& files, const std::string& event_text,
                    const std::string& threshold_text, const CommonFlags& flags,
                    std::ostream& out, std::ostream& err) {
    std::int64_t diffs = 0;
    Json all = Json::array();
    for (const auto& file : files) {
        std::optional<EpistemicModel> model;
        int rc = load_or_fail(file, out, err, flags.json(), model);
        if (rc != kExitPass) return rc;

        std::optional<Event> only_event;
        if (!event_text.empty()) {
            if (auto it = model->named_events.find(event_text); it != model->named_events.end())
                only_event = it->second;
            else if (auto parsed = model->states.parse_event(event_text))
                only_event = parsed;
            else {
                err << "unknown event: " << event_text << "\n";
                return kExitUsage;
            }
        }

        std::vector<Value> thresholds;
        if (!threshold_text.empty()) {
            std::stringstream ss(threshold_text);
            std::string token;
            while (std::getline(ss, token, ';')) {
                auto v = model->domain.parse(token);
                if (!v) {
                    err << "bad threshold: " << token << "\n";
                    return kExitUsage;
                }
                thresholds.push_back(*v);
            }
        } else {
            thresholds = default_cp7_thresholds(*model);
            if (model->domain.kind() != DomainKind::ProductUnitRational)
                for (int k = 1; k <= 4; ++k) {
                    Value v = Value::scalar(Rational(k, 4));
                    if (std::find(thresholds.begin(), thresholds.end(), v) == thresholds.end() &&
                        model->domain.contains(v))
                        thresholds.push_back(v);
                }
        }

        ModelOutcome outcome;
        if (only_event) {
            ++outcome.instances;
            Event fix = common_knowledge(*model, *only_event);
            Event brute = brute_force_common_knowledge(*model, *only_event);
            if (fix != brute) {
                ++outcome.violations;
                outcome.issues.push_back(Witness()
                                             .put("operator", "C")
                                             .put("E", model->states.format_event(*only_event)));
            }
            for (const auto& d : thresholds) {
                if (!model->domain.contains(d)) continue;
                ++outcome.instances;
                Event fixb = common_belief(*model, d, *only_event);
                Event bruteb = brute_force_common_belief(*model, d, *only_event);
                if (fixb != bruteb) {
                    ++outcome.violations;
                    outcome.issues.push_back(
                        Witness()
                            .put("operator", "CB")
                            .put("E", model->states.format_event(*only_event))
                            .put("d", d.str()));
                }
            }
        } else {
            outcome = oracle_diff_outcome(*model, thresholds);
        }
        diffs += outcome.violations;
        if (flags.json()) {
            Json j;
            j["file"] = file;
            j["instances"] = outcome.instances;
            j["diffs"] = outcome.violations;
            j["issues"] = Json::array();
            for (const auto& w : outcome.issues) j["issues"].push_back(witness_json(w));
            all.push_back(std::move(j));
        } else {
            out << file << ": " << outcome.instances << " instances, " << outcome.violations
                << " diffs\n";
            for (const auto& w : outcome.issues) out << "  diff: " << w.str() << "\n";
        }
    }
    if (flags.json()) out << all.dump(2) << "\n";
    return diffs == 0 ? kExitPass : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"plausia: epistemic plausibility models, belief operators and agreement checks"};
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "Parse and validate a model file");
    std::string v_file;
    CommonFlags v_flags;
    validate->add_option("file", v_file, "Model file (.epm)")->required();
    add_common(validate, v_flags);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate an operator expression");
    std::string e_file, e_expr;
    bool e_trace = false;
    CommonFlags e_flags;
    eval->add_option("file", e_file)->required();
    eval->add_option("expr", e_expr, "Expression, e.g. \"CB(1/2, {w1 w2})\"")->required();
    eval->add_flag("--trace", e_trace, "Print fixpoint iteration traces");
    add_common(eval, e_flags);

    // axioms
    auto* axioms = app.add_subcommand("axioms", "Run the axiom suite");
    std::string a_file, a_only;
    bool a_exempt = false;
    CommonFlags a_flags;
    axioms->add_option("file", a_file)->required();
    axioms->add_option("--only", a_only, "Comma-separated axiom ids (e.g. CP3,CP7,M3-SAT)");
    axioms->add_flag("--exempt-bot-bot", a_exempt, "Skip A3 tuples with both conditionals bottom");
    add_common(axioms, a_flags);

    // agreement
    auto* agreement = app.add_subcommand("agreement", "Check an agreement theorem instance");
    std::string g_file, g_theorem, g_event, g_threshold;
    bool g_assume = false;
    CommonFlags g_flags;
    agreement->add_option("file", g_file)->required();
    agreement->add_option("--theorem", g_theorem, "aumann | msn | msn-mult | msn-nomult")
        ->required();
    agreement->add_option("--event", g_event, "Named event or literal {w1 w2}")->required();
    agreement->add_option("--threshold", g_threshold, "Threshold value, e.g. 1/2 or (1/10,1/10)");
    agreement->add_flag("--assume", g_assume,
                        "Skip hypothesis checks and test the conclusion only");
    add_common(agreement, g_flags);

    // search
    auto* search = app.add_subcommand("search", "Mine counterexamples over enumerated corpora");
    std::string s_target, s_drop, s_family = "prior", s_out;
    SearchParams s_params;
    CommonFlags s_flags;
    search->add_option("--target", s_target, "Target id (e.g. cp7, m3-sat, msn-classical)")
        ->required();
    search->add_option("--drop", s_drop, "Comma-separated hypotheses to drop");
    search->add_option("--max-states", s_params.max_states, "State-count bound");
    search->add_option("--min-states", s_params.min_states);
    search->add_option("--agents", s_params.agents);
    search->add_option("--denominator", s_params.prior_denominator, "Prior grid denominator");
    search->add_option("--budget", s_params.budget, "Maximum models to enumerate");
    search->add_option("--family", s_family, "prior | product | table");
    search->add_option("--out", s_out, "Directory for witness files and manifest");
    add_common(search, s_flags);

    // oracle-diff
    auto* oracle = app.add_subcommand("oracle-diff", "Fixpoint operators vs brute-force oracle");
    std::vector<std::string> o_files;
    std::string o_event, o_threshold;
    CommonFlags o_flags;
    oracle->add_option("files", o_files, "Model files")->required();
    oracle->add_option("--event", o_event, "Restrict to one event (name or literal)");
    oracle->add_option("--threshold", o_threshold, "Semicolon-separated thresholds");
    add_common(oracle, o_flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            out << app.help();
            return kExitPass;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(v_file, v_flags, out, err);
        if (eval->parsed()) return cmd_eval(e_file, e_expr, e_trace, e_flags, out, err);
        if (axioms->parsed()) return cmd_axioms(a_file, a_only, a_exempt, a_flags, out, err);
        if (agreement->parsed())
            return cmd_agreement(g_file, g_theorem, g_event, g_threshold, g_assume, g_flags, out,
                                 err);
        if (search->parsed())
            return cmd_search(s_target, s_drop, s_params, s_family, s_out, s_flags, out, err);
        if (oracle->parsed())
            return cmd_oracle_diff(o_files, o_event, o_threshold, o_flags, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "no subcommand given\n";
    return kExitUsage;
}

}  // namespace plausia
