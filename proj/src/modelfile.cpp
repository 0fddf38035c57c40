#include "plausia/modelfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace plausia {

std::string ParseError::str() const {
    std::ostringstream os;
    os << "line " << line << ":" << column << ": " << message;
    if (!token.empty()) os << " (near '" << token << "')";
    return os.str();
}

namespace {

bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool value_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '(' || c == ')' ||
           c == ',';
}

struct LineScanner {
    std::string_view s;
    std::size_t pos = 0;
    int line_no;

    explicit LineScanner(std::string_view text, int line) : s(text), line_no(line) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    int col() const { return static_cast<int>(pos) + 1; }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string label() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && label_char(s[pos])) ++pos;
        return std::string(s.substr(start, pos - start));
    }
    // A value literal: digits with / or a parenthesised pair (spaces allowed
    // inside the parens).
    std::string value_token() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && s[pos] == '(') {
            while (pos < s.size() && s[pos] != ')') ++pos;
            if (pos < s.size()) ++pos;
        } else {
            while (pos < s.size() && value_char(s[pos])) ++pos;
        }
        return std::string(s.substr(start, pos - start));
    }
    std::string rest() {
        skip_ws();
        std::string out(s.substr(pos));
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
        pos = s.size();
        return out;
    }
};

struct Parser {
    std::vector<ParseError> errors;

    std::string name;
    std::optional<Domain> domain;
    int domain_line = 0;
    std::optional<StateSpace> states;
    std::vector<std::string> agents;
    std::map<std::string, std::pair<std::vector<Event>, int>> partitions;  // agent -> blocks
    // prior lines: who -> (per-state values, line)
    std::map<std::string, std::pair<std::vector<Value>, int>> priors;
    std::vector<TableOverride> overrides;
    std::map<std::string, Event> named_events;
    int last_line = 1;

    void err(const LineScanner& sc, std::string msg, std::string token = "") {
        errors.push_back(ParseError{sc.line_no, sc.col(), std::move(msg), std::move(token)});
    }
    void err_at(int line, std::string msg) {
        errors.push_back(ParseError{line, 1, std::move(msg), ""});
    }

    std::optional<Event> event_literal(LineScanner& sc) {
        if (!sc.accept('{')) {
            err(sc, "expected '{'");
            return std::nullopt;
        }
        Event e;
        while (!sc.eof() && sc.peek() != '}') {
            std::string lab = sc.label();
            if (lab.empty()) {
                err(sc, "expected state label inside event");
                return std::nullopt;
            }
            auto idx = states ? states->index_of(lab) : std::nullopt;
            if (!idx) {
                err(sc, "unknown state label", lab);
                return std::nullopt;
            }
            e = e | Event::single(*idx);
        }
        if (!sc.accept('}')) {
            err(sc, "unterminated event (missing '}')");
            return std::nullopt;
        }
        return e;
    }

    std::optional<Value> value_literal(LineScanner& sc) {
        std::string tok = sc.value_token();
        if (tok.empty()) {
            err(sc, "expected a value");
            return std::nullopt;
        }
        if (!domain) {
            err(sc, "value before 'domain' line", tok);
            return std::nullopt;
        }
        auto v = domain->parse(tok);
        if (!v) {
            err(sc, "not a value of domain " + domain->token(), tok);
            return std::nullopt;
        }
        return v;
    }

    void line_model(LineScanner& sc) { name = sc.rest(); }

    void line_domain(LineScanner& sc) {
        if (domain) {
            err(sc, "duplicate 'domain' line");
            return;
        }
        sc.skip_ws();
        std::size_t start = sc.pos;
        while (sc.pos < sc.s.size() && !std::isspace(static_cast<unsigned char>(sc.s[sc.pos])))
            ++sc.pos;
        std::string tok(sc.s.substr(start, sc.pos - start));
        auto d = Domain::from_token(tok);
        if (!d) {
            err(sc, "unknown domain", tok);
            return;
        }
        domain = *d;
        domain_line = sc.line_no;
    }

    void line_states(LineScanner& sc) {
        if (states) {
            err(sc, "duplicate 'states' line");
            return;
        }
        std::vector<std::string> names;
        while (!sc.eof()) {
            std::string lab = sc.label();
            if (lab.empty()) {
                err(sc, "bad state label");
                return;
            }
            names.push_back(lab);
        }
        if (names.empty()) {
            err(sc, "state space must be non-empty");
            return;
        }
        try {
            states = StateSpace(std::move(names));
        } catch (const Error& e) {
            err(sc, e.what());
        }
    }

    void line_agents(LineScanner& sc) {
        if (!agents.empty()) {
            err(sc, "duplicate 'agents' line");
            return;
        }
        while (!sc.eof()) {
            std::string lab = sc.label();
            if (lab.empty()) {
                err(sc, "bad agent label");
                return;
            }
            if (std::find(agents.begin(), agents.end(), lab) != agents.end()) {
                err(sc, "duplicate agent label", lab);
                return;
            }
            agents.push_back(lab);
        }
        if (agents.empty()) err(sc, "at least one agent required");
    }

    void line_partition(LineScanner& sc) {
        if (!states) {
            err(sc, "'partition' before 'states'");
            return;
        }
        std::string agent = sc.label();
        if (agent.empty() || std::find(agents.begin(), agents.end(), agent) == agents.end()) {
            err(sc, "unknown agent in partition", agent);
            return;
        }
        if (!sc.accept(':')) {
            err(sc, "expected ':' after agent");
            return;
        }
        if (partitions.count(agent)) {
            err(sc, "duplicate partition for agent", agent);
            return;
        }
        std::vector<Event> blocks;
        while (!sc.eof()) {
            auto b = event_literal(sc);
            if (!b) return;
            if (b->empty()) {
                err(sc, "partition blocks must be non-empty");
                return;
            }
            blocks.push_back(*b);
        }
        if (blocks.empty()) {
            err(sc, "partition needs at least one block");
            return;
        }
        partitions[agent] = {std::move(blocks), sc.line_no};
    }

    void line_prior(LineScanner& sc) {
        if (!states) {
            err(sc, "'prior' before 'states'");
            return;
        }
        std::string who = sc.label();
        bool is_common = who == "common";
        if (!is_common && std::find(agents.begin(), agents.end(), who) == agents.end()) {
            err(sc, "unknown prior owner (expected 'common' or an agent)", who);
            return;
        }
        if (!sc.accept(':')) {
            err(sc, "expected ':' after prior owner");
            return;
        }
        if (priors.count(who)) {
            err(sc, "duplicate prior for", who);
            return;
        }
        std::vector<std::optional<Value>> per_state(states->size());
        while (!sc.eof()) {
            std::string lab = sc.label();
            auto idx = lab.empty() ? std::nullopt : states->index_of(lab);
            if (!idx) {
                err(sc, "unknown state in prior", lab);
                return;
            }
            if (!sc.accept('=')) {
                err(sc, "expected '=' after state label");
                return;
            }
            auto v = value_literal(sc);
            if (!v) return;
            if (per_state[*idx]) {
                err(sc, "duplicate prior entry for state", lab);
                return;
            }
            per_state[*idx] = *v;
        }
        std::vector<Value> vals;
        for (int i = 0; i < states->size(); ++i) {
            if (!per_state[i]) {
                err(sc, "missing prior for state " + states->name(i));
                return;
            }
            vals.push_back(*per_state[i]);
        }
        priors[who] = {std::move(vals), sc.line_no};
    }

    void line_override(LineScanner& sc) {
        if (!states || !domain) {
            err(sc, "'override' before 'states'/'domain'");
            return;
        }
        if (domain->kind() == DomainKind::ProductUnitRational) {
            err(sc, "overrides require a scalar domain");
            return;
        }
        auto e = event_literal(sc);
        if (!e) return;
        if (!sc.accept('|')) {
            err(sc, "expected '|' between the event and the conditioning event");
            return;
        }
        auto f = event_literal(sc);
        if (!f) return;
        if (!sc.accept('=')) {
            err(sc, "expected '=' before the override value");
            return;
        }
        auto v = value_literal(sc);
        if (!v) return;
        for (const auto& o : overrides)
            if (o.event == *e && o.given == *f) {
                err(sc, "duplicate override for this (event|given) pair");
                return;
            }
        overrides.push_back(TableOverride{*e, *f, *v});
    }

    void line_event(LineScanner& sc) {
        if (!states) {
            err(sc, "'event' before 'states'");
            return;
        }
        std::string nm = sc.label();
        if (nm.empty()) {
            err(sc, "expected event name");
            return;
        }
        if (named_events.count(nm)) {
            err(sc, "duplicate event name", nm);
            return;
        }
        if (!sc.accept('=')) {
            err(sc, "expected '=' after event name");
            return;
        }
        auto e = event_literal(sc);
        if (!e) return;
        named_events[nm] = *e;
    }

    void feed(std::string_view raw, int line_no) {
        last_line = line_no;
        std::string text(raw);
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
        LineScanner sc(text, line_no);
        if (sc.eof()) return;
        std::string kw = sc.label();
        if (kw == "model")
            line_model(sc);
        else if (kw == "domain")
            line_domain(sc);
        else if (kw == "states")
            line_states(sc);
        else if (kw == "agents")
            line_agents(sc);
        else if (kw == "partition")
            line_partition(sc);
        else if (kw == "prior")
            line_prior(sc);
        else if (kw == "override")
            line_override(sc);
        else if (kw == "event")
            line_event(sc);
        else
            err(sc, "unknown directive", kw);
        if (errors.empty() && !sc.eof()) err(sc, "trailing input", std::string(sc.s.substr(sc.pos)));
    }

    std::optional<EpistemicModel> build() {
        if (!domain) err_at(last_line, "missing 'domain' line");
        if (!states) err_at(last_line, "missing 'states' line");
        if (agents.empty()) err_at(last_line, "missing 'agents' line");
        if (!errors.empty()) return std::nullopt;

        EpistemicModel m;
        m.name = name;
        m.domain = *domain;
        m.states = *states;
        m.agents = agents;

        for (const auto& a : agents) {
            auto it = partitions.find(a);
            if (it == partitions.end()) {
                err_at(last_line, "missing partition for agent " + a);
                continue;
            }
            auto blocks = it->second.first;
            std::sort(blocks.begin(), blocks.end(), [](Event x, Event y) {
                return __builtin_ctz(x.bits) < __builtin_ctz(y.bits);
            });
            m.partitions.push_back(Partition::from_blocks(std::move(blocks), m.n_states()));
        }

        bool has_common = priors.count("common") > 0;
        if (has_common && priors.size() > 1) {
            err_at(priors.begin()->second.second, "mix of common and per-agent priors");
        } else if (has_common) {
            m.common_prior_declared = true;
            m.measures.push_back(make_measure(priors.at("common").first,
                                              priors.at("common").second));
        } else {
            for (const auto& a : agents) {
                auto it = priors.find(a);
                if (it == priors.end()) {
                    err_at(last_line, "missing prior for agent " + a);
                    continue;
                }
                m.measures.push_back(make_measure(it->second.first, it->second.second));
            }
            if (!overrides.empty() && agents.size() > 1)
                err_at(last_line, "overrides require a common prior");
        }
        m.named_events = named_events;
        if (!errors.empty()) return std::nullopt;
        return m;
    }

    Measure make_measure(const std::vector<Value>& vals, int line) {
        if (domain->kind() == DomainKind::ProductUnitRational) {
            std::vector<Rational> p, q;
            for (const auto& v : vals) {
                p.push_back(v.first());
                q.push_back(v.second());
            }
            if (!overrides.empty()) err_at(line, "overrides not allowed with pair priors");
            return ProductPriorMeasure::make(std::move(p), std::move(q));
        }
        std::vector<Rational> p;
        for (const auto& v : vals) p.push_back(v.first());
        auto base = PriorMeasure::make(std::move(p));
        if (overrides.empty()) return base;
        auto sorted = overrides;
        std::sort(sorted.begin(), sorted.end(), [](const TableOverride& a, const TableOverride& b) {
            if (a.given != b.given) return a.given < b.given;
            return a.event < b.event;
        });
        return TableMeasure{std::move(base), std::move(sorted)};
    }
};

}  // namespace

ParseResult parse_model(std::string_view text) {
    Parser p;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = (end == std::string_view::npos)
                                    ? text.substr(start)
                                    : text.substr(start, end - start);
        p.feed(line, ++line_no);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }

    ParseResult out;
    auto model = p.build();
    out.errors = std::move(p.errors);
    if (!model) return out;

    auto reports = validate_model(*model);
    for (auto& r : reports)
        if (r.failed()) out.validation.push_back(std::move(r));
    if (out.validation.empty()) out.model = std::move(model);
    return out;
}

ParseResult load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult r;
        r.errors.push_back(ParseError{1, 1, "cannot open file: " + path, path});
        return r;
    }
    std::ostringstream os;
    os << in.rdbuf();
    return parse_model(os.str());
}

std::string serialize_model(const EpistemicModel& m) {
    std::ostringstream os;
    if (!m.name.empty()) os << "model " << m.name << "\n";
    os << "domain " << m.domain.token() << "\n";
    os << "states";
    for (const auto& s : m.states.names()) os << " " << s;
    os << "\n";
    os << "agents";
    for (const auto& a : m.agents) os << " " << a;
    os << "\n";

    for (int i = 0; i < m.n_agents(); ++i) {
        auto blocks = m.partitions[i].blocks;
        blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                    [](Event b) { return b.empty(); }),
                     blocks.end());
        std::sort(blocks.begin(), blocks.end(), [](Event x, Event y) {
            return __builtin_ctz(x.bits) < __builtin_ctz(y.bits);
        });
        os << "partition " << m.agents[i] << ":";
        for (const auto& b : blocks) os << " " << m.states.format_event(b);
        os << "\n";
    }

    auto write_prior = [&](const std::string& who, const Measure& meas) {
        os << "prior " << who << ":";
        std::visit(
            [&](const auto& mm) {
                using T = std::decay_t<decltype(mm)>;
                if constexpr (std::is_same_v<T, PriorMeasure>) {
                    for (int w = 0; w < m.n_states(); ++w)
                        os << " " << m.states.name(w) << "=" << format_rational(mm.prior[w]);
                } else if constexpr (std::is_same_v<T, ProductPriorMeasure>) {
                    for (int w = 0; w < m.n_states(); ++w)
                        os << " " << m.states.name(w) << "=("
                           << format_rational(mm.p.prior[w]) << ","
                           << format_rational(mm.q.prior[w]) << ")";
                } else {
                    for (int w = 0; w < m.n_states(); ++w)
                        os << " " << m.states.name(w) << "=" << format_rational(mm.base.prior[w]);
                }
            },
            meas);
        os << "\n";
    };

    if (m.measures.size() == 1) {
        write_prior("common", m.measures[0]);
    } else {
        for (int i = 0; i < m.n_agents(); ++i) write_prior(m.agents[i], m.measures[i]);
    }

    for (const auto& meas : m.measures) {
        const auto* tm = std::get_if<TableMeasure>(&meas);
        if (!tm) continue;
        auto sorted = tm->overrides;
        std::sort(sorted.begin(), sorted.end(), [](const TableOverride& a, const TableOverride& b) {
            if (a.given != b.given) return a.given < b.given;
            return a.event < b.event;
        });
        for (const auto& o : sorted)
            os << "override " << m.states.format_event(o.event) << "|"
               << m.states.format_event(o.given) << " = " << o.value.str() << "\n";
    }

    for (const auto& [nm, ev] : m.named_events)
        os << "event " << nm << " = " << m.states.format_event(ev) << "\n";
    return os.str();
}

}  // namespace plausia
