#include "plausia/expr.hpp"

#include <cctype>
#include <sstream>

namespace plausia {

std::string ExprError::str() const {
    return "column " + std::to_string(column) + ": " + message;
}

namespace {

struct ExprParser {
    std::string_view s;
    std::size_t pos = 0;
    const EpistemicModel& m;
    std::optional<ExprError> error;

    ExprParser(std::string_view text, const EpistemicModel& model) : s(text), m(model) {}

    void fail(std::string msg) {
        if (!error) error = ExprError{static_cast<int>(pos) + 1, std::move(msg)};
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
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
    bool expect(char c) {
        if (accept(c)) return true;
        fail(std::string("expected '") + c + "'");
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return std::string(s.substr(start, pos - start));
    }

    // Threshold literal: everything up to the next comma at paren depth 0.
    std::optional<Value> threshold() {
        skip_ws();
        std::size_t start = pos;
        int depth = 0;
        while (pos < s.size()) {
            char c = s[pos];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (c == ',' && depth == 0) break;
            ++pos;
        }
        std::string_view text = s.substr(start, pos - start);
        auto v = m.domain.parse(text);
        if (!v) {
            pos = start;
            fail("not a threshold in domain " + m.domain.token() + ": '" + std::string(text) +
                 "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<int> agent() {
        std::size_t start = pos;
        std::string label = ident();
        auto idx = m.agent_index(label);
        if (!idx) {
            pos = start;
            fail("unknown agent: '" + label + "'");
            return std::nullopt;
        }
        return idx;
    }

    ExprPtr literal() {
        // '{' already consumed.
        Event e;
        for (;;) {
            skip_ws();
            if (accept('}')) break;
            std::size_t start = pos;
            std::string label = ident();
            if (label.empty()) {
                fail("expected state label or '}'");
                return nullptr;
            }
            auto idx = m.states.index_of(label);
            if (!idx) {
                pos = start;
                fail("unknown state: '" + label + "'");
                return nullptr;
            }
            e = e | Event::single(*idx);
        }
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Literal;
        node->literal = e;
        return node;
    }

    ExprPtr call(const std::string& op) {
        auto node = std::make_shared<ExprNode>();
        if (op == "K" || op == "B") {
            auto a = agent();
            if (!a) return nullptr;
            node->agent = *a;
            if (!expect(',')) return nullptr;
        }
        if (op == "B" || op == "MB" || op == "CB") {
            auto d = threshold();
            if (!d) return nullptr;
            node->threshold = *d;
            if (!expect(',')) return nullptr;
        }
        node->lhs = expr();
        if (!node->lhs) return nullptr;
        if (!expect(')')) return nullptr;
        if (op == "K")
            node->kind = ExprNode::Kind::Knows;
        else if (op == "EK")
            node->kind = ExprNode::Kind::EveryoneKnows;
        else if (op == "C")
            node->kind = ExprNode::Kind::Common;
        else if (op == "B")
            node->kind = ExprNode::Kind::Believes;
        else if (op == "MB")
            node->kind = ExprNode::Kind::MutualBelief;
        else
            node->kind = ExprNode::Kind::CommonBelief;
        return node;
    }

    ExprPtr primary() {
        skip_ws();
        if (accept('(')) {
            auto inner = expr();
            if (!inner) return nullptr;
            if (!expect(')')) return nullptr;
            return inner;
        }
        if (accept('{')) return literal();
        std::size_t start = pos;
        std::string name = ident();
        if (name.empty()) {
            fail("expected an event expression");
            return nullptr;
        }
        if ((name == "K" || name == "EK" || name == "C" || name == "B" || name == "MB" ||
             name == "CB") &&
            peek() == '(') {
            accept('(');
            return call(name);
        }
        auto it = m.named_events.find(name);
        if (it == m.named_events.end()) {
            pos = start;
            fail("unknown event name: '" + name + "'");
            return nullptr;
        }
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Name;
        node->name = name;
        node->literal = it->second;
        return node;
    }

    ExprPtr factor() {
        if (accept('~')) {
            auto operand = factor();
            if (!operand) return nullptr;
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::Not;
            node->lhs = operand;
            return node;
        }
        return primary();
    }

    ExprPtr term() {
        auto lhs = factor();
        if (!lhs) return nullptr;
        while (peek() == '&') {
            accept('&');
            auto rhs = factor();
            if (!rhs) return nullptr;
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::And;
            node->lhs = lhs;
            node->rhs = rhs;
            lhs = node;
        }
        return lhs;
    }

    ExprPtr expr() {
        auto lhs = term();
        if (!lhs) return nullptr;
        for (;;) {
            char c = peek();
            if (c != '|' && c != '-') break;
            accept(c);
            auto rhs = term();
            if (!rhs) return nullptr;
            auto node = std::make_shared<ExprNode>();
            node->kind = c == '|' ? ExprNode::Kind::Or : ExprNode::Kind::Diff;
            node->lhs = lhs;
            node->rhs = rhs;
            lhs = node;
        }
        return lhs;
    }

    ExprPtr parse() {
        auto e = expr();
        if (!e) return nullptr;
        skip_ws();
        if (pos < s.size()) {
            fail("trailing input: '" + std::string(s.substr(pos)) + "'");
            return nullptr;
        }
        return e;
    }
};

}  // namespace

ExprParseResult parse_expression(std::string_view text, const EpistemicModel& m) {
    ExprParser p(text, m);
    ExprParseResult out;
    out.expr = p.parse();
    out.error = p.error;
    if (out.error) out.expr = nullptr;
    return out;
}

std::string expr_to_string(const ExprNode& e, const EpistemicModel& m) {
    using K = ExprNode::Kind;
    std::ostringstream os;
    switch (e.kind) {
        case K::Literal: os << m.states.format_event(e.literal); break;
        case K::Name: os << e.name; break;
        case K::Not: os << "~" << expr_to_string(*e.lhs, m); break;
        case K::And:
            os << "(" << expr_to_string(*e.lhs, m) << " & " << expr_to_string(*e.rhs, m) << ")";
            break;
        case K::Or:
            os << "(" << expr_to_string(*e.lhs, m) << " | " << expr_to_string(*e.rhs, m) << ")";
            break;
        case K::Diff:
            os << "(" << expr_to_string(*e.lhs, m) << " - " << expr_to_string(*e.rhs, m) << ")";
            break;
        case K::Knows:
            os << "K(" << m.agents[e.agent] << ", " << expr_to_string(*e.lhs, m) << ")";
            break;
        case K::EveryoneKnows: os << "EK(" << expr_to_string(*e.lhs, m) << ")"; break;
        case K::Common: os << "C(" << expr_to_string(*e.lhs, m) << ")"; break;
        case K::Believes:
            os << "B(" << m.agents[e.agent] << ", " << e.threshold.str() << ", "
               << expr_to_string(*e.lhs, m) << ")";
            break;
        case K::MutualBelief:
            os << "MB(" << e.threshold.str() << ", " << expr_to_string(*e.lhs, m) << ")";
            break;
        case K::CommonBelief:
            os << "CB(" << e.threshold.str() << ", " << expr_to_string(*e.lhs, m) << ")";
            break;
    }
    return os.str();
}

namespace {

Event eval_node(const ExprNode& e, const EpistemicModel& m, const EvalOptions& opts,
                EvalResult& out) {
    using K = ExprNode::Kind;
    auto flag_bottom = [&](const Value& d) {
        if (d == m.domain.bot()) out.bottom_threshold = true;
    };
    switch (e.kind) {
        case K::Literal:
        case K::Name: return e.literal;
        case K::Not: return eval_node(*e.lhs, m, opts, out).complement(m.n_states());
        case K::And: return eval_node(*e.lhs, m, opts, out) & eval_node(*e.rhs, m, opts, out);
        case K::Or: return eval_node(*e.lhs, m, opts, out) | eval_node(*e.rhs, m, opts, out);
        case K::Diff: return eval_node(*e.lhs, m, opts, out) - eval_node(*e.rhs, m, opts, out);
        case K::Knows: return knows(m, e.agent, eval_node(*e.lhs, m, opts, out));
        case K::EveryoneKnows: return everyone_knows(m, eval_node(*e.lhs, m, opts, out));
        case K::Common: {
            Event arg = eval_node(*e.lhs, m, opts, out);
            if (!opts.record_traces) return common_knowledge(m, arg);
            OperatorTrace trace;
            Event result = common_knowledge(m, arg, &trace);
            out.traces.emplace_back(expr_to_string(e, m), std::move(trace));
            return result;
        }
        case K::Believes:
            flag_bottom(e.threshold);
            return d_believes(m, e.agent, e.threshold, eval_node(*e.lhs, m, opts, out));
        case K::MutualBelief:
            flag_bottom(e.threshold);
            return mutual_belief(m, e.threshold, eval_node(*e.lhs, m, opts, out));
        case K::CommonBelief: {
            flag_bottom(e.threshold);
            Event arg = eval_node(*e.lhs, m, opts, out);
            if (!opts.record_traces) return common_belief(m, e.threshold, arg);
            OperatorTrace trace;
            Event result = common_belief(m, e.threshold, arg, &trace);
            out.traces.emplace_back(expr_to_string(e, m), std::move(trace));
            return result;
        }
    }
    return Event::none();
}

}  // namespace

EvalResult eval_expression(const ExprNode& e, const EpistemicModel& m, const EvalOptions& opts) {
    EvalResult out;
    out.value = eval_node(e, m, opts, out);
    return out;
}

}  // namespace plausia
