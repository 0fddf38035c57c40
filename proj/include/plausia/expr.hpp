#pragma once

#include "plausia/model.hpp"
#include "plausia/operators.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plausia {

/// Operator expression mini-language:
///
///   K(i, X)  EK(X)  C(X)  B(i, d, X)  MB(d, X)  CB(d, X)
///   set literals {w1 w2}, named events, ~X, X & Y, X | Y, X - Y
///
/// with precedence ~ > & > (|, -) and d literals like 1/2 or (1/10,1/10).
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Literal, Name, Not, And, Or, Diff, Knows, EveryoneKnows, Common,
                      Believes, MutualBelief, CommonBelief };
    Kind kind;
    Event literal;          // Literal
    std::string name;       // Name
    int agent = -1;         // Knows / Believes
    Value threshold;        // Believes / MutualBelief / CommonBelief
    ExprPtr lhs, rhs;       // operands (rhs only for And/Or/Diff)
};

struct ExprError {
    int column = 0;  // 1-based offset into the expression text
    std::string message;
    std::string str() const;
};

struct ExprParseResult {
    ExprPtr expr;
    std::optional<ExprError> error;
    bool ok() const { return expr != nullptr; }
};

/// Parsing needs the model: agent labels, the threshold domain, state
/// labels and named events are all resolved against it.
ExprParseResult parse_expression(std::string_view text, const EpistemicModel& m);

/// Printable form of a parsed expression (used to label traces).
std::string expr_to_string(const ExprNode& e, const EpistemicModel& m);

struct EvalOptions {
    bool record_traces = false;
};

struct EvalResult {
    Event value;
    std::vector<std::pair<std::string, OperatorTrace>> traces;  // fixpoint nodes
    /// Set when a bottom threshold was used somewhere; the operator is
    /// degenerate there and reports flag it rather than forbid it.
    bool bottom_threshold = false;
};

EvalResult eval_expression(const ExprNode& e, const EpistemicModel& m,
                           const EvalOptions& opts = {});

}  // namespace plausia
