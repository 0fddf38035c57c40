#pragma once

#include "plausia/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plausia {

/// Position-carrying syntax error. Every rejected input yields at least one
/// of these with a valid (1-based) line number.
struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
    std::string token;

    std::string str() const;
};

struct ParseResult {
    std::optional<EpistemicModel> model;
    std::vector<ParseError> errors;         // syntax and reference errors
    std::vector<CheckReport> validation;    // failed validate_model reports
    bool ok() const { return model.has_value(); }
};

/// Parses the line-oriented .epm model format:
///
///   # comment
///   model product-cp7-counterexample
///   domain product-unit-rational
///   states w1 w2 w3
///   agents 1 2
///   partition 1: {w1 w2} {w3}
///   prior common: w1=(1/5,2/5) w2=(1/5,2/5) w3=(3/5,1/5)
///   override {w1}|{w1 w2 w3} = 13/50
///   event E = {w2}
///
/// Never throws on malformed text; the result carries the model or the
/// errors. A model is only returned if validate_model passes (overrides are
/// additionally validated for finite additivity at load).
ParseResult parse_model(std::string_view text);

ParseResult load_model_file(const std::string& path);

/// Canonical form: states and agents in declaration order, partition blocks
/// sorted by least member, rationals reduced, overrides sorted by
/// (conditioning event, event), named events sorted by name.
/// parse(serialize(m)) == m for every validated model.
std::string serialize_model(const EpistemicModel& m);

}  // namespace plausia
