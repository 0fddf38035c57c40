#pragma once

#include "plausia/model.hpp"
#include "plausia/modelfile.hpp"

#include <doctest.h>

#include <string>
#include <vector>

namespace plausia::test {

inline std::string models_dir() { return PLAUSIA_MODELS_DIR; }

inline EpistemicModel load_golden(const std::string& name) {
    auto r = load_model_file(models_dir() + "/" + name);
    for (const auto& e : r.errors) INFO(e.str());
    REQUIRE(r.ok());
    return *r.model;
}

inline Event ev(const EpistemicModel& m, const std::string& text) {
    auto e = m.states.parse_event(text);
    REQUIRE(e.has_value());
    return *e;
}

inline Rational rat(const std::string& text) {
    auto r = parse_rational(text);
    REQUIRE(r.has_value());
    return *r;
}

inline Value val(const std::string& text) {
    auto v = parse_value(text);
    REQUIRE(v.has_value());
    return *v;
}

/// The four-state two-agent uniform probability model the operator
/// examples revolve around: Pi_1 = {12|34}, Pi_2 = {1|23|4}.
inline EpistemicModel four_state_model() {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    m.states = StateSpace({"1", "2", "3", "4"});
    m.agents = {"a", "b"};
    m.partitions.push_back(
        Partition::from_blocks({Event(0b0011), Event(0b1100)}, 4));
    m.partitions.push_back(
        Partition::from_blocks({Event(0b0001), Event(0b0110), Event(0b1000)}, 4));
    m.common_prior_declared = true;
    m.measures.push_back(PriorMeasure::make(
        {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
    return m;
}

/// Same states/partitions with both partitions equal to {12|34}.
inline EpistemicModel four_state_same_partitions() {
    EpistemicModel m = four_state_model();
    m.partitions[1] = m.partitions[0];
    return m;
}

}  // namespace plausia::test
