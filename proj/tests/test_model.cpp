#include "plausia/model.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace plausia;
using plausia::test::ev;
using plausia::test::val;

TEST_CASE("state space basics") {
    StateSpace s({"w1", "w2", "w3"});
    CHECK(s.size() == 3);
    CHECK(*s.index_of("w2") == 1);
    CHECK(!s.index_of("w9").has_value());
    CHECK(s.format_event(Event(0b101)) == "{w1 w3}");
    CHECK(s.format_event(Event(0)) == "{}");
    CHECK(*s.parse_event("{w1 w3}") == Event(0b101));
    CHECK(*s.parse_event("{}") == Event(0));
    CHECK(!s.parse_event("{w9}").has_value());
    CHECK_THROWS_AS(StateSpace(std::vector<std::string>{"a", "a"}), Error);
    CHECK_THROWS_AS(StateSpace(std::vector<std::string>{}), Error);
}

TEST_CASE("event algebra") {
    Event a(0b0011), b(0b0110);
    CHECK((a & b) == Event(0b0010));
    CHECK((a | b) == Event(0b0111));
    CHECK((a - b) == Event(0b0001));
    CHECK(a.complement(4) == Event(0b1100));
    CHECK(Event(0b0010).subset_of(a));
    CHECK(!a.subset_of(b));
    CHECK(Event::universe(3) == Event(0b111));
}

TEST_CASE("uniform counting measure on the grid") {
    auto m = plausia::test::load_golden("counting_grid.epm");
    CHECK(m.domain.token() == "grid/6");
    // Pl(E|F) = |E & F| / |F| for the uniform prior.
    CHECK(*cond(m.measure(0), ev(m, "{w1}"), ev(m, "{w1 w2}")) == val("1/2"));
    CHECK(*cond(m.measure(0), ev(m, "{w1}"), ev(m, "{w1 w2 w3}")) == val("1/3"));
    CHECK(*cond(m.measure(0), ev(m, "{w1 w2}"), ev(m, "{w1 w2}")) == val("1"));
    CHECK(!cond(m.measure(0), ev(m, "{w1}"), ev(m, "{}")).has_value());
}

TEST_CASE("override table measure values") {
    auto m = plausia::test::load_golden("table_m3.epm");
    const Measure& meas = m.measure(0);
    Event w = m.universe();
    CHECK(*cond(meas, ev(m, "{w1}"), w) == val("13/50"));
    CHECK(*cond(meas, ev(m, "{w2}"), w) == val("6/25"));
    CHECK(*cond(meas, ev(m, "{w1 w3}"), w) == val("19/25"));
    CHECK(*cond(meas, ev(m, "{w2 w3}"), w) == val("37/50"));
    // Unoverridden pairs fall back to the base prior.
    CHECK(*cond(meas, ev(m, "{w3}"), w) == val("1/2"));
    CHECK(*cond(meas, ev(m, "{w1}"), ev(m, "{w1 w2}")) == val("1/2"));
    // CP1 is untouched by the overrides.
    CHECK(*cond(meas, w, w) == val("1"));
}

TEST_CASE("product-prior posteriors") {
    auto m = plausia::test::load_golden("product_cp7.epm");
    Event e = m.named_events.at("E");
    CHECK(e == ev(m, "{w2}"));
    int a1 = *m.agent_index("1");
    int a2 = *m.agent_index("2");
    int w1 = *m.states.index_of("w1");
    int w2 = *m.states.index_of("w2");
    CHECK(*posterior(m, a1, w1, e) == val("(1/2,1/2)"));
    CHECK(*posterior(m, a2, w2, e) == val("(1/4,2/3)"));
    // Undefined never leaks bottom: conditioning on a null event.
    CHECK(*posterior(m, a2, w1, e) == val("(0,0)"));
    CHECK(*posterior(m, a1, w1, m.universe()) == m.domain.top());
}

TEST_CASE("posterior is constant on information sets") {
    auto m = plausia::test::load_golden("product_cp7.epm");
    for (int i = 0; i < m.n_agents(); ++i)
        for (int w = 0; w < m.n_states(); ++w)
            for (int u = 0; u < m.n_states(); ++u) {
                if (!m.block(i, w).contains(u)) continue;
                for (std::uint32_t e = 0; e < (1u << m.n_states()); ++e)
                    CHECK(posterior(m, i, w, Event(e)) == posterior(m, i, u, Event(e)));
            }
}

TEST_CASE("cond is monotone on the golden models (CP3 at measure level)") {
    for (const char* name : {"counting_grid.epm", "product_cp7.epm", "table_m3.epm"}) {
        auto m = plausia::test::load_golden(name);
        const int n = m.n_states();
        for (const auto& meas : m.measures)
            for (std::uint32_t f = 1; f < (1u << n); ++f) {
                if (!learnable(meas, Event(f))) continue;
                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                    std::uint32_t rest = ((1u << n) - 1) & ~x;
                    for (std::uint32_t add = rest;; add = (add - 1) & rest) {
                        auto vx = cond(meas, Event(x), Event(f));
                        auto vy = cond(meas, Event(x | add), Event(f));
                        CHECK(m.domain.leq(*vx, *vy));
                        if (add == 0) break;
                    }
                }
            }
    }
}

TEST_CASE("validation catches broken partitions") {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    m.states = StateSpace({"w1", "w2"});
    m.agents = {"1"};
    m.partitions.push_back(Partition::from_blocks({Event(0b11), Event(0b10)}, 2));
    m.common_prior_declared = true;
    m.measures.push_back(PriorMeasure::make({Rational(1, 2), Rational(1, 2)}));
    auto reports = validate_model(m);
    bool failed = false;
    for (const auto& r : reports)
        if (r.id == "partitions" && r.failed()) {
            failed = true;
            REQUIRE(!r.witnesses.empty());
            CHECK(*r.witnesses.front().find("state") == "w2");
        }
    CHECK(failed);
}

TEST_CASE("validation catches bad normalization") {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    m.states = StateSpace({"w1", "w2"});
    m.agents = {"1"};
    m.partitions.push_back(Partition::from_blocks({Event(0b11)}, 2));
    m.common_prior_declared = true;
    m.measures.push_back(PriorMeasure::make({Rational(1, 2), Rational(2, 5)}));
    auto reports = validate_model(m);
    bool failed = false;
    for (const auto& r : reports)
        if (r.id == "normalization" && r.failed()) failed = true;
    CHECK(failed);
}

TEST_CASE("validation catches unlearnable information sets") {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    m.states = StateSpace({"w1", "w2"});
    m.agents = {"1"};
    m.partitions.push_back(Partition::from_blocks({Event(0b01), Event(0b10)}, 2));
    m.common_prior_declared = true;
    m.measures.push_back(PriorMeasure::make({Rational(1), Rational(0)}));
    auto reports = validate_model(m);
    bool failed = false;
    for (const auto& r : reports)
        if (r.id == "information-sets-learnable" && r.failed()) failed = true;
    CHECK(failed);
}

TEST_CASE("golden models validate cleanly") {
    for (const char* name : {"counting_grid.epm", "product_cp7.epm", "table_m3.epm"}) {
        auto m = plausia::test::load_golden(name);
        CHECK(validation_clean(validate_model(m)));
    }
}

TEST_CASE("learnable family is superset-closed for prior measures") {
    auto m = plausia::test::four_state_model();
    const Measure& meas = m.measure(0);
    for (std::uint32_t f = 1; f < 16; ++f) {
        if (!learnable(meas, Event(f))) continue;
        for (std::uint32_t g = f; g < 16; ++g)
            if ((f & ~g) == 0) CHECK(learnable(meas, Event(g)));
    }
}

TEST_CASE("table additivity is validated") {
    // A table whose override breaks additivity: 1/2 + 1/2 != 3/4.
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    m.states = StateSpace({"w1", "w2"});
    m.agents = {"1"};
    m.partitions.push_back(Partition::from_blocks({Event(0b11)}, 2));
    m.common_prior_declared = true;
    TableMeasure tm;
    tm.base = PriorMeasure::make({Rational(1, 2), Rational(1, 2)});
    tm.overrides.push_back(TableOverride{Event(0b11), Event(0b11), val("3/4")});
    m.measures.push_back(tm);
    auto reports = validate_model(m);
    bool failed = false;
    for (const auto& r : reports)
        if (r.id == "table-overrides" && r.failed()) failed = true;
    CHECK(failed);
}
