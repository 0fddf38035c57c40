#include "plausia/axioms.hpp"

#include "plausia/errors.hpp"
#include "plausia/search.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace plausia;
using plausia::test::ev;
using plausia::test::val;

namespace {

const CheckReport& by_id(const std::vector<CheckReport>& reports, const std::string& id) {
    for (const auto& r : reports)
        if (r.id == id) return r;
    static CheckReport missing;
    REQUIRE(false);
    return missing;
}

EpistemicModel table_model(std::vector<Rational> prior, std::vector<TableOverride> overrides) {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    int n = static_cast<int>(prior.size());
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
    m.states = StateSpace(names);
    m.agents = {"1"};
    m.partitions.push_back(Partition::from_blocks({Event::universe(n)}, n));
    m.common_prior_declared = true;
    TableMeasure tm;
    tm.base = PriorMeasure::make(std::move(prior));
    tm.overrides = std::move(overrides);
    m.measures.push_back(tm);
    return m;
}

}  // namespace

TEST_CASE("CP1-CP4 pass on the golden models") {
    for (const char* name : {"counting_grid.epm", "product_cp7.epm", "table_m3.epm"}) {
        auto m = plausia::test::load_golden(name);
        for (const auto& r : check_cp(m)) {
            INFO(name, " ", r.id);
            CHECK(r.passed());
        }
    }
}

TEST_CASE("a CP3-breaking override is caught with a witness") {
    auto m = table_model({Rational(1, 2), Rational(1, 2)},
                         {TableOverride{Event(0b01), Event(0b11), val("2/3")},
                          TableOverride{Event(0b11), Event(0b11), val("1/2")}});
    auto reports = check_cp(m);
    const auto& cp3 = by_id(reports, "CP3");
    CHECK(cp3.failed());
    REQUIRE(!cp3.witnesses.empty());
    // The witness re-evaluates to the violation it reports.
    const auto& w = cp3.witnesses.front();
    auto x = m.states.parse_event(*w.find("X"));
    auto y = m.states.parse_event(*w.find("Y"));
    auto f = m.states.parse_event(*w.find("E"));
    REQUIRE(x);
    REQUIRE(y);
    REQUIRE(f);
    auto vx = cond(m.measure(0), *x, *f);
    auto vy = cond(m.measure(0), *y, *f);
    CHECK(vx->str() == *w.find("Pl(X|E)"));
    CHECK(vy->str() == *w.find("Pl(Y|E)"));
    CHECK(!m.domain.leq(*vx, *vy));
}

TEST_CASE("acceptability") {
    auto four = plausia::test::four_state_model();
    CHECK(check_acceptability(four).passed());
    CHECK(check_acceptability(plausia::test::load_golden("counting_grid.epm")).passed());

    // Override asserts positive plausibility for an event of prior zero.
    auto bad = table_model({Rational(1, 2), Rational(1, 2), Rational(0)},
                           {TableOverride{Event(0b100), Event(0b111), val("1/2")}});
    auto r = check_acceptability(bad);
    CHECK(r.failed());
    REQUIRE(!r.witnesses.empty());
}

TEST_CASE("A3 additivity") {
    auto table = plausia::test::load_golden("table_m3.epm");
    CHECK(check_a3(table).passed());
    // 13/50 (+) 1/2 = 19/25 is among the checked sums.
    CHECK(*table.domain.oplus(val("13/50"), val("1/2")) == val("19/25"));

    CHECK(check_a3(plausia::test::load_golden("counting_grid.epm")).passed());

    auto bad = table_model({Rational(1, 2), Rational(1, 2)},
                           {TableOverride{Event(0b11), Event(0b11), val("3/4")}});
    CHECK(check_a3(bad).failed());
}

TEST_CASE("A3 bottom-plus-bottom exemption only skips, never hides") {
    auto table = plausia::test::load_golden("table_m3.epm");
    AxiomCheckOptions opts;
    opts.exempt_bot_bot = true;
    auto exempted = check_a3(table, opts);
    CHECK(exempted.passed());
    CHECK(exempted.skipped > 0);
    auto strict = check_a3(table);
    CHECK(strict.passed());
    CHECK(strict.skipped == 0);
    CHECK(strict.examined > exempted.examined);
}

TEST_CASE("A4 sandwich") {
    CHECK(check_a4(plausia::test::four_state_model()).passed());
    CHECK(check_a4(plausia::test::load_golden("counting_grid.epm")).passed());
    CHECK(check_a4(plausia::test::load_golden("product_cp7.epm")).passed());

    // Pl({w1}|W) = 7/8 escapes the sandwich [0,1/2] over S={{w1,w2},{w3}}.
    auto bad = table_model({Rational(1, 4), Rational(1, 4), Rational(1, 2)},
                           {TableOverride{Event(0b001), Event(0b111), val("7/8")}});
    auto r = check_a4(bad);
    CHECK(r.failed());
    REQUIRE(!r.witnesses.empty());
    CHECK(r.witnesses.front().find("S") != nullptr);
    CHECK(*r.witnesses.front().find("E") == "{w1}");
}

TEST_CASE("M3 chain rule") {
    AxiomCheckOptions opts;
    CHECK(check_m3(plausia::test::load_golden("product_cp7.epm"), opts).passed());
    CHECK(check_m3(plausia::test::four_state_model(), opts).passed());

    auto table = plausia::test::load_golden("table_m3.epm");
    auto r = check_m3(table, opts);
    CHECK(r.failed());
    bool found_chain = false;
    for (const auto& w : r.witnesses)
        if (*w.find("X") == "{w1}" && *w.find("Y") == "{w1 w2}" && *w.find("Z") == "{w1 w2 w3}") {
            found_chain = true;
            CHECK(*w.find("Pl(X|Y)") == "1/2");
            CHECK(*w.find("Pl(Y|Z)") == "1/2");
            CHECK(*w.find("Pl(X|Z)") == "13/50");
        }
    CHECK(found_chain);

    auto nomult = table;
    nomult.domain = nomult.domain.without_multiplication();
    CHECK_THROWS_AS(check_m3(nomult, opts), NoMultiplicationError);
}

TEST_CASE("M3 satisfiability: equal level-ones force a contradiction") {
    auto table = plausia::test::load_golden("table_m3.epm");
    auto r = check_m3_satisfiable(table);
    CHECK(r.failed());
    REQUIRE(!r.witnesses.empty());
    const auto& w = r.witnesses.front();
    CHECK(*w.find("direct1") != *w.find("direct2"));

    // The product counterexample carries a multiplication, so no
    // contradiction exists.
    CHECK(check_m3_satisfiable(plausia::test::load_golden("product_cp7.epm")).passed());
}

TEST_CASE("CP6") {
    CHECK(check_cp6(plausia::test::load_golden("table_m3.epm")).passed());
    CHECK(check_cp6(plausia::test::load_golden("product_cp7.epm")).passed());

    // Brute force over a corpus of probability models: CP6 is a theorem
    // there (conditionals scale by 1/P(A) inside A1 & A2).
    SearchParams params;
    params.max_states = 3;
    params.prior_denominator = 3;
    for (const auto& m : enumerate_models(params)) CHECK(check_cp6(m).passed());

    EpistemicModel two_priors = plausia::test::four_state_model();
    two_priors.common_prior_declared = false;
    two_priors.measures.push_back(PriorMeasure::make(
        {Rational(1, 8), Rational(3, 8), Rational(1, 4), Rational(1, 4)}));
    CHECK(check_cp6(two_priors).verdict == Verdict::NotApplicable);
    CHECK(check_cp7(two_priors).verdict == Verdict::NotApplicable);
}

TEST_CASE("a cross-conditioning override breaks CP6 with a full witness") {
    // Pl({w1}|W) is pushed to 3/5 >= Pl({w1}|{w1,w2}) = 1/2 while {w2}
    // keeps its base values 1/3 < 1/2: dominance fails to transfer.
    auto m = table_model({Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                         {TableOverride{Event(0b001), Event(0b111), val("3/5")}});
    auto r = check_cp6(m);
    REQUIRE(r.failed());
    const auto& w = r.witnesses.front();
    auto a1 = m.states.parse_event(*w.find("A1"));
    auto a2 = m.states.parse_event(*w.find("A2"));
    auto e1 = m.states.parse_event(*w.find("E1"));
    auto e2 = m.states.parse_event(*w.find("E2"));
    REQUIRE((a1 && a2 && e1 && e2));
    // The witness re-evaluates to the violation it reports.
    auto c11 = cond(m.measure(0), *e1, *a1);
    auto c12 = cond(m.measure(0), *e1, *a2);
    auto c21 = cond(m.measure(0), *e2, *a1);
    auto c22 = cond(m.measure(0), *e2, *a2);
    CHECK(*c11 != m.domain.bot());
    CHECK(m.domain.geq(*c11, *c12));
    CHECK(!m.domain.geq(*c21, *c22));
}

TEST_CASE("CP7") {
    auto product = plausia::test::load_golden("product_cp7.epm");
    Event e = product.named_events.at("E");
    auto r = check_cp7(product, {val("(1/10,1/10)")}, e);
    CHECK(r.failed());
    REQUIRE(!r.witnesses.empty());
    const auto& w = r.witnesses.front();
    CHECK(*w.find("Pl(E|Bi)") == "(1/2,1/2)");
    CHECK(*w.find("Pl(E|Bj)") == "(1/4,2/3)");

    CHECK(check_cp7(plausia::test::load_golden("table_m3.epm")).passed());

    // Totally ordered domains can never produce incomparable posteriors.
    SearchParams params;
    params.max_states = 3;
    params.prior_denominator = 3;
    for (const auto& m : enumerate_models(params)) CHECK(check_cp7(m).passed());
}

TEST_CASE("multiplication implies CP6") {
    auto product = plausia::test::load_golden("product_cp7.epm");
    auto r1 = check_mult_implies_cp6(product);
    CHECK(r1.passed());
    CHECK(r1.note.find("premises hold") != std::string::npos);

    auto table = plausia::test::load_golden("table_m3.epm");
    auto r2 = check_mult_implies_cp6(table);
    CHECK(r2.passed());
    CHECK(r2.note.find("vacuous") != std::string::npos);

    SearchParams params;
    params.max_states = 3;
    params.prior_denominator = 2;
    for (const auto& m : enumerate_models(params)) {
        auto r = check_mult_implies_cp6(m);
        CHECK(!r.failed());
        CHECK(r.note.find("premises hold") != std::string::npos);
    }
}

TEST_CASE("suite order and --only subset behave deterministically") {
    auto table = plausia::test::load_golden("table_m3.epm");
    auto all = run_axiom_suite(table);
    REQUIRE(all.size() == 16);
    const char* expected[] = {"CP1", "CP2", "CP3", "CP4", "ACC", "A1", "A2", "A3",
                              "A4",  "M1",  "M2",  "M3",  "M4",  "CP6", "CP7", "ASSOC"};
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].id == expected[i]);

    auto subset = run_axiom_suite(table, {}, {AxiomId::CP3, AxiomId::CP7});
    REQUIRE(subset.size() == 2);
    CHECK(subset[0].id == "CP3");
    CHECK(subset[1].id == "CP7");

    // Determinism: identical runs give identical rendered reports.
    auto again = run_axiom_suite(table);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(to_text(all[i]) == to_text(again[i]));
}

TEST_CASE("sampled checks above the cap stay deterministic") {
    EpistemicModel m;
    m.domain = Domain::unit_rational();
    std::vector<std::string> names;
    for (int i = 0; i < 8; ++i) names.push_back("s" + std::to_string(i));
    m.states = StateSpace(names);
    m.agents = {"1"};
    m.partitions.push_back(Partition::from_blocks({Event::universe(8)}, 8));
    m.common_prior_declared = true;
    m.measures.push_back(PriorMeasure::make(std::vector<Rational>(8, Rational(1, 8))));

    AxiomCheckOptions opts;
    opts.seed = 99;
    opts.sample_budget = 500;
    auto a = check_cp(m, opts);
    auto b = check_cp(m, opts);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].note.find("sampled") != std::string::npos);
        CHECK(to_text(a[i]) == to_text(b[i]));
        CHECK(a[i].passed());
    }
}
