#include "plausia/values.hpp"

#include "plausia/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace plausia {

// --- rational helpers -------------------------------------------------------

std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rational> parse_rational(std::string_view text) {
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_digits(text)) return std::nullopt;
        return Rational(BigInt(std::string(text)));
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(BigInt(std::string(num)), d);
}

std::optional<std::int64_t> to_int64(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (v < lo || v > hi) return std::nullopt;
    return v.convert_to<std::int64_t>();
}

// --- Value ------------------------------------------------------------------

const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::Less: return "less";
        case Comparison::Equal: return "equal";
        case Comparison::Greater: return "greater";
        case Comparison::Incomparable: return "incomparable";
    }
    return "?";
}

Value Value::scalar(Rational r) {
    Value v;
    v.x_ = std::move(r);
    v.pair_ = false;
    return v;
}

Value Value::pair(Rational first, Rational second) {
    Value v;
    v.x_ = std::move(first);
    v.y_ = std::move(second);
    v.pair_ = true;
    return v;
}

const Rational& Value::scalar_value() const {
    if (pair_) throw DomainMismatchError("pair value used as a scalar");
    return x_;
}

const Rational& Value::second() const {
    if (!pair_) throw DomainMismatchError("scalar value has no second component");
    return y_;
}

std::string Value::str() const {
    if (!pair_) return format_rational(x_);
    return "(" + format_rational(x_) + "," + format_rational(y_) + ")";
}

bool ValueLess::operator()(const Value& a, const Value& b) const {
    if (a.is_pair() != b.is_pair()) return !a.is_pair();
    if (a.first() != b.first()) return a.first() < b.first();
    if (!a.is_pair()) return false;
    return a.second() < b.second();
}

std::optional<Value> parse_value(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '(') {
        if (text.back() != ')') return std::nullopt;
        std::string_view inner = text.substr(1, text.size() - 2);
        auto comma = inner.find(',');
        if (comma == std::string_view::npos) return std::nullopt;
        auto a = parse_rational(trim(inner.substr(0, comma)));
        auto b = parse_rational(trim(inner.substr(comma + 1)));
        if (!a || !b) return std::nullopt;
        return Value::pair(*a, *b);
    }
    auto r = parse_rational(text);
    if (!r) return std::nullopt;
    return Value::scalar(*r);
}

// --- Domain -----------------------------------------------------------------

Domain Domain::unit_rational() {
    Domain d;
    d.kind_ = DomainKind::UnitRational;
    return d;
}

Domain Domain::grid(int denominator) {
    if (denominator < 1) throw DomainMismatchError("grid denominator must be >= 1");
    Domain d;
    d.kind_ = DomainKind::GridRational;
    d.grid_k_ = denominator;
    return d;
}

Domain Domain::product_unit_rational() {
    Domain d;
    d.kind_ = DomainKind::ProductUnitRational;
    return d;
}

Domain Domain::without_multiplication() const {
    Domain d = *this;
    d.has_mult_ = false;
    return d;
}

Value Domain::top() const {
    if (kind_ == DomainKind::ProductUnitRational) return Value::pair(1, 1);
    return Value::scalar(1);
}

Value Domain::bot() const {
    if (kind_ == DomainKind::ProductUnitRational) return Value::pair(0, 0);
    return Value::scalar(0);
}

static bool in_unit(const Rational& r) { return r >= 0 && r <= 1; }

bool Domain::contains(const Value& v) const {
    switch (kind_) {
        case DomainKind::UnitRational:
            return !v.is_pair() && in_unit(v.first());
        case DomainKind::GridRational:
            return !v.is_pair() && in_unit(v.first()) &&
                   (BigInt(grid_k_) % denominator(v.first())) == 0;
        case DomainKind::ProductUnitRational:
            return v.is_pair() && in_unit(v.first()) && in_unit(v.second());
    }
    return false;
}

void Domain::require_shape(const Value& v, const char* who) const {
    bool want_pair = kind_ == DomainKind::ProductUnitRational;
    if (v.is_pair() != want_pair)
        throw DomainMismatchError(std::string(who) + ": value " + v.str() +
                                  " has the wrong shape for domain " + token());
}

void Domain::require_member(const Value& v, const char* who) const {
    if (!contains(v))
        throw DomainMismatchError(std::string(who) + ": value " + v.str() +
                                  " is not in domain " + token());
}

static Comparison cmp_rational(const Rational& a, const Rational& b) {
    if (a == b) return Comparison::Equal;
    return a < b ? Comparison::Less : Comparison::Greater;
}

Comparison Domain::compare(const Value& a, const Value& b) const {
    require_shape(a, "compare");
    require_shape(b, "compare");
    if (kind_ != DomainKind::ProductUnitRational) return cmp_rational(a.first(), b.first());
    Comparison c1 = cmp_rational(a.first(), b.first());
    Comparison c2 = cmp_rational(a.second(), b.second());
    if (c1 == Comparison::Equal) return c2;
    if (c2 == Comparison::Equal || c1 == c2) return c1;
    return Comparison::Incomparable;
}

std::optional<Value> Domain::oplus(const Value& a, const Value& b) const {
    require_member(a, "oplus");
    require_member(b, "oplus");
    if (kind_ != DomainKind::ProductUnitRational) {
        Rational s = a.first() + b.first();
        if (s > 1) return std::nullopt;
        Value v = Value::scalar(s);
        if (!contains(v)) return std::nullopt;  // off-grid sums (cannot happen for member inputs)
        return v;
    }
    Rational s1 = a.first() + b.first();
    Rational s2 = a.second() + b.second();
    if (s1 > 1 || s2 > 1) return std::nullopt;
    return Value::pair(s1, s2);
}

std::optional<Value> Domain::ominus(const Value& b, const Value& a) const {
    require_member(a, "ominus");
    require_member(b, "ominus");
    if (kind_ != DomainKind::ProductUnitRational) {
        if (a.first() > b.first()) return std::nullopt;
        Value v = Value::scalar(b.first() - a.first());
        if (!contains(v)) return std::nullopt;
        return v;
    }
    if (a.first() > b.first() || a.second() > b.second()) return std::nullopt;
    return Value::pair(b.first() - a.first(), b.second() - a.second());
}

std::optional<Value> Domain::otimes(const Value& a, const Value& b) const {
    if (!has_mult_)
        throw NoMultiplicationError("domain " + token() + " declares no multiplication");
    require_member(a, "otimes");
    require_member(b, "otimes");
    if (kind_ != DomainKind::ProductUnitRational) {
        Value v = Value::scalar(a.first() * b.first());
        if (!contains(v)) return std::nullopt;  // grid products may fall off the grid
        return v;
    }
    return Value::pair(a.first() * b.first(), a.second() * b.second());
}

Value Domain::meet(const Value& a, const Value& b) const {
    require_shape(a, "meet");
    require_shape(b, "meet");
    if (kind_ != DomainKind::ProductUnitRational)
        return Value::scalar(std::min(a.first(), b.first()));
    return Value::pair(std::min(a.first(), b.first()), std::min(a.second(), b.second()));
}

Value Domain::join(const Value& a, const Value& b) const {
    require_shape(a, "join");
    require_shape(b, "join");
    if (kind_ != DomainKind::ProductUnitRational)
        return Value::scalar(std::max(a.first(), b.first()));
    return Value::pair(std::max(a.first(), b.first()), std::max(a.second(), b.second()));
}

std::string Domain::token() const {
    switch (kind_) {
        case DomainKind::UnitRational: return "unit-rational";
        case DomainKind::GridRational: return "grid/" + std::to_string(grid_k_);
        case DomainKind::ProductUnitRational: return "product-unit-rational";
    }
    return "?";
}

std::optional<Domain> Domain::from_token(std::string_view token) {
    if (token == "unit-rational") return unit_rational();
    if (token == "product-unit-rational") return product_unit_rational();
    if (token.substr(0, 5) == "grid/") {
        auto k = parse_rational(token.substr(5));
        if (!k || denominator(*k) != 1 || numerator(*k) < 1) return std::nullopt;
        auto ki = to_int64(numerator(*k));
        if (!ki || *ki > 1000000) return std::nullopt;
        return grid(static_cast<int>(*ki));
    }
    return std::nullopt;
}

std::optional<Value> Domain::parse(std::string_view text) const {
    auto v = parse_value(text);
    if (!v || !contains(*v)) return std::nullopt;
    return v;
}

// --- domain axiom checks ------------------------------------------------------

namespace {

// Raw op bodies for the axiom checker: operands come from the closed sample
// and were validated once, so these skip the per-call membership checks.
// Result-membership (the grid semantics) is still enforced.
std::optional<Value> raw_oplus(const Domain& d, const Value& a, const Value& b) {
    if (d.kind() != DomainKind::ProductUnitRational) {
        Rational s = a.first() + b.first();
        if (s > 1) return std::nullopt;
        return Value::scalar(std::move(s));
    }
    Rational s1 = a.first() + b.first();
    if (s1 > 1) return std::nullopt;
    Rational s2 = a.second() + b.second();
    if (s2 > 1) return std::nullopt;
    return Value::pair(std::move(s1), std::move(s2));
}

std::optional<Value> raw_otimes(const Domain& d, const Value& a, const Value& b) {
    if (d.kind() != DomainKind::ProductUnitRational) {
        Value v = Value::scalar(a.first() * b.first());
        if (d.kind() == DomainKind::GridRational && !d.contains(v)) return std::nullopt;
        return v;
    }
    return Value::pair(a.first() * b.first(), a.second() * b.second());
}

Comparison raw_compare_scalar(const Rational& a, const Rational& b) {
    if (a < b) return Comparison::Less;
    if (b < a) return Comparison::Greater;
    return Comparison::Equal;
}

Comparison raw_compare(const Domain& d, const Value& a, const Value& b) {
    if (d.kind() != DomainKind::ProductUnitRational)
        return raw_compare_scalar(a.first(), b.first());
    Comparison c1 = raw_compare_scalar(a.first(), b.first());
    Comparison c2 = raw_compare_scalar(a.second(), b.second());
    if (c1 == Comparison::Equal) return c2;
    if (c2 == Comparison::Equal || c1 == c2) return c1;
    return Comparison::Incomparable;
}

bool raw_leq(const Domain& d, const Value& a, const Value& b) {
    return cmp_leq(raw_compare(d, a, b));
}
bool raw_geq(const Domain& d, const Value& a, const Value& b) {
    return cmp_geq(raw_compare(d, a, b));
}

}  // namespace

std::vector<Value> close_sample(const Domain& domain, std::vector<Value> sample, std::size_t cap,
                                bool include_bounds) {
    std::set<Value, ValueLess> out;
    if (include_bounds) {
        out.insert(domain.bot());
        out.insert(domain.top());
    }
    for (auto& v : sample) out.insert(std::move(v));
    std::vector<Value> base(out.begin(), out.end());
    for (const auto& a : base) {
        for (const auto& b : base) {
            if (out.size() >= cap) break;
            if (auto s = raw_oplus(domain, a, b)) out.insert(*s);
            if (auto d = domain.ominus(a, b)) out.insert(*d);
            if (domain.has_multiplication())
                if (auto p = raw_otimes(domain, a, b)) out.insert(*p);
        }
    }
    return {out.begin(), out.end()};
}

namespace {

Witness value_witness(std::initializer_list<std::pair<const char*, const Value*>> fields) {
    Witness w;
    for (const auto& [k, v] : fields) w.put(k, v->str());
    return w;
}


// Pairwise operation and comparison tables over the closed sample. The
// triple loops of the axiom checks then mostly index into these instead of
// redoing rational arithmetic per tuple.
struct OpTable {
    const Domain& d;
    const std::vector<Value>& vs;
    std::size_t n;
    std::vector<std::optional<Value>> plus, times;
    std::vector<Comparison> cmp;

    OpTable(const Domain& dom, const std::vector<Value>& values) : d(dom), vs(values) {
        n = vs.size();
        for (const auto& v : vs)
            if (!d.contains(v))
                throw DomainMismatchError("sample value " + v.str() + " not in " + d.token());
        plus.resize(n * n);
        cmp.resize(n * n);
        if (d.has_multiplication()) times.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                plus[i * n + j] = raw_oplus(d, vs[i], vs[j]);
                cmp[i * n + j] = raw_compare(d, vs[i], vs[j]);
                if (d.has_multiplication()) times[i * n + j] = raw_otimes(d, vs[i], vs[j]);
            }
    }
    const std::optional<Value>& sum(std::size_t i, std::size_t j) const { return plus[i * n + j]; }
    const std::optional<Value>& prod(std::size_t i, std::size_t j) const {
        return times[i * n + j];
    }
    bool leq(std::size_t i, std::size_t j) const { return cmp_leq(cmp[i * n + j]); }
    bool geq(std::size_t i, std::size_t j) const { return cmp_geq(cmp[i * n + j]); }
};

// A1: for all a,b,c, if (a,b) in dom(+) then c <= b iff ((a,c) in dom(+)
// and a+c <= a+b); and the mirrored right-hand version. (+) is commutative
// in every shipped domain, so one table serves both sides.
void check_a1(const OpTable& t, CheckReport& r) {
    for (std::size_t a = 0; a < t.n; ++a) {
        for (std::size_t b = 0; b < t.n; ++b) {
            const auto& ab = t.sum(a, b);
            if (!ab) continue;
            for (std::size_t c = 0; c < t.n; ++c) {
                ++r.examined;
                bool c_leq_b = t.leq(c, b);
                const auto& ac = t.sum(a, c);
                bool rhs = ac && raw_leq(t.d, *ac, *ab);
                if (c_leq_b != rhs)
                    r.fail(value_witness({{"a", &t.vs[a]}, {"b", &t.vs[b]}, {"c", &t.vs[c]}}));
            }
        }
    }
}

// A2: every a has a complement to top. The witness candidate is top - a,
// which by definition of subtraction is the only possibility.
void check_a2(const OpTable& t, CheckReport& r) {
    const Value top = t.d.top();
    for (const auto& a : t.vs) {
        ++r.examined;
        auto b = t.d.ominus(top, a);
        if (!b) {
            r.fail(value_witness({{"a", &a}}).put("reason", "top (-) a undefined"));
            continue;
        }
        auto s = t.d.oplus(a, *b);
        if (!s || *s != top)
            r.fail(value_witness({{"a", &a}, {"b", &*b}}).put("reason", "a (+) b != top"));
    }
}

void check_m1(const OpTable& t, CheckReport& r) {
    for (std::size_t a = 0; a < t.n; ++a) {
        for (std::size_t b = 0; b < t.n; ++b) {
            const auto& ab = t.prod(a, b);
            if (!ab) continue;
            for (std::size_t c = 0; c < t.n; ++c) {
                ++r.examined;
                const auto& ac = t.prod(a, c);
                if (!ac) {
                    ++r.skipped;
                    continue;
                }
                if (t.geq(b, c) && !raw_geq(t.d, *ab, *ac))
                    r.fail(value_witness({{"a", &t.vs[a]}, {"b", &t.vs[b]}, {"c", &t.vs[c]},
                                          {"a*b", &*ab}, {"a*c", &*ac}}));
            }
        }
    }
}

// M2: (a+b)*c = (a*c)+(b*c) when a+b is defined. Tuples where one side is
// undefined while subexpressions exist are only possible on grid domains;
// they count as skipped, equality is checked where both sides exist.
void check_m2(const OpTable& t, CheckReport& r) {
    for (std::size_t a = 0; a < t.n; ++a) {
        for (std::size_t b = 0; b < t.n; ++b) {
            const auto& ab = t.sum(a, b);
            if (!ab) continue;
            for (std::size_t c = 0; c < t.n; ++c) {
                ++r.examined;
                const auto& ac = t.prod(a, c);
                const auto& bc = t.prod(b, c);
                auto lhs = raw_otimes(t.d, *ab, t.vs[c]);
                std::optional<Value> rhs;
                if (ac && bc) rhs = raw_oplus(t.d, *ac, *bc);
                if (!lhs || !rhs) {
                    ++r.skipped;
                    continue;
                }
                if (*lhs != *rhs)
                    r.fail(value_witness({{"a", &t.vs[a]}, {"b", &t.vs[b]}, {"c", &t.vs[c]},
                                          {"lhs", &*lhs}, {"rhs", &*rhs}}));
            }
        }
    }
}

void check_m4(const OpTable& t, CheckReport& r) {
    const Value bot = t.d.bot();
    for (std::size_t a = 0; a < t.n; ++a) {
        if (t.vs[a] == bot) continue;
        for (std::size_t b = 0; b < t.n; ++b) {
            const auto& ab = t.prod(a, b);
            if (!ab) continue;
            for (std::size_t c = 0; c < t.n; ++c) {
                ++r.examined;
                const auto& ac = t.prod(a, c);
                if (!ac) {
                    ++r.skipped;
                    continue;
                }
                if (raw_geq(t.d, *ab, *ac) && !t.geq(b, c))
                    r.fail(value_witness({{"a", &t.vs[a]}, {"b", &t.vs[b]}, {"c", &t.vs[c]},
                                          {"a*b", &*ab}, {"a*c", &*ac}}));
            }
        }
    }
}

// Kleene equality for the partial (+): either both parenthesisations are
// undefined, or both are defined and equal.
void check_assoc(const OpTable& t, CheckReport& r) {
    for (std::size_t a = 0; a < t.n; ++a) {
        for (std::size_t b = 0; b < t.n; ++b) {
            const auto& ab = t.sum(a, b);
            for (std::size_t c = 0; c < t.n; ++c) {
                ++r.examined;
                const auto& bc = t.sum(b, c);
                std::optional<Value> lhs = bc ? raw_oplus(t.d, t.vs[a], *bc) : std::nullopt;
                std::optional<Value> rhs = ab ? raw_oplus(t.d, *ab, t.vs[c]) : std::nullopt;
                if (lhs.has_value() != rhs.has_value()) {
                    r.fail(value_witness({{"a", &t.vs[a]}, {"b", &t.vs[b]}, {"c", &t.vs[c]}})
                               .put("reason", "one side undefined"));
                    continue;
                }
                if (lhs && *lhs != *rhs)
                    r.fail(value_witness({{"a", &t.vs[a]}, {"b", &t.vs[b]}, {"c", &t.vs[c]},
                                          {"lhs", &*lhs}, {"rhs", &*rhs}}));
            }
        }
    }
}

}  // namespace

std::vector<CheckReport> check_domain_axioms(const Domain& domain, std::vector<Value> sample,
                                             const DomainAxiomOptions& opts) {
    std::vector<Value> vs;
    if (opts.close_under_ops) {
        vs = close_sample(domain, std::move(sample), opts.closure_cap, opts.include_bounds);
    } else {
        std::set<Value, ValueLess> dedup;
        if (opts.include_bounds) {
            dedup.insert(domain.bot());
            dedup.insert(domain.top());
        }
        for (auto& v : sample) dedup.insert(std::move(v));
        vs.assign(dedup.begin(), dedup.end());
    }

    OpTable table(domain, vs);
    std::vector<CheckReport> out;
    auto add = [&](const char* id, auto&& fn) {
        CheckReport r;
        r.id = id;
        fn(table, r);
        out.push_back(std::move(r));
    };
    auto mult_na = [&](const char* id) {
        CheckReport r;
        r.id = id;
        r.verdict = Verdict::NotApplicable;
        r.note = "domain declares no multiplication";
        out.push_back(std::move(r));
    };

    add("A1", check_a1);
    add("A2", check_a2);
    if (domain.has_multiplication()) {
        add("M1", check_m1);
        add("M2", check_m2);
        add("M4", check_m4);
    } else {
        mult_na("M1");
        mult_na("M2");
        mult_na("M4");
    }
    add("ASSOC", check_assoc);
    return out;
}

}  // namespace plausia
