#pragma once

#include "plausia/rational.hpp"
#include "plausia/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plausia {

/// Order relation between two plausibility values. Incomparable is a
/// first-class outcome, never an error: the product domain is only
/// partially ordered.
enum class Comparison { Less, Equal, Greater, Incomparable };

const char* to_string(Comparison c);

inline bool cmp_leq(Comparison c) { return c == Comparison::Less || c == Comparison::Equal; }
inline bool cmp_geq(Comparison c) { return c == Comparison::Greater || c == Comparison::Equal; }

/// A plausibility value: either one exact rational in [0,1] or an ordered
/// pair of them. Rationals are stored reduced; equality is structural.
class Value {
public:
    Value() = default;  // scalar 0

    static Value scalar(Rational r);
    static Value pair(Rational first, Rational second);

    bool is_pair() const { return pair_; }
    const Rational& scalar_value() const;
    const Rational& first() const { return x_; }
    const Rational& second() const;

    bool operator==(const Value& o) const { return pair_ == o.pair_ && x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const Value& o) const { return !(*this == o); }

    /// Canonical text: "1/2", "0", or "(1/10,1/10)".
    std::string str() const;

private:
    Rational x_;
    Rational y_;
    bool pair_ = false;
};

/// Structural (container) order, unrelated to the domain order.
struct ValueLess {
    bool operator()(const Value& a, const Value& b) const;
};

/// Parses canonical value text: "n/d" or "(n/d,n/d)".
std::optional<Value> parse_value(std::string_view text);

enum class DomainKind { UnitRational, GridRational, ProductUnitRational };

/// A plausibility-value domain D: the partial order with bottom/top, the
/// partial addition, the derived subtraction and an optional multiplication.
///
/// Three concrete domains are provided:
///   unit-rational          all rationals in [0,1], total order
///   grid/k                 {n/k | 0 <= n <= k}, total order
///   product-unit-rational  [0,1]x[0,1] with the componentwise order
class Domain {
public:
    Domain() : kind_(DomainKind::UnitRational) {}

    static Domain unit_rational();
    static Domain grid(int denominator);
    static Domain product_unit_rational();

    DomainKind kind() const { return kind_; }
    int grid_denominator() const { return grid_k_; }
    bool has_multiplication() const { return has_mult_; }
    /// Copy of this domain with the multiplication removed (for testing the
    /// no-multiplication error paths; no shipped model file produces one).
    Domain without_multiplication() const;

    Value top() const;
    Value bot() const;
    bool contains(const Value& v) const;

    /// Exact order relation. Throws DomainMismatchError when a value has the
    /// wrong shape for this domain.
    Comparison compare(const Value& a, const Value& b) const;
    bool leq(const Value& a, const Value& b) const { return cmp_leq(compare(a, b)); }
    bool geq(const Value& a, const Value& b) const { return cmp_geq(compare(a, b)); }

    /// Partial addition. dom(+) is {(a,b) : a+b <= top} (componentwise for
    /// pairs); nullopt means undefined, which is distinct from bottom.
    std::optional<Value> oplus(const Value& a, const Value& b) const;

    /// b minus a: the unique c with a (+) c = b, when it exists.
    std::optional<Value> ominus(const Value& b, const Value& a) const;

    /// Partial multiplication; on grid/k the product may fall off the grid.
    /// Throws NoMultiplicationError when the domain declares none.
    std::optional<Value> otimes(const Value& a, const Value& b) const;

    /// Lattice meet/join (all three shipped domains are lattices); used by
    /// the A4 sandwich check.
    Value meet(const Value& a, const Value& b) const;
    Value join(const Value& a, const Value& b) const;

    /// Token used in model files: "unit-rational", "grid/6", ...
    std::string token() const;
    static std::optional<Domain> from_token(std::string_view token);

    /// Parses a value literal and checks domain membership.
    std::optional<Value> parse(std::string_view text) const;

    bool operator==(const Domain& o) const {
        return kind_ == o.kind_ && grid_k_ == o.grid_k_ && has_mult_ == o.has_mult_;
    }
    bool operator!=(const Domain& o) const { return !(*this == o); }

private:
    DomainKind kind_;
    int grid_k_ = 0;
    bool has_mult_ = true;

    void require_member(const Value& v, const char* who) const;
    void require_shape(const Value& v, const char* who) const;
};

struct DomainAxiomOptions {
    /// The quantified tuples are drawn from the sample closed under the
    /// partial operations to depth 1; the closure is capped to keep the
    /// triple loops tractable.
    std::size_t closure_cap = 160;
    bool include_bounds = true;  // always add bot/top to the sample
    /// Skip the depth-1 closure and quantify over the bare sample; corpus
    /// sweeps use this, single-model audits keep the closure.
    bool close_under_ops = true;
};

/// Checks the value-level axioms A1, A2, M1, M2, M4 and the associativity
/// of (+) over all tuples from the closure of `sample`. Reports come back
/// in that fixed order; M-axiom reports are NotApplicable for domains
/// without multiplication.
std::vector<CheckReport> check_domain_axioms(const Domain& domain, std::vector<Value> sample,
                                             const DomainAxiomOptions& opts = {});

/// sample ∪ {a op b : a,b in sample, op in {oplus, ominus, otimes}}, deduped,
/// in structural order. Used both by the axiom checks and by tests.
std::vector<Value> close_sample(const Domain& domain, std::vector<Value> sample,
                                std::size_t cap = 160, bool include_bounds = true);

}  // namespace plausia
