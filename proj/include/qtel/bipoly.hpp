#pragma once

#include <map>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "qtel/contract.hpp"

namespace qtel {

using BigInt = boost::multiprecision::cpp_int;

// q-degree bound: nullopt means unbounded.
using Trunc = std::optional<long long>;

// Sparse exact polynomial in a and q with nonnegative exponents and a
// q-degree truncation bound.
//
// Invariants: no stored coefficient is zero; every stored q_exp <= trunc
// when trunc is bounded. Terms are kept in the canonical order (ascending
// q_exp, then ascending a_exp), which is also the serialization order.
class BiPoly {
public:
    // (q_exp, a_exp) -> coefficient; key order gives the canonical ordering.
    using Key = std::pair<long long, long long>;
    using Terms = std::map<Key, BigInt>;

    explicit BiPoly(Trunc trunc = std::nullopt) : trunc_(trunc) {}

    static BiPoly zero(Trunc trunc = std::nullopt) { return BiPoly(trunc); }
    static BiPoly constant(BigInt c, Trunc trunc = std::nullopt);
    // c * a^a_exp * q^q_exp, dropped if q_exp exceeds trunc.
    static BiPoly monomial(long long a_exp, long long q_exp, BigInt c,
                           Trunc trunc = std::nullopt);

    const Terms& terms() const { return terms_; }
    Trunc trunc() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }

    BigInt coeff(long long a_exp, long long q_exp) const;

    // Mutators used by builders; zero coefficients and terms beyond trunc
    // are elided automatically.
    void add_term(long long a_exp, long long q_exp, const BigInt& c);

    // Returns a copy truncated to the given bound.
    // pre: new bound is compatible (unbounded accepts any, bounded only
    // tightens or re-states).
    BiPoly truncated(Trunc t) const;

    // Equality compares terms only when truncation bounds agree; polynomials
    // with different bounds are compared as formal truncated series, so the
    // bound participates.
    bool operator==(const BiPoly&) const = default;

private:
    Terms terms_;
    Trunc trunc_;
};

// Coefficientwise sum. pre: operands share the same trunc or at least one is
// unbounded; the result carries the tighter bound.
BiPoly add(const BiPoly& p, const BiPoly& r);

// p + (-1) * r under the same truncation rules as add.
BiPoly sub(const BiPoly& p, const BiPoly& r);

// Convolution product truncated at the shared bound. Same precondition as add.
BiPoly mul(const BiPoly& p, const BiPoly& r);

BiPoly negate(const BiPoly& p);

// Collapses a-exponents, summing coefficients per q_exp.
BiPoly eval_a_one(const BiPoly& p);

} // namespace qtel
