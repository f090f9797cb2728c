#include "qtel/bipoly.hpp"

namespace qtel {

namespace {

// Shared bound for a binary operation: bounds must agree unless one side is
// unbounded; the result carries the tighter bound.
Trunc merge_trunc(const BiPoly& p, const BiPoly& r) {
    if (!p.trunc()) return r.trunc();
    if (!r.trunc()) return p.trunc();
    require(*p.trunc() == *r.trunc(), "BiPoly: incompatible truncation bounds");
    return p.trunc();
}

} // namespace

BiPoly BiPoly::constant(BigInt c, Trunc trunc) {
    return monomial(0, 0, std::move(c), trunc);
}

BiPoly BiPoly::monomial(long long a_exp, long long q_exp, BigInt c, Trunc trunc) {
    require(a_exp >= 0 && q_exp >= 0, "BiPoly: exponents must be nonnegative");
    BiPoly out(trunc);
    out.add_term(a_exp, q_exp, c);
    return out;
}

BigInt BiPoly::coeff(long long a_exp, long long q_exp) const {
    auto it = terms_.find({q_exp, a_exp});
    return it == terms_.end() ? BigInt(0) : it->second;
}

void BiPoly::add_term(long long a_exp, long long q_exp, const BigInt& c) {
    require(a_exp >= 0 && q_exp >= 0, "BiPoly: exponents must be nonnegative");
    if (c == 0) return;
    if (trunc_ && q_exp > *trunc_) return;
    Key key{q_exp, a_exp};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BiPoly BiPoly::truncated(Trunc t) const {
    if (!t) {
        require(!trunc_, "BiPoly: cannot lift a bounded polynomial to unbounded");
        return *this;
    }
    require(!trunc_ || *t <= *trunc_, "BiPoly: truncation may only tighten");
    BiPoly out(t);
    for (const auto& [key, c] : terms_) out.add_term(key.second, key.first, c);
    return out;
}

BiPoly add(const BiPoly& p, const BiPoly& r) {
    BiPoly out(merge_trunc(p, r));
    for (const auto& [key, c] : p.terms()) out.add_term(key.second, key.first, c);
    for (const auto& [key, c] : r.terms()) out.add_term(key.second, key.first, c);
    return out;
}

BiPoly sub(const BiPoly& p, const BiPoly& r) { return add(p, negate(r)); }

BiPoly negate(const BiPoly& p) {
    BiPoly out(p.trunc());
    for (const auto& [key, c] : p.terms()) out.add_term(key.second, key.first, -c);
    return out;
}

BiPoly mul(const BiPoly& p, const BiPoly& r) {
    BiPoly out(merge_trunc(p, r));
    const auto bound = out.trunc();
    for (const auto& [kp, cp] : p.terms()) {
        for (const auto& [kr, cr] : r.terms()) {
            long long q_exp = kp.first + kr.first;
            if (bound && q_exp > *bound) break; // r's terms ascend in q_exp
            out.add_term(kp.second + kr.second, q_exp, cp * cr);
        }
    }
    return out;
}

BiPoly eval_a_one(const BiPoly& p) {
    BiPoly out(p.trunc());
    for (const auto& [key, c] : p.terms()) out.add_term(0, key.first, c);
    return out;
}

} // namespace qtel
