#include "doctest.h"

#include "qtel/partition.hpp"
#include "qtel/qseries.hpp"

using namespace qtel;

namespace {

BiPoly qpoly(std::vector<std::pair<long long, BigInt>> terms) {
    BiPoly s;
    for (const auto& [q_exp, c] : terms) s.add_term(0, q_exp, c);
    return s;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt coeff_sum(const BiPoly& p) {
    BigInt s = 0;
    for (const auto& [key, c] : p.terms()) s += c;
    return s;
}

} // namespace

TEST_CASE("gaussian binomial small values") {
    CHECK(gaussian_binomial(0, 0) == BiPoly::constant(1));
    CHECK(gaussian_binomial(2, 1) == qpoly({{0, 1}, {1, 1}}));
    CHECK(gaussian_binomial(4, 2) == qpoly({{0, 1}, {1, 1}, {2, 2}, {3, 1}, {4, 1}}));
    CHECK(gaussian_binomial(3, -1).is_zero());
    CHECK(gaussian_binomial(3, 4).is_zero());
    CHECK(gaussian_binomial(5, 0) == BiPoly::constant(1));
    CHECK(gaussian_binomial(5, 5) == BiPoly::constant(1));
    CHECK_THROWS_AS(gaussian_binomial(-1, 0), ContractViolation);
}

TEST_CASE("gaussian binomial structure") {
    for (int m = 0; m <= 8; ++m) {
        for (int j = 0; j <= m; ++j) {
            BiPoly g = gaussian_binomial(m, j);
            CHECK(g == gaussian_binomial(m, m - j)); // symmetry
            if (m >= 1) {
                BiPoly pascal = add(gaussian_binomial(m - 1, j - 1),
                                    mul(BiPoly::monomial(0, j, 1), gaussian_binomial(m - 1, j)));
                CHECK(g == pascal);
            }
            long long top = 0;
            for (const auto& [key, c] : g.terms()) {
                CHECK(c > 0); // unimodal positive coefficients
                top = std::max(top, key.first);
            }
            CHECK(top == static_cast<long long>(j) * (m - j)); // degree
            CHECK(coeff_sum(g) == binomial(m, j));             // q = 1
        }
    }
}

TEST_CASE("gaussian binomial is the box generating function") {
    for (int rows = 0; rows <= 8; ++rows) {
        for (int cols = 0; cols <= 8; ++cols) {
            BiPoly gf;
            for (const Partition& mu : enumerate_box(rows, cols)) gf.add_term(0, mu.weight(), 1);
            CHECK(gf == gaussian_binomial(rows + cols, rows));
        }
    }
}

TEST_CASE("pochhammer inverse series small values") {
    CHECK(pochhammer_inv_series(0, std::nullopt) == BiPoly::constant(1));

    BiPoly m2 = pochhammer_inv_series(2, 4); // 1 + a q^2 + (a + a^2) q^4
    BiPoly expect(4);
    expect.add_term(0, 0, 1);
    expect.add_term(1, 2, 1);
    expect.add_term(1, 4, 1);
    expect.add_term(2, 4, 1);
    CHECK(m2 == expect);

    CHECK_THROWS_AS(pochhammer_inv_series(1, std::nullopt), ContractViolation);
    CHECK_THROWS_AS(pochhammer_inv_series(-1, 4), ContractViolation);
}

TEST_CASE("pochhammer inverse series inverts the finite product") {
    const long long bound = 20;
    for (int m = 0; m <= 8; ++m) {
        BiPoly product = BiPoly::constant(1, bound);
        for (int i = 1; i <= m; ++i)
            product = mul(product, sub(BiPoly::constant(1, bound),
                                       BiPoly::monomial(1, 2 * i, 1, bound)));
        CHECK(mul(pochhammer_inv_series(m, bound), product) == BiPoly::constant(1, bound));
    }
}

TEST_CASE("pochhammer inverse coefficients count even-part partitions") {
    const long long bound = 30;
    for (int m = 0; m <= 5; ++m) {
        BiPoly gf(bound);
        for (int len = 0; 2 * len <= bound; ++len)
            for (const Partition& mu : enumerate_even_exact(len, 2 * m))
                gf.add_term(len, mu.weight(), 1);
        CHECK(gf == pochhammer_inv_series(m, bound));
    }
}

TEST_CASE("theta series") {
    BiPoly from1(9);
    from1.add_term(1, 1, -1);
    from1.add_term(2, 4, 1);
    from1.add_term(3, 9, -1);
    CHECK(theta_series(1, 9) == from1);

    BiPoly from0 = theta_series(0, 9);
    CHECK(from0.coeff(0, 0) == 1);
    CHECK(from0 == add(BiPoly::constant(1, 9), from1));

    CHECK(theta_series(0, 0) == BiPoly::constant(1, 0));
    CHECK(theta_series(1, 0).is_zero());

    BiPoly at_one(9); // 1 - q + q^4 - q^9 pattern, a collapsed
    at_one.add_term(0, 1, -1);
    at_one.add_term(0, 4, 1);
    at_one.add_term(0, 9, -1);
    CHECK(eval_a_one(theta_series(1, 9)) == at_one);

    CHECK_THROWS_AS(theta_series(2, 9), ContractViolation);
}

TEST_CASE("tau value") {
    CHECK(tau_value(Family::P, 1, 1) == 1);
    CHECK(tau_value(Family::P, 2, 1) == 3);
    CHECK(tau_value(Family::P, 3, 2) == 6);
    CHECK(tau_value(Family::Q, 0, 0) == 0);
    CHECK(tau_value(Family::Q, 1, 0) == 1);
    CHECK(tau_value(Family::Q, 2, 1) == 3);
}

TEST_CASE("summand small values") {
    BiPoly p11 = summand(Family::P, 1, 1, 5); // -aq - a^2 q^3 - a^3 q^5
    BiPoly expect(5);
    expect.add_term(1, 1, -1);
    expect.add_term(2, 3, -1);
    expect.add_term(3, 5, -1);
    CHECK(p11 == expect);

    CHECK(summand(Family::Q, 0, 0, 10) == BiPoly::constant(1, 10));
    CHECK(summand(Family::P, 0, 1, 10).is_zero()); // vanishing binomial
    CHECK(summand(Family::Q, 1, 1, 10).is_zero());

    // sign alternates with m
    CHECK(summand(Family::P, 2, 1, 8).coeff(2, 3) == 1);
    CHECK(summand(Family::P, 3, 2, 10).coeff(3, 6) == -1);
}

TEST_CASE("summands telescope to the theta series at small order") {
    const long long order = 12;
    int bound = 0;
    while (bound * bound < 2 * order) ++bound;
    bound += 2;

    BiPoly p_sum(order), q_sum(order);
    for (int m = 0; m <= bound; ++m) {
        for (int k = 1; 2 * k - 1 <= m; ++k) p_sum = add(p_sum, summand(Family::P, m, k, order));
        for (int k = 0; 2 * k <= m; ++k) q_sum = add(q_sum, summand(Family::Q, m, k, order));
    }
    CHECK(p_sum == theta_series(1, order));
    CHECK(q_sum == theta_series(0, order));
}
