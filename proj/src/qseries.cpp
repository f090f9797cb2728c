#include "qtel/qseries.hpp"

#include <vector>

namespace qtel {

namespace {

// Dense univariate product of (1 - q^i) for i in `factors`.
std::vector<BigInt> dense_product(const std::vector<int>& factors) {
    std::vector<BigInt> poly{BigInt(1)};
    for (int i : factors) {
        std::vector<BigInt> next(poly.size() + static_cast<std::size_t>(i), BigInt(0));
        for (std::size_t t = 0; t < poly.size(); ++t) {
            next[t] += poly[t];
            next[t + static_cast<std::size_t>(i)] -= poly[t];
        }
        poly = std::move(next);
    }
    return poly;
}

// In-place exact division by (1 - q^i): g_t = f_t + g_{t-i}.
void divide_by_one_minus_q(std::vector<BigInt>& f, int i) {
    for (std::size_t t = static_cast<std::size_t>(i); t < f.size(); ++t)
        f[t] += f[t - static_cast<std::size_t>(i)];
    // The quotient has degree deg(f) - i; the top i entries must now be zero.
    for (std::size_t t = f.size() - static_cast<std::size_t>(i); t < f.size(); ++t)
        require(f[t] == 0, "gaussian_binomial: division not exact");
    f.resize(f.size() - static_cast<std::size_t>(i));
}

} // namespace

BiPoly gaussian_binomial(int m, int j, Trunc trunc) {
    require(m >= 0, "gaussian_binomial: m must be nonnegative");
    if (j < 0 || j > m) return BiPoly::zero(trunc);

    std::vector<int> numerator;
    for (int i = m - j + 1; i <= m; ++i) numerator.push_back(i);
    std::vector<BigInt> poly = dense_product(numerator);
    for (int i = 1; i <= j; ++i) divide_by_one_minus_q(poly, i);

    BiPoly out(trunc);
    for (std::size_t t = 0; t < poly.size(); ++t)
        out.add_term(0, static_cast<long long>(t), poly[t]);
    return out;
}

BiPoly pochhammer_inv_series(int m, Trunc trunc) {
    require(m >= 0, "pochhammer_inv_series: m must be nonnegative");
    require(m == 0 || trunc.has_value(),
            "pochhammer_inv_series: infinite series needs a bounded truncation");
    BiPoly out = BiPoly::constant(1, trunc);
    for (int i = 1; i <= m; ++i) {
        BiPoly geometric(trunc);
        for (long long t = 0; 2LL * i * t <= *trunc; ++t)
            geometric.add_term(t, 2LL * i * t, 1);
        out = mul(out, geometric);
    }
    return out;
}

BiPoly theta_series(int start, Trunc trunc) {
    require(start == 0 || start == 1, "theta_series: start must be 0 or 1");
    require(trunc.has_value(), "theta_series: infinite series needs a bounded truncation");
    BiPoly out(trunc);
    for (long long n = start; n * n <= *trunc; ++n)
        out.add_term(n, n * n, (n % 2 == 0) ? BigInt(1) : BigInt(-1));
    return out;
}

long long tau_value(Family family, int m, int k) {
    long long d = m - k;
    return d * d + 1LL * k * k + (family == Family::P ? d : k);
}

BiPoly summand(Family family, int m, int k, Trunc trunc) {
    require(m >= 0 && k >= 0, "summand: m and k must be nonnegative");
    int j = family == Family::P ? 2 * k - 1 : 2 * k;
    BiPoly gauss = gaussian_binomial(m, j, trunc);
    if (gauss.is_zero()) return BiPoly::zero(trunc);
    BiPoly lead = BiPoly::monomial(m, tau_value(family, m, k),
                                   (m % 2 == 0) ? BigInt(1) : BigInt(-1), trunc);
    return mul(mul(lead, pochhammer_inv_series(m, trunc)), gauss);
}

} // namespace qtel
