#pragma once

#include "qtel/bipoly.hpp"
#include "qtel/family.hpp"

namespace qtel {

// Gaussian binomial [m choose j]_q: generating function of partitions in a
// j x (m-j) box, computed by exact polynomial division of the q-factorial
// product form. Zero when j < 0 or j > m. pre: m >= 0.
BiPoly gaussian_binomial(int m, int j, Trunc trunc = std::nullopt);

// Expansion of 1/(aq^2; q^2)_m up to q^trunc: sum over partitions mu with
// even parts <= 2m of a^length(mu) q^|mu|. pre: m >= 0; trunc bounded when
// m >= 1 (the series is infinite).
BiPoly pochhammer_inv_series(int m, Trunc trunc);

// Sum of (-a)^n q^(n^2) over n >= start with n^2 <= trunc.
// pre: start in {0, 1}; trunc bounded.
BiPoly theta_series(int start, Trunc trunc);

// Single summand of the telescoped sums:
//   P: (-a)^m q^((m-k)^2 + k^2 + m - k) / (aq^2;q^2)_m * [m choose 2k-1]_q
//   Q: (-a)^m q^((m-k)^2 + k^2 + k)     / (aq^2;q^2)_m * [m choose 2k]_q
// pre: m, k >= 0; trunc bounded when m >= 1.
BiPoly summand(Family family, int m, int k, Trunc trunc);

// Leading q-exponent of the summand before series factors: the tau value.
long long tau_value(Family family, int m, int k);

} // namespace qtel
