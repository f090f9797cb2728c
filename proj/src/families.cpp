#include "qtel/families.hpp"

#include <algorithm>

#include "qtel/qseries.hpp"

namespace qtel {

bool admissible(const Cell& c) {
    if (c.n < 0 || c.m < 0 || c.k < 0 || c.m > c.n) return false;
    if (c.family == Family::P) return c.k >= 1 && 2 * c.k - 1 <= c.m;
    return 2 * c.k <= c.m;
}

namespace {

int tau_part(const Partition& tau) { return tau.empty() ? 0 : tau.parts()[0]; }

Partition make_tau(long long value) {
    require(value >= 0, "Triple: tau value must be nonnegative");
    if (value == 0) return Partition();
    return Partition({static_cast<int>(value)});
}

// lambda box for the cell: rows x cols.
std::pair<int, int> lambda_box(const Cell& c) {
    if (c.family == Family::P) return {2 * c.k - 1, c.m - 2 * c.k + 1};
    return {2 * c.k, c.m - 2 * c.k};
}

} // namespace

bool validate(const Triple& t, const Cell& c) {
    if (!admissible(c)) return false;
    if (t.tau.length() > 1) return false;
    if (tau_part(t.tau) != tau_value(c.family, c.m, c.k)) return false;
    auto [rows, cols] = lambda_box(c);
    if (t.lambda.length() > rows) return false;
    if (!t.lambda.empty() && t.lambda.parts()[0] > cols) return false;
    if (t.mu.length() != c.n - c.m) return false;
    for (int part : t.mu.parts())
        if (part % 2 != 0 || part > 2 * c.m) return false;
    return true;
}

const char* to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::G: return "G";
        case ClassTag::H: return "H";
        case ClassTag::K: return "K";
        case ClassTag::U: return "U";
        case ClassTag::T: return "T";
        case ClassTag::M: return "M";
        case ClassTag::S: return "S";
        case ClassTag::L: return "L";
        case ClassTag::U_Q: return "U_Q";
        case ClassTag::T_Q: return "T_Q";
    }
    return "?";
}

std::vector<Triple> build_cell(const Cell& c) {
    if (!admissible(c)) return {};
    Partition tau = make_tau(tau_value(c.family, c.m, c.k));
    auto [rows, cols] = lambda_box(c);
    std::vector<Triple> out;
    for (const Partition& lambda : enumerate_box(rows, cols))
        for (const Partition& mu : enumerate_even_exact(c.n - c.m, 2 * c.m))
            out.push_back(Triple{tau, lambda, mu});
    return out;
}

std::pair<long long, long long> weight(const Triple& t, const Cell& c) {
    require(validate(t, c), "weight: triple does not validate in cell");
    return {c.m + t.mu.length(), t.tau.weight() + t.lambda.weight() + t.mu.weight()};
}

ClassTag classify(const Triple& t, const Cell& c) {
    require(validate(t, c), "classify: triple does not validate in cell");
    int len = t.lambda.length();
    if (c.family == Family::P) {
        if (len == 2 * c.k - 1) return multiplicity(t.mu, 2) == 0 ? ClassTag::G : ClassTag::T;
        // len <= 2k-2; admissible P-cells have m >= 1, so the part 2m exists.
        if (multiplicity(t.mu, 2 * c.m) != 0) return ClassTag::U;
        return len == 2 * c.k - 2 ? ClassTag::H : ClassTag::K;
    }
    if (len == 2 * c.k) return multiplicity(t.mu, 2) == 0 ? ClassTag::M : ClassTag::T_Q;
    // len <= 2k-1 forces k >= 1, hence m >= 2.
    if (multiplicity(t.mu, 2 * c.m) != 0) return ClassTag::U_Q;
    return len == 2 * c.k - 1 ? ClassTag::S : ClassTag::L;
}

std::vector<Triple> target_set_elements(ClassTag tag, const Cell& set_cell) {
    bool p_role = tag == ClassTag::G || tag == ClassTag::H || tag == ClassTag::K;
    bool q_role = tag == ClassTag::M || tag == ClassTag::S || tag == ClassTag::L;
    require((set_cell.family == Family::P && p_role) || (set_cell.family == Family::Q && q_role),
            "target_set_elements: tag is not a target-set tag of this family");
    std::vector<Triple> out;
    for (const Triple& t : build_cell(set_cell))
        if (classify(t, set_cell) == tag) out.push_back(t);
    return out;
}

std::pair<long long, long long> weight(const DomainElement& d) {
    auto [a, q] = weight(d.t, d.cell);
    if (d.kind == DomKind::marked) return {a + 1, q + d.marker};
    return {a, q};
}

namespace {

ClassTag low_tag(Family f) { return f == Family::P ? ClassTag::K : ClassTag::L; }
ClassTag full_tag(Family f) { return f == Family::P ? ClassTag::G : ClassTag::M; }
ClassTag near_tag(Family f) { return f == Family::P ? ClassTag::H : ClassTag::S; }

// Height of the column moved by Case 1 / Case 3 (the full lambda height).
int full_height(const Cell& rel) {
    return rel.family == Family::P ? 2 * rel.k - 1 : 2 * rel.k;
}

// tau offset of Case 1 and Case 2 (m-shift at fixed k).
int tau_shift_m(const Cell& rel) {
    return rel.family == Family::P ? 2 * rel.m - 2 * rel.k + 2 : 2 * rel.m - 2 * rel.k + 1;
}

// tau offset of Case 3 (diagonal (m,k)-shift).
int tau_shift_diag(const Cell& rel) {
    return rel.family == Family::P ? 2 * rel.k + 1 : 2 * rel.k + 2;
}

Partition mu_widen(const Partition& mu) {
    std::vector<int> parts = mu.parts();
    for (int& p : parts) p += 2;
    return Partition(std::move(parts));
}

Partition mu_narrow(const Partition& mu) {
    std::vector<int> parts = mu.parts();
    for (int& p : parts) {
        require(p >= 3, "phi_inverse: mu part too small to shrink");
        p -= 2;
    }
    return Partition(std::move(parts));
}

} // namespace

std::vector<DomainElement> domain_elements(const Cell& rel) {
    require(admissible(rel), "domain_elements: relation cell must be admissible");
    std::vector<DomainElement> out;
    for (const Triple& t : build_cell(rel))
        out.push_back({DomKind::plain, rel, t, 0});
    Cell prev{rel.family, rel.n - 1, rel.m, rel.k};
    for (const Triple& t : build_cell(prev))
        out.push_back({DomKind::marked, prev, t, 2 * rel.n - 1});
    Cell fixed{rel.family, rel.n, rel.m + 1, rel.k};
    for (const Triple& t : target_set_elements(low_tag(rel.family), fixed))
        out.push_back({DomKind::fixed, fixed, t, 0});
    return out;
}

CodomainElement phi(const DomainElement& d, int n) {
    require(validate(d.t, d.cell), "phi: triple does not validate in its cell");
    Family f = d.cell.family;

    if (d.kind == DomKind::fixed) {
        require(d.cell.n == n && d.cell.m >= 1, "phi: bad fixed-copy cell");
        Cell rel{f, n, d.cell.m - 1, d.cell.k};
        require(admissible(rel), "phi: fixed copy outside any relation");
        return {rel, low_tag(f), d.cell, d.t};
    }

    if (d.kind == DomKind::marked) {
        require(d.cell.n == n - 1 && d.marker == 2 * n - 1, "phi: bad marker");
        Cell rel{f, n, d.cell.m, d.cell.k};
        require(admissible(rel), "phi: marked copy outside any relation");
        // Case 1: column of the full height, m-shift of tau, mu widened by
        // two columns. Absorbs the marker: weight grows by exactly 2n-1.
        Triple out{make_tau(tau_part(d.t.tau) + tau_shift_m(rel)),
                   add_column(d.t.lambda, full_height(rel)), mu_widen(d.t.mu)};
        Cell target{f, n, rel.m + 1, rel.k};
        require(validate(out, target), "phi: Case 1 image invalid");
        return {rel, full_tag(f), target, out};
    }

    require(d.cell.n == n, "phi: plain element has wrong n");
    const Cell& rel = d.cell;
    ClassTag tag = classify(d.t, rel);
    switch (tag) {
        case ClassTag::G:
        case ClassTag::H:
        case ClassTag::K:
        case ClassTag::M:
        case ClassTag::S:
        case ClassTag::L:
            // Case 0: fixed point under the matching target set.
            return {rel, tag, rel, d.t};
        case ClassTag::U:
        case ClassTag::U_Q: {
            // Case 2: column one short of full height, m-shift of tau,
            // drop one 2m part.
            Triple out{make_tau(tau_part(d.t.tau) + tau_shift_m(rel)),
                       add_column(d.t.lambda, full_height(rel) - 1),
                       remove_part(d.t.mu, 2 * rel.m)};
            Cell target{rel.family, n, rel.m + 1, rel.k};
            require(validate(out, target), "phi: Case 2 image invalid");
            return {rel, near_tag(rel.family), target, out};
        }
        case ClassTag::T:
        case ClassTag::T_Q: {
            // Case 3: remove the full-height column, diagonal shift of tau,
            // drop one 2 part.
            Triple out{make_tau(tau_part(d.t.tau) + tau_shift_diag(rel)),
                       remove_column(d.t.lambda, full_height(rel)),
                       remove_part(d.t.mu, 2)};
            Cell target{rel.family, n, rel.m + 1, rel.k + 1};
            require(validate(out, target), "phi: Case 3 image invalid");
            return {rel, low_tag(rel.family), target, out};
        }
    }
    throw ContractViolation("phi: unreachable");
}

DomainElement phi_inverse(const CodomainElement& c, int n) {
    const Cell& rel = c.rel;
    Family f = rel.family;
    require(rel.n == n, "phi_inverse: relation has wrong n");
    require(admissible(rel), "phi_inverse: inadmissible relation cell");
    require(validate(c.t, c.set_cell), "phi_inverse: triple does not validate in target set");
    require(classify(c.t, c.set_cell) == c.set_tag, "phi_inverse: triple not in stated target set");

    int dm = c.set_cell.m - rel.m;
    int dk = c.set_cell.k - rel.k;
    require(c.set_cell.family == f && c.set_cell.n == n, "phi_inverse: foreign target set");

    if (dm == 0 && dk == 0) {
        // Case 0 inverse.
        return {DomKind::plain, rel, c.t, 0};
    }
    if (dm == 1 && dk == 0 && c.set_tag == full_tag(f)) {
        // Case 1 inverse: the image's first column has the full height.
        Triple out{make_tau(tau_part(c.t.tau) - tau_shift_m(rel)),
                   remove_column(c.t.lambda, full_height(rel)), mu_narrow(c.t.mu)};
        Cell prev{f, n - 1, rel.m, rel.k};
        require(validate(out, prev), "phi_inverse: Case 1 preimage invalid");
        return {DomKind::marked, prev, out, 2 * n - 1};
    }
    if (dm == 1 && dk == 0 && c.set_tag == near_tag(f)) {
        // Case 2 inverse.
        Triple out{make_tau(tau_part(c.t.tau) - tau_shift_m(rel)),
                   remove_column(c.t.lambda, full_height(rel) - 1),
                   add_part(c.t.mu, 2 * rel.m)};
        require(validate(out, rel), "phi_inverse: Case 2 preimage invalid");
        require(classify(out, rel) == (f == Family::P ? ClassTag::U : ClassTag::U_Q),
                "phi_inverse: Case 2 preimage not in the expected class");
        return {DomKind::plain, rel, out, 0};
    }
    if (dm == 1 && dk == 1 && c.set_tag == low_tag(f)) {
        // Case 3 inverse.
        Triple out{make_tau(tau_part(c.t.tau) - tau_shift_diag(rel)),
                   add_column(c.t.lambda, full_height(rel)), add_part(c.t.mu, 2)};
        require(validate(out, rel), "phi_inverse: Case 3 preimage invalid");
        require(classify(out, rel) == (f == Family::P ? ClassTag::T : ClassTag::T_Q),
                "phi_inverse: Case 3 preimage not in the expected class");
        return {DomKind::plain, rel, out, 0};
    }
    if (dm == 1 && dk == 0 && c.set_tag == low_tag(f)) {
        // Self-paired copy.
        return {DomKind::fixed, c.set_cell, c.t, 0};
    }
    throw ContractViolation("phi_inverse: not a codomain slot of this relation");
}

std::vector<std::pair<int, int>> admissible_cells(Family family, int n) {
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m <= n; ++m) {
        if (family == Family::P) {
            for (int k = 1; 2 * k - 1 <= m; ++k) out.emplace_back(m, k);
        } else {
            for (int k = 0; 2 * k <= m; ++k) out.emplace_back(m, k);
        }
    }
    return out;
}

BiPoly family_series(Family family, int n) {
    require(n >= 0, "family_series: n must be nonnegative");
    BiPoly out;
    for (auto [m, k] : admissible_cells(family, n)) {
        Cell c{family, n, m, k};
        BigInt sgn = (m % 2 == 0) ? 1 : -1;
        for (const Triple& t : build_cell(c)) {
            auto [a, q] = weight(t, c);
            out.add_term(a, q, sgn);
        }
    }
    return out;
}

} // namespace qtel
