#pragma once

#include <vector>

#include "qtel/bipoly.hpp"
#include "qtel/family.hpp"
#include "qtel/partition.hpp"

namespace qtel {

// Index of one telescoping relation (and of the triple set it governs).
struct Cell {
    Family family = Family::P;
    int n = 0;
    int m = 0;
    int k = 0;

    bool operator==(const Cell&) const = default;
};

// A P-cell is admissible iff 1 <= k, 2k-1 <= m, m <= n; a Q-cell iff
// 0 <= 2k <= m <= n. Inadmissible cells enumerate empty.
bool admissible(const Cell& c);

// Element of a triple family: tau has at most one part (the fixed quadratic
// exponent), lambda lives in the cell's box, mu has even parts <= 2m and
// exactly n-m of them.
struct Triple {
    Partition tau;
    Partition lambda;
    Partition mu;

    bool operator==(const Triple&) const = default;
    auto operator<=>(const Triple&) const = default;
};

// Checks the Triple invariants relative to the cell (see struct Triple).
bool validate(const Triple& t, const Cell& c);

// Five-way classification of a cell, plus the Q-family analogues.
// For family P, a triple in cell (n,m,k) is
//   G: len(lambda) = 2k-1 and mu has no part 2
//   T: len(lambda) = 2k-1 and mu has a part 2
//   H: len(lambda) = 2k-2 and mu has no part 2m
//   K: len(lambda) <= 2k-3 and mu has no part 2m
//   U: len(lambda) <= 2k-2 and mu has a part 2m
// For family Q the roles are M (full height 2k), T_Q, S (height 2k-1),
// L (height <= 2k-2), U_Q.
enum class ClassTag { G, H, K, U, T, M, S, L, U_Q, T_Q };

const char* to_string(ClassTag tag);

// Exhaustive duplicate-free enumeration of the cell, lambda outer (box
// order), mu inner. Empty for inadmissible cells.
std::vector<Triple> build_cell(const Cell& c);

// (a_exp, q_exp) = (m + len(mu), |tau| + |lambda| + |mu|).
// pre: t validates in c.
std::pair<long long, long long> weight(const Triple& t, const Cell& c);

// pre: t validates in c. Exactly one tag applies.
ClassTag classify(const Triple& t, const Cell& c);

// Subset of build_cell(set_cell) carrying the given tag, enumerated from the
// classification conditions directly (independent of the bijection).
// pre: tag is a G/H/K role tag of set_cell's family (G,H,K or M,S,L).
std::vector<Triple> target_set_elements(ClassTag tag, const Cell& set_cell);

// One side of the per-cell bijection.
//
// Plain wraps a triple of the relation cell itself. Marked wraps a triple of
// cell (n-1, m, k) together with the literal marker 2n-1, contributing an
// extra a * q^(2n-1) to its weight. Fixed wraps a triple of the self-paired
// K (resp. L) copy at (n, m+1, k).
enum class DomKind { plain, marked, fixed };

struct DomainElement {
    DomKind kind = DomKind::plain;
    Cell cell;      // the cell the wrapped triple lives in (see above)
    Triple t;
    int marker = 0; // 2n-1 for marked elements, 0 otherwise

    bool operator==(const DomainElement&) const = default;
};

// Image element: the relation cell plus the target set it landed in.
// Within one relation the seven target sets are distinguished by
// (set_tag, set_cell): G/H/K at (m,k), G/H at (m+1,k), K at (m+1,k+1), and
// the self-paired K copy at (m+1,k); M/S/L likewise for family Q.
struct CodomainElement {
    Cell rel;          // relation cell (n, m, k)
    ClassTag set_tag = ClassTag::G;
    Cell set_cell;     // absolute index of the target set
    Triple t;

    bool operator==(const CodomainElement&) const = default;
};

// Weight of a domain element with the marker counted as a * q^marker.
std::pair<long long, long long> weight(const DomainElement& d);

// All domain elements of the relation at `rel`: plain, marked, then fixed,
// each block in build_cell order.
std::vector<DomainElement> domain_elements(const Cell& rel);

// The bijection of the per-cell relation. pre: d is valid for relation
// parameter n (plain cell n == n, marked cell n == n-1 with marker 2n-1,
// fixed cell n == n).
CodomainElement phi(const DomainElement& d, int n);

// Exact inverse of phi. pre: c lies in the stated codomain slot.
DomainElement phi_inverse(const CodomainElement& c, int n);

// Sum over admissible (m, k) of (-1)^m * a^n * q^(q-weight) over the cell.
// Exact, unbounded truncation. pre: n >= 0.
BiPoly family_series(Family family, int n);

// Admissible (m, k) index pairs for the given n, in deterministic order
// (m ascending, then k ascending).
std::vector<std::pair<int, int>> admissible_cells(Family family, int n);

} // namespace qtel
