#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtel/bipoly.hpp"

namespace qtel {

using IndexVec = std::vector<int>;

// Identity of one weighted set instance, shared across every relation that
// references it (the signed occurrence ledger keys on this).
struct SetRef {
    std::string name;
    IndexVec index;

    bool operator==(const SetRef&) const = default;
    auto operator<=>(const SetRef&) const = default;
};

std::string to_string(const SetRef& r);

// Opaque element of a weighted set. The payload is the instance's canonical
// encoding; payload equality is element identity across relations.
struct Element {
    std::string payload;
    long long a_exp = 0;
    long long q_exp = 0;

    bool operator==(const Element&) const = default;
};

// main: a summand set of the identity under proof (the f side).
// recur: a set whose signed sum survives as the recurrence term.
// cancel: scaffolding expected to cancel in the signed ledger.
enum class PieceRole { main, recur, cancel };

struct DomainPiece {
    SetRef set;
    PieceRole role = PieceRole::main;
};

// Continuation directive for a codomain landing during the cancelation
// chase. stop: the landing set is a true target (element of B). The pair_*
// kinds name the unique other occurrence of the same set: another relation's
// codomain piece (continue by inverting that relation's bijection) or a
// domain piece (continue by reapplying the bijection there).
struct Landing {
    enum class Kind { stop, pair_codomain, pair_domain };
    Kind kind = Kind::stop;
    IndexVec cell;
    int piece = -1;
};

struct CodomainPiece {
    SetRef set;
    Landing landing;
};

// One abstract telescoping problem: a finite list of relations (one per
// index vector), each asserting a weight-preserving bijection between the
// disjoint unions of its domain and codomain pieces. Signs are
// (-1)^(delta . cell).
class TelescopeInstance {
public:
    virtual ~TelescopeInstance() = default;

    virtual int dim() const = 0;
    virtual IndexVec delta() const = 0;
    // The relation parameter (outer index the recurrence is derived in).
    virtual int parameter() const = 0;
    // Declared relation indices, deterministic order.
    virtual std::vector<IndexVec> cells() const = 0;

    virtual std::vector<DomainPiece> domain_pieces(const IndexVec& cell) const = 0;
    virtual std::vector<CodomainPiece> codomain_pieces(const IndexVec& cell) const = 0;

    // Elements of one piece of one relation, deterministic order, weights
    // filled in (markers and similar decorations already counted).
    virtual std::vector<Element> enumerate_domain(const IndexVec& cell, int piece) const = 0;
    virtual std::vector<Element> enumerate_codomain(const IndexVec& cell, int piece) const = 0;

    // The declared bijection of one relation: (codomain piece, image).
    virtual std::pair<int, Element> apply(const IndexVec& cell, int piece,
                                          const Element& e) const = 0;
    // Its exact inverse: (domain piece, preimage).
    virtual std::pair<int, Element> invert(const IndexVec& cell, int piece,
                                           const Element& e) const = 0;
};

int sign(const IndexVec& delta, const IndexVec& cell);

// Failure evidence: which relation, which element, what went wrong.
struct Witness {
    std::string kind;      // weight_mismatch | not_injective | uncovered |
                           // overcovered | bad_image | roundtrip_failed
    IndexVec cell;
    std::string detail;
    std::vector<Element> elements;
};

struct RelationReport {
    bool ok = true;
    long long domain_size = 0;
    long long codomain_size = 0;
    long long moved = 0;   // main-piece elements whose image payload differs
    std::optional<Witness> witness;
};

// Checks one relation as an exact weighted-set identity realized by the
// declared bijection: totality, per-element weight preservation, injectivity,
// exact coverage of the independently enumerated codomain, and round-trip of
// the declared inverse.
RelationReport verify_relation(const TelescopeInstance& inst, const IndexVec& cell);

struct RecurrenceReport {
    bool ok = true;
    std::optional<Witness> witness;   // first relation failure, if any
    BiPoly lhs;          // signed sum over main pieces
    BiPoly rhs;          // target_sum - recur_sum + boundary net terms
    BiPoly recur_sum;    // signed sum over recur pieces
    BiPoly target_sum;   // signed sum over stop-landing codomain pieces
    // Cancel-role set occurrences whose signed net is nonzero, with net
    // coefficient and weight polynomial; all must be empty sets for a clean
    // telescoping.
    std::vector<std::pair<SetRef, BiPoly>> boundary;
    bool clean = false;  // boundary weights all zero
};

// Verifies every declared relation, then performs exact signed bookkeeping
// of all set occurrences and returns the surviving equation lhs = rhs.
// pre: n equals the instance parameter.
RecurrenceReport derive_recurrence(const TelescopeInstance& inst, int n);

struct TraceStep {
    SetRef set;
    Element e;
};

// stopped: landed in a stop-landing (true target) set.
// paired: reached a main/recur domain element of another relation; the
//         extracted sign-reversing pairing maps start to that element.
// boundary: the pairing directive points at an undeclared relation; the
//           element survives unpaired.
// nonterminated: max_steps bijection applications exhausted.
struct ChaseTrace {
    enum class Outcome { stopped, paired, boundary, nonterminated };
    Outcome outcome = Outcome::nonterminated;
    TraceStep start;
    std::vector<TraceStep> steps;
    std::optional<TraceStep> end;
    IndexVec end_cell;      // relation owning the end element (paired)
    int end_piece = -1;     // domain piece index of the end element (paired)
    int applications = 0;
};

// Iterates the declared bijection from a domain element, following the
// landing directives, until a stop, a pairing into a main/recur element, a
// boundary, or max_steps applications. pre: the start piece has role main or
// recur (cancel copies are scaffolding, not chase starts).
ChaseTrace chase(const TelescopeInstance& inst, const IndexVec& cell, int piece,
                 const Element& start, int max_steps);

struct ChaseAudit {
    bool ok = true;
    std::string failure;
    long long starts = 0;
    long long paired = 0;
    long long boundary = 0;
    int max_applications = 0;
};

// Chases every main/recur element of every relation: all must terminate
// within max_steps, distinct starts must reach distinct ends, paired ends
// must chase back to their starts (the pairing is an involution), and paired
// elements must carry opposite signs and equal weights.
ChaseAudit audit_chase(const TelescopeInstance& inst, int max_steps);

} // namespace qtel
