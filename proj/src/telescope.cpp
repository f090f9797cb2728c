#include "qtel/telescope.hpp"

#include "qtel/contract.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qtel {

std::string to_string(const SetRef& r) {
    std::ostringstream os;
    os << r.name << "(";
    for (std::size_t i = 0; i < r.index.size(); ++i) {
        if (i) os << ",";
        os << r.index[i];
    }
    os << ")";
    return os.str();
}

int sign(const IndexVec& delta, const IndexVec& cell) {
    require(delta.size() == cell.size(), "sign: dimension mismatch");
    long long dot = 0;
    for (std::size_t i = 0; i < delta.size(); ++i) dot += 1LL * delta[i] * cell[i];
    return (dot % 2 == 0) ? 1 : -1;
}

namespace {

BiPoly weight_poly(const std::vector<Element>& elems) {
    BiPoly out;
    for (const Element& e : elems) out.add_term(e.a_exp, e.q_exp, 1);
    return out;
}

Witness make_witness(std::string kind, const IndexVec& cell, std::string detail,
                     std::vector<Element> elems = {}) {
    return Witness{std::move(kind), cell, std::move(detail), std::move(elems)};
}

} // namespace

RelationReport verify_relation(const TelescopeInstance& inst, const IndexVec& cell) {
    RelationReport report;
    auto dom_pieces = inst.domain_pieces(cell);
    auto cod_pieces = inst.codomain_pieces(cell);

    struct Slot {
        Element e;
        bool hit = false;
    };
    std::vector<std::vector<Slot>> cod(cod_pieces.size());
    std::vector<std::map<std::string, std::size_t>> cod_index(cod_pieces.size());
    for (std::size_t j = 0; j < cod_pieces.size(); ++j) {
        for (const Element& e : inst.enumerate_codomain(cell, static_cast<int>(j))) {
            auto [it, inserted] = cod_index[j].emplace(e.payload, cod[j].size());
            if (!inserted) {
                report.ok = false;
                report.witness = make_witness("duplicate_enumeration", cell,
                                              "codomain piece " + to_string(cod_pieces[j].set) +
                                                  " enumerates an element twice",
                                              {e});
                return report;
            }
            cod[j].push_back({e, false});
            ++report.codomain_size;
        }
    }

    for (std::size_t i = 0; i < dom_pieces.size(); ++i) {
        for (const Element& e : inst.enumerate_domain(cell, static_cast<int>(i))) {
            ++report.domain_size;
            std::pair<int, Element> img;
            try {
                img = inst.apply(cell, static_cast<int>(i), e);
            } catch (const ContractViolation& ex) {
                report.ok = false;
                report.witness = make_witness("bad_image", cell, ex.what(), {e});
                return report;
            }
            if (img.first < 0 || img.first >= static_cast<int>(cod.size())) {
                report.ok = false;
                report.witness = make_witness("bad_image", cell, "image piece out of range", {e});
                return report;
            }
            if (img.second.a_exp != e.a_exp || img.second.q_exp != e.q_exp) {
                report.ok = false;
                report.witness =
                    make_witness("weight_mismatch", cell, "image weight differs", {e, img.second});
                return report;
            }
            auto it = cod_index[img.first].find(img.second.payload);
            if (it == cod_index[img.first].end()) {
                report.ok = false;
                report.witness = make_witness(
                    "bad_image", cell,
                    "image not in " + to_string(cod_pieces[img.first].set), {e, img.second});
                return report;
            }
            Slot& slot = cod[img.first][it->second];
            if (!(slot.e == img.second)) {
                report.ok = false;
                report.witness = make_witness("bad_image", cell,
                                              "image weight disagrees with the enumerated element",
                                              {img.second, slot.e});
                return report;
            }
            if (slot.hit) {
                report.ok = false;
                report.witness =
                    make_witness("not_injective", cell, "image already taken", {e, img.second});
                return report;
            }
            slot.hit = true;
            if (dom_pieces[i].role == PieceRole::main && img.second.payload != e.payload)
                ++report.moved;
            try {
                auto [pre_piece, pre] = inst.invert(cell, img.first, img.second);
                if (pre_piece != static_cast<int>(i) || !(pre == e)) {
                    report.ok = false;
                    report.witness = make_witness("roundtrip_failed", cell,
                                                  "inverse does not return the preimage", {e});
                    return report;
                }
            } catch (const ContractViolation& ex) {
                report.ok = false;
                report.witness = make_witness("roundtrip_failed", cell, ex.what(), {e});
                return report;
            }
        }
    }

    for (std::size_t j = 0; j < cod.size(); ++j) {
        for (const Slot& slot : cod[j]) {
            if (!slot.hit) {
                report.ok = false;
                report.witness = make_witness(
                    "uncovered", cell, to_string(cod_pieces[j].set) + " element never hit",
                    {slot.e});
                return report;
            }
        }
    }
    return report;
}

RecurrenceReport derive_recurrence(const TelescopeInstance& inst, int n) {
    require(n == inst.parameter(), "derive_recurrence: n differs from the instance parameter");
    RecurrenceReport report;
    const IndexVec delta = inst.delta();
    require(static_cast<int>(delta.size()) == inst.dim(), "derive_recurrence: bad delta size");

    std::map<SetRef, BiPoly> set_weight;
    std::map<SetRef, long long> net;

    auto weight_of = [&](const SetRef& ref, const std::vector<Element>& elems) -> const BiPoly& {
        BiPoly w = weight_poly(elems);
        auto [it, inserted] = set_weight.emplace(ref, w);
        if (!inserted) {
            require(it->second == w,
                    "derive_recurrence: set enumerated inconsistently across relations");
        }
        return it->second;
    };

    BiPoly lhs, recur_sum, target_sum;
    for (const IndexVec& cell : inst.cells()) {
        RelationReport rel = verify_relation(inst, cell);
        if (!rel.ok) {
            report.ok = false;
            report.witness = rel.witness;
            return report;
        }
        int s = sign(delta, cell);
        BigInt sgn(s);

        auto dom_pieces = inst.domain_pieces(cell);
        for (std::size_t i = 0; i < dom_pieces.size(); ++i) {
            const BiPoly& w =
                weight_of(dom_pieces[i].set, inst.enumerate_domain(cell, static_cast<int>(i)));
            switch (dom_pieces[i].role) {
                case PieceRole::main:
                    lhs = add(lhs, mul(BiPoly::constant(sgn), w));
                    break;
                case PieceRole::recur:
                    recur_sum = add(recur_sum, mul(BiPoly::constant(sgn), w));
                    break;
                case PieceRole::cancel:
                    net[dom_pieces[i].set] -= s;
                    break;
            }
        }
        auto cod_pieces = inst.codomain_pieces(cell);
        for (std::size_t j = 0; j < cod_pieces.size(); ++j) {
            const BiPoly& w =
                weight_of(cod_pieces[j].set, inst.enumerate_codomain(cell, static_cast<int>(j)));
            if (cod_pieces[j].landing.kind == Landing::Kind::stop) {
                target_sum = add(target_sum, mul(BiPoly::constant(sgn), w));
            } else {
                net[cod_pieces[j].set] += s;
                (void)w;
            }
        }
    }

    BiPoly boundary_sum;
    for (const auto& [ref, net_count] : net) {
        if (net_count == 0) continue;
        const BiPoly& w = set_weight.at(ref);
        if (w.is_zero()) continue;
        BiPoly contribution = mul(BiPoly::constant(BigInt(net_count)), w);
        boundary_sum = add(boundary_sum, contribution);
        report.boundary.emplace_back(ref, std::move(contribution));
    }

    report.lhs = lhs;
    report.recur_sum = recur_sum;
    report.target_sum = target_sum;
    report.rhs = add(sub(target_sum, recur_sum), boundary_sum);
    report.clean = report.boundary.empty();
    // Cross-check of the signed ledger: summing the verified relations must
    // balance exactly.
    if (!(report.lhs == report.rhs)) {
        report.ok = false;
        report.witness = make_witness("ledger_imbalance", {}, "signed sums do not balance");
    }
    return report;
}

namespace {

bool cell_declared(const std::vector<IndexVec>& cells, const IndexVec& cell) {
    return std::find(cells.begin(), cells.end(), cell) != cells.end();
}

} // namespace

ChaseTrace chase(const TelescopeInstance& inst, const IndexVec& cell, int piece,
                 const Element& start, int max_steps) {
    require(max_steps >= 1, "chase: max_steps must be positive");
    const auto all_cells = inst.cells();
    require(cell_declared(all_cells, cell), "chase: start cell is not a declared relation");
    auto dom_pieces = inst.domain_pieces(cell);
    require(piece >= 0 && piece < static_cast<int>(dom_pieces.size()), "chase: bad start piece");
    require(dom_pieces[piece].role != PieceRole::cancel,
            "chase: start must be a main or recurrence element, not a cancel copy");
    {
        auto elems = inst.enumerate_domain(cell, piece);
        require(std::find(elems.begin(), elems.end(), start) != elems.end(),
                "chase: start element not in the stated set");
    }

    ChaseTrace trace;
    trace.start = {dom_pieces[piece].set, start};

    IndexVec cur_cell = cell;
    int cur_piece = piece;
    Element cur = start;
    while (trace.applications < max_steps) {
        auto [img_piece, img] = inst.apply(cur_cell, cur_piece, cur);
        ++trace.applications;
        require(img.a_exp == start.a_exp && img.q_exp == start.q_exp,
                "chase: weight changed along the trace");
        auto cod_pieces = inst.codomain_pieces(cur_cell);
        require(img_piece >= 0 && img_piece < static_cast<int>(cod_pieces.size()),
                "chase: image piece out of range");
        const CodomainPiece& landed = cod_pieces[img_piece];
        trace.steps.push_back({landed.set, img});

        switch (landed.landing.kind) {
            case Landing::Kind::stop:
                trace.outcome = ChaseTrace::Outcome::stopped;
                trace.end = TraceStep{landed.set, img};
                trace.end_cell = cur_cell;
                return trace;
            case Landing::Kind::pair_codomain: {
                if (!cell_declared(all_cells, landed.landing.cell)) {
                    trace.outcome = ChaseTrace::Outcome::boundary;
                    trace.end = TraceStep{landed.set, img};
                    trace.end_cell = cur_cell;
                    return trace;
                }
                auto [pre_piece, pre] = inst.invert(landed.landing.cell, landed.landing.piece, img);
                auto partner_pieces = inst.domain_pieces(landed.landing.cell);
                require(pre_piece >= 0 && pre_piece < static_cast<int>(partner_pieces.size()),
                        "chase: inverse piece out of range");
                if (partner_pieces[pre_piece].role != PieceRole::cancel) {
                    trace.outcome = ChaseTrace::Outcome::paired;
                    trace.end = TraceStep{partner_pieces[pre_piece].set, pre};
                    trace.end_cell = landed.landing.cell;
                    trace.end_piece = pre_piece;
                    return trace;
                }
                cur_cell = landed.landing.cell;
                cur_piece = pre_piece;
                cur = pre;
                break;
            }
            case Landing::Kind::pair_domain: {
                if (!cell_declared(all_cells, landed.landing.cell)) {
                    trace.outcome = ChaseTrace::Outcome::boundary;
                    trace.end = TraceStep{landed.set, img};
                    trace.end_cell = cur_cell;
                    return trace;
                }
                auto partner_pieces = inst.domain_pieces(landed.landing.cell);
                int p2 = landed.landing.piece;
                require(p2 >= 0 && p2 < static_cast<int>(partner_pieces.size()),
                        "chase: pairing piece out of range");
                Element reentry{img.payload, img.a_exp, img.q_exp};
                if (partner_pieces[p2].role != PieceRole::cancel) {
                    trace.outcome = ChaseTrace::Outcome::paired;
                    trace.end = TraceStep{partner_pieces[p2].set, reentry};
                    trace.end_cell = landed.landing.cell;
                    trace.end_piece = p2;
                    return trace;
                }
                cur_cell = landed.landing.cell;
                cur_piece = p2;
                cur = reentry;
                break;
            }
        }
    }
    trace.outcome = ChaseTrace::Outcome::nonterminated;
    return trace;
}

ChaseAudit audit_chase(const TelescopeInstance& inst, int max_steps) {
    ChaseAudit audit;
    const IndexVec delta = inst.delta();

    struct Key {
        IndexVec cell;
        int piece;
        std::string payload;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, Key> pair_of;     // paired start -> end
    std::set<Key> ends_seen;        // injectivity over every outcome kind

    auto fail = [&](const std::string& msg) {
        audit.ok = false;
        if (audit.failure.empty()) audit.failure = msg;
    };

    for (const IndexVec& cell : inst.cells()) {
        auto dom_pieces = inst.domain_pieces(cell);
        for (int piece = 0; piece < static_cast<int>(dom_pieces.size()); ++piece) {
            if (dom_pieces[piece].role == PieceRole::cancel) continue;
            for (const Element& e : inst.enumerate_domain(cell, piece)) {
                ++audit.starts;
                ChaseTrace trace = chase(inst, cell, piece, e, max_steps);
                audit.max_applications = std::max(audit.max_applications, trace.applications);
                switch (trace.outcome) {
                    case ChaseTrace::Outcome::nonterminated:
                        fail("chase did not terminate from " + to_string(dom_pieces[piece].set));
                        continue;
                    case ChaseTrace::Outcome::boundary:
                        ++audit.boundary;
                        continue;
                    case ChaseTrace::Outcome::stopped: {
                        Key end{trace.end_cell, -1, trace.end->e.payload};
                        if (!ends_seen.insert(end).second)
                            fail("extracted map not injective at " + trace.end->e.payload);
                        continue;
                    }
                    case ChaseTrace::Outcome::paired: {
                        ++audit.paired;
                        Key start_key{cell, piece, e.payload};
                        Key end_key{trace.end_cell, trace.end_piece, trace.end->e.payload};
                        if (!ends_seen.insert(end_key).second)
                            fail("extracted map not injective at " + trace.end->e.payload);
                        if (trace.end->e.a_exp != e.a_exp || trace.end->e.q_exp != e.q_exp)
                            fail("paired elements differ in weight");
                        if (sign(delta, cell) == sign(delta, trace.end_cell))
                            fail("paired elements carry equal signs");
                        auto it = pair_of.find(end_key);
                        if (it != pair_of.end()) {
                            // Partner already chased: the pairing must close.
                            if (!(it->second == start_key)) fail("pairing is not an involution");
                        }
                        pair_of.emplace(start_key, end_key);
                        continue;
                    }
                }
            }
        }
    }

    // Every paired start's partner must chase back to it.
    for (const auto& [start_key, end_key] : pair_of) {
        auto it = pair_of.find(end_key);
        if (it == pair_of.end() || !(it->second == start_key)) {
            fail("pairing is not an involution");
            break;
        }
    }
    audit.paired /= 2;
    return audit;
}

} // namespace qtel
