#include "qtel/instance.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qtel/contract.hpp"

namespace qtel {

namespace {

// Payloads use the key-sorted json flavor so dump() is canonical.
using Payload = nlohmann::json;

Payload partition_payload(const Partition& p) {
    Payload arr = Payload::array();
    for (int part : p.parts()) arr.push_back(part);
    return arr;
}

Payload triple_payload(const Triple& t) {
    Payload j;
    j["lambda"] = partition_payload(t.lambda);
    j["mu"] = partition_payload(t.mu);
    j["tau"] = partition_payload(t.tau);
    return j;
}

Partition partition_from_payload(const Payload& j) {
    require(j.is_array(), "element payload: partition must be an array");
    std::vector<int> parts;
    for (const auto& v : j) {
        require(v.is_number_integer(), "element payload: parts must be integers");
        parts.push_back(v.get<int>());
    }
    return Partition(parts);
}

Triple triple_from_payload(const Payload& j) {
    require(j.is_object() && j.contains("tau") && j.contains("lambda") && j.contains("mu"),
            "element payload: triple must carry tau, lambda, mu");
    return Triple{partition_from_payload(j.at("tau")), partition_from_payload(j.at("lambda")),
                  partition_from_payload(j.at("mu"))};
}

Payload parse_payload(const std::string& s) {
    Payload j = Payload::parse(s, nullptr, false);
    require(!j.is_discarded(), "element payload: not valid JSON");
    return j;
}

Cell cell_from_payload(Family family, const Payload& j) {
    require(j.is_array() && j.size() == 3, "element payload: cell must be [n, m, k]");
    for (const auto& v : j) require(v.is_number_integer(), "element payload: cell entries must be integers");
    return Cell{family, j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

} // namespace

Element encode_domain_element(const DomainElement& d) {
    Payload j;
    j["cell"] = Payload::array({d.cell.n, d.cell.m, d.cell.k});
    if (d.kind == DomKind::marked) j["marker"] = d.marker;
    j["t"] = triple_payload(d.t);
    auto [a, q] = weight(d);
    return Element{j.dump(), a, q};
}

Element encode_codomain_element(const CodomainElement& c) {
    Payload j;
    j["cell"] = Payload::array({c.set_cell.n, c.set_cell.m, c.set_cell.k});
    j["t"] = triple_payload(c.t);
    auto [a, q] = weight(c.t, c.set_cell);
    return Element{j.dump(), a, q};
}

DomainElement decode_domain_element(Family family, DomKind kind, const Element& e) {
    Payload j = parse_payload(e.payload);
    require(j.is_object() && j.contains("cell") && j.contains("t"),
            "element payload: expected {cell, t}");
    DomainElement d;
    d.kind = kind;
    d.cell = cell_from_payload(family, j.at("cell"));
    d.t = triple_from_payload(j.at("t"));
    if (kind == DomKind::marked) {
        require(j.contains("marker") && j.at("marker").is_number_integer(),
                "element payload: marked element needs an integer marker");
        d.marker = j.at("marker").get<int>();
    } else {
        require(!j.contains("marker"), "element payload: unexpected marker");
    }
    return d;
}

int domain_piece_index(DomKind kind) {
    switch (kind) {
        case DomKind::plain: return 0;
        case DomKind::marked: return 1;
        case DomKind::fixed: return 2;
    }
    throw ContractViolation("domain_piece_index: bad kind");
}

namespace {

// The seven codomain slots of one relation, as (tag, set-cell offset from
// the relation index).
struct SlotSpec {
    ClassTag tag;
    int dm;
    int dk;
};

std::array<SlotSpec, 7> slot_table(Family family) {
    if (family == Family::P) {
        return {{{ClassTag::G, 0, 0},
                 {ClassTag::H, 0, 0},
                 {ClassTag::K, 0, 0},
                 {ClassTag::G, 1, 0},
                 {ClassTag::H, 1, 0},
                 {ClassTag::K, 1, 1},
                 {ClassTag::K, 1, 0}}};
    }
    return {{{ClassTag::M, 0, 0},
             {ClassTag::S, 0, 0},
             {ClassTag::L, 0, 0},
             {ClassTag::M, 1, 0},
             {ClassTag::S, 1, 0},
             {ClassTag::L, 1, 1},
             {ClassTag::L, 1, 0}}};
}

class FamilyInstance final : public TelescopeInstance {
public:
    FamilyInstance(Family family, int n, bool fault)
        : family_(family), n_(n), fault_(fault) {
        require(n >= 0, "family instance: n must be nonnegative");
        for (auto [m, k] : admissible_cells(family, n)) cells_.push_back(IndexVec{m, k});
    }

    int dim() const override { return 2; }
    IndexVec delta() const override { return {1, 0}; }
    int parameter() const override { return n_; }
    std::vector<IndexVec> cells() const override { return cells_; }

    std::vector<DomainPiece> domain_pieces(const IndexVec& cell) const override {
        auto [m, k] = unpack(cell);
        const bool p = family_ == Family::P;
        return {
            DomainPiece{SetRef{p ? "P" : "Q", {m, k}}, PieceRole::main},
            DomainPiece{SetRef{p ? "P*" : "Q*", {m, k}}, PieceRole::recur},
            DomainPiece{SetRef{to_string(low_tag()), {m + 1, k}}, PieceRole::cancel},
        };
    }

    std::vector<CodomainPiece> codomain_pieces(const IndexVec& cell) const override {
        auto [m, k] = unpack(cell);
        auto slots = slot_table(family_);
        // Diagonal slots pair with the previous relation's shift slots and
        // vice versa; the last slot is the self-paired copy canceling against
        // this relation's own fixed domain piece.
        const std::array<Landing, 7> landings = {{
            {Landing::Kind::pair_codomain, {m - 1, k}, 3},
            {Landing::Kind::pair_codomain, {m - 1, k}, 4},
            {Landing::Kind::pair_codomain, {m - 1, k - 1}, 5},
            {Landing::Kind::pair_codomain, {m + 1, k}, 0},
            {Landing::Kind::pair_codomain, {m + 1, k}, 1},
            {Landing::Kind::pair_codomain, {m + 1, k + 1}, 2},
            {Landing::Kind::pair_domain, {m, k}, 2},
        }};
        std::vector<CodomainPiece> out;
        out.reserve(7);
        for (int j = 0; j < 7; ++j) {
            out.push_back(CodomainPiece{
                SetRef{to_string(slots[j].tag), {m + slots[j].dm, k + slots[j].dk}},
                landings[j]});
        }
        return out;
    }

    std::vector<Element> enumerate_domain(const IndexVec& cell, int piece) const override {
        Cell rel = rel_cell(cell);
        std::vector<Element> out;
        switch (piece) {
            case 0: {
                for (const Triple& t : build_cell(rel))
                    out.push_back(encode_domain_element(DomainElement{DomKind::plain, rel, t, 0}));
                return out;
            }
            case 1: {
                Cell prev{family_, n_ - 1, rel.m, rel.k};
                for (const Triple& t : build_cell(prev))
                    out.push_back(encode_domain_element(
                        DomainElement{DomKind::marked, prev, t, 2 * n_ - 1}));
                return out;
            }
            case 2: {
                Cell fix{family_, n_, rel.m + 1, rel.k};
                for (const Triple& t : target_set_elements(low_tag(), fix))
                    out.push_back(encode_domain_element(DomainElement{DomKind::fixed, fix, t, 0}));
                return out;
            }
            default:
                throw ContractViolation("family instance: bad domain piece");
        }
    }

    std::vector<Element> enumerate_codomain(const IndexVec& cell, int piece) const override {
        require(piece >= 0 && piece < 7, "family instance: bad codomain piece");
        Cell rel = rel_cell(cell);
        SlotSpec spec = slot_table(family_)[piece];
        Cell set_cell{family_, n_, rel.m + spec.dm, rel.k + spec.dk};
        std::vector<Element> out;
        for (const Triple& t : target_set_elements(spec.tag, set_cell))
            out.push_back(encode_codomain_element(CodomainElement{rel, spec.tag, set_cell, t}));
        return out;
    }

    std::pair<int, Element> apply(const IndexVec& cell, int piece,
                                  const Element& e) const override {
        Cell rel = rel_cell(cell);
        DomainElement d = decode_piece(rel, piece, e);
        if (fault_ && d.kind == DomKind::plain) {
            ClassTag tag = classify(d.t, rel);
            if (tag == ClassTag::U || tag == ClassTag::U_Q) return misroute(rel, d);
        }
        CodomainElement img = phi(d, n_);
        return {slot_of(rel, img), encode_codomain_element(img)};
    }

    std::pair<int, Element> invert(const IndexVec& cell, int piece,
                                   const Element& e) const override {
        require(piece >= 0 && piece < 7, "family instance: bad codomain piece");
        Cell rel = rel_cell(cell);
        SlotSpec spec = slot_table(family_)[piece];
        Cell set_cell{family_, n_, rel.m + spec.dm, rel.k + spec.dk};
        DomainElement raw = decode_domain_element(family_, DomKind::plain, e);
        require(raw.cell == set_cell, "family instance: element cell does not match its slot");
        CodomainElement ce{rel, spec.tag, set_cell, raw.t};
        DomainElement d = phi_inverse(ce, n_);
        return {domain_piece_index(d.kind), encode_domain_element(d)};
    }

private:
    ClassTag low_tag() const { return family_ == Family::P ? ClassTag::K : ClassTag::L; }

    static std::pair<int, int> unpack(const IndexVec& cell) {
        require(cell.size() == 2, "family instance: relation index must be (m, k)");
        return {cell[0], cell[1]};
    }

    Cell rel_cell(const IndexVec& cell) const {
        auto [m, k] = unpack(cell);
        return Cell{family_, n_, m, k};
    }

    int slot_of(const Cell& rel, const CodomainElement& img) const {
        auto slots = slot_table(family_);
        int dm = img.set_cell.m - rel.m;
        int dk = img.set_cell.k - rel.k;
        for (int j = 0; j < 7; ++j)
            if (slots[j].tag == img.set_tag && slots[j].dm == dm && slots[j].dk == dk) return j;
        throw ContractViolation("family instance: image slot not declared");
    }

    DomainElement decode_piece(const Cell& rel, int piece, const Element& e) const {
        require(piece >= 0 && piece < 3, "family instance: bad domain piece");
        DomKind kind = piece == 0 ? DomKind::plain
                     : piece == 1 ? DomKind::marked
                                  : DomKind::fixed;
        DomainElement d = decode_domain_element(family_, kind, e);
        Cell expect = kind == DomKind::plain    ? rel
                      : kind == DomKind::marked ? Cell{family_, n_ - 1, rel.m, rel.k}
                                                : Cell{family_, n_, rel.m + 1, rel.k};
        require(d.cell == expect, "family instance: element cell does not match its piece");
        if (kind == DomKind::marked)
            require(d.marker == 2 * n_ - 1, "family instance: bad marker");
        return d;
    }

    // Corrupted column move for the negative fixture: the mu part the real
    // move removes is kept, so the image is heavier than the input and lands
    // outside the enumerated slot. Encoded by hand; the triple is malformed
    // for the target cell, which is the point.
    std::pair<int, Element> misroute(const Cell& rel, const DomainElement& d) const {
        const bool p = family_ == Family::P;
        int full = p ? 2 * rel.k - 1 : 2 * rel.k;
        int shift = p ? 2 * (rel.m - rel.k) + 2 : 2 * (rel.m - rel.k) + 1;
        int tau_val = static_cast<int>(d.t.tau.weight()) + shift;
        Triple out{Partition({tau_val}), add_column(d.t.lambda, full - 1), d.t.mu};
        Payload j;
        j["cell"] = Payload::array({n_, rel.m + 1, rel.k});
        j["t"] = triple_payload(out);
        long long a = rel.m + 1 + out.mu.length();
        long long q = out.tau.weight() + out.lambda.weight() + out.mu.weight();
        return {4, Element{j.dump(), a, q}};
    }

    Family family_;
    int n_;
    bool fault_;
    std::vector<IndexVec> cells_;
};

} // namespace

std::unique_ptr<TelescopeInstance> make_family_instance(Family family, int n,
                                                        bool fault_case2_misroute) {
    return std::make_unique<FamilyInstance>(family, n, fault_case2_misroute);
}

} // namespace qtel
