#include "qtel/serialize.hpp"

#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace qtel {

namespace {

Json coeff_to_json(const BigInt& c) {
    if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
        return Json(c.convert_to<long long>());
    return Json(c.str());
}

Json element_to_json(const Element& e) {
    Json j;
    j["a_exp"] = e.a_exp;
    j["q_exp"] = e.q_exp;
    Json parsed = Json::parse(e.payload, nullptr, false);
    j["value"] = parsed.is_discarded() ? Json(e.payload) : parsed;
    return j;
}

Json step_to_json(const TraceStep& s) {
    Json j;
    j["set"] = to_string(s.set);
    Json e = element_to_json(s.e);
    for (auto it = e.begin(); it != e.end(); ++it) j[it.key()] = it.value();
    return j;
}

} // namespace

Json to_json(const BiPoly& p) {
    Json arr = Json::array();
    for (const auto& [key, c] : p.terms()) {
        const auto& [q_exp, a_exp] = key;
        arr.push_back(Json::array({Json(a_exp), Json(q_exp), coeff_to_json(c)}));
    }
    return arr;
}

std::string to_csv(const BiPoly& p) {
    std::ostringstream os;
    os << "a_exp,q_exp,coeff\n";
    for (const auto& [key, c] : p.terms()) {
        const auto& [q_exp, a_exp] = key;
        os << a_exp << "," << q_exp << "," << c.str() << "\n";
    }
    return os.str();
}

std::string to_text(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : p.terms()) {
        const auto& [q_exp, a_exp] = key;
        bool neg = c < 0;
        BigInt mag = neg ? BigInt(-c) : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (mag != 1 || (a_exp == 0 && q_exp == 0)) factors.push_back(mag.str());
        if (a_exp == 1) factors.push_back("a");
        else if (a_exp > 1) factors.push_back("a^" + std::to_string(a_exp));
        if (q_exp == 1) factors.push_back("q");
        else if (q_exp > 1) factors.push_back("q^" + std::to_string(q_exp));
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

Json to_json(const Partition& p) {
    Json arr = Json::array();
    for (int part : p.parts()) arr.push_back(part);
    return arr;
}

Partition partition_from_json(const Json& j) {
    require(j.is_array(), "partition: expected a JSON array");
    std::vector<int> parts;
    for (const auto& v : j) {
        require(v.is_number_integer(), "partition: parts must be integers");
        parts.push_back(v.get<int>());
    }
    return Partition(parts);
}

Json to_json(const Triple& t) {
    Json j;
    j["tau"] = to_json(t.tau);
    j["lambda"] = to_json(t.lambda);
    j["mu"] = to_json(t.mu);
    return j;
}

Triple triple_from_json(const Json& j) {
    require(j.is_object(), "triple: expected a JSON object");
    require(j.contains("tau") && j.contains("lambda") && j.contains("mu"),
            "triple: expected keys tau, lambda, mu");
    return Triple{partition_from_json(j.at("tau")), partition_from_json(j.at("lambda")),
                  partition_from_json(j.at("mu"))};
}

Json to_json(const Cell& c) {
    Json j;
    j["family"] = to_string(c.family);
    j["n"] = c.n;
    j["m"] = c.m;
    j["k"] = c.k;
    return j;
}

Json to_json(const DomainElement& d) {
    Json j = to_json(d.t);
    j["cell"] = to_json(d.cell);
    switch (d.kind) {
        case DomKind::plain: j["tag"] = "plain"; break;
        case DomKind::marked:
            j["tag"] = "marked";
            j["marker"] = d.marker;
            break;
        case DomKind::fixed: j["tag"] = "fixed"; break;
    }
    return j;
}

Json to_json(const CodomainElement& c) {
    Json j = to_json(c.t);
    j["cell"] = to_json(c.rel);
    Json target;
    target["tag"] = to_string(c.set_tag);
    target["cell"] = to_json(c.set_cell);
    j["target"] = target;
    return j;
}

Json to_json(const ChaseTrace& t) {
    Json j;
    switch (t.outcome) {
        case ChaseTrace::Outcome::stopped: j["outcome"] = "stopped"; break;
        case ChaseTrace::Outcome::paired: j["outcome"] = "paired"; break;
        case ChaseTrace::Outcome::boundary: j["outcome"] = "boundary"; break;
        case ChaseTrace::Outcome::nonterminated: j["outcome"] = "nonterminated"; break;
    }
    j["applications"] = t.applications;
    j["start"] = step_to_json(t.start);
    Json steps = Json::array();
    for (const TraceStep& s : t.steps) steps.push_back(step_to_json(s));
    j["steps"] = steps;
    if (t.end) {
        j["end"] = step_to_json(*t.end);
        if (t.outcome == ChaseTrace::Outcome::paired) {
            j["end_cell"] = t.end_cell;
            j["end_piece"] = t.end_piece;
        }
    }
    return j;
}

Json to_json(const Witness& w) {
    Json j;
    j["kind"] = w.kind;
    j["cell"] = w.cell;
    j["detail"] = w.detail;
    Json elems = Json::array();
    for (const Element& e : w.elements) elems.push_back(element_to_json(e));
    j["elements"] = elems;
    return j;
}

} // namespace qtel
