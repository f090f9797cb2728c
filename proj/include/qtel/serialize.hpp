#pragma once

#include <string>

#include <json.hpp>

#include "qtel/bipoly.hpp"
#include "qtel/families.hpp"
#include "qtel/telescope.hpp"

namespace qtel {

using Json = nlohmann::ordered_json;

// BiPoly as array of [a_exp, q_exp, coeff] in canonical order (ascending
// q_exp, then a_exp). Coefficients render as numbers when they fit in 64
// bits, decimal strings otherwise.
Json to_json(const BiPoly& p);
// CSV with header "a_exp,q_exp,coeff", same order.
std::string to_csv(const BiPoly& p);
// Human-readable polynomial, canonical term order.
std::string to_text(const BiPoly& p);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

// {"tau": [...], "lambda": [...], "mu": [...]}
Json to_json(const Triple& t);
Triple triple_from_json(const Json& j);

Json to_json(const Cell& c);

// Triple fields plus {"cell", "tag", "marker"?} / {"cell", "target"}.
Json to_json(const DomainElement& d);
Json to_json(const CodomainElement& c);

// Chase trace: {"outcome", "applications", "start", "steps", "end"?}.
Json to_json(const ChaseTrace& t);

Json to_json(const Witness& w);

} // namespace qtel
