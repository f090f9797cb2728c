#pragma once

#include <memory>

#include "qtel/families.hpp"
#include "qtel/telescope.hpp"

namespace qtel {

// Telescope descriptor for one family at fixed n: relations indexed by
// (m, k), delta = (1, 0), domain pieces plain/marked/fixed, codomain pieces
// the seven target slots with their pairing directives.
//
// fault_case2_misroute, when set, deliberately corrupts the Case-2 move
// (negative-test fixture): the image triple keeps its mu part, breaking
// weight preservation and coverage.
std::unique_ptr<TelescopeInstance> make_family_instance(Family family, int n,
                                                        bool fault_case2_misroute = false);

// Canonical payload encodings shared by the adapter, the CLI, and tests.
// Payloads carry the set-level identity only (owning cell, triple, marker),
// so a plain element of relation (m,k) and the fixed copy of relation
// (m-1,k) with the same triple encode identically; that equality is what the
// self-pairing directive relies on. The kind is therefore contextual and the
// decoder takes it as an argument.
Element encode_domain_element(const DomainElement& d);
Element encode_codomain_element(const CodomainElement& c);
DomainElement decode_domain_element(Family family, DomKind kind, const Element& e);

// Domain piece index of a DomainElement kind within the adapter's layout.
int domain_piece_index(DomKind kind);

} // namespace qtel
