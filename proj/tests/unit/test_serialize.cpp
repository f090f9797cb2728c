#include "doctest.h"

#include "qtel/instance.hpp"
#include "qtel/serialize.hpp"

using namespace qtel;

namespace {

Partition p(std::vector<int> parts) { return Partition(std::move(parts)); }

Triple t(std::vector<int> tau, std::vector<int> lambda, std::vector<int> mu) {
    return Triple{p(std::move(tau)), p(std::move(lambda)), p(std::move(mu))};
}

} // namespace

TEST_CASE("polynomial json uses [a_exp, q_exp, coeff] rows in canonical order") {
    BiPoly s;
    s.add_term(0, 0, 1);
    s.add_term(1, 1, -1);
    s.add_term(2, 4, 1);
    CHECK(to_json(s).dump() == "[[0,0,1],[1,1,-1],[2,4,1]]");
    CHECK(to_json(BiPoly::zero()).dump() == "[]");

    BiPoly big = BiPoly::constant(BigInt(1) << 80);
    CHECK(to_json(big)[0][2] == Json("1208925819614629174706176"));

    BiPoly fits = BiPoly::constant((BigInt(1) << 62) - 1);
    CHECK(to_json(fits)[0][2].is_number_integer());
}

TEST_CASE("polynomial csv") {
    BiPoly s;
    s.add_term(1, 1, -1);
    s.add_term(2, 4, 1);
    CHECK(to_csv(s) == "a_exp,q_exp,coeff\n1,1,-1\n2,4,1\n");
    CHECK(to_csv(BiPoly::zero()) == "a_exp,q_exp,coeff\n");
}

TEST_CASE("polynomial text rendering") {
    CHECK(to_text(BiPoly::zero()) == "0");
    CHECK(to_text(BiPoly::constant(1)) == "1");
    CHECK(to_text(BiPoly::constant(-3)) == "-3");

    BiPoly s;
    s.add_term(0, 0, 1);
    s.add_term(1, 1, -1);
    s.add_term(2, 4, 1);
    CHECK(to_text(s) == "1 - a*q + a^2*q^4");

    BiPoly u;
    u.add_term(0, 2, 2);
    CHECK(to_text(u) == "2*q^2");

    CHECK(to_text(BiPoly::monomial(1, 1, -1)) == "-a*q");
    CHECK(to_text(BiPoly::monomial(0, 3, 1)) == "q^3");
    CHECK(to_text(BiPoly::monomial(5, 0, 1)) == "a^5");
}

TEST_CASE("partition json round trip") {
    CHECK(to_json(p({3, 1})).dump() == "[3,1]");
    CHECK(partition_from_json(Json::parse("[3,1]")) == p({3, 1}));
    CHECK(partition_from_json(Json::parse("[]")) == p({}));
    CHECK_THROWS_AS(partition_from_json(Json::parse("{}")), ContractViolation);
    CHECK_THROWS_AS(partition_from_json(Json::parse("[1,\"x\"]")), ContractViolation);
    CHECK_THROWS_AS(partition_from_json(Json::parse("[1,2]")), ContractViolation);
}

TEST_CASE("triple json round trip") {
    Triple x = t({3}, {1}, {2});
    Json j = to_json(x);
    CHECK(j.dump() == R"({"tau":[3],"lambda":[1],"mu":[2]})");
    CHECK(triple_from_json(j) == x);
    CHECK_THROWS_AS(triple_from_json(Json::parse(R"({"tau":[3],"lambda":[]})")),
                    ContractViolation);
    CHECK_THROWS_AS(triple_from_json(Json::parse("[1]")), ContractViolation);
}

TEST_CASE("cell json") {
    CHECK(to_json(Cell{Family::P, 2, 1, 1}).dump() == R"({"family":"P","n":2,"m":1,"k":1})");
    CHECK(to_json(Cell{Family::Q, 0, 0, 0})["family"] == "Q");
}

TEST_CASE("domain and codomain element json") {
    DomainElement marked{DomKind::marked, {Family::P, 1, 1, 1}, t({1}, {}, {}), 3};
    Json mj = to_json(marked);
    CHECK(mj["tag"] == "marked");
    CHECK(mj["marker"] == 3);
    CHECK(mj["cell"]["n"] == 1);
    CHECK(mj["tau"] == Json::parse("[1]"));

    DomainElement plain{DomKind::plain, {Family::P, 2, 1, 1}, t({1}, {}, {2}), 0};
    Json pj = to_json(plain);
    CHECK(pj["tag"] == "plain");
    CHECK(!pj.contains("marker"));

    CodomainElement img{{Family::P, 2, 1, 1}, ClassTag::H, {Family::P, 2, 2, 1},
                        t({3}, {}, {})};
    Json cj = to_json(img);
    CHECK(cj["cell"]["m"] == 1);          // the relation cell
    CHECK(cj["target"]["tag"] == "H");
    CHECK(cj["target"]["cell"]["m"] == 2); // the set it landed in
}

TEST_CASE("chase trace json") {
    ChaseTrace trace;
    trace.outcome = ChaseTrace::Outcome::paired;
    trace.start = {SetRef{"P", {1, 1}}, Element{"raw-start", 1, 2}};
    trace.steps = {{SetRef{"H", {2, 1}}, Element{R"({"x":1})", 1, 2}}};
    trace.end = TraceStep{SetRef{"P", {2, 1}}, Element{"raw-end", 1, 2}};
    trace.end_cell = {2, 1};
    trace.end_piece = 0;
    trace.applications = 1;

    Json j = to_json(trace);
    CHECK(j["outcome"] == "paired");
    CHECK(j["applications"] == 1);
    CHECK(j["start"]["set"] == "P(1,1)");
    CHECK(j["start"]["value"] == "raw-start");      // non-JSON payloads pass through
    CHECK(j["steps"][0]["set"] == "H(2,1)");
    CHECK(j["steps"][0]["value"]["x"] == 1);        // JSON payloads are embedded parsed
    CHECK(j["end"]["set"] == "P(2,1)");
    CHECK(j["end_cell"] == Json::parse("[2,1]"));
    CHECK(j["end_piece"] == 0);

    ChaseTrace open;
    open.outcome = ChaseTrace::Outcome::nonterminated;
    open.start = {SetRef{"A", {0}}, Element{"a", 0, 0}};
    open.applications = 9;
    Json oj = to_json(open);
    CHECK(oj["outcome"] == "nonterminated");
    CHECK(!oj.contains("end"));
    CHECK(!oj.contains("end_cell"));
}

TEST_CASE("witness json") {
    Witness w{"weight_mismatch", {1, 1}, "image weight differs", {Element{"zz", 2, 3}}};
    Json j = to_json(w);
    CHECK(j["kind"] == "weight_mismatch");
    CHECK(j["cell"] == Json::parse("[1,1]"));
    CHECK(j["detail"] == "image weight differs");
    CHECK(j["elements"][0]["a_exp"] == 2);
    CHECK(j["elements"][0]["q_exp"] == 3);
}

TEST_CASE("element payload encoding round-trips") {
    DomainElement plain{DomKind::plain, {Family::P, 2, 1, 1}, t({1}, {}, {2}), 0};
    Element pe = encode_domain_element(plain);
    CHECK(pe.a_exp == 2);
    CHECK(pe.q_exp == 3);
    CHECK(decode_domain_element(Family::P, DomKind::plain, pe) == plain);

    DomainElement marked{DomKind::marked, {Family::P, 1, 1, 1}, t({1}, {}, {}), 3};
    Element me = encode_domain_element(marked);
    CHECK(me.a_exp == 2);
    CHECK(me.q_exp == 4); // marker adds a q^3
    CHECK(decode_domain_element(Family::P, DomKind::marked, me) == marked);

    // plain and fixed share one encoding; the kind is supplied by context
    DomainElement fixed{DomKind::fixed, {Family::P, 2, 1, 1}, t({1}, {}, {2}), 0};
    Element fe = encode_domain_element(fixed);
    CHECK(fe == pe);
    CHECK(decode_domain_element(Family::P, DomKind::fixed, pe) == fixed);

    // a codomain image with the same set cell and triple encodes identically
    CodomainElement img{{Family::P, 2, 1, 1}, ClassTag::G, {Family::P, 2, 1, 1},
                        t({1}, {}, {2})};
    CHECK(encode_codomain_element(img).payload == pe.payload);

    CHECK_THROWS_AS(decode_domain_element(Family::P, DomKind::marked, pe), ContractViolation);
    CHECK_THROWS_AS(decode_domain_element(Family::P, DomKind::plain, me), ContractViolation);
    CHECK_THROWS_AS(decode_domain_element(Family::P, DomKind::plain, Element{"not json", 0, 0}),
                    ContractViolation);
}
