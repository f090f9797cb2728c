// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Criterion 1 drives the installed CLI binary (path in QTEL_BIN); the rest
// exercise the library directly. Everything is exact; there are no
// tolerances anywhere.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtel/families.hpp"
#include "qtel/instance.hpp"
#include "qtel/qseries.hpp"
#include "qtel/telescope.hpp"

using namespace qtel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int number, const std::string& name, bool ok, double secs,
            const std::string& note) {
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << " (" << secs << "s)";
    if (!note.empty()) line << " -- " << note;
    std::cout << line.str() << "\n";
    return ok;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// criterion 1: the CLI confirms all four identities at order 60, each run
// finishing within the 10 second budget.
bool criterion_identities() {
    auto t0 = Clock::now();
    const char* bin = std::getenv("QTEL_BIN");
    if (!bin) return report(1, "identity verification at order 60 via CLI", false,
                            seconds_since(t0), "QTEL_BIN is not set");

    std::string note;
    bool ok = true;
    for (const char* which : {"q9a", "q10a", "yee9", "yee10"}) {
        std::string out = std::string("acceptance_identity_") + which + ".json";
        std::string cmd = std::string("\"") + bin + "\" verify identity --which " + which +
                          " --order 60 --out " + out;
        auto run0 = Clock::now();
        int rc = std::system(cmd.c_str());
        double run_secs = seconds_since(run0);
        int code = (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;

        nlohmann::json j;
        {
            std::ifstream in(out);
            j = nlohmann::json::parse(in, nullptr, false);
        }
        std::remove(out.c_str());

        if (code != 0 || j.is_discarded() || j.value("status", "") != "ok") {
            ok = false;
            note = std::string(which) + " exited " + std::to_string(code);
            break;
        }
        if (run_secs >= 10.0) {
            ok = false;
            note = std::string(which) + " took too long";
            break;
        }
    }
    return report(1, "identity verification at order 60 via CLI", ok, seconds_since(t0), note);
}

// criterion 2: closed form (-1)^n a^n q^(n^2) and the one-step recurrence
// with factor -a q^(2n-1), both from exhaustive enumeration, n up to 8,
// within 30 seconds.
bool criterion_series() {
    auto t0 = Clock::now();
    std::string note;
    bool ok = true;

    for (Family f : {Family::P, Family::Q}) {
        std::vector<BiPoly> fs(9);
        for (int n = 0; n <= 8; ++n) fs[n] = family_series(f, n);

        int first_n = f == Family::P ? 1 : 0;
        if (f == Family::P && !fs[0].is_zero()) ok = false;
        for (int n = first_n; n <= 8 && ok; ++n) {
            BiPoly expect = BiPoly::monomial(n, 1LL * n * n, n % 2 ? BigInt(-1) : BigInt(1));
            if (!(fs[n] == expect)) {
                ok = false;
                note = std::string(to_string(f)) + " closed form fails at n=" +
                       std::to_string(n);
            }
        }
        for (int n = first_n + 1; n <= 8 && ok; ++n) {
            BiPoly rhs = mul(BiPoly::monomial(1, 2LL * n - 1, BigInt(-1)), fs[n - 1]);
            if (!(fs[n] == rhs)) {
                ok = false;
                note = std::string(to_string(f)) + " recurrence fails at n=" +
                       std::to_string(n);
            }
        }
    }
    double secs = seconds_since(t0);
    if (ok && secs >= 30.0) {
        ok = false;
        note = "exceeded the 30 second budget";
    }
    return report(2, "closed form and recurrence for n <= 8", ok, secs, note);
}

// criterion 3: every relation of both families for n <= 6 verifies with no
// witness, and the five-way classification partitions every cell with the
// three target classes matching their direct enumerations.
bool criterion_bijections() {
    auto t0 = Clock::now();
    std::string note;
    bool ok = true;
    long long relations = 0;

    for (Family f : {Family::P, Family::Q}) {
        const std::vector<ClassTag> tags =
            f == Family::P
                ? std::vector{ClassTag::G, ClassTag::H, ClassTag::K, ClassTag::U, ClassTag::T}
                : std::vector{ClassTag::M, ClassTag::S, ClassTag::L, ClassTag::U_Q,
                              ClassTag::T_Q};
        for (int n = 0; n <= 6 && ok; ++n) {
            auto inst = make_family_instance(f, n);
            for (const IndexVec& cell : inst->cells()) {
                ++relations;
                RelationReport rep = verify_relation(*inst, cell);
                if (!rep.ok || rep.witness.has_value()) {
                    ok = false;
                    note = std::string(to_string(f)) + " relation fails at n=" +
                           std::to_string(n) + " cell (" + std::to_string(cell[0]) + "," +
                           std::to_string(cell[1]) + ")";
                    break;
                }
                Cell c{f, n, cell[0], cell[1]};
                auto triples = build_cell(c);
                long long tagged = 0;
                for (std::size_t j = 0; j < tags.size(); ++j) {
                    long long count = 0;
                    for (const Triple& t : triples)
                        if (classify(t, c) == tags[j]) ++count;
                    tagged += count;
                    if (j < 3 && count != static_cast<long long>(
                                              target_set_elements(tags[j], c).size())) {
                        ok = false;
                        note = "classification disagrees with direct enumeration";
                    }
                }
                if (tagged != static_cast<long long>(triples.size())) {
                    ok = false;
                    note = "classification does not partition the cell";
                }
                if (!ok) break;
            }
        }
    }
    if (ok) note = std::to_string(relations) + " relations, zero witnesses";
    return report(3, "bijection verification for n <= 6", ok, seconds_since(t0), note);
}

// criterion 4: the summand of each (m, k) up to m = 6 equals the signed
// weight generating function of its cells, independently enumerated,
// truncated at q^40.
bool criterion_oracle() {
    auto t0 = Clock::now();
    const long long bound = 40;
    std::string note;
    bool ok = true;
    int compared = 0;

    for (Family f : {Family::P, Family::Q}) {
        for (int m = 0; m <= 6 && ok; ++m) {
            int k_lo = f == Family::P ? 1 : 0;
            int k_hi = f == Family::P ? (m + 1) / 2 : m / 2;
            for (int k = k_lo; k <= k_hi; ++k) {
                long long tau = tau_value(f, m, k);
                BiPoly acc(bound);
                BigInt sgn = (m % 2 == 0) ? 1 : -1;
                // mu needs n-m even parts, so cells with tau + 2(n-m) > bound
                // contribute nothing below the truncation.
                for (int n = m; tau + 2LL * (n - m) <= bound; ++n) {
                    Cell c{f, n, m, k};
                    for (const Triple& t : build_cell(c)) {
                        auto [a, q] = weight(t, c);
                        acc.add_term(a, q, sgn);
                    }
                }
                ++compared;
                if (!(acc == summand(f, m, k, bound))) {
                    ok = false;
                    note = std::string(to_string(f)) + " summand differs at m=" +
                           std::to_string(m) + " k=" + std::to_string(k);
                    break;
                }
            }
        }
    }
    if (ok) note = std::to_string(compared) + " summands, exact match to q^40";
    return report(4, "summand equals enumerated weight series", ok, seconds_since(t0), note);
}

// criterion 5: the chase audit extracts a terminating, injective,
// sign-reversing, involutive pairing for both families up to n = 5.
bool criterion_chase() {
    auto t0 = Clock::now();
    std::string note;
    bool ok = true;
    for (Family f : {Family::P, Family::Q}) {
        for (int n = 0; n <= 5 && ok; ++n) {
            ChaseAudit audit = audit_chase(*make_family_instance(f, n), 64);
            if (!audit.ok) {
                ok = false;
                note = std::string(to_string(f)) + " n=" + std::to_string(n) + ": " +
                       audit.failure;
            }
        }
    }
    if (ok) note = "all chases terminate and pair";
    return report(5, "cancelation chase audit for n <= 5", ok, seconds_since(t0), note);
}

// criterion 6: Gaussian binomial laws for all 0 <= j <= m <= 12: Pascal
// recurrence, symmetry, degree j(m-j), positive coefficients, binomial at
// q = 1.
bool criterion_qbinomial() {
    auto t0 = Clock::now();
    std::string note;
    bool ok = true;
    for (int m = 0; m <= 12 && ok; ++m) {
        for (int j = 0; j <= m; ++j) {
            BiPoly g = gaussian_binomial(m, j);
            bool local = g == gaussian_binomial(m, m - j);
            if (m >= 1) {
                BiPoly pascal = add(gaussian_binomial(m - 1, j - 1),
                                    mul(BiPoly::monomial(0, j, 1), gaussian_binomial(m - 1, j)));
                local = local && g == pascal;
            }
            long long degree = 0;
            BigInt at_one = 0;
            for (const auto& [key, c] : g.terms()) {
                if (c <= 0) local = false;
                degree = std::max(degree, key.first);
                at_one += c;
            }
            local = local && degree == 1LL * j * (m - j) && at_one == binomial(m, j);
            if (!local) {
                ok = false;
                note = "fails at m=" + std::to_string(m) + " j=" + std::to_string(j);
                break;
            }
        }
    }
    return report(6, "Gaussian binomial laws for m <= 12", ok, seconds_since(t0), note);
}

} // namespace

int main() {
    bool all = true;
    all &= criterion_identities();
    all &= criterion_series();
    all &= criterion_bijections();
    all &= criterion_oracle();
    all &= criterion_chase();
    all &= criterion_qbinomial();
    return all ? 0 : 1;
}
