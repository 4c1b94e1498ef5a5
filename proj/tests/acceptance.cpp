// Acceptance suite: runs every certified criterion at its pinned tolerance
// and prints one pass/fail line per criterion.

#include <cstdio>
#include <vector>

#include "explab/verify.hpp"

int main() {
    using explab::verify::SuiteResult;
    struct Criterion {
        int id;
        const char* what;
        SuiteResult result;
    };
    std::vector<Criterion> rows;
    rows.push_back({1, "coin constants and sc gap (k=1,2; 1e-9)", explab::verify::coin_constants()});
    rows.push_back({2, "coin finite-n test-free bound (kn <= 14, exhaustive)",
                    explab::verify::coin_finite_n()});
    rows.push_back({3, "interval example closed forms, rates, trade-offs",
                    explab::verify::interval_example()});
    rows.push_back({4, "stein-gap identity on 100 seeded PD triples + delta case",
                    explab::verify::stein_gap()});
    rows.push_back({5, "minimal 2x2 margin and 128-bit oracle agreement",
                    explab::verify::minimal_2x2()});
    rows.push_back({6, "direct-exponent separation at (r,t) = (0.2, 0.2)",
                    explab::verify::direct_separation()});
    rows.push_back({7, "renyi ordering with strictness under noncommutativity",
                    explab::verify::renyi_ordering()});
    rows.push_back({8, "hoeffding arc identities, scaling, case formula",
                    explab::verify::hoeffding_machinery()});
    rows.push_back({9, "ball test beta bound and alpha rate (coin, n = 20..200)",
                    explab::verify::ball_test_suite()});
    rows.push_back({10, "type rounding postconditions on 1000 instances",
                    explab::verify::type_rounding()});
    rows.push_back({11, "adversarial bound chain with certificates (20 instances)",
                    explab::verify::adversarial_chain()});
    rows.push_back({12, "pure-state gram thresholds and beta-bound rates",
                    explab::verify::pure_states()});
    rows.push_back({13, "geometric-mean properties and semiclassical combiner",
                    explab::verify::geometric_mean_suite()});

    bool ok = true;
    for (const auto& row : rows) {
        ok = ok && row.result.pass;
        std::printf("[%s] criterion %2d: %-55s (%.2fs) %s\n",
                    row.result.pass ? "PASS" : "FAIL", row.id, row.what, row.result.seconds,
                    row.result.detail.c_str());
    }
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return ok ? 0 : 1;
}
