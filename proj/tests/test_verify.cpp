#include <doctest.h>

#include "brute.hpp"
#include "kvisits/verify.hpp"

using namespace kvisits;

TEST_CASE("verify_kvisits accepts and rejects") {
    CHECK(verify_kvisits(KVisitsInstance({4, 4}, 2), Schedule{{1, 2, 1, 2}}).ok());

    const Verdict v = verify_kvisits(KVisitsInstance({2, 2}, 2), Schedule{{1, 1, 2, 2}});
    REQUIRE_FALSE(v.ok());
    CHECK(v.violation->node == 2);
    CHECK(v.violation->occurrence_index == 1);
    CHECK(v.violation->position == 3);
    CHECK(v.violation->allowed_by == 2);
    CHECK(v.violation->reason == ViolationReason::DeadlineExceeded);
}

TEST_CASE("verify_kvisits structural failures") {
    const KVisitsInstance inst({4, 4}, 2);
    CHECK(verify_kvisits(inst, Schedule{{1, 2, 1}}).violation->reason == ViolationReason::BadLength);
    CHECK(verify_kvisits(inst, Schedule{{1, 3, 1, 2}}).violation->reason == ViolationReason::IndexOutOfRange);
    CHECK(verify_kvisits(inst, Schedule{{1, 1, 1, 2}}).violation->reason == ViolationReason::WrongVisitCount);
    CHECK(verify_kvisits(inst, Schedule{{1, 0, 1, 2}}).violation->reason == ViolationReason::IndexOutOfRange);
}

TEST_CASE("earliest violation wins, ties by node index") {
    // Both nodes miss slot 2; node 1 is reported.
    const Verdict v = verify_kvisits(KVisitsInstance({1, 1}, 2), Schedule{{2, 2, 1, 1}});
    REQUIRE_FALSE(v.ok());
    CHECK(v.violation->node == 1);
    CHECK(describe(v).find("node=1") != std::string::npos);
    CHECK(describe(Verdict::accept()) == "ok");
}

TEST_CASE("verify_var_kvisits") {
    CHECK(verify_var_kvisits(VarKVisitsInstance({{2, 4}, {2, 4}}), Schedule{{1, 2, 1, 2}}).ok());
    const Verdict v = verify_var_kvisits(VarKVisitsInstance({{1, 4}, {2, 4}}), Schedule{{2, 1, 1, 2}});
    REQUIRE_FALSE(v.ok());
    CHECK(v.violation->node == 1);
    CHECK(v.violation->position == 2);
    CHECK(v.violation->allowed_by == 1);
}

TEST_CASE("verifier agrees with the reference checker on every layout") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 1; k <= 3; ++k)
            brute::for_each_multiset(n, 1, 2 * static_cast<std::int64_t>(n), [&](const brute::Vec& d) {
                const KVisitsInstance inst(d, k);
                brute::for_each_layout(n, k, [&](const std::vector<int>& s) {
                    CHECK(verify_kvisits(inst, Schedule{s}).ok() == brute::valid_kvisits(d, k, s));
                });
            });
}

TEST_CASE("first/second and primary/secondary semantics coincide") {
    for (std::size_t n = 1; n <= 4; ++n)
        brute::for_each_multiset(n, 1, 2 * static_cast<std::int64_t>(n), [&](const brute::Vec& d) {
            brute::for_each_layout(n, 2, [&](const std::vector<int>& s) {
                CHECK(brute::valid_kvisits(d, 2, s) == brute::valid_two_visits_primary_secondary(d, s));
            });
        });
}

TEST_CASE("induced deadlines") {
    CHECK(induced_deadlines(KVisitsInstance({4}, 2), {{1, 2}}).front().value == 6);
    const auto ind = induced_deadlines(KVisitsInstance({6, 8, 8, 8}, 2), {{1, 5}, {2, 6}, {3, 7}, {4, 8}});
    std::vector<Position> values;
    for (const auto& x : ind)
        values.push_back(x.value);
    CHECK(values == std::vector<Position>{11, 14, 15, 16});

    // The d = 6 node primary at 3 gives 9; pushed to 5 by double-visiting nodes 1 and 2 early it gives 11.
    const KVisitsInstance ex({4, 5, 6, 7, 8, 8, 10, 10, 11, 15, 22, 23}, 2);
    CHECK(induced_deadlines(ex, {{3, 3}})[0].value == 9);
    CHECK(induced_deadlines(ex, {{3, 5}})[0].value == 11);

    CHECK_THROWS_AS(induced_deadlines(KVisitsInstance({4, 4}, 2), {{1, 2}, {2, 2}}), Error);
}
