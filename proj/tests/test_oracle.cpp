#include <doctest.h>

#include <set>

#include "brute.hpp"
#include "kvisits/generate.hpp"
#include "kvisits/oracle.hpp"
#include "kvisits/verify.hpp"

using namespace kvisits;
using oracle::Outcome;

TEST_CASE("oracle_kvisits small verdicts") {
    const auto a = oracle::oracle_kvisits(KVisitsInstance({4, 4, 4, 4}, 2));
    CHECK(a.outcome == Outcome::Feasible);
    CHECK(verify_kvisits(KVisitsInstance({4, 4, 4, 4}, 2), *a.schedule).ok());
    CHECK(oracle::oracle_kvisits(KVisitsInstance({2, 2, 4, 4}, 2)).outcome == Outcome::Infeasible);
    const auto c = oracle::oracle_kvisits(KVisitsInstance({1, 2, 3}, 1));
    CHECK(c.outcome == Outcome::Feasible);
    CHECK(c.schedule->entries == std::vector<NodeIndex>{1, 2, 3});
}

TEST_CASE("budget exhaustion is reported, not guessed") {
    const auto r = oracle::oracle_kvisits(KVisitsInstance({4, 5, 6, 7, 8, 8, 10, 10, 11, 15, 22, 23}, 2), {{5}, {}});
    CHECK(r.outcome == Outcome::BudgetExhausted);
    CHECK_FALSE(r.decided());
}

TEST_CASE("enumeration returns exactly the feasible schedules") {
    std::vector<std::vector<NodeIndex>> seen;
    auto collect = [&](const Schedule& s) { seen.push_back(s.entries); };

    oracle::oracle_enumerate_kvisits(KVisitsInstance({2, 2}, 2), collect);
    CHECK(seen == std::vector<std::vector<NodeIndex>>{{1, 2, 1, 2}, {2, 1, 2, 1}});

    seen.clear();
    oracle::oracle_enumerate_kvisits(KVisitsInstance({1}, 1), collect);
    CHECK(seen == std::vector<std::vector<NodeIndex>>{{1}});

    seen.clear();
    const auto r = oracle::oracle_enumerate_kvisits(KVisitsInstance({1, 1}, 1), collect);
    CHECK(seen.empty());
    CHECK(r.count == 0);
}

TEST_CASE("enumeration matches the layout brute force") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 1; k <= 3; ++k)
            brute::for_each_multiset(n, 1, 2 * static_cast<std::int64_t>(n), [&](const brute::Vec& d) {
                std::vector<std::vector<int>> got;
                const auto r = oracle::oracle_enumerate_kvisits(
                    KVisitsInstance(d, k), [&](const Schedule& s) { got.push_back(s.entries); });
                CHECK(got == brute::kvisits_all(d, k)); // both lexicographic
                CHECK((r.count > 0) == (oracle::oracle_kvisits(KVisitsInstance(d, k)).outcome == Outcome::Feasible));
            });
}

TEST_CASE("oracle_kvisits matches brute force for k = 3") {
    for (std::size_t n = 1; n <= 3; ++n)
        brute::for_each_multiset(n, 1, 3 * static_cast<std::int64_t>(n), [&](const brute::Vec& d) {
            const auto r = oracle::oracle_kvisits(KVisitsInstance(d, 3));
            CHECK((r.outcome == Outcome::Feasible) == brute::kvisits_feasible(d, 3));
        });
}

TEST_CASE("var-k oracle on uniform rows matches the k-Visits oracle") {
    gen::Rng rng(9);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 5));
        const KVisitsInstance inst = gen::random_kvisits(rng, n, 2 * n, static_cast<int>(rng.uniform(1, 3)));
        const auto a = oracle::oracle_kvisits(inst);
        const auto b = oracle::oracle_var_kvisits(VarKVisitsInstance::from_kvisits(inst));
        CHECK(a.outcome == b.outcome);
    }
}

TEST_CASE("prefix filter cuts the search") {
    // Forbid node 1 in the first slot; <2,2> then only admits 2,1,2,1.
    const auto r = oracle::oracle_kvisits(KVisitsInstance({2, 2}, 2),
                                          {{}, [](std::span<const NodeIndex> p) { return p.empty() || p[0] != 1; }});
    REQUIRE(r.outcome == Outcome::Feasible);
    CHECK(r.schedule->entries == std::vector<NodeIndex>{2, 1, 2, 1});
}

TEST_CASE("oracle_pm") {
    CHECK(oracle::oracle_pm(pm::make_instance({6, 7, 8, 8, 15, 15}, {12, 13, 14, 15, 20, 28})).outcome == Outcome::Feasible);
    CHECK(oracle::oracle_pm({{2, 2}, {1, 2}, {5, 6}}).outcome == Outcome::Infeasible);
}

TEST_CASE("oracle_rn3dm and oracle_in3dm") {
    const auto a = oracle::oracle_rn3dm({{2, 2}, 5});
    REQUIRE(a.outcome == Outcome::Feasible);
    CHECK(reductions::verify(reductions::Rn3dmInstance{{2, 2}, 5}, *a.matching));
    // Decided by enumeration: 1 + 2 + 2 = 3 + 1 + 1 = 5.
    CHECK(oracle::oracle_rn3dm({{1, 3}, 5}).outcome == Outcome::Feasible);
    CHECK(brute::rn3dm_feasible({1, 3}, 5));
    CHECK(oracle::oracle_in3dm({{5}, {7}}).outcome == Outcome::Infeasible);

    gen::Rng rng(31);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 4));
        const auto inst = iter % 2 ? gen::random_rn3dm_yes(rng, n, 12) : gen::random_rn3dm_perturbed(rng, n, 12);
        const auto r = oracle::oracle_rn3dm(inst);
        CHECK((r.outcome == Outcome::Feasible) == brute::rn3dm_feasible(inst.A, inst.sigma));
        if (r.matching)
            CHECK(reductions::verify(inst, *r.matching));
    }
}
