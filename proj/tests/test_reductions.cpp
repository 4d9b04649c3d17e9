#include <doctest.h>

#include <set>

#include "brute.hpp"
#include "kvisits/generate.hpp"
#include "kvisits/oracle.hpp"
#include "kvisits/reductions.hpp"
#include "kvisits/solver.hpp"
#include "kvisits/verify.hpp"

using namespace kvisits;
using namespace kvisits::reductions;

namespace {

ErrorCode error_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalInvariantViolation;
}

bool pm_brute(const pm::Instance& i) {
    return brute::pm_feasible({i.D.begin(), i.D.end()}, {i.A.begin(), i.A.end()}, {i.T.begin(), i.T.end()});
}

} // namespace

TEST_CASE("rn3dm_to_in3dm") {
    CHECK(rn3dm_to_in3dm({{2, 2}, 5}) == In3dmInstance{{2, 2}, {4, 3}});
    // A = {4} with sigma = 7 breaks the sum invariant (4 + 2 != 7); sigma = 6 is the valid one.
    CHECK(error_of([] { rn3dm_to_in3dm({{4}, 7}); }) == ErrorCode::InvalidInstance);
    const In3dmInstance one = rn3dm_to_in3dm({{4}, 6});
    CHECK(one.T == std::vector<Value>{5});
    CHECK(brute::in3dm_feasible(one.A, one.T));
    CHECK(brute::rn3dm_feasible({4}, 6));
    // sigma >= n + 2 for every valid instance, so small sigma fails validation first.
    CHECK(error_of([] { rn3dm_to_in3dm({{1}, 1}); }) == ErrorCode::InvalidInstance);
    CHECK_THROWS_AS(validate(Rn3dmInstance{{2, 3}, 5}), Error);
}

TEST_CASE("rn3dm_range_filter") {
    CHECK_FALSE(rn3dm_range_filter({{2, 2}, 5}));
    CHECK(rn3dm_range_filter({{1, 7}, 7}));
    // A spread of exactly 2n - 2 is still allowed.
    CHECK_FALSE(rn3dm_range_filter({{1, 3}, 5}));
    // Whatever the filter rejects is a no-instance.
    for (std::size_t n = 1; n <= 3; ++n)
        brute::for_each_multiset(n, 1, 10, [&](const brute::Vec& A) {
            const auto nn = static_cast<std::int64_t>(n);
            const std::int64_t lhs = std::accumulate(A.begin(), A.end(), std::int64_t{0}) + nn * (nn + 1);
            if (lhs % nn != 0)
                return;
            if (rn3dm_range_filter({A, lhs / nn}))
                CHECK_FALSE(brute::rn3dm_feasible(A, lhs / nn));
        });
}

TEST_CASE("solution maps between RN3DM and IN3DM") {
    gen::Rng rng(8);
    for (int iter = 0; iter < 200; ++iter) {
        const Rn3dmInstance src = gen::random_rn3dm_yes(rng, static_cast<int>(rng.uniform(1, 4)), 12);
        const auto ans = oracle::oracle_rn3dm(src);
        REQUIRE(ans.outcome == oracle::Outcome::Feasible);
        const In3dmInstance dst = rn3dm_to_in3dm(src);
        const In3dmMatching fwd = rn3dm_solution_to_in3dm(src, *ans.matching);
        CHECK(verify(dst, fwd));
        CHECK(verify(src, in3dm_solution_to_rn3dm(src, fwd)));
    }
}

TEST_CASE("in3dm_normalize") {
    SUBCASE("pure shift") {
        const auto r = in3dm_normalize({{5, 5}, {6, 7}});
        const auto& n = std::get<NormalizedIn3dm>(r);
        CHECK(n.instance == In3dmInstance{{2, 2}, {3, 4}});
        CHECK(n.shift == -3);
        CHECK(satisfies_normal_form(n.instance));
    }
    SUBCASE("trivial no") {
        CHECK(std::holds_alternative<TrivialNo>(in3dm_normalize({{1, 1}, {9, 10}})));
        CHECK_FALSE(brute::in3dm_feasible({1, 1}, {9, 10}));
    }
    SUBCASE("small target elimination") {
        const auto r = in3dm_normalize({{3, 3}, {1, 5}});
        const auto& n = std::get<NormalizedIn3dm>(r);
        CHECK(n.eliminated == 1);
        CHECK(n.instance == In3dmInstance{{1}, {2}});
        CHECK(brute::in3dm_feasible({3, 3}, {1, 5}) == brute::in3dm_feasible(n.instance.A, n.instance.T));
    }
    SUBCASE("errors") {
        CHECK(error_of([] { in3dm_normalize({{1, 9}, {2, 3}}); }) == ErrorCode::RangeTooWide);
        CHECK(error_of([] { in3dm_normalize({{2, 2}, {3, 3}}); }) == ErrorCode::DuplicateTargets);
    }
}

TEST_CASE("normalization preserves the verdict") {
    // Every IN3DM instance with n <= 3, values <= 9, distinct targets, range bound held.
    int checked = 0;
    for (std::size_t n = 1; n <= 3; ++n)
        brute::for_each_multiset(n, 1, 9, [&](const brute::Vec& A) {
            if (A.back() - A.front() > 2 * static_cast<std::int64_t>(n) - 2)
                return;
            brute::for_each_multiset(n, 1, 9, [&](const brute::Vec& T) {
                if (std::set<std::int64_t>(T.begin(), T.end()).size() != n)
                    return;
                std::variant<NormalizedIn3dm, TrivialNo> r;
                try {
                    r = in3dm_normalize({A, T});
                } catch (const Error& e) {
                    // Elimination can break the range bound; such inputs are out of scope.
                    CHECK(e.code() == ErrorCode::RangeTooWide);
                    return;
                }
                const bool expected = brute::in3dm_feasible(A, T);
                if (std::holds_alternative<TrivialNo>(r)) {
                    CHECK_FALSE(expected);
                } else {
                    const auto& out = std::get<NormalizedIn3dm>(r).instance;
                    CHECK(expected == (out.n() == 0 || brute::in3dm_feasible(out.A, out.T)));
                    if (out.n() > 0)
                        CHECK(satisfies_normal_form(out));
                }
                ++checked;
            });
        });
    CHECK(checked > 1000);
}

TEST_CASE("in3dm_to_pm") {
    const pm::Instance p = in3dm_to_pm({{1}, {2}});
    CHECK(p.D == std::vector<Deadline>{1, 4, 4, 4});
    CHECK(p.A == std::vector<Position>{1, 2, 3, 4});
    CHECK(p.T == std::vector<Position>{2, 6, 7, 8});
    CHECK(pm_brute(p) == brute::in3dm_feasible({1}, {2}));
    CHECK(error_of([] { in3dm_to_pm({{2}, {2}}); }) == ErrorCode::PreconditionNotNormalized);
}

TEST_CASE("in3dm_to_pm: discretized positions and the forward solution map") {
    for (std::size_t n = 1; n <= 2; ++n)
        brute::for_each_multiset(n, static_cast<std::int64_t>(n), 3 * static_cast<std::int64_t>(n) - 1,
                                 [&](const brute::Vec& A) {
            if (A.front() != static_cast<std::int64_t>(n))
                return;
            brute::for_each_multiset(n, 1, 4 * static_cast<std::int64_t>(n) - 1, [&](const brute::Vec& T) {
                if (std::set<std::int64_t>(T.begin(), T.end()).size() != n)
                    return;
                const In3dmInstance src{A, T};
                const pm::Instance p = in3dm_to_pm(src);
                CHECK(p.size() == 4 * n);
                CHECK(discretize(p.D).values == p.A);
                const auto ans = oracle::oracle_in3dm(src);
                CHECK((ans.outcome == oracle::Outcome::Feasible) == pm_brute(p));
                if (ans.matching)
                    CHECK(pm::verify_matching(p, in3dm_solution_to_pm(src, *ans.matching)).ok());
            });
        });
}

TEST_CASE("pm_shift") {
    const pm::Instance ex = pm::make_instance({6, 7, 8, 8, 15, 15}, {12, 13, 14, 15, 20, 28});
    const pm::Instance s = pm_shift(ex, 15);
    CHECK(s.A == std::vector<Position>{20, 21, 22, 23, 29, 30});
    CHECK(*std::min_element(s.T.begin(), s.T.end()) == 42);
    CHECK(pm::is_valid(s));
    CHECK(pm::solve_exact(s).has_value() == pm::solve_exact(ex).has_value());
    CHECK(pm_shift(s, -15) == ex);

    const pm::Instance t = pm_shift(ex, ex.A.back());
    CHECK(t.A.back() == 2 * ex.A.back());
    CHECK(*std::min_element(t.T.begin(), t.T.end()) > t.A.back());
}

TEST_CASE("pm_to_two_visits") {
    const pm::Instance src = pm::make_instance({6, 8, 8, 8}, {12, 13, 14, 15});
    const auto r = pm_to_two_visits(src);
    const auto& g = std::get<TwoVisitsGadget>(r);
    CHECK_FALSE(g.shifted_to_odd);
    CHECK(g.instance.deadlines() == std::vector<Deadline>{1, 3, 6, 8, 8, 8, 9, 10, 11, 16});
    CHECK(g.small_count == 2);
    CHECK(g.large_count == 4);
    CHECK(solve_two_visits(g.instance).feasible() == pm::solve_exact(src).has_value());

    CHECK(std::holds_alternative<TrivialNo>(pm_to_two_visits(pm::make_instance({6, 8, 8, 8}, {12, 13, 14, 17}))));
    CHECK(error_of([] { pm_to_two_visits(pm::make_instance({4, 4, 8, 8}, {9, 10, 11, 12})); }) ==
          ErrorCode::PreconditionNotConsecutive);
    CHECK(error_of([] { pm_to_two_visits(pm::make_instance({6, 8, 8, 8}, {1, 13, 14, 15})); }) ==
          ErrorCode::PreconditionTargetsNotAboveA);
}

TEST_CASE("pm_to_two_visits size accounting and equivalence") {
    // Consecutive A = a1..a1+n-1 with targets above it.
    gen::Rng rng(19);
    int yes = 0, no = 0;
    for (int iter = 0; iter < 400; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 4));
        const Deadline top = rng.uniform(n, 2 * n + 2);
        std::vector<Deadline> D(static_cast<std::size_t>(n));
        for (auto& d : D)
            d = rng.uniform(top - n + 1, top);
        D.back() = top;
        std::sort(D.begin(), D.end());
        if (discretize(D).values.front() != top - n + 1)
            continue;
        std::vector<Position> pool;
        for (Position t = top + 1; t <= 2 * top + 1; ++t)
            pool.push_back(t);
        if (pool.size() < static_cast<std::size_t>(n))
            continue;
        rng.shuffle(pool);
        pool.resize(static_cast<std::size_t>(n));
        const pm::Instance src = pm::make_instance(D, pool);
        const bool expected = pm_brute(src);
        const auto r = pm_to_two_visits(src);
        if (const auto* g = std::get_if<TwoVisitsGadget>(&r)) {
            const pm::Instance used = g->shifted_to_odd ? pm_shift(src, 1) : src;
            const Position a1 = used.A.front(), an = used.A.back();
            std::size_t in_range = 0;
            for (const Position t : used.T)
                in_range += t >= an + 1 && t <= 2 * an;
            CHECK(g->instance.n() == static_cast<int>((a1 - 1) / 2 + n + (an - static_cast<Position>(in_range))));
            CHECK(solve_two_visits(g->instance).feasible() == expected);
        } else {
            CHECK_FALSE(expected);
        }
        (expected ? yes : no)++;
    }
    CHECK(yes > 20);
    CHECK(no > 20);
}

TEST_CASE("two_visits_to_var_k") {
    const VarKVisitsInstance v = two_visits_to_var_k(KVisitsInstance({4, 4, 4, 4}, 2), 3);
    for (const auto& row : v.rows())
        CHECK(row == std::vector<Deadline>{4, 4, 12});
    const Schedule ext = extend_schedule(Schedule{{1, 2, 3, 4, 1, 2, 3, 4}}, 4, 3);
    CHECK(ext.entries == std::vector<NodeIndex>{1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4});
    CHECK(verify_var_kvisits(v, ext).ok());

    const VarKVisitsInstance same = two_visits_to_var_k(KVisitsInstance({2, 3}, 2), 2);
    CHECK(same == VarKVisitsInstance::from_kvisits(KVisitsInstance({2, 3}, 2)));

    CHECK(oracle::oracle_var_kvisits(two_visits_to_var_k(KVisitsInstance({2, 2, 4, 4}, 2), 3)).outcome ==
          oracle::Outcome::Infeasible);
    CHECK_THROWS_AS(two_visits_to_var_k(KVisitsInstance({2}, 2), 1), Error);
}

TEST_CASE("two_visits_to_threshold_pws") {
    const ThresholdPinwheelInstance t = two_visits_to_threshold_pws(KVisitsInstance({4, 4}, 2));
    CHECK(t.d1 == std::vector<Deadline>{4, 4});
    CHECK(t.d2 == std::vector<Deadline>{6, 6});
    CHECK(t.thresholds == std::vector<std::int64_t>{2, 2});
    const ThresholdPinwheelInstance one = two_visits_to_threshold_pws(KVisitsInstance({2}, 2));
    CHECK(one.d2 == std::vector<Deadline>{3});
    gen::Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const int n = static_cast<int>(rng.uniform(1, 9));
        const auto x = two_visits_to_threshold_pws(gen::random_kvisits(rng, n, 2 * n, 2));
        CHECK(x.d1.size() == static_cast<std::size_t>(n));
        CHECK(x.d2.size() == static_cast<std::size_t>(n));
        CHECK(x.thresholds.size() == static_cast<std::size_t>(n));
    }
}
