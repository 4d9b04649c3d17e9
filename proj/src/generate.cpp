#include "kvisits/generate.hpp"

#include <algorithm>
#include <numeric>

namespace kvisits::gen {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
        return static_cast<std::int64_t>(engine_());
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return lo + static_cast<std::int64_t>(x % span);
}

KVisitsInstance random_kvisits(Rng& rng, int n, Deadline max_deadline, int k) {
    std::vector<Deadline> d(static_cast<std::size_t>(n));
    for (Deadline& x : d)
        x = rng.uniform(1, max_deadline);
    return normalize(std::move(d), k);
}

KVisitsInstance random_distinct_kvisits(Rng& rng, int n, Deadline lo, Deadline hi, int k) {
    if (hi - lo + 1 < n)
        throw Error(ErrorCode::InvalidInstance, "range too small for n distinct deadlines");
    std::vector<Deadline> d;
    d.reserve(static_cast<std::size_t>(n));
    std::int64_t needed = n;
    for (Deadline v = lo; v <= hi && needed > 0; ++v) {
        const std::int64_t left = hi - v + 1;
        if (rng.uniform(1, left) <= needed) {
            d.push_back(v);
            --needed;
        }
    }
    return KVisitsInstance(std::move(d), k);
}

pm::Instance random_pm(Rng& rng, int n, std::int64_t max_value) {
    // a_1 <= d_n - n + 1, so a positive sequence needs max_value >= n.
    if (n < 1 || max_value < n)
        throw Error(ErrorCode::InvalidInstance, "random_pm needs 1 <= n <= max_value");
    for (;;) {
        std::vector<Deadline> D(static_cast<std::size_t>(n));
        for (Deadline& x : D)
            x = rng.uniform(1, max_value);
        std::sort(D.begin(), D.end());
        if (!discretize(D).all_positive())
            continue;
        std::vector<Position> pool(static_cast<std::size_t>(2 * max_value));
        std::iota(pool.begin(), pool.end(), Position{1});
        rng.shuffle(pool);
        pool.resize(static_cast<std::size_t>(n));
        return pm::make_instance(std::move(D), std::move(pool));
    }
}

reductions::Rn3dmInstance random_rn3dm_yes(Rng& rng, int n, std::int64_t max_value) {
    for (;;) {
        std::vector<std::int64_t> b(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n));
        std::iota(b.begin(), b.end(), 1);
        std::iota(c.begin(), c.end(), 1);
        rng.shuffle(b);
        rng.shuffle(c);
        const std::int64_t sigma = rng.uniform(n + 3, max_value + 2);
        reductions::Rn3dmInstance inst;
        inst.sigma = sigma;
        bool ok = true;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::int64_t a = sigma - b[i] - c[i];
            ok = ok && a >= 1 && a <= max_value;
            inst.A.push_back(a);
        }
        if (ok)
            return inst;
    }
}

reductions::Rn3dmInstance random_rn3dm_perturbed(Rng& rng, int n, std::int64_t max_value) {
    for (;;) {
        reductions::Rn3dmInstance inst = random_rn3dm_yes(rng, n, max_value);
        if (n < 2)
            return inst;
        const auto i = static_cast<std::size_t>(rng.uniform(0, n - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, n - 2));
        if (j >= i)
            ++j;
        const std::int64_t delta = rng.uniform(0, 1) == 0 ? 1 : -1;
        inst.A[i] += delta;
        inst.A[j] -= delta;
        const auto [lo, hi] = std::minmax_element(inst.A.begin(), inst.A.end());
        if (*lo >= 1 && *hi <= max_value && *hi - *lo <= 2 * static_cast<std::int64_t>(n) - 2)
            return inst;
    }
}

} // namespace kvisits::gen
