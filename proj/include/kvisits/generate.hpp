#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kvisits/instances.hpp"
#include "kvisits/pm.hpp"
#include "kvisits/reductions.hpp"

namespace kvisits::gen {

// mt19937_64 output is fixed by the standard; the range reduction below is ours, so a
// seed reproduces the same instances on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }

private:
    std::mt19937_64 engine_;
};

// Deadlines drawn uniformly from [1, max_deadline], then sorted.
KVisitsInstance random_kvisits(Rng& rng, int n, Deadline max_deadline, int k);

// n distinct deadlines drawn from [lo, hi] by selection sampling (linear time).
KVisitsInstance random_distinct_kvisits(Rng& rng, int n, Deadline lo, Deadline hi, int k = 2);

// D drawn from [1, max_value] (max_value >= n) with a positive discretized sequence; n distinct targets
// from [1, 2 * max_value].
pm::Instance random_pm(Rng& rng, int n, std::int64_t max_value);

// Planted yes-instance: a_i = sigma - b_i - c_i for random permutations b, c.
reductions::Rn3dmInstance random_rn3dm_yes(Rng& rng, int n, std::int64_t max_value);
// Moves one unit between two entries of a planted instance; the sum invariant and the
// range bound max(A) - min(A) <= 2n - 2 are kept. May still be a yes-instance.
reductions::Rn3dmInstance random_rn3dm_perturbed(Rng& rng, int n, std::int64_t max_value);

} // namespace kvisits::gen
