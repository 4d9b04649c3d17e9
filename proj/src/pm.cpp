#include "kvisits/pm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace kvisits::pm {

Instance make_instance(std::vector<Deadline> D, std::vector<Position> T) {
    Instance out;
    out.A = discretize(D).values;
    out.D = std::move(D);
    out.T = std::move(T);
    validate(out);
    return out;
}

void validate(const Instance& instance) {
    const auto& [D, A, T] = instance;
    if (D.size() != A.size() || D.size() != T.size())
        throw Error(ErrorCode::SizeMismatch, "|D|, |A|, |T| = " + std::to_string(D.size()) + ", " +
                                                 std::to_string(A.size()) + ", " + std::to_string(T.size()));
    for (const Deadline d : D)
        if (d < 1)
            throw Error(ErrorCode::InvalidInstance, "non-positive deadline " + std::to_string(d));
    if (!std::is_sorted(D.begin(), D.end()))
        throw Error(ErrorCode::InvalidInstance, "D must be non-decreasing");
    if (discretize(D).values != A)
        throw Error(ErrorCode::NotDiscretizedSequence, "A is not the discretized sequence of D");
    for (const Position t : T)
        if (t < 1)
            throw Error(ErrorCode::InvalidInstance, "non-positive target " + std::to_string(t));
    std::vector<Position> sorted_t(T.begin(), T.end());
    std::sort(sorted_t.begin(), sorted_t.end());
    if (std::adjacent_find(sorted_t.begin(), sorted_t.end()) != sorted_t.end())
        throw Error(ErrorCode::DuplicateTargets, "targets must be distinct");
}

bool is_valid(const Instance& instance) {
    try {
        validate(instance);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::string_view to_string(MatchingViolation v) {
    switch (v) {
    case MatchingViolation::WrongSize: return "WrongSize";
    case MatchingViolation::IndexOutOfRange: return "IndexOutOfRange";
    case MatchingViolation::IndexReused: return "IndexReused";
    case MatchingViolation::DeadlineBelowPosition: return "DeadlineBelowPosition";
    case MatchingViolation::TargetUnsatisfied: return "TargetUnsatisfied";
    }
    return "Unknown";
}

std::string_view to_string(Method m) {
    switch (m) {
    case Method::SingleValue: return "single-value";
    case Method::TwoValues: return "two-values";
    case Method::Distinct: return "distinct";
    case Method::Exact: return "exact";
    }
    return "unknown";
}

MatchingVerdict verify_matching(const Instance& instance, const Matching& matching) {
    const std::size_t n = instance.size();
    if (matching.triples.size() != n)
        return {MatchingViolation::WrongSize, 0};
    std::vector<bool> used_d(n), used_a(n), used_t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [d, a, t] = matching.triples[i];
        if (d >= n || a >= n || t >= n)
            return {MatchingViolation::IndexOutOfRange, i};
        if (used_d[d] || used_a[a] || used_t[t])
            return {MatchingViolation::IndexReused, i};
        used_d[d] = used_a[a] = used_t[t] = true;
        if (instance.D[d] < instance.A[a])
            return {MatchingViolation::DeadlineBelowPosition, i};
        if (instance.D[d] + instance.A[a] < instance.T[t])
            return {MatchingViolation::TargetUnsatisfied, i};
    }
    return {};
}

bool dominates(std::vector<Position> sums, std::vector<Position> targets) {
    if (sums.size() != targets.size())
        return false;
    std::sort(sums.begin(), sums.end());
    std::sort(targets.begin(), targets.end());
    for (std::size_t j = 0; j < sums.size(); ++j)
        if (sums[j] < targets[j])
            return false;
    return true;
}

namespace {

std::vector<std::size_t> order_by(std::size_t n, auto key) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const bool sorted = std::is_sorted(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
        return key(l) < key(r);
    });
    if (!sorted)
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return key(l) < key(r); });
    return idx;
}

std::size_t count_distinct(const std::vector<Deadline>& D) {
    std::size_t distinct = D.empty() ? 0 : 1;
    for (std::size_t i = 1; i < D.size(); ++i)
        distinct += D[i] != D[i - 1];
    return distinct;
}

} // namespace

Result assign_targets(const Instance& instance, std::span<const std::size_t> pair_of_a) {
    const std::size_t n = instance.size();
    std::vector<Position> sums(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Deadline d = instance.D[pair_of_a[j]];
        if (d < instance.A[j])
            return std::nullopt;
        sums[j] = d + instance.A[j];
    }
    // Smallest adequate sum takes the smallest target.
    const auto by_sum = order_by(n, [&](std::size_t j) { return sums[j]; });
    const auto by_target = order_by(n, [&](std::size_t t) { return instance.T[t]; });
    Matching m;
    m.triples.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t j = by_sum[r];
        const std::size_t t = by_target[r];
        if (sums[j] < instance.T[t])
            return std::nullopt;
        m.triples[j] = {pair_of_a[j], j, t};
    }
    return m;
}

Result solve_distinct(const Instance& instance) {
    const auto& D = instance.D;
    for (std::size_t i = 1; i < D.size(); ++i)
        if (D[i] == D[i - 1])
            throw Error(ErrorCode::PreconditionNotDistinct, "D has repeated value " + std::to_string(D[i]));
    // D = A here, so d_i can only sit on a_i.
    std::vector<std::size_t> identity(D.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return assign_targets(instance, identity);
}

Result solve_single_value(const Instance& instance) {
    const auto& D = instance.D;
    if (count_distinct(D) != 1)
        throw Error(ErrorCode::PreconditionNotSingleValue, "D must hold copies of one value");
    std::vector<std::size_t> identity(D.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return assign_targets(instance, identity);
}

Result solve_two_values(const Instance& instance) {
    const auto& [D, A, T] = instance;
    if (count_distinct(D) != 2)
        throw Error(ErrorCode::PreconditionNotTwoValues, "D must hold exactly two distinct values");
    const std::size_t n = D.size();
    const std::size_t m = static_cast<std::size_t>(std::upper_bound(D.begin(), D.end(), D.front()) - D.begin());
    const Deadline x = D.front();
    const Deadline y = D.back();

    std::vector<std::size_t> pairing(n);
    std::iota(pairing.begin(), pairing.end(), std::size_t{0});
    // Two clusters: copies of x are confined to the first cluster, so the pairing is forced.
    if (A[m] != A[m - 1] + 1)
        return assign_targets(instance, pairing);

    // One cluster. Scan positions ascending, keeping the unconsumed targets as
    // [pushed-and-unconsumed deque] ++ [tail of the sorted order starting at `next`].
    const auto by_target = order_by(n, [&](std::size_t t) { return T[t]; });
    std::deque<std::size_t> pushed;
    std::size_t next = 0;
    auto smallest_target = [&]() -> std::optional<std::size_t> {
        if (!pushed.empty())
            return pushed.front();
        if (next < n)
            return by_target[next];
        return std::nullopt;
    };
    auto take_smallest = [&]() {
        if (!pushed.empty())
            pushed.pop_front();
        else
            ++next;
    };

    Matching matching;
    matching.triples.reserve(n);
    std::size_t xi = 0; // next unused copy of x
    std::size_t yi = m; // next unused copy of y
    std::size_t j = 0;
    while (xi < m && yi < n) {
        const Position a = A[j];
        const auto tmin = smallest_target();
        if (x < a)
            return std::nullopt; // remaining copies of x have no admissible position left
        if (tmin && x + a >= T[*tmin]) {
            matching.triples.push_back({xi++, j, *tmin});
            take_smallest();
        } else {
            // x cannot satisfy any remaining target from here, so a takes a copy of y
            // together with the largest target it satisfies.
            while (next < n && T[by_target[next]] <= y + a)
                pushed.push_back(by_target[next++]);
            if (pushed.empty())
                return std::nullopt;
            matching.triples.push_back({yi++, j, pushed.back()});
            pushed.pop_back();
        }
        ++j;
    }

    // One value class is left: pair it with the remaining positions in order and
    // dominate the remaining targets.
    std::vector<std::size_t> rest_t(pushed.begin(), pushed.end());
    rest_t.insert(rest_t.end(), by_target.begin() + static_cast<std::ptrdiff_t>(next), by_target.end());
    std::size_t r = 0;
    for (; j < n; ++j, ++r) {
        const std::size_t d = xi < m ? xi++ : yi++;
        if (D[d] < A[j] || D[d] + A[j] < T[rest_t[r]])
            return std::nullopt;
        matching.triples.push_back({d, j, rest_t[r]});
    }
    return matching;
}

namespace {

class ExactSearch {
public:
    explicit ExactSearch(const Instance& instance) : in_(instance) {
        const auto& D = in_.D;
        for (std::size_t i = 0; i < D.size(); ++i) {
            if (i == 0 || D[i] != D[i - 1]) {
                values_.push_back(D[i]);
                first_index_.push_back(i);
                count_.push_back(0);
            }
            ++count_.back();
        }
        sorted_targets_ = in_.T;
        std::sort(sorted_targets_.begin(), sorted_targets_.end());
        pair_of_a_.resize(D.size());
    }

    Result run() {
        if (in_.size() == 0)
            return Matching{};
        if (!descend(0))
            return std::nullopt;
        return assign_targets(in_, pair_of_a_);
    }

private:
    bool descend(std::size_t j) {
        const std::size_t n = in_.size();
        if (j == n)
            return dominates(fixed_sums_, sorted_targets_);
        if (!promising(j))
            return false;
        for (std::size_t v = 0; v < values_.size(); ++v) {
            if (count_[v] == 0 || values_[v] < in_.A[j])
                continue;
            // Equal deadlines are interchangeable: always take the next unused copy.
            pair_of_a_[j] = first_index_[v] + (total(v) - count_[v]);
            --count_[v];
            fixed_sums_.push_back(values_[v] + in_.A[j]);
            if (descend(j + 1))
                return true;
            fixed_sums_.pop_back();
            ++count_[v];
        }
        return false;
    }

    std::size_t total(std::size_t v) const {
        const std::size_t end = v + 1 < first_index_.size() ? first_index_[v + 1] : in_.size();
        return end - first_index_[v];
    }

    // Necessary conditions for completing positions j.. : every remaining position still has
    // enough admissible deadlines (Hall on suffixes), and even the most optimistic sums
    // dominate the targets.
    bool promising(std::size_t j) const {
        const std::size_t n = in_.size();
        std::size_t available = 0;
        std::size_t v = values_.size();
        Deadline max_left = 0;
        for (std::size_t q = n; q-- > j;) {
            while (v > 0 && values_[v - 1] >= in_.A[q]) {
                --v;
                available += count_[v];
            }
            if (available < n - q)
                return false;
        }
        for (std::size_t w = values_.size(); w-- > 0;)
            if (count_[w] > 0) {
                max_left = values_[w];
                break;
            }
        std::vector<Position> sums = fixed_sums_;
        for (std::size_t q = j; q < n; ++q)
            sums.push_back(max_left + in_.A[q]);
        return dominates(std::move(sums), sorted_targets_);
    }

    const Instance& in_;
    std::vector<Deadline> values_;
    std::vector<std::size_t> first_index_;
    std::vector<std::size_t> count_;
    std::vector<Position> sorted_targets_;
    std::vector<Position> fixed_sums_;
    std::vector<std::size_t> pair_of_a_;
};

} // namespace

Result solve_exact(const Instance& instance) {
    return ExactSearch(instance).run();
}

Method choose_method(const Instance& instance) {
    const std::size_t distinct = count_distinct(instance.D);
    if (distinct == 1)
        return Method::SingleValue;
    if (distinct == 2)
        return Method::TwoValues;
    if (distinct == instance.size())
        return Method::Distinct;
    return Method::Exact;
}

Result solve(const Instance& instance, Method method) {
    switch (method) {
    case Method::SingleValue: return solve_single_value(instance);
    case Method::TwoValues: return solve_two_values(instance);
    case Method::Distinct: return solve_distinct(instance);
    case Method::Exact: return solve_exact(instance);
    }
    return solve_exact(instance);
}

} // namespace kvisits::pm
