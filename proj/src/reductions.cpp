#include "kvisits/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kvisits::reductions {

namespace {

Value sum_of(const std::vector<Value>& v) {
    return std::accumulate(v.begin(), v.end(), Value{0});
}

bool has_duplicates(std::vector<Value> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

void require_positive(const std::vector<Value>& v, const char* what) {
    for (const Value x : v)
        if (x < 1)
            throw Error(ErrorCode::InvalidInstance, std::string(what) + " holds non-positive " + std::to_string(x));
}

} // namespace

void validate(const Rn3dmInstance& instance) {
    if (instance.A.empty())
        throw Error(ErrorCode::EmptyInput, "RN3DM needs n >= 1");
    require_positive(instance.A, "A");
    const auto n = static_cast<Value>(instance.n());
    // sum(a_i + 2i) = sum(a) + n(n+1)
    if (sum_of(instance.A) + n * (n + 1) != n * instance.sigma)
        throw Error(ErrorCode::InvalidInstance, "sum(a_i + 2i) != n * sigma");
}

void validate(const In3dmInstance& instance) {
    if (instance.A.size() != instance.T.size())
        throw Error(ErrorCode::SizeMismatch, "|A| != |T|");
    require_positive(instance.A, "A");
    require_positive(instance.T, "T");
}

namespace {

bool is_permutation_of_1_to_n(std::vector<Value> v) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != static_cast<Value>(i + 1))
            return false;
    return true;
}

bool uses_each_index_once(const std::vector<std::size_t>& idx, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (const std::size_t i : idx) {
        if (i >= n || seen[i])
            return false;
        seen[i] = true;
    }
    return idx.size() == n;
}

} // namespace

bool verify(const Rn3dmInstance& instance, const Rn3dmMatching& m) {
    const std::size_t n = instance.n();
    std::vector<std::size_t> as;
    std::vector<Value> bs, cs;
    for (const auto& [a, b, c] : m) {
        as.push_back(a);
        bs.push_back(b);
        cs.push_back(c);
    }
    if (!uses_each_index_once(as, n) || !is_permutation_of_1_to_n(bs) || !is_permutation_of_1_to_n(cs))
        return false;
    return std::all_of(m.begin(), m.end(),
                       [&](const Rn3dmTriple& tr) { return instance.A[tr.a] + tr.b + tr.c == instance.sigma; });
}

bool verify(const In3dmInstance& instance, const In3dmMatching& m) {
    const std::size_t n = instance.n();
    std::vector<std::size_t> as, ts;
    std::vector<Value> bs;
    for (const auto& [a, b, t] : m) {
        as.push_back(a);
        bs.push_back(b);
        ts.push_back(t);
    }
    if (!uses_each_index_once(as, n) || !uses_each_index_once(ts, n) || !is_permutation_of_1_to_n(bs))
        return false;
    return std::all_of(m.begin(), m.end(),
                       [&](const In3dmTriple& tr) { return instance.A[tr.a] + tr.b >= instance.T[tr.t]; });
}

std::optional<TrivialNo> rn3dm_range_filter(const Rn3dmInstance& instance) {
    validate(instance);
    const auto [lo, hi] = std::minmax_element(instance.A.begin(), instance.A.end());
    const Value bound = 2 * static_cast<Value>(instance.n()) - 2;
    if (*hi - *lo > bound)
        return TrivialNo{"max(A) - min(A) = " + std::to_string(*hi - *lo) + " > 2n - 2 = " + std::to_string(bound)};
    return std::nullopt;
}

In3dmInstance rn3dm_to_in3dm(const Rn3dmInstance& src) {
    validate(src);
    const auto n = static_cast<Value>(src.n());
    if (src.sigma <= n)
        throw Error(ErrorCode::NonPositiveTarget, "sigma " + std::to_string(src.sigma) + " <= n");
    In3dmInstance out;
    out.A = src.A;
    for (Value i = 1; i <= n; ++i)
        out.T.push_back(src.sigma - i);
    return out;
}

// T[i - 1] = sigma - i, so c <-> index c - 1.
In3dmMatching rn3dm_solution_to_in3dm(const Rn3dmInstance&, const Rn3dmMatching& m) {
    In3dmMatching out;
    for (const auto& [a, b, c] : m)
        out.push_back({a, b, static_cast<std::size_t>(c - 1)});
    return out;
}

Rn3dmMatching in3dm_solution_to_rn3dm(const Rn3dmInstance&, const In3dmMatching& m) {
    Rn3dmMatching out;
    for (const auto& [a, b, t] : m)
        out.push_back({a, b, static_cast<Value>(t + 1)});
    return out;
}

bool satisfies_normal_form(const In3dmInstance& instance) {
    const auto n = static_cast<Value>(instance.n());
    if (n == 0)
        return true;
    const auto [lo, hi] = std::minmax_element(instance.A.begin(), instance.A.end());
    const Value max_t = *std::max_element(instance.T.begin(), instance.T.end());
    return *lo == n && *hi < 3 * n && max_t < 4 * n && !has_duplicates(instance.T);
}

std::variant<NormalizedIn3dm, TrivialNo> in3dm_normalize(const In3dmInstance& src) {
    validate(src);
    if (has_duplicates(src.T))
        throw Error(ErrorCode::DuplicateTargets, "IN3DM targets must be distinct here");
    auto range_ok = [](const std::vector<Value>& A) {
        if (A.empty())
            return true;
        const auto [lo, hi] = std::minmax_element(A.begin(), A.end());
        return *hi - *lo <= 2 * static_cast<Value>(A.size()) - 2;
    };
    if (!range_ok(src.A))
        throw Error(ErrorCode::RangeTooWide, "max(A) - min(A) > 2n - 2");

    NormalizedIn3dm out;
    std::vector<Value> A = src.A;
    std::vector<Value> T = src.T;
    std::sort(A.begin(), A.end());
    std::sort(T.begin(), T.end());

    // A target no larger than min(A) is met by any pair: match it with min(A) and b = 1,
    // then relabel B as 1..n-1 by decrementing the remaining targets.
    std::size_t lo = 0;
    Value dec = 0;
    while (lo < T.size() && T[lo] - dec <= A[lo]) {
        ++lo;
        ++dec;
    }
    out.eliminated = lo;
    A.erase(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(lo));
    T.erase(T.begin(), T.begin() + static_cast<std::ptrdiff_t>(lo));
    for (Value& t : T)
        t -= dec;

    const auto n = static_cast<Value>(A.size());
    if (n == 0) {
        out.instance = {};
        return out;
    }
    if (!range_ok(A))
        throw Error(ErrorCode::RangeTooWide, "range bound lost after small-target elimination");
    if (T.back() > A.back() + n)
        return TrivialNo{"max(T) = " + std::to_string(T.back()) + " > max(A) + n = " + std::to_string(A.back() + n)};

    out.shift = n - A.front();
    for (Value& a : A)
        a += out.shift;
    for (Value& t : T)
        t += out.shift;
    out.instance = {std::move(A), std::move(T)};
    if (!satisfies_normal_form(out.instance))
        throw Error(ErrorCode::InternalInvariantViolation, "normalized IN3DM misses its normal form");
    return out;
}

pm::Instance in3dm_to_pm(const In3dmInstance& src) {
    validate(src);
    if (!satisfies_normal_form(src))
        throw Error(ErrorCode::PreconditionNotNormalized, "IN3DM instance is not in normal form");
    const auto n = static_cast<Value>(src.n());
    pm::Instance out;
    out.D = src.A;
    std::sort(out.D.begin(), out.D.end());
    out.D.insert(out.D.end(), static_cast<std::size_t>(3 * n), 4 * n);
    for (Value b = 1; b <= 4 * n; ++b)
        out.A.push_back(b);
    out.T = src.T;
    for (Value t = 5 * n + 1; t <= 8 * n; ++t)
        out.T.push_back(t);
    pm::validate(out);
    return out;
}

pm::Matching in3dm_solution_to_pm(const In3dmInstance& src, const In3dmMatching& m) {
    const std::size_t n = src.n();
    std::vector<std::size_t> by_value(n);
    std::iota(by_value.begin(), by_value.end(), std::size_t{0});
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t l, std::size_t r) { return src.A[l] < src.A[r]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t r = 0; r < n; ++r)
        rank[by_value[r]] = r;

    pm::Matching out;
    for (const auto& [a, b, t] : m)
        out.triples.push_back({rank[a], static_cast<std::size_t>(b - 1), t});
    // Dummy j pairs 4n with position n + j and target 5n + j.
    for (std::size_t j = n; j < 4 * n; ++j)
        out.triples.push_back({j, j, j});
    std::sort(out.triples.begin(), out.triples.end(),
              [](const pm::Triple& l, const pm::Triple& r) { return l.a < r.a; });
    return out;
}

pm::Instance pm_shift(const pm::Instance& src, Value c) {
    pm::Instance out = src;
    for (Deadline& d : out.D)
        d += c;
    for (Position& a : out.A)
        a += c;
    for (Position& t : out.T)
        t += 2 * c;
    return out;
}

std::variant<TwoVisitsGadget, TrivialNo> pm_to_two_visits(const pm::Instance& src) {
    pm::validate(src);
    if (src.size() == 0)
        throw Error(ErrorCode::InvalidInstance, "empty Position Matching instance");
    for (std::size_t i = 1; i < src.A.size(); ++i)
        if (src.A[i] != src.A[i - 1] + 1)
            throw Error(ErrorCode::PreconditionNotConsecutive, "A must be a run of consecutive numbers");
    if (*std::min_element(src.T.begin(), src.T.end()) <= src.A.back())
        throw Error(ErrorCode::PreconditionTargetsNotAboveA, "every target must exceed max(A)");

    TwoVisitsGadget out{KVisitsInstance({1}, 2)};
    pm::Instance inst = src;
    if (inst.A.front() % 2 == 0) {
        inst = pm_shift(inst, 1);
        out.shifted_to_odd = true;
    }
    const Position a1 = inst.A.front();
    const Position an = inst.A.back();
    const Position tn = *std::max_element(inst.T.begin(), inst.T.end());
    if (tn > 2 * an)
        return TrivialNo{"max(T) = " + std::to_string(tn) + " > 2 * max(A) = " + std::to_string(2 * an)};

    std::vector<Deadline> deadlines;
    for (Deadline s = 1; s < a1; s += 2)
        deadlines.push_back(s);
    out.small_count = deadlines.size();
    deadlines.insert(deadlines.end(), inst.D.begin(), inst.D.end());
    const std::set<Position> targets(inst.T.begin(), inst.T.end());
    for (Deadline l = an + 1; l <= 2 * an; ++l)
        if (!targets.contains(l)) {
            deadlines.push_back(l);
            ++out.large_count;
        }
    out.instance = KVisitsInstance(std::move(deadlines), 2);
    return out;
}

VarKVisitsInstance two_visits_to_var_k(const KVisitsInstance& src, int k_target) {
    if (k_target < 2)
        throw Error(ErrorCode::InvalidInstance, "k_target must be at least 2");
    const Deadline relaxed = 3 * static_cast<Deadline>(src.n());
    std::vector<std::vector<Deadline>> rows;
    for (const Deadline d : src.deadlines()) {
        std::vector<Deadline> row(static_cast<std::size_t>(k_target), relaxed);
        row[0] = row[1] = d;
        rows.push_back(std::move(row));
    }
    return VarKVisitsInstance(std::move(rows));
}

Schedule extend_schedule(const Schedule& two_visits_schedule, int n, int k_target) {
    Schedule out = two_visits_schedule;
    for (int pass = 2; pass < k_target; ++pass)
        for (NodeIndex i = 1; i <= n; ++i)
            out.entries.push_back(i);
    return out;
}

ThresholdPinwheelInstance two_visits_to_threshold_pws(const KVisitsInstance& src) {
    ThresholdPinwheelInstance out;
    const Deadline relaxed = 3 * static_cast<Deadline>(src.n());
    for (const Deadline d : src.deadlines()) {
        out.d1.push_back(d);
        out.d2.push_back(relaxed);
        out.thresholds.push_back(2);
    }
    return out;
}

} // namespace kvisits::reductions
