#include "kvisits/instances.hpp"

#include <algorithm>
#include <string>

namespace kvisits {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveDeadline: return "NonPositiveDeadline";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::NonPositiveDiscretizedValue: return "NonPositiveDiscretizedValue";
    case ErrorCode::ValueExceedsHorizon: return "ValueExceedsHorizon";
    case ErrorCode::DuplicatePosition: return "DuplicatePosition";
    case ErrorCode::NotDiscretizedSequence: return "NotDiscretizedSequence";
    case ErrorCode::DuplicateTargets: return "DuplicateTargets";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::PreconditionNotDistinct: return "PreconditionNotDistinct";
    case ErrorCode::PreconditionNotSingleValue: return "PreconditionNotSingleValue";
    case ErrorCode::PreconditionNotTwoValues: return "PreconditionNotTwoValues";
    case ErrorCode::PreconditionNotNormalized: return "PreconditionNotNormalized";
    case ErrorCode::PreconditionNotConsecutive: return "PreconditionNotConsecutive";
    case ErrorCode::PreconditionTargetsNotAboveA: return "PreconditionTargetsNotAboveA";
    case ErrorCode::NonPositiveTarget: return "NonPositiveTarget";
    case ErrorCode::RangeTooWide: return "RangeTooWide";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

KVisitsInstance::KVisitsInstance(std::vector<Deadline> deadlines, int k)
    : deadlines_(std::move(deadlines)), k_(k) {
    if (deadlines_.empty())
        throw Error(ErrorCode::EmptyInput, "instance needs at least one deadline");
    if (k_ < 1)
        throw Error(ErrorCode::InvalidInstance, "k must be positive, got " + std::to_string(k_));
    for (const Deadline d : deadlines_)
        if (d < 1)
            throw Error(ErrorCode::NonPositiveDeadline, "deadline " + std::to_string(d));
    if (!std::is_sorted(deadlines_.begin(), deadlines_.end()))
        throw Error(ErrorCode::InvalidInstance, "deadlines must be non-decreasing");
}

VarKVisitsInstance::VarKVisitsInstance(std::vector<std::vector<Deadline>> rows) : rows_(std::move(rows)) {
    if (rows_.empty() || rows_.front().empty())
        throw Error(ErrorCode::EmptyInput, "var-k instance needs n, k >= 1");
    const std::size_t k = rows_.front().size();
    for (const auto& row : rows_) {
        if (row.size() != k)
            throw Error(ErrorCode::SizeMismatch, "every row must hold k deadlines");
        for (const Deadline d : row)
            if (d < 1)
                throw Error(ErrorCode::NonPositiveDeadline, "deadline " + std::to_string(d));
    }
}

VarKVisitsInstance VarKVisitsInstance::from_kvisits(const KVisitsInstance& instance) {
    std::vector<std::vector<Deadline>> rows;
    rows.reserve(instance.deadlines().size());
    for (const Deadline d : instance.deadlines())
        rows.emplace_back(static_cast<std::size_t>(instance.k()), d);
    return VarKVisitsInstance(std::move(rows));
}

bool DiscretizedSequence::all_positive() const {
    return std::all_of(values.begin(), values.end(), [](Position a) { return a >= 1; });
}

std::vector<std::vector<Position>> Schedule::visit_positions(int n) const {
    std::vector<std::vector<Position>> out(static_cast<std::size_t>(std::max(n, 0)));
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const NodeIndex node = entries[p];
        if (node >= 1 && node <= n)
            out[static_cast<std::size_t>(node - 1)].push_back(static_cast<Position>(p + 1));
    }
    return out;
}

KVisitsInstance normalize(std::vector<Deadline> raw, int k) {
    if (raw.empty())
        throw Error(ErrorCode::EmptyInput, "no deadlines given");
    for (const Deadline d : raw)
        if (d < 1)
            throw Error(ErrorCode::NonPositiveDeadline, "deadline " + std::to_string(d));
    std::sort(raw.begin(), raw.end());
    return KVisitsInstance(std::move(raw), k);
}

DiscretizedSequence discretize(std::span<const Deadline> deadlines) {
    DiscretizedSequence out;
    out.deadlines.assign(deadlines.begin(), deadlines.end());
    out.values.resize(deadlines.size());
    if (deadlines.empty())
        return out;
    const std::size_t n = deadlines.size();
    out.values[n - 1] = deadlines[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        out.values[i] = std::min(out.values[i + 1] - 1, deadlines[i]);
    return out;
}

TrimResult trim_large_deadlines(const KVisitsInstance& instance) {
    if (instance.k() != 2)
        throw Error(ErrorCode::InvalidInstance, "trimming is defined for k = 2");
    const auto& d = instance.deadlines();
    std::size_t n = d.size();
    std::vector<NodeIndex> trimmed;
    // Sorted input: the largest remaining deadline is always the last one.
    while (n > 1 && d[n - 1] > 2 * static_cast<Deadline>(n)) {
        trimmed.push_back(static_cast<NodeIndex>(n));
        --n;
    }
    // A lone node with d > 2 is feasible on its own; keep it so the core is never empty.
    return TrimResult{KVisitsInstance(std::vector<Deadline>(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n)), 2),
                      std::move(trimmed)};
}

ClusterDecomposition decompose(const DiscretizedSequence& disc) {
    const auto& a = disc.values;
    ClusterDecomposition out;
    out.horizon = 2 * static_cast<Position>(a.size());
    for (const Position v : a) {
        if (v < 1)
            throw Error(ErrorCode::NonPositiveDiscretizedValue, "value " + std::to_string(v));
        if (v > out.horizon)
            throw Error(ErrorCode::ValueExceedsHorizon,
                        "value " + std::to_string(v) + " > " + std::to_string(out.horizon));
    }
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        if (i == a.size() || a[i] != a[i - 1] + 1) {
            out.clusters.push_back({begin, i});
            begin = i;
        }
    }
    std::size_t next = 0;
    for (Position p = 1; p <= out.horizon; ++p) {
        if (next < a.size() && a[next] == p)
            ++next;
        else
            out.gaps.push_back(p);
    }
    return out;
}

Rational density(const KVisitsInstance& instance) {
    Rational sum = 0;
    for (const Deadline d : instance.deadlines())
        sum += Rational(1, d);
    return sum;
}

bool density_at_most_five_sixths(const KVisitsInstance& instance) {
    return density(instance) <= Rational(5, 6);
}

} // namespace kvisits
