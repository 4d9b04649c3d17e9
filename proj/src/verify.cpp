#include "kvisits/verify.hpp"

#include <set>
#include <sstream>
#include <tuple>

namespace kvisits {

std::string_view to_string(ViolationReason reason) {
    switch (reason) {
    case ViolationReason::DeadlineExceeded: return "DeadlineExceeded";
    case ViolationReason::WrongVisitCount: return "WrongVisitCount";
    case ViolationReason::BadLength: return "BadLength";
    case ViolationReason::IndexOutOfRange: return "IndexOutOfRange";
    }
    return "Unknown";
}

std::string describe(const Verdict& verdict) {
    if (verdict.ok())
        return "ok";
    const Violation& v = *verdict.violation;
    std::ostringstream os;
    os << to_string(v.reason) << " node=" << v.node << " occurrence=" << v.occurrence_index
       << " position=" << v.position << " allowed_by=" << v.allowed_by;
    return os.str();
}

namespace {

template <class DeadlineOf>
Verdict verify_schedule(int n, int k, const Schedule& schedule, DeadlineOf deadline_of) {
    const auto expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(k);
    if (schedule.length() != expected) {
        return Verdict::reject({0, 0, static_cast<Position>(schedule.length()),
                                static_cast<Position>(expected), ViolationReason::BadLength});
    }

    std::optional<Violation> best;
    Position best_key = 0;
    auto consider = [&](Position key, const Violation& v) {
        if (!best || std::tie(key, v.node) < std::tie(best_key, best->node)) {
            best = v;
            best_key = key;
        }
    };

    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    std::vector<Position> last(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < schedule.entries.size(); ++idx) {
        const Position p = static_cast<Position>(idx + 1);
        const NodeIndex node = schedule.entries[idx];
        if (node < 1 || node > n) {
            consider(p, {node, 0, p, 0, ViolationReason::IndexOutOfRange});
            continue;
        }
        const auto i = static_cast<std::size_t>(node - 1);
        const int occurrence = ++seen[i];
        if (occurrence > k) {
            consider(p, {node, occurrence, p, 0, ViolationReason::WrongVisitCount});
            continue;
        }
        const Position allowed = last[i] + deadline_of(node, occurrence);
        if (p > allowed)
            consider(allowed + 1, {node, occurrence, p, allowed, ViolationReason::DeadlineExceeded});
        last[i] = p;
    }
    // Under-visited nodes: the missing occurrence expires after its predecessor.
    for (int node = 1; node <= n; ++node) {
        const auto i = static_cast<std::size_t>(node - 1);
        if (seen[i] < k) {
            const int occurrence = seen[i] + 1;
            const Position allowed = last[i] + deadline_of(node, occurrence);
            consider(allowed + 1, {node, occurrence, 0, allowed, ViolationReason::WrongVisitCount});
        }
    }
    return best ? Verdict::reject(*best) : Verdict::accept();
}

} // namespace

Verdict verify_kvisits(const KVisitsInstance& instance, const Schedule& schedule) {
    return verify_schedule(instance.n(), instance.k(), schedule,
                           [&](NodeIndex node, int) { return instance.deadline(node); });
}

Verdict verify_var_kvisits(const VarKVisitsInstance& instance, const Schedule& schedule) {
    return verify_schedule(instance.n(), instance.k(), schedule,
                           [&](NodeIndex node, int occurrence) { return instance.deadline(node, occurrence); });
}

std::vector<InducedDeadline> induced_deadlines(const KVisitsInstance& instance,
                                               const std::map<NodeIndex, Position>& primary_positions) {
    std::set<Position> used;
    std::vector<InducedDeadline> out;
    out.reserve(primary_positions.size());
    for (const auto& [node, position] : primary_positions) {
        if (!used.insert(position).second)
            throw Error(ErrorCode::DuplicatePosition, "position " + std::to_string(position));
        out.push_back({node, position, instance.deadline(node) + position});
    }
    return out;
}

} // namespace kvisits
