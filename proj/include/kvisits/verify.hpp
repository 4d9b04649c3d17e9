#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kvisits/instances.hpp"

namespace kvisits {

enum class ViolationReason { DeadlineExceeded, WrongVisitCount, BadLength, IndexOutOfRange };

std::string_view to_string(ViolationReason reason);

struct Violation {
    NodeIndex node = 0;         // 0 when no single node is to blame (BadLength)
    int occurrence_index = 0;   // 1-based occurrence of `node`
    Position position = 0;      // where the offending visit sits (0 if the node was never visited)
    Position allowed_by = 0;    // latest admissible position for that occurrence
    ViolationReason reason = ViolationReason::BadLength;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
    std::optional<Violation> violation;

    bool ok() const noexcept { return !violation.has_value(); }
    explicit operator bool() const noexcept { return ok(); }

    static Verdict accept() { return {}; }
    static Verdict reject(Violation v) { return Verdict{v}; }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

std::string describe(const Verdict& verdict);

// Earliest violation wins: ordered by the slot at which the constraint first breaks,
// then by node index.
Verdict verify_kvisits(const KVisitsInstance& instance, const Schedule& schedule);
Verdict verify_var_kvisits(const VarKVisitsInstance& instance, const Schedule& schedule);

struct InducedDeadline {
    NodeIndex node;
    Position primary_position;
    Position value; // deadline + primary_position

    friend bool operator==(const InducedDeadline&, const InducedDeadline&) = default;
};

// Ordered by node index. Throws Error(DuplicatePosition) if two primaries share a slot.
std::vector<InducedDeadline> induced_deadlines(const KVisitsInstance& instance,
                                               const std::map<NodeIndex, Position>& primary_positions);

} // namespace kvisits
