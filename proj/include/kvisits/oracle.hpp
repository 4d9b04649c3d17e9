#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "kvisits/instances.hpp"
#include "kvisits/pm.hpp"
#include "kvisits/reductions.hpp"

namespace kvisits::oracle {

inline constexpr std::uint64_t default_budget = 50'000'000;

struct SearchBudget {
    std::uint64_t max_nodes_expanded = default_budget;
};

enum class Outcome { Feasible, Infeasible, BudgetExhausted };
std::string_view to_string(Outcome o);

struct ScheduleAnswer {
    Outcome outcome = Outcome::BudgetExhausted;
    std::optional<Schedule> schedule;
    std::uint64_t nodes_expanded = 0;

    bool decided() const noexcept { return outcome != Outcome::BudgetExhausted; }
};

// Prefix filter: return false to cut every schedule extending this prefix.
using PrefixFilter = std::function<bool(std::span<const NodeIndex>)>;

struct ScheduleSearchOptions {
    SearchBudget budget;
    PrefixFilter admissible; // optional
};

ScheduleAnswer oracle_kvisits(const KVisitsInstance& instance, const ScheduleSearchOptions& options = {});
ScheduleAnswer oracle_var_kvisits(const VarKVisitsInstance& instance, const ScheduleSearchOptions& options = {});

struct EnumerationResult {
    std::uint64_t count = 0;
    bool exhausted = false; // budget ran out; count is a lower bound
    std::uint64_t nodes_expanded = 0;
};

// Visits every feasible schedule exactly once, in lexicographic order.
EnumerationResult oracle_enumerate_kvisits(const KVisitsInstance& instance,
                                           const std::function<void(const Schedule&)>& visitor,
                                           const ScheduleSearchOptions& options = {});

struct PmAnswer {
    Outcome outcome = Outcome::BudgetExhausted;
    std::optional<pm::Matching> matching;
};

PmAnswer oracle_pm(const pm::Instance& instance, SearchBudget budget = {});

struct Rn3dmAnswer {
    Outcome outcome = Outcome::BudgetExhausted;
    std::optional<reductions::Rn3dmMatching> matching;
};

struct In3dmAnswer {
    Outcome outcome = Outcome::BudgetExhausted;
    std::optional<reductions::In3dmMatching> matching;
};

Rn3dmAnswer oracle_rn3dm(const reductions::Rn3dmInstance& instance, SearchBudget budget = {});
In3dmAnswer oracle_in3dm(const reductions::In3dmInstance& instance, SearchBudget budget = {});

} // namespace kvisits::oracle
