#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kvisits/instances.hpp"

namespace kvisits::pm {

// D non-decreasing, A its discretized sequence, T distinct targets; |D| = |A| = |T|.
struct Instance {
    std::vector<Deadline> D;
    std::vector<Position> A;
    std::vector<Position> T;

    std::size_t size() const noexcept { return D.size(); }
    friend bool operator==(const Instance&, const Instance&) = default;
};

// Builds a valid instance with A recomputed from D.
Instance make_instance(std::vector<Deadline> D, std::vector<Position> T);

struct Triple {
    std::size_t d;
    std::size_t a;
    std::size_t t;
    friend bool operator==(const Triple&, const Triple&) = default;
};

// Index triples into (D, A, T), ordered by A index.
struct Matching {
    std::vector<Triple> triples;
    friend bool operator==(const Matching&, const Matching&) = default;
};

// Empty optional means Infeasible.
using Result = std::optional<Matching>;

// Throws Error(SizeMismatch | InvalidInstance | NotDiscretizedSequence | DuplicateTargets).
void validate(const Instance& instance);
bool is_valid(const Instance& instance);

enum class MatchingViolation {
    WrongSize,
    IndexOutOfRange,
    IndexReused,
    DeadlineBelowPosition,
    TargetUnsatisfied,
};

std::string_view to_string(MatchingViolation v);

struct MatchingVerdict {
    std::optional<MatchingViolation> violation;
    std::size_t triple = 0; // offending triple index

    bool ok() const noexcept { return !violation.has_value(); }
};

MatchingVerdict verify_matching(const Instance& instance, const Matching& matching);

// Given a D-to-A pairing (pair_of_a[j] = D index placed on A index j), assigns targets by
// sorted domination. Empty when the sums cannot dominate T.
Result assign_targets(const Instance& instance, std::span<const std::size_t> pair_of_a);

// Sorted domination: sort(sums)[j] >= sort(targets)[j] for every j.
bool dominates(std::vector<Position> sums, std::vector<Position> targets);

Result solve_distinct(const Instance& instance);
Result solve_single_value(const Instance& instance);
Result solve_two_values(const Instance& instance);
Result solve_exact(const Instance& instance);

enum class Method { SingleValue, TwoValues, Distinct, Exact };
std::string_view to_string(Method m);

// Cheapest applicable method for the instance's deadline multiset.
Method choose_method(const Instance& instance);
Result solve(const Instance& instance, Method method);

} // namespace kvisits::pm
