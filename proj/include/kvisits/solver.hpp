#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvisits/instances.hpp"
#include "kvisits/pm.hpp"

namespace kvisits {

enum class Feasibility { Feasible, Infeasible };

enum class InfeasibleReason { None, NonPositiveDiscretized, ClusterPmInfeasible };

std::string_view to_string(Feasibility f);
std::string_view to_string(InfeasibleReason r);

struct ClusterTrace {
    Cluster cluster;                  // indices into the trimmed core
    std::vector<Position> targets;    // gaps assigned to this cluster
    pm::Method method;
    bool feasible;
};

struct SolveResult {
    Feasibility verdict = Feasibility::Infeasible;
    std::optional<Schedule> schedule;
    InfeasibleReason reason = InfeasibleReason::None;
    std::optional<std::size_t> failed_cluster; // set for ClusterPmInfeasible
    std::vector<ClusterTrace> trace;

    bool feasible() const noexcept { return verdict == Feasibility::Feasible; }
};

// k = 1: feasible iff the discretized sequence is positive; witness 1, 2, ..., n.
SolveResult solve_one_visit(const KVisitsInstance& instance);

struct TwoVisitsOptions {
    // Forces a PM method for every cluster (used by consistency sweeps); the method must
    // be applicable to every cluster.
    std::optional<pm::Method> force_method;
};

// k = 2: trim -> discretize -> clusters/gaps -> per-cluster Position Matching -> schedule.
SolveResult solve_two_visits(const KVisitsInstance& instance, const TwoVisitsOptions& options = {});

struct ClusterMatching {
    Cluster cluster;
    std::vector<Position> targets;
    pm::Matching matching; // indices local to the cluster
};

// Lays out primaries on matched positions and secondaries on the cluster's gaps in
// non-decreasing induced-deadline order, then appends trimmed nodes pairwise.
// Throws Error(InternalInvariantViolation) if the result does not verify.
Schedule reconstruct_schedule(const KVisitsInstance& original, const KVisitsInstance& core,
                              const ClusterDecomposition& decomposition,
                              const std::vector<ClusterMatching>& matchings,
                              const std::vector<NodeIndex>& trimmed);

// The Position Matching instance of one cluster with its designated gaps.
pm::Instance cluster_instance(const KVisitsInstance& core, const DiscretizedSequence& disc,
                              const Cluster& cluster, std::vector<Position> targets);

} // namespace kvisits
