#include "kvisits/solver.hpp"

#include <algorithm>
#include <numeric>

#include "kvisits/verify.hpp"

namespace kvisits {

std::string_view to_string(Feasibility f) {
    return f == Feasibility::Feasible ? "feasible" : "infeasible";
}

std::string_view to_string(InfeasibleReason r) {
    switch (r) {
    case InfeasibleReason::None: return "none";
    case InfeasibleReason::NonPositiveDiscretized: return "non-positive-discretized";
    case InfeasibleReason::ClusterPmInfeasible: return "cluster-pm-infeasible";
    }
    return "unknown";
}

SolveResult solve_one_visit(const KVisitsInstance& instance) {
    if (instance.k() != 1)
        throw Error(ErrorCode::InvalidInstance, "solve_one_visit needs k = 1");
    SolveResult result;
    if (!discretize(instance).all_positive()) {
        result.reason = InfeasibleReason::NonPositiveDiscretized;
        return result;
    }
    Schedule s;
    s.entries.resize(static_cast<std::size_t>(instance.n()));
    std::iota(s.entries.begin(), s.entries.end(), 1);
    result.verdict = Feasibility::Feasible;
    result.schedule = std::move(s);
    return result;
}

pm::Instance cluster_instance(const KVisitsInstance& core, const DiscretizedSequence& disc,
                              const Cluster& cluster, std::vector<Position> targets) {
    const auto begin = static_cast<std::ptrdiff_t>(cluster.begin);
    const auto end = static_cast<std::ptrdiff_t>(cluster.end);
    pm::Instance inst;
    inst.D.assign(core.deadlines().begin() + begin, core.deadlines().begin() + end);
    inst.A.assign(disc.values.begin() + begin, disc.values.begin() + end);
    inst.T = std::move(targets);
    return inst;
}

Schedule reconstruct_schedule(const KVisitsInstance& original, const KVisitsInstance& core,
                              const ClusterDecomposition& decomposition,
                              const std::vector<ClusterMatching>& matchings,
                              const std::vector<NodeIndex>& trimmed) {
    const DiscretizedSequence disc = discretize(core);
    Schedule s;
    s.entries.assign(2 * static_cast<std::size_t>(original.n()), 0);

    std::vector<std::pair<Position, NodeIndex>> induced;
    for (const ClusterMatching& cm : matchings) {
        induced.clear();
        for (const pm::Triple& tr : cm.matching.triples) {
            const auto node = static_cast<NodeIndex>(cm.cluster.begin + tr.d + 1);
            const Position primary = disc.values[cm.cluster.begin + tr.a];
            s.entries[static_cast<std::size_t>(primary - 1)] = node;
            induced.emplace_back(core.deadline(node) + primary, node);
        }
        // Non-decreasing induced deadline, ties by node index.
        std::sort(induced.begin(), induced.end());
        std::vector<Position> gaps = cm.targets;
        std::sort(gaps.begin(), gaps.end());
        for (std::size_t r = 0; r < induced.size(); ++r)
            s.entries[static_cast<std::size_t>(gaps[r] - 1)] = induced[r].second;
    }

    // The first-trimmed node has the largest deadline and goes last.
    auto p = static_cast<std::size_t>(decomposition.horizon);
    for (auto it = trimmed.rbegin(); it != trimmed.rend(); ++it) {
        s.entries[p++] = *it;
        s.entries[p++] = *it;
    }

    if (const Verdict v = verify_kvisits(original, s); !v.ok())
        throw Error(ErrorCode::InternalInvariantViolation, "reconstructed schedule fails: " + describe(v));
    return s;
}

SolveResult solve_two_visits(const KVisitsInstance& instance, const TwoVisitsOptions& options) {
    if (instance.k() != 2)
        throw Error(ErrorCode::InvalidInstance, "solve_two_visits needs k = 2");
    SolveResult result;
    TrimResult trim = trim_large_deadlines(instance);
    const KVisitsInstance& core = trim.core;
    const DiscretizedSequence disc = discretize(core);
    if (!disc.all_positive()) {
        result.reason = InfeasibleReason::NonPositiveDiscretized;
        return result;
    }

    if (core.n() == 1 && disc.values[0] > 2) {
        // A lone node whose deadline is beyond the horizon fits anywhere.
        Schedule s;
        s.entries = {1, 1};
        for (auto it = trim.trimmed.rbegin(); it != trim.trimmed.rend(); ++it)
            s.entries.insert(s.entries.end(), {*it, *it});
        result.verdict = Feasibility::Feasible;
        result.schedule = std::move(s);
        return result;
    }

    const ClusterDecomposition dec = decompose(disc);
    std::vector<ClusterMatching> matchings;
    matchings.reserve(dec.clusters.size());
    std::size_t next_gap = 0;
    for (std::size_t c = 0; c < dec.clusters.size(); ++c) {
        const Cluster& cluster = dec.clusters[c];
        // The j-th cluster owns the next |C_j| gaps.
        std::vector<Position> targets(dec.gaps.begin() + static_cast<std::ptrdiff_t>(next_gap),
                                      dec.gaps.begin() + static_cast<std::ptrdiff_t>(next_gap + cluster.size()));
        next_gap += cluster.size();
        pm::Instance sub = cluster_instance(core, disc, cluster, targets);
        const pm::Method method = options.force_method.value_or(pm::choose_method(sub));
        pm::Result r = pm::solve(sub, method);
        result.trace.push_back({cluster, targets, method, r.has_value()});
        if (!r) {
            result.reason = InfeasibleReason::ClusterPmInfeasible;
            result.failed_cluster = c;
            return result;
        }
        matchings.push_back({cluster, std::move(targets), std::move(*r)});
    }

    result.verdict = Feasibility::Feasible;
    result.schedule = reconstruct_schedule(instance, core, dec, matchings, trim.trimmed);
    return result;
}

} // namespace kvisits
