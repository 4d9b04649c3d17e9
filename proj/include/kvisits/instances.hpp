#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kvisits/error.hpp"

namespace kvisits {

using Deadline = std::int64_t;
using Position = std::int64_t;
using NodeIndex = int; // 1-based everywhere it leaves the library
using Rational = boost::multiprecision::cpp_rational;

// Non-decreasing positive deadlines plus the number of visits per node.
class KVisitsInstance {
public:
    // Throws Error if the deadlines are empty, unsorted or non-positive, or k < 1.
    KVisitsInstance(std::vector<Deadline> deadlines, int k);

    const std::vector<Deadline>& deadlines() const noexcept { return deadlines_; }
    Deadline deadline(NodeIndex node) const { return deadlines_.at(static_cast<std::size_t>(node - 1)); }
    int k() const noexcept { return k_; }
    int n() const noexcept { return static_cast<int>(deadlines_.size()); }

    friend bool operator==(const KVisitsInstance&, const KVisitsInstance&) = default;

private:
    std::vector<Deadline> deadlines_;
    int k_;
};

// Per-occurrence deadlines: row i holds d_{i1} .. d_{ik}.
class VarKVisitsInstance {
public:
    explicit VarKVisitsInstance(std::vector<std::vector<Deadline>> rows);

    const std::vector<std::vector<Deadline>>& rows() const noexcept { return rows_; }
    Deadline deadline(NodeIndex node, int occurrence) const {
        return rows_.at(static_cast<std::size_t>(node - 1)).at(static_cast<std::size_t>(occurrence - 1));
    }
    int n() const noexcept { return static_cast<int>(rows_.size()); }
    int k() const noexcept { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }

    static VarKVisitsInstance from_kvisits(const KVisitsInstance& instance);

    friend bool operator==(const VarKVisitsInstance&, const VarKVisitsInstance&) = default;

private:
    std::vector<std::vector<Deadline>> rows_;
};

// Latest admissible first-visit positions. values[i] may be <= 0 for 1-Visit-infeasible input.
struct DiscretizedSequence {
    std::vector<Deadline> deadlines;
    std::vector<Position> values;

    bool all_positive() const;
};

// Half-open index range [begin, end) into the discretized sequence.
struct Cluster {
    std::size_t begin;
    std::size_t end;

    std::size_t size() const noexcept { return end - begin; }
    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ClusterDecomposition {
    std::vector<Cluster> clusters;
    std::vector<Position> gaps; // ascending, subset of [1, horizon]
    Position horizon = 0;       // 2n
};

// A finite schedule: entries[p - 1] is the node visited at position p.
struct Schedule {
    std::vector<NodeIndex> entries;

    std::size_t length() const noexcept { return entries.size(); }
    // visit_positions(n)[i - 1] lists the positions of node i in ascending order.
    std::vector<std::vector<Position>> visit_positions(int n) const;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct TrimResult {
    KVisitsInstance core;
    std::vector<NodeIndex> trimmed; // removal order, largest deadline first
};

KVisitsInstance normalize(std::vector<Deadline> raw, int k);

DiscretizedSequence discretize(std::span<const Deadline> deadlines);
inline DiscretizedSequence discretize(const KVisitsInstance& instance) { return discretize(instance.deadlines()); }

TrimResult trim_large_deadlines(const KVisitsInstance& instance);

ClusterDecomposition decompose(const DiscretizedSequence& disc);

Rational density(const KVisitsInstance& instance);

// Density at or below 5/6 guarantees feasibility for every k.
bool density_at_most_five_sixths(const KVisitsInstance& instance);

} // namespace kvisits
