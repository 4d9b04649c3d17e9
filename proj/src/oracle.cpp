#include "kvisits/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "kvisits/verify.hpp"

namespace kvisits::oracle {

std::string_view to_string(Outcome o) {
    switch (o) {
    case Outcome::Feasible: return "feasible";
    case Outcome::Infeasible: return "infeasible";
    case Outcome::BudgetExhausted: return "budget-exhausted";
    }
    return "unknown";
}

namespace {

// Depth-first search over positions 1..nk. A state is (visits made, last visit) per node.
class ScheduleSearch {
public:
    enum class Mode { Decide, Enumerate };

    ScheduleSearch(const VarKVisitsInstance& instance, const ScheduleSearchOptions& options, Mode mode)
        : rows_(instance.rows()), n_(instance.n()), k_(instance.k()), options_(options), mode_(mode),
          occ_(static_cast<std::size_t>(n_), 0), last_(static_cast<std::size_t>(n_), 0) {
        // Nodes with identical rows are interchangeable.
        std::map<std::vector<Deadline>, int> ids;
        for (const auto& row : rows_)
            class_.push_back(ids.emplace(row, static_cast<int>(ids.size())).first->second);
        prefix_.reserve(static_cast<std::size_t>(n_ * k_));
        // A prefix filter may tell identical nodes apart, so neither the memo nor the
        // symmetry cut is sound under one.
        use_memo_ = !options_.admissible;
        break_symmetry_ = mode_ == Mode::Decide && !options_.admissible;
    }

    // Returns true once a schedule is found (Decide mode only).
    bool run() { return descend(1); }

    std::function<void(const Schedule&)> visitor;
    std::uint64_t expanded = 0;
    bool exhausted = false;
    std::uint64_t found = 0;
    Schedule witness;

private:
    Deadline next_deadline(std::size_t i) const { return rows_[i][static_cast<std::size_t>(occ_[i])]; }

    // Every unfinished node must still be reachable, and no window [p, p + w) may owe more
    // than w visits.
    bool viable(Position p) {
        expiries_.clear();
        for (std::size_t i = 0; i < occ_.size(); ++i) {
            if (occ_[i] == k_)
                continue;
            const Position e = last_[i] + next_deadline(i);
            if (e < p)
                return false;
            expiries_.push_back(e);
        }
        std::sort(expiries_.begin(), expiries_.end());
        for (std::size_t r = 0; r < expiries_.size(); ++r)
            if (expiries_[r] < p + static_cast<Position>(r))
                return false;
        return true;
    }

    std::string state_key() const {
        std::vector<std::array<Position, 3>> parts;
        parts.reserve(occ_.size());
        for (std::size_t i = 0; i < occ_.size(); ++i)
            parts.push_back({class_[i], occ_[i], occ_[i] == k_ ? 0 : last_[i]});
        std::sort(parts.begin(), parts.end());
        std::string key(reinterpret_cast<const char*>(parts.data()), parts.size() * sizeof(parts[0]));
        return key;
    }

    bool descend(Position p) {
        if (exhausted)
            return false;
        if (++expanded > options_.budget.max_nodes_expanded) {
            exhausted = true;
            return false;
        }
        if (options_.admissible && !options_.admissible(prefix_))
            return false;
        if (p > static_cast<Position>(n_) * k_) {
            ++found;
            if (mode_ == Mode::Enumerate) {
                if (visitor)
                    visitor(Schedule{prefix_});
                return false;
            }
            witness.entries = prefix_;
            return true;
        }
        if (!viable(p))
            return false;

        std::string key;
        if (use_memo_) {
            key = state_key();
            if (dead_.contains(key))
                return false;
        }
        const std::uint64_t found_before = found;

        for (std::size_t i = 0; i < occ_.size(); ++i) {
            if (occ_[i] == k_ || p - last_[i] > next_deadline(i))
                continue;
            if (break_symmetry_ && duplicate_of_earlier(i))
                continue;
            const Position saved = last_[i];
            ++occ_[i];
            last_[i] = p;
            prefix_.push_back(static_cast<NodeIndex>(i + 1));
            const bool done = descend(p + 1);
            prefix_.pop_back();
            last_[i] = saved;
            --occ_[i];
            if (done)
                return true;
            if (exhausted)
                return false;
        }
        if (use_memo_ && found == found_before && dead_.size() < memo_limit)
            dead_.insert(std::move(key));
        return false;
    }

    bool duplicate_of_earlier(std::size_t i) const {
        for (std::size_t j = 0; j < i; ++j)
            if (class_[j] == class_[i] && occ_[j] == occ_[i] && (occ_[i] == k_ || last_[j] == last_[i]))
                return true;
        return false;
    }

    static constexpr std::size_t memo_limit = 4'000'000;

    const std::vector<std::vector<Deadline>>& rows_;
    int n_;
    int k_;
    const ScheduleSearchOptions& options_;
    Mode mode_;
    std::vector<int> class_;
    std::vector<int> occ_;
    std::vector<Position> last_;
    std::vector<NodeIndex> prefix_;
    std::vector<Position> expiries_;
    std::unordered_set<std::string> dead_;
    bool use_memo_ = true;
    bool break_symmetry_ = true;
};

ScheduleAnswer decide(const VarKVisitsInstance& instance, const ScheduleSearchOptions& options) {
    ScheduleSearch search(instance, options, ScheduleSearch::Mode::Decide);
    ScheduleAnswer answer;
    const bool found = search.run();
    answer.nodes_expanded = search.expanded;
    if (found) {
        answer.outcome = Outcome::Feasible;
        answer.schedule = std::move(search.witness);
    } else {
        answer.outcome = search.exhausted ? Outcome::BudgetExhausted : Outcome::Infeasible;
    }
    return answer;
}

} // namespace

ScheduleAnswer oracle_var_kvisits(const VarKVisitsInstance& instance, const ScheduleSearchOptions& options) {
    return decide(instance, options);
}

ScheduleAnswer oracle_kvisits(const KVisitsInstance& instance, const ScheduleSearchOptions& options) {
    return decide(VarKVisitsInstance::from_kvisits(instance), options);
}

EnumerationResult oracle_enumerate_kvisits(const KVisitsInstance& instance,
                                           const std::function<void(const Schedule&)>& visitor,
                                           const ScheduleSearchOptions& options) {
    const VarKVisitsInstance var = VarKVisitsInstance::from_kvisits(instance);
    ScheduleSearch search(var, options, ScheduleSearch::Mode::Enumerate);
    search.visitor = visitor;
    search.run();
    return {search.found, search.exhausted, search.expanded};
}

PmAnswer oracle_pm(const pm::Instance& instance, SearchBudget budget) {
    pm::validate(instance);
    const std::size_t n = instance.size();
    std::vector<Position> targets = instance.T;
    std::sort(targets.begin(), targets.end());

    // Distinct arrangements of the D multiset over positions A[0..n).
    std::vector<Deadline> arrangement = instance.D;
    std::uint64_t steps = 0;
    do {
        if (++steps > budget.max_nodes_expanded)
            return {Outcome::BudgetExhausted, std::nullopt};
        std::vector<Position> sums(n);
        bool admissible = true;
        for (std::size_t j = 0; j < n && admissible; ++j) {
            admissible = arrangement[j] >= instance.A[j];
            sums[j] = arrangement[j] + instance.A[j];
        }
        if (!admissible)
            continue;
        std::sort(sums.begin(), sums.end());
        bool dominated = true;
        for (std::size_t j = 0; j < n && dominated; ++j)
            dominated = sums[j] >= targets[j];
        if (!dominated)
            continue;

        // Witness: j-th position takes the next unused copy of its value.
        std::vector<std::size_t> pair_of_a(n);
        std::map<Deadline, std::size_t> used;
        for (std::size_t j = 0; j < n; ++j) {
            const auto first = static_cast<std::size_t>(
                std::lower_bound(instance.D.begin(), instance.D.end(), arrangement[j]) - instance.D.begin());
            pair_of_a[j] = first + used[arrangement[j]]++;
        }
        return {Outcome::Feasible, pm::assign_targets(instance, pair_of_a)};
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return {Outcome::Infeasible, std::nullopt};
}

Rn3dmAnswer oracle_rn3dm(const reductions::Rn3dmInstance& instance, SearchBudget budget) {
    reductions::validate(instance);
    const std::size_t n = instance.n();
    std::vector<reductions::Value> b(n);
    std::iota(b.begin(), b.end(), reductions::Value{1});
    std::uint64_t steps = 0;
    do {
        if (++steps > budget.max_nodes_expanded)
            return {Outcome::BudgetExhausted, std::nullopt};
        // With b fixed, c = sigma - a - b is forced; it must form a permutation of 1..n.
        std::vector<bool> used(n + 1, false);
        reductions::Rn3dmMatching m;
        for (std::size_t i = 0; i < n; ++i) {
            const reductions::Value c = instance.sigma - instance.A[i] - b[i];
            if (c < 1 || c > static_cast<reductions::Value>(n) || used[static_cast<std::size_t>(c)])
                break;
            used[static_cast<std::size_t>(c)] = true;
            m.push_back({i, b[i], c});
        }
        if (m.size() == n)
            return {Outcome::Feasible, std::move(m)};
    } while (std::next_permutation(b.begin(), b.end()));
    return {Outcome::Infeasible, std::nullopt};
}

In3dmAnswer oracle_in3dm(const reductions::In3dmInstance& instance, SearchBudget budget) {
    reductions::validate(instance);
    const std::size_t n = instance.n();
    std::vector<reductions::Value> b(n);
    std::iota(b.begin(), b.end(), reductions::Value{1});
    std::uint64_t steps = 0;
    do {
        std::vector<std::size_t> t(n);
        std::iota(t.begin(), t.end(), std::size_t{0});
        do {
            if (++steps > budget.max_nodes_expanded)
                return {Outcome::BudgetExhausted, std::nullopt};
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                ok = instance.A[i] + b[i] >= instance.T[t[i]];
            if (ok) {
                reductions::In3dmMatching m;
                for (std::size_t i = 0; i < n; ++i)
                    m.push_back({i, b[i], t[i]});
                return {Outcome::Feasible, std::move(m)};
            }
        } while (std::next_permutation(t.begin(), t.end()));
    } while (std::next_permutation(b.begin(), b.end()));
    return {Outcome::Infeasible, std::nullopt};
}

} // namespace kvisits::oracle
