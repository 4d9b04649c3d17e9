#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kvisits/instances.hpp"
#include "kvisits/pm.hpp"

namespace kvisits::reductions {

using Value = std::int64_t;

// B = C = {1..n} are implicit. Invariant: sum(a_i + 2i) = n * sigma.
struct Rn3dmInstance {
    std::vector<Value> A;
    Value sigma = 0;

    std::size_t n() const noexcept { return A.size(); }
    friend bool operator==(const Rn3dmInstance&, const Rn3dmInstance&) = default;
};

// B = {1..n} is implicit.
struct In3dmInstance {
    std::vector<Value> A;
    std::vector<Value> T;

    std::size_t n() const noexcept { return A.size(); }
    friend bool operator==(const In3dmInstance&, const In3dmInstance&) = default;
};

struct Rn3dmTriple {
    std::size_t a; // index into A
    Value b;
    Value c;
    friend bool operator==(const Rn3dmTriple&, const Rn3dmTriple&) = default;
};

struct In3dmTriple {
    std::size_t a; // index into A
    Value b;
    std::size_t t; // index into T
    friend bool operator==(const In3dmTriple&, const In3dmTriple&) = default;
};

using Rn3dmMatching = std::vector<Rn3dmTriple>;
using In3dmMatching = std::vector<In3dmTriple>;

struct ThresholdPinwheelInstance {
    std::vector<Deadline> d1;
    std::vector<Deadline> d2;
    std::vector<std::int64_t> thresholds;

    std::size_t n() const noexcept { return d1.size(); }
    friend bool operator==(const ThresholdPinwheelInstance&, const ThresholdPinwheelInstance&) = default;
};

// A legitimate no-instance recognised by a closed-form filter.
struct TrivialNo {
    std::string reason;
};

void validate(const Rn3dmInstance& instance);
void validate(const In3dmInstance& instance);
bool verify(const Rn3dmInstance& instance, const Rn3dmMatching& m);
bool verify(const In3dmInstance& instance, const In3dmMatching& m);

// Every triple sums to sigma, and a + b + c lies in [a + 2, a + 2n], so a spread
// max(A) - min(A) above 2n - 2 is a no-instance. in3dm_normalize requires this filter.
std::optional<TrivialNo> rn3dm_range_filter(const Rn3dmInstance& instance);

// T = {sigma - i : i in [n]} listed for i = 1..n. Valid input has sigma >= n + 2, so every t > 0.
In3dmInstance rn3dm_to_in3dm(const Rn3dmInstance& src);
In3dmMatching rn3dm_solution_to_in3dm(const Rn3dmInstance& src, const Rn3dmMatching& m);
Rn3dmMatching in3dm_solution_to_rn3dm(const Rn3dmInstance& src, const In3dmMatching& m);

struct NormalizedIn3dm {
    In3dmInstance instance;
    std::size_t eliminated = 0; // small targets discharged against min(A), b = 1
    Value shift = 0;            // added to every a and t after elimination
};

bool satisfies_normal_form(const In3dmInstance& instance);

// Small-target elimination, the trivial-no filter, then a shift to min(A) = n.
std::variant<NormalizedIn3dm, TrivialNo> in3dm_normalize(const In3dmInstance& src);

// D* = A plus 3n copies of 4n, positions 1..4n, targets T plus 5n+1..8n.
pm::Instance in3dm_to_pm(const In3dmInstance& src);
pm::Matching in3dm_solution_to_pm(const In3dmInstance& src, const In3dmMatching& m);

pm::Instance pm_shift(const pm::Instance& src, Value c);

struct TwoVisitsGadget {
    KVisitsInstance instance;
    bool shifted_to_odd = false;
    std::size_t small_count = 0;
    std::size_t large_count = 0;
};

// Requires consecutive A and every target above max(A).
std::variant<TwoVisitsGadget, TrivialNo> pm_to_two_visits(const pm::Instance& src);

// g_ij = d_i for j <= 2 and 3n beyond.
VarKVisitsInstance two_visits_to_var_k(const KVisitsInstance& src, int k_target);
// Appends k_target - 2 passes of 1..n.
Schedule extend_schedule(const Schedule& two_visits_schedule, int n, int k_target);

ThresholdPinwheelInstance two_visits_to_threshold_pws(const KVisitsInstance& src);

} // namespace kvisits::reductions
