// kvisits: command-line front end for the k-Visits solver, oracles and reductions.
//
// Exit codes are part of the interface: 0 feasible/ok, 1 infeasible, 2 usage or parse
// error, 3 oracle budget exhausted.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "kvisits/generate.hpp"
#include "kvisits/io.hpp"
#include "kvisits/oracle.hpp"
#include "kvisits/reductions.hpp"
#include "kvisits/solver.hpp"
#include "kvisits/verify.hpp"

namespace {

using namespace kvisits;
namespace fs = std::filesystem;

enum Exit : int { Ok = 0, No = 1, Usage = 2, Exhausted = 3 };

constexpr const char* tool_version = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class Range>
std::string joined(const Range& r, char sep = ' ') {
    std::ostringstream os;
    bool first = true;
    for (const auto& v : r) {
        if (!first)
            os << sep;
        os << v;
        first = false;
    }
    return os.str();
}

std::uint64_t budget_or_env(std::optional<std::uint64_t> flag) {
    if (flag)
        return *flag;
    if (const char* env = std::getenv("KVISITS_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("KVISITS_BUDGET is not a count: ") + env);
        }
    }
    return oracle::default_budget;
}

// Runs fn(i) for i in [0, count) on `jobs` threads. Results land in their own slots, so
// the caller prints them in index order regardless of scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
    std::string file;
    std::optional<int> k;
    bool emit_schedule = false;
    bool trace = false;
};

int cmd_solve(const SolveArgs& args) {
    const KVisitsInstance parsed = io::parse_kvisits(io::read_file(args.file));
    const int k = args.k.value_or(parsed.k());
    if (k >= 3)
        throw UsageError("no polynomial solver for k >= 3; use 'kvisits oracle' for small instances");
    if (k < 1)
        throw UsageError("--k must be positive");
    const KVisitsInstance instance(parsed.deadlines(), k);

    const SolveResult r = k == 1 ? solve_one_visit(instance) : solve_two_visits(instance);
    std::cout << to_string(r.verdict) << '\n';
    if (!r.feasible())
        std::cout << "reason\t" << to_string(r.reason) << '\n';
    if (r.failed_cluster)
        std::cout << "failed_cluster\t" << *r.failed_cluster + 1 << '\n';
    if (args.trace && !r.trace.empty()) {
        std::cout << "cluster\tfirst\tlast\tsize\ttargets\tmethod\tfeasible\n";
        for (std::size_t c = 0; c < r.trace.size(); ++c) {
            const ClusterTrace& t = r.trace[c];
            std::cout << c + 1 << '\t' << t.cluster.begin + 1 << '\t' << t.cluster.end << '\t' << t.cluster.size()
                      << '\t' << joined(t.targets, ',') << '\t' << pm::to_string(t.method) << '\t'
                      << (t.feasible ? 1 : 0) << '\n';
        }
    }
    if (args.emit_schedule && r.schedule)
        std::cout << io::to_text(*r.schedule);
    return r.feasible() ? Ok : No;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& instance_file, const std::string& schedule_file) {
    const io::Document doc = io::parse(io::read_file(instance_file));
    const Schedule schedule = io::parse_schedule(io::read_file(schedule_file));
    Verdict v;
    if (const auto* kv = std::get_if<KVisitsInstance>(&doc))
        v = verify_kvisits(*kv, schedule);
    else if (const auto* var = std::get_if<VarKVisitsInstance>(&doc))
        v = verify_var_kvisits(*var, schedule);
    else
        throw UsageError("verify expects a kvisits or varkvisits instance, got '" + std::string(io::tag_of(doc)) + "'");
    std::cout << describe(v) << '\n';
    return v.ok() ? Ok : No;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const std::string& file) {
    const KVisitsInstance instance = io::parse_kvisits(io::read_file(file));
    const DiscretizedSequence disc = discretize(instance);
    std::cout << "n\t" << instance.n() << "\nk\t" << instance.k() << '\n';
    std::cout << "deadlines\t" << joined(instance.deadlines()) << '\n';
    std::cout << "discretized\t" << joined(disc.values) << '\n';
    if (disc.all_positive()) {
        try {
            const ClusterDecomposition cd = decompose(disc);
            std::cout << "clusters\t" << cd.clusters.size() << '\n';
            for (const Cluster& c : cd.clusters)
                std::cout << "cluster\t" << disc.values[c.begin] << ".." << disc.values[c.end - 1] << '\n';
            std::cout << "gaps\t" << joined(cd.gaps) << '\n';
        } catch (const Error& e) {
            // Values above 2n (untrimmed large deadlines) have no decomposition.
            std::cout << "clusters\tnone\t" << e.what() << '\n';
        }
    } else {
        std::cout << "clusters\tnone\tnon-positive discretized value\n";
    }
    const Rational rho = density(instance);
    std::cout << "density\t" << numerator(rho) << '/' << denominator(rho) << '\n';
    std::cout << "density_above_5_6\t" << (density_at_most_five_sixths(instance) ? 0 : 1) << '\n';
    return Ok;
}

// ---- oracle ----------------------------------------------------------------

int exit_for(oracle::Outcome o) {
    switch (o) {
    case oracle::Outcome::Feasible: return Ok;
    case oracle::Outcome::Infeasible: return No;
    case oracle::Outcome::BudgetExhausted: return Exhausted;
    }
    return Usage;
}

int cmd_oracle(const std::string& file, std::optional<std::uint64_t> budget_flag) {
    const oracle::SearchBudget budget{budget_or_env(budget_flag)};
    const io::Document doc = io::parse(io::read_file(file));
    return std::visit(
        [&](const auto& inst) -> int {
            using T = std::decay_t<decltype(inst)>;
            if constexpr (std::is_same_v<T, KVisitsInstance> || std::is_same_v<T, VarKVisitsInstance>) {
                oracle::ScheduleAnswer a;
                if constexpr (std::is_same_v<T, KVisitsInstance>)
                    a = oracle::oracle_kvisits(inst, {budget, {}});
                else
                    a = oracle::oracle_var_kvisits(inst, {budget, {}});
                std::cout << oracle::to_string(a.outcome) << "\nnodes_expanded\t" << a.nodes_expanded << '\n';
                if (a.schedule)
                    std::cout << io::to_text(*a.schedule);
                return exit_for(a.outcome);
            } else if constexpr (std::is_same_v<T, pm::Instance>) {
                const oracle::PmAnswer a = oracle::oracle_pm(inst, budget);
                std::cout << oracle::to_string(a.outcome) << '\n';
                if (a.matching) {
                    std::cout << "d\ta\tt\n";
                    for (const pm::Triple& tr : a.matching->triples)
                        std::cout << inst.D[tr.d] << '\t' << inst.A[tr.a] << '\t' << inst.T[tr.t] << '\n';
                }
                return exit_for(a.outcome);
            } else if constexpr (std::is_same_v<T, reductions::Rn3dmInstance>) {
                const oracle::Rn3dmAnswer a = oracle::oracle_rn3dm(inst, budget);
                std::cout << oracle::to_string(a.outcome) << '\n';
                if (a.matching) {
                    std::cout << "a\tb\tc\n";
                    for (const auto& tr : *a.matching)
                        std::cout << inst.A[tr.a] << '\t' << tr.b << '\t' << tr.c << '\n';
                }
                return exit_for(a.outcome);
            } else if constexpr (std::is_same_v<T, reductions::In3dmInstance>) {
                const oracle::In3dmAnswer a = oracle::oracle_in3dm(inst, budget);
                std::cout << oracle::to_string(a.outcome) << '\n';
                if (a.matching) {
                    std::cout << "a\tb\tt\n";
                    for (const auto& tr : *a.matching)
                        std::cout << inst.A[tr.a] << '\t' << tr.b << '\t' << inst.T[tr.t] << '\n';
                }
                return exit_for(a.outcome);
            } else {
                throw UsageError("no oracle for '" + std::string(io::tag_of(doc)) + "' documents");
            }
        },
        doc);
}

// ---- reduce ----------------------------------------------------------------

// Stage order of the reduction chain. Each stage consumes the previous one's output.
const std::vector<std::string> stages = {"rn3dm", "in3dm", "in3dm-normal", "pm", "pm-shifted", "2visits", "vark", "tpws"};

std::size_t stage_index(const std::string& name) {
    const auto it = std::find(stages.begin(), stages.end(), name);
    if (it == stages.end())
        throw UsageError("unknown stage '" + name + "'; stages: " + joined(stages, ','));
    return static_cast<std::size_t>(it - stages.begin());
}

struct ReduceArgs {
    std::string file;
    std::string from;
    std::string to = "2visits";
    std::string out_dir = ".";
    int k_target = 3;
};

int cmd_reduce(const ReduceArgs& args) {
    io::Document doc = io::parse(io::read_file(args.file));
    const std::string tag(io::tag_of(doc));
    std::string from = args.from;
    if (from.empty())
        from = tag == "kvisits" ? "2visits" : tag;
    std::size_t at = stage_index(from);
    const std::size_t to = stage_index(args.to);
    if (to < at)
        throw UsageError("--to stage precedes --from stage");
    if (at >= stage_index("vark"))
        throw UsageError("vark and tpws are terminal stages");
    if (args.k_target < 2)
        throw UsageError("--k-target must be at least 2");

    fs::create_directories(args.out_dir);
    std::cout << "step\tstage\tfile\tsize\tnote\n";
    int step = 0;
    auto emit = [&](const std::string& stage, const io::Document& d, std::size_t size, const std::string& note) {
        std::ostringstream name;
        name << std::setw(2) << std::setfill('0') << step << '-' << stage << ".txt";
        const fs::path path = fs::path(args.out_dir) / name.str();
        io::write_file(path.string(), io::to_text(d));
        std::cout << step << '\t' << stage << '\t' << path.string() << '\t' << size << '\t' << note << '\n';
        ++step;
    };
    auto trivial_no = [&](const std::string& stage, const reductions::TrivialNo& t) {
        std::cout << step << '\t' << stage << "\t-\t0\ttrivial-no: " << t.reason << '\n';
        return No;
    };

    const std::size_t input_size = std::visit(
        [](const auto& d) -> std::size_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Schedule>)
                return d.length();
            else if constexpr (std::is_same_v<T, pm::Instance>)
                return d.size();
            else
                return static_cast<std::size_t>(d.n());
        },
        doc);
    emit(stages[at], doc, input_size, "input");
    while (at < to) {
        const std::string next = stages[at + 1];
        if (next == "in3dm") {
            const auto& src = std::get<reductions::Rn3dmInstance>(doc);
            if (const auto t = reductions::rn3dm_range_filter(src))
                return trivial_no(next, *t);
            const auto out = reductions::rn3dm_to_in3dm(src);
            doc = out;
            emit(next, doc, out.n(), "");
        } else if (next == "in3dm-normal") {
            const auto r = reductions::in3dm_normalize(std::get<reductions::In3dmInstance>(doc));
            if (const auto* t = std::get_if<reductions::TrivialNo>(&r))
                return trivial_no(next, *t);
            const auto& norm = std::get<reductions::NormalizedIn3dm>(r);
            if (norm.instance.n() == 0) {
                std::cout << step << '\t' << next << "\t-\t0\ttrivial-yes: every target eliminated\n";
                return Ok;
            }
            doc = norm.instance;
            emit(next, doc, norm.instance.n(),
                 "eliminated=" + std::to_string(norm.eliminated) + " shift=" + std::to_string(norm.shift));
        } else if (next == "pm") {
            const auto out = reductions::in3dm_to_pm(std::get<reductions::In3dmInstance>(doc));
            doc = out;
            emit(next, doc, out.size(), "");
        } else if (next == "pm-shifted") {
            const auto& src = std::get<pm::Instance>(doc);
            const reductions::Value c = src.A.back();
            const auto out = reductions::pm_shift(src, c);
            doc = out;
            emit(next, doc, out.size(), "c=" + std::to_string(c));
        } else if (next == "2visits") {
            const auto r = reductions::pm_to_two_visits(std::get<pm::Instance>(doc));
            if (const auto* t = std::get_if<reductions::TrivialNo>(&r))
                return trivial_no(next, *t);
            const auto& g = std::get<reductions::TwoVisitsGadget>(r);
            doc = g.instance;
            emit(next, doc, static_cast<std::size_t>(g.instance.n()),
                 "small=" + std::to_string(g.small_count) + " large=" + std::to_string(g.large_count) +
                     (g.shifted_to_odd ? " shifted_to_odd" : ""));
        } else if (next == "vark") {
            const auto out = reductions::two_visits_to_var_k(std::get<KVisitsInstance>(doc), args.k_target);
            // doc stays on the 2visits instance; tpws is derived from it too.
            emit(next, out, static_cast<std::size_t>(out.n()), "k=" + std::to_string(args.k_target));
        } else if (next == "tpws") {
            const auto out = reductions::two_visits_to_threshold_pws(std::get<KVisitsInstance>(doc));
            emit(next, out, out.n(), "");
        }
        ++at;
    }
    return Ok;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string family = "kvisits";
    int n = 4;
    std::optional<std::int64_t> max_deadline;
    std::uint64_t seed = 1;
    int count = 1;
    int k = 2;
    bool label = false;
    bool allow_oversize = false;
    unsigned jobs = 1;
    std::optional<std::uint64_t> budget;
    std::string out_dir;
};

int cmd_gen(const GenArgs& args) {
    if (args.n < 1 || args.count < 0)
        throw UsageError("--n must be positive and --count non-negative");
    gen::Rng rng(args.seed);
    std::vector<io::Document> docs;
    docs.reserve(static_cast<std::size_t>(args.count));

    // Generation is sequential so a seed pins the corpus; only labelling runs in parallel.
    if (args.family == "kvisits") {
        const std::int64_t cap = 2 * static_cast<std::int64_t>(args.n);
        const std::int64_t max_d = args.max_deadline.value_or(cap);
        if (max_d > cap && !args.allow_oversize)
            throw UsageError("--max-deadline above 2n needs --allow-oversize");
        for (int i = 0; i < args.count; ++i)
            docs.emplace_back(gen::random_kvisits(rng, args.n, max_d, args.k));
    } else if (args.family == "pm") {
        const std::int64_t max_v = args.max_deadline.value_or(2 * static_cast<std::int64_t>(args.n));
        for (int i = 0; i < args.count; ++i)
            docs.emplace_back(gen::random_pm(rng, args.n, max_v));
    } else if (args.family == "rn3dm") {
        const std::int64_t max_v = args.max_deadline.value_or(12);
        // Alternate planted yes-instances and perturbed ones for a mixed corpus.
        for (int i = 0; i < args.count; ++i)
            docs.emplace_back(i % 2 == 0 ? gen::random_rn3dm_yes(rng, args.n, max_v)
                                         : gen::random_rn3dm_perturbed(rng, args.n, max_v));
    } else {
        throw UsageError("unknown --family '" + args.family + "' (kvisits, pm, rn3dm)");
    }

    std::vector<oracle::Outcome> labels(docs.size(), oracle::Outcome::BudgetExhausted);
    if (args.label) {
        const oracle::SearchBudget budget{budget_or_env(args.budget)};
        parallel_for(docs.size(), args.jobs, [&](std::size_t i) {
            labels[i] = std::visit(
                [&](const auto& inst) {
                    using T = std::decay_t<decltype(inst)>;
                    if constexpr (std::is_same_v<T, KVisitsInstance>)
                        return oracle::oracle_kvisits(inst, {budget, {}}).outcome;
                    else if constexpr (std::is_same_v<T, pm::Instance>)
                        return oracle::oracle_pm(inst, budget).outcome;
                    else if constexpr (std::is_same_v<T, reductions::Rn3dmInstance>)
                        return oracle::oracle_rn3dm(inst, budget).outcome;
                    else
                        return oracle::Outcome::BudgetExhausted;
                },
                docs[i]);
        });
    }

    bool exhausted = false;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        std::string text = io::to_text(docs[i]);
        if (args.label) {
            text = "# oracle " + std::string(oracle::to_string(labels[i])) + '\n' + text;
            exhausted = exhausted || labels[i] == oracle::Outcome::BudgetExhausted;
        }
        if (args.out_dir.empty()) {
            std::cout << text;
        } else {
            fs::create_directories(args.out_dir);
            std::ostringstream name;
            name << args.family << '-' << std::setw(5) << std::setfill('0') << i << ".txt";
            io::write_file((fs::path(args.out_dir) / name.str()).string(), text);
        }
    }
    return exhausted ? Exhausted : Ok;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string suite;
    std::uint64_t seed = 1;
    int count = 2000;
    unsigned jobs = 1;
    std::optional<std::uint64_t> budget;
    std::vector<int> sizes = {62'500, 125'000, 250'000, 500'000, 1'000'000};
    int reps = 3;
    int max_cluster = 10;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int bench_oracle_agreement(const BenchArgs& args) {
    gen::Rng rng(args.seed);
    std::vector<KVisitsInstance> corpus;
    for (int i = 0; i < args.count; ++i) {
        const int n = static_cast<int>(rng.uniform(1, 8));
        corpus.push_back(gen::random_kvisits(rng, n, 2 * n, 2));
    }
    const oracle::SearchBudget budget{budget_or_env(args.budget)};
    struct Row {
        Feasibility solver;
        oracle::Outcome oracle;
        bool verified;
        std::uint64_t nodes;
    };
    std::vector<Row> rows(corpus.size());
    parallel_for(corpus.size(), args.jobs, [&](std::size_t i) {
        const SolveResult s = solve_two_visits(corpus[i]);
        const oracle::ScheduleAnswer o = oracle::oracle_kvisits(corpus[i], {budget, {}});
        rows[i] = {s.verdict, o.outcome, !s.schedule || verify_kvisits(corpus[i], *s.schedule).ok(), o.nodes_expanded};
    });

    std::cout << "id\tn\tdeadlines\tsolver\toracle\tagree\toracle_nodes\n";
    bool all_agree = true, exhausted = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        const bool decided = r.oracle != oracle::Outcome::BudgetExhausted;
        const bool agree = decided && r.verified && (r.solver == Feasibility::Feasible) == (r.oracle == oracle::Outcome::Feasible);
        all_agree = all_agree && (agree || !decided);
        exhausted = exhausted || !decided;
        std::cout << i << '\t' << corpus[i].n() << '\t' << joined(corpus[i].deadlines(), ',') << '\t'
                  << to_string(r.solver) << '\t' << oracle::to_string(r.oracle) << '\t' << (agree ? 1 : 0) << '\t'
                  << r.nodes << '\n';
    }
    if (!all_agree)
        return No;
    return exhausted ? Exhausted : Ok;
}

int bench_distinct_scaling(const BenchArgs& args) {
    std::cout << "n\tseconds\tns_per_node\tverdict\n";
    for (const int n : args.sizes) {
        gen::Rng rng(args.seed + static_cast<std::uint64_t>(n));
        const KVisitsInstance inst = gen::random_distinct_kvisits(rng, n, std::max(1, n / 2), 2 * static_cast<Deadline>(n));
        double best = 0;
        Feasibility verdict = Feasibility::Infeasible;
        for (int r = 0; r < std::max(1, args.reps); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            verdict = solve_two_visits(inst).verdict;
            const double s = seconds_since(t0);
            best = r == 0 ? s : std::min(best, s);
        }
        std::cout << n << '\t' << std::fixed << std::setprecision(6) << best << '\t' << std::setprecision(1)
                  << best * 1e9 / n << '\t' << to_string(verdict) << '\n';
        std::cout.unsetf(std::ios::floatfield);
    }
    return Ok;
}

// Single-cluster instances: the last deadline is pinned to the cluster size c, so the
// discretized sequence is exactly 1..c and all of the work lands in one exact PM solve.
int bench_cluster_fpt(const BenchArgs& args) {
    gen::Rng rng(args.seed);
    const int per_size = std::max(1, args.count / std::max(1, args.max_cluster));
    std::cout << "cluster_size\tinstances\tfeasible\tseconds_total\tseconds_max\n";
    for (int c = 2; c <= args.max_cluster; ++c) {
        int made = 0, feasible = 0;
        double total = 0, worst = 0;
        while (made < per_size) {
            std::vector<Deadline> d(static_cast<std::size_t>(c));
            for (Deadline& x : d)
                x = rng.uniform(1, c);
            d.back() = c;
            std::sort(d.begin(), d.end());
            const KVisitsInstance inst(std::move(d), 2);
            if (!discretize(inst).all_positive())
                continue;
            ++made;
            const auto t0 = std::chrono::steady_clock::now();
            const SolveResult r = solve_two_visits(inst, {pm::Method::Exact});
            const double s = seconds_since(t0);
            total += s;
            worst = std::max(worst, s);
            feasible += r.feasible() ? 1 : 0;
        }
        std::cout << c << '\t' << made << '\t' << feasible << '\t' << std::fixed << std::setprecision(6) << total
                  << '\t' << worst << '\n';
        std::cout.unsetf(std::ios::floatfield);
    }
    return Ok;
}

int cmd_bench(const BenchArgs& args) {
    if (args.suite == "oracle-agreement")
        return bench_oracle_agreement(args);
    if (args.suite == "distinct-scaling")
        return bench_distinct_scaling(args);
    if (args.suite == "cluster-fpt")
        return bench_cluster_fpt(args);
    throw UsageError("unknown --suite '" + args.suite + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-Visits scheduling: solver, verifier, oracles and reductions"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "Print tool and file format versions");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Decide a 1- or 2-Visits instance");
    solve->add_option("instance", solve_args.file, "kvisits instance file")->required();
    solve->add_option("--k", solve_args.k, "Override the instance's k (1 or 2)");
    solve->add_flag("--emit-schedule", solve_args.emit_schedule, "Print the witness schedule");
    solve->add_flag("--trace", solve_args.trace, "Print the per-cluster Position Matching table");

    std::string verify_instance, verify_schedule;
    auto* verify = app.add_subcommand("verify", "Check a schedule against an instance");
    verify->add_option("instance", verify_instance, "kvisits or varkvisits file")->required();
    verify->add_option("schedule", verify_schedule, "schedule file")->required();

    std::string analyze_file;
    auto* analyze = app.add_subcommand("analyze", "Discretized sequence, clusters, gaps and density");
    analyze->add_option("instance", analyze_file, "kvisits instance file")->required();

    std::string oracle_file;
    std::optional<std::uint64_t> oracle_budget;
    auto* orc = app.add_subcommand("oracle", "Brute-force decision for any instance type");
    orc->add_option("instance", oracle_file, "instance file")->required();
    orc->add_option("--budget", oracle_budget, "Node-expansion budget (default: $KVISITS_BUDGET or 50000000)");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "Run the reduction chain and write every intermediate");
    reduce->add_option("source", reduce_args.file, "rn3dm, in3dm, pm or kvisits file")->required();
    reduce->add_option("--from", reduce_args.from, "Stage of the source (default: from its header)");
    reduce->add_option("--to", reduce_args.to, "Last stage: " + joined(stages, ','))->capture_default_str();
    reduce->add_option("--out-dir", reduce_args.out_dir, "Directory for the intermediate files")->capture_default_str();
    reduce->add_option("--k-target", reduce_args.k_target, "Visits per node for the vark stage")->capture_default_str();

    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random corpus");
    gen_cmd->add_option("--family", gen_args.family, "kvisits, pm or rn3dm")->capture_default_str();
    gen_cmd->add_option("--n", gen_args.n, "Instance size")->capture_default_str();
    gen_cmd->add_option("--max-deadline", gen_args.max_deadline, "Largest value drawn (default 2n; 12 for rn3dm)");
    gen_cmd->add_option("--seed", gen_args.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--count", gen_args.count, "Number of instances")->capture_default_str();
    gen_cmd->add_option("--k", gen_args.k, "Visits per node (kvisits family)")->capture_default_str();
    gen_cmd->add_flag("--label-with-oracle", gen_args.label, "Prefix each instance with its oracle verdict");
    gen_cmd->add_flag("--allow-oversize", gen_args.allow_oversize, "Allow deadlines above 2n");
    gen_cmd->add_option("--jobs", gen_args.jobs, "Worker threads for labelling")->capture_default_str();
    gen_cmd->add_option("--budget", gen_args.budget, "Oracle budget per instance");
    gen_cmd->add_option("--out-dir", gen_args.out_dir, "Write one file per instance instead of stdout");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Benchmark tables as TSV");
    bench->add_option("--suite", bench_args.suite, "oracle-agreement, distinct-scaling or cluster-fpt")->required();
    bench->add_option("--seed", bench_args.seed, "RNG seed")->capture_default_str();
    bench->add_option("--count", bench_args.count, "Instances (oracle-agreement, cluster-fpt)")->capture_default_str();
    bench->add_option("--jobs", bench_args.jobs, "Worker threads (oracle-agreement)")->capture_default_str();
    bench->add_option("--budget", bench_args.budget, "Oracle budget per instance");
    bench->add_option("--sizes", bench_args.sizes, "Instance sizes (distinct-scaling)")->delimiter(',');
    bench->add_option("--reps", bench_args.reps, "Repetitions, best time kept (distinct-scaling)")->capture_default_str();
    bench->add_option("--max-cluster", bench_args.max_cluster, "Largest cluster size (cluster-fpt)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (show_version) {
            std::cout << "kvisits " << tool_version << "\nformats\tkvisits " << io::format_version
                      << "\tvarkvisits " << io::format_version << "\tschedule " << io::format_version << "\tpm "
                      << io::format_version << "\trn3dm " << io::format_version << "\tin3dm " << io::format_version
                      << "\ttpws " << io::format_version << '\n';
            return Ok;
        }
        if (*solve)
            return cmd_solve(solve_args);
        if (*verify)
            return cmd_verify(verify_instance, verify_schedule);
        if (*analyze)
            return cmd_analyze(analyze_file);
        if (*orc)
            return cmd_oracle(oracle_file, oracle_budget);
        if (*reduce)
            return cmd_reduce(reduce_args);
        if (*gen_cmd)
            return cmd_gen(gen_args);
        if (*bench)
            return cmd_bench(bench_args);
        std::cout << app.help();
        return Usage;
    } catch (const UsageError& e) {
        std::cerr << "kvisits: " << e.what() << '\n';
        return Usage;
    } catch (const Error& e) {
        std::cerr << "kvisits: " << to_string(e.code()) << ": " << e.what() << '\n';
        return Usage;
    } catch (const std::bad_variant_access&) {
        std::cerr << "kvisits: source document does not match the --from stage\n";
        return Usage;
    }
}
