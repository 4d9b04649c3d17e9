#include <pybind11/gil_safe_call_once.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kvisits/instances.hpp"
#include "kvisits/io.hpp"
#include "kvisits/oracle.hpp"
#include "kvisits/pm.hpp"
#include "kvisits/reductions.hpp"
#include "kvisits/solver.hpp"
#include "kvisits/verify.hpp"

namespace py = pybind11;
using namespace kvisits;

namespace {

std::string str(std::string_view s) { return std::string(s); }

py::object fraction(const Rational& r) {
    const py::object Fraction = py::module_::import("fractions").attr("Fraction");
    const py::object integer = py::module_::import("builtins").attr("int");
    return Fraction(integer(numerator(r).str()), integer(denominator(r).str()));
}

std::optional<std::vector<NodeIndex>> entries(const std::optional<Schedule>& s) {
    if (!s)
        return std::nullopt;
    return s->entries;
}

py::list triples(const pm::Matching& m) {
    py::list out;
    for (const auto& t : m.triples)
        out.append(py::make_tuple(t.d, t.a, t.t));
    return out;
}

pm::Method method_named(const std::string& name) {
    for (const auto m : {pm::Method::SingleValue, pm::Method::TwoValues, pm::Method::Distinct, pm::Method::Exact})
        if (pm::to_string(m) == name)
            return m;
    throw py::value_error("unknown method " + name);
}

py::dict solve_impl(const KVisitsInstance& instance, std::optional<std::string> force_method) {
    SolveResult r;
    if (instance.k() == 1) {
        r = solve_one_visit(instance);
    } else if (instance.k() == 2) {
        TwoVisitsOptions options;
        if (force_method)
            options.force_method = method_named(*force_method);
        r = solve_two_visits(instance, options);
    } else {
        throw py::value_error("no polynomial solver for k >= 3; use oracle()");
    }
    py::list trace;
    for (const auto& c : r.trace)
        trace.append(py::dict(py::arg("begin") = c.cluster.begin, py::arg("end") = c.cluster.end,
                              py::arg("targets") = c.targets, py::arg("method") = str(pm::to_string(c.method)),
                              py::arg("feasible") = c.feasible));
    return py::dict(py::arg("feasible") = r.feasible(), py::arg("schedule") = entries(r.schedule),
                    py::arg("reason") = str(to_string(r.reason)), py::arg("failed_cluster") = r.failed_cluster,
                    py::arg("trace") = trace);
}

py::object verdict_to_py(const Verdict& v) {
    if (v.ok())
        return py::none();
    const Violation& x = *v.violation;
    return py::dict(py::arg("node") = x.node, py::arg("occurrence") = x.occurrence_index,
                    py::arg("position") = x.position, py::arg("allowed_by") = x.allowed_by,
                    py::arg("reason") = str(to_string(x.reason)), py::arg("message") = describe(v));
}

py::dict decompose_impl(const std::vector<Deadline>& deadlines) {
    const ClusterDecomposition dec = decompose(discretize(deadlines));
    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    for (const auto& c : dec.clusters)
        clusters.emplace_back(c.begin, c.end);
    return py::dict(py::arg("clusters") = clusters, py::arg("gaps") = dec.gaps, py::arg("horizon") = dec.horizon);
}

py::dict schedule_answer(const oracle::ScheduleAnswer& a) {
    return py::dict(py::arg("outcome") = str(oracle::to_string(a.outcome)), py::arg("schedule") = entries(a.schedule),
                    py::arg("nodes_expanded") = a.nodes_expanded);
}

py::object from_document(const io::Document& doc) {
    return std::visit(
        [](const auto& d) -> py::object {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Schedule>)
                return py::cast(d.entries);
            else if constexpr (std::is_same_v<T, VarKVisitsInstance>)
                return py::dict(py::arg("rows") = d.rows());
            else if constexpr (std::is_same_v<T, reductions::ThresholdPinwheelInstance>)
                return py::dict(py::arg("d1") = d.d1, py::arg("d2") = d.d2, py::arg("thresholds") = d.thresholds);
            else
                return py::cast(d);
        },
        doc);
}

template <class T>
std::string repr_of(const T& v) {
    std::string text = io::to_text(v);
    while (!text.empty() && text.back() == '\n')
        text.pop_back();
    for (auto& c : text)
        if (c == '\n')
            c = ';';
    return "<" + text + ">";
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "k-Visits solvers, verifiers, oracles and reductions";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::object(py::reinterpret_steal<py::object>(PyErr_NewException("kvisits.Error", PyExc_ValueError, nullptr))); });
    m.attr("Error") = error_type.get_stored();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object type = error_type.get_stored();
            py::object err = type(e.what());
            err.attr("code") = str(to_string(e.code()));
            PyErr_SetObject(type.ptr(), err.ptr());
        }
    });

    py::class_<KVisitsInstance>(m, "KVisits")
        .def(py::init<std::vector<Deadline>, int>(), py::arg("deadlines"), py::arg("k") = 2)
        .def_property_readonly("deadlines", &KVisitsInstance::deadlines)
        .def_property_readonly("k", &KVisitsInstance::k)
        .def_property_readonly("n", &KVisitsInstance::n)
        .def(py::self == py::self)
        .def("__repr__", &repr_of<KVisitsInstance>);

    py::class_<pm::Instance>(m, "PmInstance")
        .def(py::init(&pm::make_instance), py::arg("D"), py::arg("T"))
        .def_readonly("D", &pm::Instance::D)
        .def_readonly("A", &pm::Instance::A)
        .def_readonly("T", &pm::Instance::T)
        .def(py::self == py::self)
        .def("__repr__", &repr_of<pm::Instance>);

    py::class_<reductions::Rn3dmInstance>(m, "Rn3dm")
        .def(py::init([](std::vector<reductions::Value> A, reductions::Value sigma) {
                 reductions::Rn3dmInstance i{std::move(A), sigma};
                 reductions::validate(i);
                 return i;
             }),
             py::arg("A"), py::arg("sigma"))
        .def_readonly("A", &reductions::Rn3dmInstance::A)
        .def_readonly("sigma", &reductions::Rn3dmInstance::sigma)
        .def(py::self == py::self)
        .def("__repr__", &repr_of<reductions::Rn3dmInstance>);

    py::class_<reductions::In3dmInstance>(m, "In3dm")
        .def(py::init([](std::vector<reductions::Value> A, std::vector<reductions::Value> T) {
                 reductions::In3dmInstance i{std::move(A), std::move(T)};
                 reductions::validate(i);
                 return i;
             }),
             py::arg("A"), py::arg("T"))
        .def_readonly("A", &reductions::In3dmInstance::A)
        .def_readonly("T", &reductions::In3dmInstance::T)
        .def(py::self == py::self)
        .def("__repr__", &repr_of<reductions::In3dmInstance>);

    m.def("solve", &solve_impl, py::arg("instance"), py::arg("force_method") = py::none(),
          "Decide k = 1 or k = 2 exactly; returns verdict, schedule and per-cluster trace.");

    m.def(
        "verify",
        [](const KVisitsInstance& i, std::vector<NodeIndex> s) { return verdict_to_py(verify_kvisits(i, Schedule{std::move(s)})); },
        py::arg("instance"), py::arg("schedule"), "None if the schedule is valid, else the earliest violation.");

    m.def(
        "discretize", [](const std::vector<Deadline>& d) { return discretize(d).values; }, py::arg("deadlines"));
    m.def("decompose", &decompose_impl, py::arg("deadlines"));
    m.def(
        "density", [](const KVisitsInstance& i) { return fraction(density(i)); }, py::arg("instance"));
    m.def(
        "analyze",
        [](const KVisitsInstance& i) {
            py::dict out = decompose_impl(i.deadlines());
            out["discretized"] = discretize(i).values;
            out["density"] = fraction(density(i));
            out["density_at_most_five_sixths"] = density_at_most_five_sixths(i);
            return out;
        },
        py::arg("instance"));

    m.def(
        "oracle",
        [](const KVisitsInstance& i, std::uint64_t budget) {
            oracle::ScheduleSearchOptions o;
            o.budget.max_nodes_expanded = budget;
            return schedule_answer(oracle::oracle_kvisits(i, o));
        },
        py::arg("instance"), py::arg("budget") = oracle::default_budget);
    m.def(
        "oracle",
        [](const pm::Instance& i, std::uint64_t budget) {
            const auto a = oracle::oracle_pm(i, {budget});
            return py::dict(py::arg("outcome") = str(oracle::to_string(a.outcome)),
                            py::arg("matching") = a.matching ? py::object(triples(*a.matching)) : py::none());
        },
        py::arg("instance"), py::arg("budget") = oracle::default_budget);
    m.def(
        "oracle",
        [](const reductions::Rn3dmInstance& i, std::uint64_t budget) {
            return str(oracle::to_string(oracle::oracle_rn3dm(i, {budget}).outcome));
        },
        py::arg("instance"), py::arg("budget") = oracle::default_budget);
    m.def(
        "oracle",
        [](const reductions::In3dmInstance& i, std::uint64_t budget) {
            return str(oracle::to_string(oracle::oracle_in3dm(i, {budget}).outcome));
        },
        py::arg("instance"), py::arg("budget") = oracle::default_budget);

    m.def(
        "pm_solve",
        [](const pm::Instance& i, std::optional<std::string> method) -> py::object {
            const auto r = pm::solve(i, method ? method_named(*method) : pm::choose_method(i));
            return r ? py::object(triples(*r)) : py::none();
        },
        py::arg("instance"), py::arg("method") = py::none(), "(d, a, t) index triples, or None if infeasible.");

    m.def(
        "reduce_rn3dm",
        [](const reductions::Rn3dmInstance& src) {
            py::dict out;
            if (const auto t = reductions::rn3dm_range_filter(src)) {
                out["trivial_no"] = t->reason;
                return out;
            }
            const auto in = reductions::rn3dm_to_in3dm(src);
            out["in3dm"] = in;
            const auto norm = reductions::in3dm_normalize(in);
            if (const auto* t = std::get_if<reductions::TrivialNo>(&norm)) {
                out["trivial_no"] = t->reason;
                return out;
            }
            const auto& ni = std::get<reductions::NormalizedIn3dm>(norm).instance;
            out["in3dm_normal"] = ni;
            if (ni.n() == 0) {
                out["trivial_yes"] = true;
                return out;
            }
            const auto p = reductions::in3dm_to_pm(ni);
            out["pm"] = p;
            const auto shifted = reductions::pm_shift(p, p.A.back());
            out["pm_shifted"] = shifted;
            const auto gadget = reductions::pm_to_two_visits(shifted);
            if (const auto* t = std::get_if<reductions::TrivialNo>(&gadget))
                out["trivial_no"] = t->reason;
            else
                out["two_visits"] = std::get<reductions::TwoVisitsGadget>(gadget).instance;
            return out;
        },
        py::arg("instance"), "Every stage of RN3DM -> IN3DM -> normal form -> PM -> shifted PM -> 2-Visits.");

    m.def(
        "parse", [](const std::string& text) { return from_document(io::parse(text)); }, py::arg("text"));
    m.def("to_text", py::overload_cast<const KVisitsInstance&>(&io::to_text));
    m.def("to_text", py::overload_cast<const pm::Instance&>(&io::to_text));
    m.def("to_text", py::overload_cast<const reductions::Rn3dmInstance&>(&io::to_text));
    m.def("to_text", py::overload_cast<const reductions::In3dmInstance&>(&io::to_text));
}
