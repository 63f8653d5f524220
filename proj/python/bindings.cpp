#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "ramsey/cli.hpp"
#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"
#include "ramsey/json_io.hpp"
#include "ramsey/reports.hpp"

namespace py = pybind11;
using namespace ramsey;

namespace {

// Parent arrays cross the boundary as lists with None at the root.
py::list parents_to_py(const std::vector<Vertex>& parents)
{
    py::list out;
    for (Vertex p : parents)
        out.append(p == kNone ? py::object(py::none()) : py::object(py::int_(p)));
    return out;
}

OrderedTree tree_from_py(const std::vector<std::optional<Vertex>>& parents)
{
    std::vector<Vertex> raw;
    raw.reserve(parents.size());
    for (const auto& p : parents)
        raw.push_back(p.value_or(kNone));
    return OrderedTree::from_parents(std::move(raw));
}

}  // namespace

PYBIND11_MODULE(_ramsey, m)
{
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "RamseyError", PyExc_ValueError);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release nogil;
                code = parse_and_dispatch(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line with these arguments; returns (exit_code, stdout, stderr).");

    m.def(
        "run_command",
        [](const std::string& command, const std::string& params, std::optional<std::uint64_t> max_nodes, int jobs,
           bool normalize) {
            RunOptions opts;
            if (max_nodes)
                opts.max_nodes = *max_nodes;
            opts.jobs = jobs;
            opts.normalize = normalize;
            Outcome o;
            {
                py::gil_scoped_release nogil;
                o = run_command(command, parse_json(params), opts);
            }
            return py::make_tuple(o.exit_code, dump_json(o.report));
        },
        py::arg("command"), py::arg("params"), py::arg("max_nodes") = py::none(), py::arg("jobs") = 1,
        py::arg("normalize") = false, "params and the returned report are JSON text.");

    m.def("command_names", &command_names);
    m.def("schema_versions", [] { return schema_versions().dump(); });

    m.def("enum_trees", [](int n) {
        py::list out;
        for (const auto& t : enum_trees(n))
            out.append(parents_to_py(t.parents()));
        return out;
    });
    m.def(
        "count_rigid_surjections",
        [](const std::vector<std::optional<Vertex>>& dom, const std::vector<std::optional<Vertex>>& cod, bool sealed) {
            return count_rigid_surjections(tree_from_py(dom), tree_from_py(cod), {.sealed = sealed});
        },
        py::arg("dom"), py::arg("cod"), py::arg("sealed") = false);
    m.def("count_embeddings", [](const std::vector<std::optional<Vertex>>& s, const std::vector<std::optional<Vertex>>& t) {
        return count_embeddings(tree_from_py(s), tree_from_py(t));
    });
    m.def("stirling2", &stirling2);
    m.def("catalan", &catalan);
}
