// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/cli/cli.hpp"
#include "mtsc/minisol/parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mtsc;

namespace
{
py::tuple run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

minisol::SourceUnit parse(const std::string& source)
{
    try
    {
        return minisol::parse(source);
    }
    catch (const minisol::ParseError& e)
    {
        throw py::value_error(std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.message());
    }
}

detector::Counts counts(int tp, int fp, int fn)
{
    detector::Counts c;
    c.tp = tp;
    c.fp = fp;
    c.fn = fn;
    return c;
}
}  // namespace

PYBIND11_MODULE(_mtsc, m)
{
    m.doc() = "Metamorphic testing of smart contracts";

    m.def("run", &run, py::arg("args"),
        "Runs the mtsc command line with the given arguments; returns (exit_code, stdout, stderr).");

    m.def(
        "format_source", [](const std::string& source) { return minisol::print(parse(source)); }, py::arg("source"),
        "Parses MiniSol and prints it in canonical form. Raises ValueError on syntax errors.");

    m.def(
        "validate_source",
        [](const std::string& source) {
            std::vector<py::tuple> out;
            for (const auto& e : minisol::validate(parse(source)))
                out.push_back(py::make_tuple(std::string{minisol::to_string(e.kind)}, e.loc.line, e.loc.column,
                    e.message));
            return out;
        },
        py::arg("source"), "Semantic errors as (kind, line, column, message) tuples.");

    m.def(
        "tpr", [](int tp, int fn) { return counts(tp, 0, fn).tpr(); }, py::arg("tp"), py::arg("fn"));
    m.def(
        "fdr", [](int tp, int fp) { return counts(tp, fp, 0).fdr(); }, py::arg("tp"), py::arg("fp"));
    m.def("format_percent", &detector::format_percent, py::arg("ratio"));
    m.def("default_schedule", [] { return vm::format_schedule(vm::GasSchedule{}); });
}
