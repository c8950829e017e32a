// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/vm/schedule.hpp"

#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

namespace mtsc::vm
{
namespace
{
using Field = Gas GasSchedule::*;

constexpr std::array<std::pair<std::string_view, Field>, 17> kFields{{
    {"base_tx", &GasSchedule::base_tx},
    {"dispatch", &GasSchedule::dispatch},
    {"arith", &GasSchedule::arith},
    {"compare", &GasSchedule::compare},
    {"logic", &GasSchedule::logic},
    {"sload", &GasSchedule::sload},
    {"sstore_set", &GasSchedule::sstore_set},
    {"sstore_reset", &GasSchedule::sstore_reset},
    {"call_base", &GasSchedule::call_base},
    {"value_transfer_surcharge", &GasSchedule::value_transfer_surcharge},
    {"stipend", &GasSchedule::stipend},
    {"emit", &GasSchedule::emit},
    {"require", &GasSchedule::require},
    {"revert", &GasSchedule::revert},
    {"balance_of", &GasSchedule::balance_of},
    {"gasleft", &GasSchedule::gasleft},
    {"block_gas_limit", &GasSchedule::block_gas_limit},
}};

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}
}  // namespace

void check(const GasSchedule& s)
{
    if (s.sstore_set <= s.sstore_reset)
        throw ScheduleError("sstore_set must exceed sstore_reset");
    if (s.base_tx > s.block_gas_limit)
        throw ScheduleError("base_tx exceeds block_gas_limit");
}

GasSchedule parse_schedule(std::string_view text)
{
    GasSchedule s;
    int line_no = 0;
    std::istringstream in{std::string{text}};
    std::string raw;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ScheduleError("line " + std::to_string(line_no) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        Field field = nullptr;
        for (const auto& [name, f] : kFields)
            if (name == key)
                field = f;
        if (!field)
            throw ScheduleError("line " + std::to_string(line_no) + ": unknown key '" + std::string{key} + "'");
        try
        {
            const auto v = parse_u128(value);
            if (v > static_cast<u128>(std::numeric_limits<Gas>::max()))
                throw std::out_of_range("too large");
            s.*field = static_cast<Gas>(v);
        }
        catch (const std::exception&)
        {
            throw ScheduleError("line " + std::to_string(line_no) + ": bad value for '" + std::string{key} + "'");
        }
    }
    check(s);
    return s;
}

GasSchedule load_schedule(const std::string& path)
{
    std::ifstream in{path};
    if (!in)
        throw ScheduleError("cannot read schedule " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schedule(buf.str());
}

std::string format_schedule(const GasSchedule& s)
{
    std::string out;
    for (const auto& [name, f] : kFields)
        out += std::string{name} + " = " + std::to_string(s.*f) + "\n";
    return out;
}

}  // namespace mtsc::vm
