// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/mr_engine/scenario.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace mtsc::mr_engine
{
using nlohmann::json;

std::string_view to_string(MrId id)
{
    switch (id)
    {
    case MrId::MR1_1:
        return "MR1.1";
    case MrId::MR1_2:
        return "MR1.2";
    case MrId::MR2_1:
        return "MR2.1";
    case MrId::MR2_2:
        return "MR2.2";
    case MrId::MR2_3:
        return "MR2.3";
    }
    return "?";
}

std::optional<MrId> parse_mr(std::string_view text)
{
    for (const auto id : kAllMrs)
        if (to_string(id) == text)
            return id;
    return std::nullopt;
}

namespace
{
std::string scalar(const json& v, const std::string& where)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_unsigned())
        return std::to_string(v.get<std::uint64_t>());
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    throw ScenarioError(where + ": expected a string, non-negative integer or boolean");
}

TxTemplate tx_template(const json& j, const std::string& where, bool is_target)
{
    if (!j.is_object())
        throw ScenarioError(where + ": expected an object");
    TxTemplate t;
    for (const auto& [key, v] : j.items())
    {
        if (key == "actor" && !is_target)
            t.actor = scalar(v, where + ".actor");
        else if (key == "callee")
            t.callee = scalar(v, where + ".callee");
        else if (key == "function")
        {
            if (!v.is_null())
                t.function = scalar(v, where + ".function");
        }
        else if (key == "args")
        {
            if (!v.is_array())
                throw ScenarioError(where + ".args: expected an array");
            for (std::size_t i = 0; i < v.size(); ++i)
                t.args.push_back(scalar(v[i], where + ".args[" + std::to_string(i) + "]"));
        }
        else if (key == "value")
            t.value = scalar(v, where + ".value");
        else
            throw ScenarioError(where + ": unknown field '" + key + "'");
    }
    if (t.callee.empty())
        throw ScenarioError(where + ": missing callee");
    if (is_target && !t.function)
        throw ScenarioError(where + ": missing function");
    return t;
}
}  // namespace

Scenario parse_scenario(std::string_view json_text, std::filesystem::path base_dir, std::string id)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw ScenarioError(std::string{"malformed scenario JSON: "} + e.what());
    }
    if (!doc.is_object())
        throw ScenarioError("scenario must be a JSON object");

    Scenario s;
    s.id = std::move(id);
    s.base_dir = std::move(base_dir);
    bool has_target = false;
    for (const auto& [key, v] : doc.items())
    {
        if (key == "schema")
        {
            if (v != "scenario-v1")
                throw ScenarioError("unsupported schema " + v.dump());
        }
        else if (key == "sources")
        {
            if (!v.is_array() || v.empty())
                throw ScenarioError("sources: expected a non-empty array");
            for (const auto& src : v)
                s.sources.push_back(scalar(src, "sources"));
        }
        else if (key == "balances")
        {
            if (!v.is_object())
                throw ScenarioError("balances: expected an object");
            for (const auto& [role, amount] : v.items())
                s.balances[role] = scalar(amount, "balances." + role);
        }
        else if (key == "setup")
        {
            if (!v.is_array())
                throw ScenarioError("setup: expected an array");
            for (std::size_t i = 0; i < v.size(); ++i)
                s.setup.push_back(tx_template(v[i], "setup[" + std::to_string(i) + "]", false));
        }
        else if (key == "target")
        {
            s.target = tx_template(v, "target", true);
            has_target = true;
        }
        else if (key == "mrs")
        {
            if (!v.is_array())
                throw ScenarioError("mrs: expected an array");
            s.mrs.clear();
            for (const auto& m : v)
            {
                const auto id = parse_mr(scalar(m, "mrs"));
                if (!id)
                    throw ScenarioError("mrs: unknown relation " + m.dump());
                s.mrs.push_back(*id);
            }
        }
        else if (key == "mr1_actors")
        {
            if (!v.is_array())
                throw ScenarioError("mr1_actors: expected an array");
            s.mr1_actors.clear();
            for (const auto& a : v)
            {
                const auto kind = agents::parse_agent_kind(scalar(a, "mr1_actors"));
                if (!kind)
                    throw ScenarioError("mr1_actors: unknown actor kind " + a.dump());
                s.mr1_actors.push_back(*kind);
            }
        }
        else
            throw ScenarioError("unknown field '" + key + "'");
    }
    if (s.sources.empty())
        throw ScenarioError("missing sources");
    if (!has_target)
        throw ScenarioError("missing target");
    return s;
}

std::string scenario_id(const std::filesystem::path& path)
{
    std::string name = path.filename().string();
    constexpr std::string_view suffix = ".scenario.json";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return path.stem().string();
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw ScenarioError("cannot read scenario " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.parent_path(), scenario_id(path));
}

}  // namespace mtsc::mr_engine
