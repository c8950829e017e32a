// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/agents/agents.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtsc::mr_engine
{
using agents::AgentKind;

enum class MrId
{
    MR1_1,
    MR1_2,
    MR2_1,
    MR2_2,
    MR2_3,
};

inline constexpr MrId kAllMrs[] = {MrId::MR1_1, MrId::MR1_2, MrId::MR2_1, MrId::MR2_2, MrId::MR2_3};

std::string_view to_string(MrId id);
std::optional<MrId> parse_mr(std::string_view text);

class ScenarioError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kActorPlaceholder = "$ACTOR";

/// A transaction whose actor, callee and arguments are still symbolic. Values
/// are kept as written: amounts ("1 ether", "5000"), role names, "$ACTOR",
/// true/false.
struct TxTemplate
{
    std::string actor = std::string{kActorPlaceholder};
    std::string callee;
    std::optional<std::string> function;
    std::vector<std::string> args;
    std::string value = "0";
};

struct Scenario
{
    std::string id;
    std::filesystem::path base_dir;
    std::vector<std::string> sources;
    /// Role -> amount. Roles are contract names, "actor" (every interacting
    /// account), or names of extra externally-owned accounts.
    std::map<std::string, std::string> balances;
    std::vector<TxTemplate> setup;
    TxTemplate target;
    std::vector<MrId> mrs{std::begin(kAllMrs), std::end(kAllMrs)};
    std::vector<AgentKind> mr1_actors{AgentKind::EOA, AgentKind::CAH, AgentKind::CAR};
};

/// Parses a scenario-v1 document. Relative source paths resolve against base_dir.
Scenario parse_scenario(std::string_view json_text, std::filesystem::path base_dir, std::string id);
/// Loads a scenario file; its id is the file name without ".scenario.json".
Scenario load_scenario(const std::filesystem::path& path);

std::string scenario_id(const std::filesystem::path& path);

}  // namespace mtsc::mr_engine
