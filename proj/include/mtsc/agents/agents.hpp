// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/vm/execute.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtsc::agents
{
enum class AgentKind
{
    EOA,
    CAO,  // empty fallback
    CAH,  // fallback burns more than the stipend
    CAR,  // fallback re-enters the target
    CAE,  // fallback reverts
};

inline constexpr AgentKind kAllKinds[] = {
    AgentKind::EOA, AgentKind::CAO, AgentKind::CAH, AgentKind::CAR, AgentKind::CAE};

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent_kind(std::string_view text);

/// One argument of the wrapped call. `actor` arguments resolve to whoever
/// performs the interaction: the EOA itself, or the agent contract (`this`).
struct PayloadArg
{
    u128 value = 0;
    bool actor = false;
};

struct AgentSpec
{
    AgentKind kind = AgentKind::CAO;
    Address target;
    std::string function;
    std::vector<PayloadArg> args;
    Wei value = 0;
    Gas car_gas_guard = 50'000;
    int cah_iterations = 1;
    Wei initial_balance = 0;
};

/// Throws std::invalid_argument unless car_gas_guard > stipend and cah_iterations >= 1.
void check(const AgentSpec& spec, const vm::GasSchedule& schedule);

/// The generated agent contract. Not defined for AgentKind::EOA.
minisol::ContractDef agent_code(const AgentSpec& spec);

/// Deploys the agent for `spec` funded with initial_balance. For EOA a plain
/// externally-owned account is created instead.
Address make_agent(vm::WorldState& state, const AgentSpec& spec);

/// `driver` calls agent.AgentCall() with no value; balance_delta is the agent's.
vm::Outcome agent_interact(vm::WorldState& state, Address agent, Address driver, Gas gas_limit,
    const vm::GasSchedule& schedule);

/// The transaction agent_interact sends.
vm::Transaction interaction_tx(Address agent, Address driver, Gas gas_limit);

}  // namespace mtsc::agents
