// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/gas_oracle/oracle.hpp"
#include "mtsc/mr_engine/scenario.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtsc::mr_engine
{
struct EngineConfig
{
    vm::GasSchedule schedule;
    int n = 1000;
    int inc_count = 5;
    double growth = 1.5;
    Gas car_gas_guard = 50'000;
    int cah_iterations = 1;
    /// Override the scenario's own selections when set.
    std::optional<std::vector<MrId>> mrs;
    std::optional<std::vector<AgentKind>> mr1_actors;
};

/// Throws std::invalid_argument on out-of-range settings.
void check(const EngineConfig& config);

/// Context E: every contract deployed, every actor kind set up, snapshot taken.
struct Context
{
    vm::WorldState state;
    vm::GasSchedule schedule;
    std::map<std::string, Address> roles;
    std::map<AgentKind, Address> actors;
    Address driver;
    Address target;
    vm::SnapshotId snapshot = 0;

    /// The target transaction as performed by `kind` under `gas_limit`.
    vm::Transaction target_tx(AgentKind kind, Gas gas_limit) const;
    Address actor(AgentKind kind) const { return actors.at(kind); }

    /// Restores E, runs the target as `kind`, restores E again.
    vm::Outcome run(AgentKind kind, Gas gas_limit);
    void reset();

    TxTemplate target_template;
};

/// Parses and validates the sources, deploys, funds and runs setup for every
/// actor kind, then snapshots. Throws ScenarioError on any problem.
Context build_context(const Scenario& scenario, const EngineConfig& config);

/// Resolves a scenario value: amounts, true/false, role names, "$ACTOR".
u128 resolve_value(const std::string& text, const std::map<std::string, Address>& roles,
    std::optional<Address> actor);

struct Input
{
    AgentKind actor = AgentKind::EOA;
    Gas gas_limit = 0;
};

struct TestPair
{
    MrId mr = MrId::MR1_1;
    Input source;
    Input follow_up;
    std::optional<vm::Outcome> source_outcome;
    std::optional<vm::Outcome> follow_up_outcome;
    /// World-state hashes observed just before each run.
    std::uint64_t source_context = 0;
    std::uint64_t follow_up_context = 0;
    Address follow_up_address;
};

enum class Clause
{
    Status,
    Gas,
    Balance,
};

std::string_view to_string(Clause clause);

struct ViolationRecord
{
    MrId mr = MrId::MR1_1;
    TestPair pair;
    Clause clause = Clause::Status;
    /// MR1.2 only: the smallest reduced limit at which the follow-up still succeeded.
    std::optional<Gas> gas_threshold;
};

struct PairPlan
{
    std::vector<TestPair> pairs;
    std::vector<std::string> diagnostics;
};

/// Follow-up inputs for every selected relation. `estimates` holds GC per
/// actor kind; kinds without an entry are reported as EstimateUnavailable.
PairPlan build_pairs(const Scenario& scenario, const std::map<AgentKind, gas_oracle::IntrinsicGas>& estimates,
    const EngineConfig& config);

/// Restores E before each run and after the second.
TestPair run_pair(Context& context, TestPair pair);

/// Evaluates the output relation. Pure in the pair's outcomes.
std::optional<ViolationRecord> check(const TestPair& pair);

struct RunResult
{
    std::vector<ViolationRecord> violations;
    std::vector<std::string> diagnostics;
    std::map<AgentKind, gas_oracle::IntrinsicGas> estimates;
    /// Every pair that was executed, in execution order.
    std::vector<TestPair> executed;
};

/// Full pipeline for one scenario. Sweeps stop at their first violation.
RunResult run_all(const Scenario& scenario, const EngineConfig& config);

/// IntrinsicGas for each requested actor kind; failures become diagnostics.
std::map<AgentKind, gas_oracle::IntrinsicGas> estimate_actors(Context& context,
    const std::vector<AgentKind>& kinds, const EngineConfig& config, std::vector<std::string>& diagnostics);

}  // namespace mtsc::mr_engine
