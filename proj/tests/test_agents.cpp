// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/agents/agents.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace mtsc;
using namespace mtsc::agents;
using namespace mtsc::test;

namespace
{
struct Interaction
{
    World w;
    Address target;
    Address agent;
    Address driver;

    Interaction(AgentKind kind, const std::string& file, const std::string& contract, std::string fn,
        std::vector<PayloadArg> args, Wei victim_balance = 10 * kEther)
    {
        w.load_file(file, victim_balance);
        target = w[contract];
        AgentSpec spec;
        spec.kind = kind;
        spec.target = target;
        spec.function = std::move(fn);
        spec.args = std::move(args);
        spec.initial_balance = 200 * kEther;
        agent = make_agent(w.state, spec);
        driver = w.state.create_eoa(0);
    }

    bool setup(std::string fn, std::vector<u128> args, Wei value)
    {
        return vm::execute(w.state, call(agent, target, std::move(fn), std::move(args), value), kSchedule)
            .status.success;
    }

    vm::Outcome run(Gas gas = kSchedule.block_gas_limit)
    {
        return agent_interact(w.state, agent, driver, gas, kSchedule);
    }
};

AgentSpec spec_for(AgentKind kind)
{
    AgentSpec s;
    s.kind = kind;
    s.target = Address{1};
    s.function = "withdraw";
    s.args = {{kEther, false}};
    return s;
}

std::vector<PayloadArg> withdraw_one() { return {{kEther, false}}; }
}  // namespace

TEST(agents, kind_names_round_trip)
{
    for (const auto k : kAllKinds)
        EXPECT_EQ(parse_agent_kind(to_string(k)), k);
    EXPECT_FALSE(parse_agent_kind("CAX"));
}

TEST(agents, cae_fallback_reverts)
{
    const auto code = agent_code(spec_for(AgentKind::CAE));
    ASSERT_TRUE(code.fallback);
    ASSERT_EQ(code.fallback->body.size(), 1u);
    EXPECT_EQ(code.fallback->body[0].kind, minisol::StmtKind::Revert);
    EXPECT_TRUE(code.fallback->payable);
}

TEST(agents, cao_fallback_is_empty)
{
    const auto code = agent_code(spec_for(AgentKind::CAO));
    ASSERT_TRUE(code.fallback);
    EXPECT_TRUE(code.fallback->body.empty());
    EXPECT_THROW(agent_code(spec_for(AgentKind::EOA)), std::invalid_argument);
}

TEST(agents, generated_code_validates_and_prints)
{
    for (const auto k : {AgentKind::CAO, AgentKind::CAH, AgentKind::CAR, AgentKind::CAE})
    {
        auto spec = spec_for(k);
        spec.cah_iterations = 3;
        spec.args.push_back({0, true});
        const auto code = agent_code(spec);
        minisol::SourceUnit unit;
        unit.contracts.push_back(code);
        EXPECT_TRUE(minisol::validate(unit).empty()) << to_string(k);
        EXPECT_EQ(minisol::parse(minisol::print(unit)), unit) << minisol::print(unit);
    }
}

TEST(agents, cah_fallback_exceeds_stipend)
{
    for (int iterations : {1, 2, 4})
    {
        World w;
        auto spec = spec_for(AgentKind::CAH);
        spec.cah_iterations = iterations;
        const auto agent = make_agent(w.state, spec);
        const auto eoa = w.state.create_eoa(kEther);
        auto tx = call(eoa, agent, "", {}, 1);
        tx.function.reset();
        const auto out = vm::execute(w.state, tx, kSchedule);
        ASSERT_TRUE(out.status.success);
        const Gas fallback = out.gas_consumed - kSchedule.base_tx;
        EXPECT_GT(fallback, kSchedule.stipend);
        const Gas one = kSchedule.dispatch + kSchedule.sload + kSchedule.arith + kSchedule.sstore_set;
        EXPECT_EQ(fallback, one + (iterations - 1) * (one - kSchedule.dispatch));
    }
}

TEST(agents, spec_checks)
{
    auto s = spec_for(AgentKind::CAR);
    EXPECT_NO_THROW(check(s, kSchedule));
    s.car_gas_guard = kSchedule.stipend;
    EXPECT_THROW(check(s, kSchedule), std::invalid_argument);
    s = spec_for(AgentKind::CAH);
    s.cah_iterations = 0;
    EXPECT_THROW(check(s, kSchedule), std::invalid_argument);
}

TEST(agents, cao_withdraw_gets_amount)
{
    Interaction it(AgentKind::CAO, "simple_dao.msol", "SimpleDAO", "withdraw", withdraw_one());
    ASSERT_TRUE(it.setup("deposit", {it.agent.value}, 100 * kEther));
    const auto out = it.run();
    ASSERT_TRUE(out.status.success) << vm::to_string(out.status);
    EXPECT_EQ(out.balance_delta, static_cast<i128>(kEther));
}

TEST(agents, car_withdraw_drains_more_than_amount)
{
    Interaction it(AgentKind::CAR, "simple_dao.msol", "SimpleDAO", "withdraw", withdraw_one());
    ASSERT_TRUE(it.setup("deposit", {it.agent.value}, 100 * kEther));
    const auto out = it.run();
    ASSERT_TRUE(out.status.success) << vm::to_string(out.status);
    EXPECT_GT(out.balance_delta, static_cast<i128>(kEther));
    int entries = 0;
    for (const auto& e : out.trace)
        if (e.kind == vm::TraceEvent::Kind::CallEntered && e.entry == "withdraw")
            ++entries;
    EXPECT_GE(entries, 2);
}

TEST(agents, car_recursion_depends_on_gas)
{
    Interaction it(AgentKind::CAR, "simple_dao.msol", "SimpleDAO", "withdraw", withdraw_one());
    ASSERT_TRUE(it.setup("deposit", {it.agent.value}, 100 * kEther));
    auto id = it.w.state.snapshot();
    std::set<i128> deltas;
    std::set<Gas> consumed;
    for (Gas g = 80'000; g <= 2'000'000; g += 20'000)
    {
        it.w.state.restore(id);
        id = it.w.state.snapshot();
        const auto out = it.run(g);
        if (!out.status.success)
            continue;
        deltas.insert(out.balance_delta);
        consumed.insert(out.gas_consumed);
    }
    EXPECT_GE(deltas.size(), 3u);
    EXPECT_GE(consumed.size(), 3u);
}

TEST(agents, cae_transfer_contract_fails)
{
    Interaction it(AgentKind::CAE, "safe_transfer.msol", "Dividends", "withdraw", {});
    ASSERT_TRUE(it.setup("fund", {it.agent.value}, kEther));
    const auto out = it.run();
    EXPECT_FALSE(out.status.success);
    EXPECT_EQ(out.balance_delta, 0);
}

TEST(agents, actor_argument_resolves_to_agent)
{
    World w;
    w.load_file("simple_dao.msol", 10 * kEther);
    AgentSpec spec;
    spec.kind = AgentKind::CAO;
    spec.target = w["SimpleDAO"];
    spec.function = "deposit";
    spec.args = {{0, true}};
    spec.value = 3 * kEther;
    spec.initial_balance = 5 * kEther;
    const auto agent = make_agent(w.state, spec);
    const auto driver = w.state.create_eoa(0);
    const auto out = agent_interact(w.state, agent, driver, kSchedule.block_gas_limit, kSchedule);
    ASSERT_TRUE(out.status.success);
    EXPECT_EQ(out.balance_delta, -static_cast<i128>(3 * kEther));
    EXPECT_EQ(w.state.at(w["SimpleDAO"]).load({"balances", agent.value}), 3 * kEther);
}

TEST(agents, cao_matches_eoa_on_corpus_withdrawals)
{
    for (const char* fn : {"withdraw", "withdraw_a", "withdraw_b"})
    {
        Interaction it(AgentKind::CAO, "simple_dao.msol", "SimpleDAO", fn, withdraw_one());
        ASSERT_TRUE(it.setup("deposit", {it.agent.value}, 100 * kEther));
        const auto eoa = it.w.state.create_eoa(200 * kEther);
        vm::execute(it.w.state, call(eoa, it.target, "deposit", {eoa.value}, 100 * kEther), kSchedule);
        const auto id = it.w.state.snapshot();
        const auto as_agent = it.run();
        it.w.state.restore(id);
        const auto as_eoa = vm::execute(it.w.state, call(eoa, it.target, fn, {kEther}), kSchedule);
        EXPECT_EQ(as_agent.status, as_eoa.status) << fn;
        EXPECT_EQ(as_agent.balance_delta, as_eoa.balance_delta) << fn;
    }
}
