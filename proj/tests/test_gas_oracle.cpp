// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/agents/agents.hpp"
#include "mtsc/gas_oracle/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace mtsc;
using namespace mtsc::gas_oracle;
using namespace mtsc::test;

namespace
{
struct DaoWorld : World
{
    Address dao;
    Address heavy;
    Address eoa;

    DaoWorld()
    {
        load_file("simple_dao.msol", 10 * kEther);
        load(minisol::parse(kHeavy), 5 * kEther);
        dao = (*this)["SimpleDAO"];
        heavy = (*this)["Heavy"];
        eoa = state.create_eoa(5 * kEther);
        vm::execute(state, call(heavy, dao, "deposit", {heavy.value}, kEther), kSchedule);
        vm::execute(state, call(eoa, dao, "deposit", {eoa.value}, kEther), kSchedule);
    }
};

Gas full_run(WorldState state, const Transaction& tx)
{
    auto t = tx;
    t.gas_limit = kSchedule.block_gas_limit;
    return vm::execute(state, t, kSchedule).gas_consumed;
}
}  // namespace

TEST(gas_oracle, nop_matches_direct_run)
{
    World w;
    w.load_file("nop.msol");
    const auto eoa = w.state.create_eoa(0);
    const auto tx = call(eoa, w["Nop"], "nop");
    const auto before = w.state.serialize();
    const auto gc = estimate_intrinsic_gas(w.state, tx, kSchedule);
    EXPECT_EQ(gc.value, full_run(w.state, tx));
    EXPECT_EQ(gc.value, kSchedule.base_tx + kSchedule.dispatch);
    EXPECT_EQ(gc.trials, 1);
    EXPECT_TRUE(gc.converged);
    EXPECT_EQ(w.state.serialize(), before);
}

TEST(gas_oracle, exact_estimate_takes_one_trial)
{
    DaoWorld w;
    const auto tx = call(w.eoa, w.dao, "withdraw", {kEther});
    const auto gc = estimate_intrinsic_gas(w.state, tx, kSchedule);
    EXPECT_EQ(gc.trials, 1);
    EXPECT_EQ(gc.value, full_run(w.state, tx));
    EXPECT_TRUE(gc.converged);
}

TEST(gas_oracle, underestimate_grows_until_success)
{
    DaoWorld w;
    const auto tx = call(w.heavy, w.dao, "withdraw", {kEther});
    std::vector<Gas> tried;
    const InitialEstimator low = [](WorldState&, const Transaction&, const GasSchedule& s) { return s.base_tx; };
    const auto gc = estimate_intrinsic_gas(w.state, tx, kSchedule, low);
    EXPECT_GE(gc.trials, 2);
    EXPECT_TRUE(gc.converged);
    EXPECT_EQ(gc.value, full_run(w.state, tx));
}

TEST(gas_oracle, growth_factor_bounds_trials)
{
    DaoWorld w;
    const auto tx = call(w.heavy, w.dao, "withdraw", {kEther});
    const InitialEstimator one = [](WorldState&, const Transaction&, const GasSchedule&) { return Gas{1}; };
    const auto slow = estimate_intrinsic_gas(w.state, tx, kSchedule, one, 1.5);
    const auto fast = estimate_intrinsic_gas(w.state, tx, kSchedule, one, 4.0);
    EXPECT_LT(fast.trials, slow.trials);
    EXPECT_LE(slow.trials, 30);
    EXPECT_THROW(estimate_intrinsic_gas(w.state, tx, kSchedule, one, 1.0), std::invalid_argument);
}

TEST(gas_oracle, default_estimator_is_exact_without_calls)
{
    World w;
    w.load_file("approve_and_call.msol");
    w.load_file("nop.msol");
    const auto eoa = w.state.create_eoa(0);
    const auto tx = call(eoa, w["Nop"], "nop");
    EXPECT_EQ(default_initial_estimator(w.state, tx, kSchedule), full_run(w.state, tx));
}

TEST(gas_oracle, default_estimator_underestimates_heavy_recipient)
{
    DaoWorld w;
    agents::AgentSpec spec;
    spec.kind = agents::AgentKind::CAH;
    spec.target = w.dao;
    spec.function = "withdraw";
    spec.args = {{kEther, false}};
    spec.initial_balance = 10 * kEther;
    const auto agent = agents::make_agent(w.state, spec);
    vm::execute(w.state, call(agent, w.dao, "deposit", {agent.value}, kEther), kSchedule);
    const auto driver = w.state.create_eoa(0);
    const auto tx = agents::interaction_tx(agent, driver, kSchedule.block_gas_limit);

    const auto gc = estimate_intrinsic_gas(w.state, tx, kSchedule);
    EXPECT_LT(default_initial_estimator(w.state, tx, kSchedule), gc.value);
    EXPECT_EQ(gc.value, full_run(w.state, tx));
    EXPECT_GE(gc.trials, 2);
    EXPECT_TRUE(gc.converged);
}

TEST(gas_oracle, failing_transaction_never_succeeds)
{
    DaoWorld w;
    const auto stranger = w.state.create_eoa(0);
    const auto tx = call(stranger, w.dao, "withdraw", {kEther});
    EXPECT_THROW(default_initial_estimator(w.state, tx, kSchedule), NeverSucceeds);
    try
    {
        estimate_intrinsic_gas(w.state, tx, kSchedule);
        FAIL();
    }
    catch (const NeverSucceeds& e)
    {
        EXPECT_EQ(e.reason(), vm::FailureReason::RequireFailed);
    }
    const InitialEstimator low = [](WorldState&, const Transaction&, const GasSchedule&) { return Gas{30000}; };
    EXPECT_THROW(estimate_intrinsic_gas(w.state, tx, kSchedule, low), NeverSucceeds);
}

TEST(gas_oracle, increasing_plan)
{
    const auto p = allocate_increasing(50'000, 3, 30'000'000);
    EXPECT_EQ(p.direction, Direction::Increasing);
    EXPECT_EQ(p.limits, (std::vector<Gas>{100'000, 150'000, 200'000}));
    EXPECT_FALSE(p.warning);

    const auto big = allocate_increasing(20'000'000, 5, 30'000'000);
    EXPECT_TRUE(big.limits.empty());
    EXPECT_TRUE(big.warning);

    EXPECT_EQ(allocate_increasing(1, 5, 30'000'000).limits, (std::vector<Gas>{2, 3, 4, 5, 6}));
    EXPECT_EQ(allocate_increasing(10'000'000, 5, 30'000'000).limits, (std::vector<Gas>{20'000'000, 30'000'000}));
    EXPECT_THROW(allocate_increasing(0, 5, 30'000'000), std::invalid_argument);
}

TEST(gas_oracle, increasing_plan_invariants)
{
    for (Gas gc : {Gas{1}, Gas{7}, Gas{21'100}, Gas{76'431}, Gas{3'000'001}, Gas{14'999'999}})
        for (int count : {1, 5, 40})
        {
            const auto p = allocate_increasing(gc, count, kSchedule.block_gas_limit);
            EXPECT_LE(static_cast<int>(p.limits.size()), count);
            for (std::size_t i = 0; i < p.limits.size(); ++i)
            {
                EXPECT_GT(p.limits[i], gc);
                EXPECT_LE(p.limits[i], kSchedule.block_gas_limit);
                if (i > 0)
                    EXPECT_GE(p.limits[i] - p.limits[i - 1], gc);
            }
        }
}

TEST(gas_oracle, reducing_plan)
{
    const auto p = allocate_reducing(100'000, 1000);
    EXPECT_EQ(p.step, 100u);
    ASSERT_EQ(p.limits.size(), 1000u);
    EXPECT_EQ(p.limits.front(), 99'900u);
    EXPECT_EQ(p.limits[1], 99'800u);
    EXPECT_EQ(p.limits.back(), 0u);

    EXPECT_EQ(allocate_reducing(10, 1).limits, std::vector<Gas>{0});
    const auto tiny = allocate_reducing(7, 1000);
    EXPECT_EQ(tiny.step, 1u);
    EXPECT_EQ(tiny.limits, (std::vector<Gas>{6, 5, 4, 3, 2, 1, 0}));
    EXPECT_EQ(allocate_reducing(1, 1).limits, std::vector<Gas>{0});
    EXPECT_THROW(allocate_reducing(10, 0), std::invalid_argument);
}

TEST(gas_oracle, reducing_plan_invariants)
{
    for (Gas gc : {Gas{1}, Gas{999}, Gas{1001}, Gas{36'216}, Gas{76'431}})
        for (int n : {1, 3, 1000})
        {
            const auto p = allocate_reducing(gc, n);
            ASSERT_FALSE(p.limits.empty());
            for (std::size_t i = 0; i < p.limits.size(); ++i)
            {
                EXPECT_LT(p.limits[i], gc);
                EXPECT_EQ(gc - p.limits[i], (i + 1) * p.step);
            }
            EXPECT_LT(p.limits.back(), p.step);
        }
}
