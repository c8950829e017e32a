// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <gtest/gtest.h>

using namespace mtsc;
using namespace mtsc::vm;

namespace
{
using namespace mtsc::test;

// Rebuilds every frame's gas from the trace: own op costs plus what each
// child charged. Clears ok when a successful child disagrees with its exit record.
struct Audit
{
    const std::vector<TraceEvent>& trace;
    std::size_t pos = 0;
    bool ok = true;

    Gas frame(int depth)
    {
        Gas used = 0;
        while (pos < trace.size())
        {
            const auto& e = trace[pos];
            if (e.kind == TraceEvent::Kind::OpExecuted && e.depth == depth)
            {
                used += e.gas_cost;
                ++pos;
            }
            else if (e.kind == TraceEvent::Kind::CallEntered && e.depth == depth + 1)
            {
                const bool stipend = e.form == CallForm::Send || e.form == CallForm::Transfer || e.value > 0;
                const Gas bonus = stipend ? kSchedule.stipend : 0;
                ++pos;
                const Gas child = frame(depth + 1);
                if (pos >= trace.size() || trace[pos].kind != TraceEvent::Kind::CallExited)
                {
                    ok = false;
                    return used;
                }
                const auto& exit = trace[pos++];
                if (exit.success && exit.gas_used != (child > bonus ? child - bonus : 0))
                    ok = false;
                used += exit.gas_used;
            }
            else if (e.kind == TraceEvent::Kind::ExceptionSwallowed && e.depth == depth)
                ++pos;
            else
                break;
        }
        return used;
    }
};
}  // namespace

TEST(vm, deploy_sequential_addresses)
{
    WorldState s;
    const auto unit = minisol::parse_file(kCorpus + "/simple_dao.msol");
    const auto a1 = deploy(s, unit.contracts[0], 10 * kEther);
    const auto a2 = deploy(s, unit.contracts[0], 10 * kEther);
    EXPECT_NE(a1, a2);
    EXPECT_EQ(*s.at(a1).code, *s.at(a2).code);
    EXPECT_EQ(s.at(a1).kind, AccountKind::Contract);

    WorldState empty;
    const auto e = deploy(empty, minisol::parse("contract Empty { }").contracts[0], 0);
    EXPECT_TRUE(empty.at(e).storage.empty());
    EXPECT_EQ(empty.at(e).balance, 0);
}

TEST(vm, deploy_order_is_deterministic)
{
    const auto unit = minisol::parse("contract A { } contract B { }");
    WorldState x, y;
    const auto xa = deploy(x, unit.contracts[0], 0);
    const auto xb = deploy(x, unit.contracts[1], 0);
    const auto yb = deploy(y, unit.contracts[1], 0);
    const auto ya = deploy(y, unit.contracts[0], 0);
    EXPECT_EQ(std::set({xa, xb}), std::set({ya, yb}));
}

TEST(vm, below_base_cost_is_out_of_gas)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/nop.msol"));
    const auto eoa = w.state.create_eoa(kEther);
    for (Gas g : {Gas{0}, Gas{1}, Gas{20999}, Gas{21099}})
    {
        const auto out = execute(w.state, call(eoa, w["Nop"], "nop", {}, 0, g), kSchedule);
        EXPECT_EQ(out.status, Status::failure(FailureReason::OutOfGas)) << g;
        EXPECT_EQ(out.gas_consumed, g);
    }
}

TEST(vm, nop_costs_base_plus_dispatch)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/nop.msol"));
    const auto eoa = w.state.create_eoa(kEther);
    const auto out = execute(w.state, call(eoa, w["Nop"], "nop"), kSchedule);
    EXPECT_TRUE(out.status.success);
    EXPECT_EQ(out.gas_consumed, kSchedule.base_tx + kSchedule.dispatch);
    EXPECT_EQ(out.gas_consumed, 21100u);
    EXPECT_EQ(out.balance_delta, 0);
    ASSERT_EQ(out.trace.size(), 2u);
    EXPECT_EQ(out.trace[0].op, "base_tx");
    EXPECT_EQ(out.trace[1].op, "dispatch");

    const auto exact = execute(w.state, call(eoa, w["Nop"], "nop", {}, 0, 21100), kSchedule);
    EXPECT_TRUE(exact.status.success);
}

TEST(vm, withdraw_by_eoa)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    const auto eoa = w.state.create_eoa(5 * kEther);
    const auto dao = w["SimpleDAO"];
    ASSERT_TRUE(execute(w.state, call(eoa, dao, "deposit", {eoa.value}, kEther), kSchedule).status.success);
    EXPECT_EQ(w.state.at(dao).load({"balances", eoa.value}), kEther);

    const auto out = execute(w.state, call(eoa, dao, "withdraw", {kEther}), kSchedule);
    ASSERT_TRUE(out.status.success);
    EXPECT_EQ(out.balance_delta, static_cast<i128>(kEther));
    EXPECT_EQ(w.state.at(dao).load({"balances", eoa.value}), 0);
    // base + dispatch + (sload compare require) + (call + value) + (sload arith sstore_reset)
    EXPECT_EQ(out.gas_consumed, 21000u + 100 + 213 + 9700 + 5203);
    EXPECT_EQ(w.state.at(eoa).balance, 5 * kEther);
}

TEST(vm, send_to_heavy_fallback_fails_silently)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    w.load(minisol::parse(kHeavy), 5 * kEther);
    const auto dao = w["SimpleDAO"];
    const auto heavy = w["Heavy"];
    ASSERT_TRUE(execute(w.state, call(heavy, dao, "deposit", {heavy.value}, kEther), kSchedule).status.success);

    const auto out = execute(w.state, call(heavy, dao, "withdraw_b", {kEther}), kSchedule);
    ASSERT_TRUE(out.status.success);
    EXPECT_EQ(out.balance_delta, 0);
    EXPECT_EQ(w.state.at(dao).load({"balances", heavy.value}), 0);
    EXPECT_TRUE(swallows_exception(out.trace));
    EXPECT_EQ(w.state.at(heavy).load({"hits", 0}), 0);
}

TEST(vm, transfer_failure_propagates)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/safe_transfer.msol"), 10 * kEther);
    w.load(minisol::parse(kHeavy), 5 * kEther);
    const auto div = w["Dividends"];
    const auto heavy = w["Heavy"];
    ASSERT_TRUE(execute(w.state, call(heavy, div, "fund", {heavy.value}, kEther), kSchedule).status.success);
    const auto before = w.state;
    const auto out = execute(w.state, call(heavy, div, "withdraw"), kSchedule);
    EXPECT_FALSE(out.status.success);
    EXPECT_EQ(out.balance_delta, 0);
    EXPECT_TRUE(w.state.same_accounts(before));
    EXPECT_EQ(w.state.fee_ledger(), before.fee_ledger() + out.gas_consumed);
}

TEST(vm, lowcall_child_revert_is_local)
{
    const auto unit = minisol::parse(R"(
contract Caller {
    uint after;
    fn go(t: addr) {
        let ok = lowcall t.boom();
        after = 1;
        require(ok == false);
    }
}
contract Callee {
    uint touched;
    fn boom() { touched = 1; revert(); }
})");
    World w;
    w.load(unit);
    const auto eoa = w.state.create_eoa(0);
    const auto out = execute(w.state, call(eoa, w["Caller"], "go", {w["Callee"].value}), kSchedule);
    ASSERT_TRUE(out.status.success) << to_string(out.status);
    EXPECT_EQ(w.state.at(w["Caller"]).load({"after", 0}), 1);
    EXPECT_EQ(w.state.at(w["Callee"]).load({"touched", 0}), 0);
}

TEST(vm, dcall_failure_propagates_to_top)
{
    const auto unit = minisol::parse(R"(
contract Caller {
    uint after;
    fn go(t: addr) {
        after = 1;
        dcall t.boom();
    }
}
contract Callee {
    fn boom() { revert(); }
})");
    World w;
    w.load(unit);
    const auto eoa = w.state.create_eoa(0);
    const auto out = execute(w.state, call(eoa, w["Caller"], "go", {w["Callee"].value}), kSchedule);
    EXPECT_EQ(out.status, Status::failure(FailureReason::Revert));
    EXPECT_LT(out.gas_consumed, kSchedule.block_gas_limit);
    EXPECT_EQ(w.state.at(w["Caller"]).load({"after", 0}), 0);
}

TEST(vm, dcall_returns_value)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/direct_vault.msol"));
    const auto eoa = w.state.create_eoa(10 * kEther);
    ASSERT_TRUE(execute(w.state, call(eoa, w["Vault"], "init", {w["Journal"].value}), kSchedule).status.success);
    ASSERT_TRUE(execute(w.state, call(eoa, w["Vault"], "deposit", {}, kEther), kSchedule).status.success);
    const auto out = execute(w.state, call(eoa, w["Vault"], "move", {7, 100}), kSchedule);
    ASSERT_TRUE(out.status.success) << to_string(out.status);
    EXPECT_EQ(w.state.at(w["Journal"]).load({"entries", 0}), 1);
    EXPECT_EQ(w.state.at(w["Vault"]).load({"balances", 7}), 100);
}

TEST(vm, arithmetic_errors)
{
    const auto unit = minisol::parse(R"(
contract M {
    uint x;
    fn under() { x -= 1; }
    fn over(a: uint) { x = a * a; }
    fn localUnder() { let v = 0; v -= 1; }
})");
    World w;
    w.load(unit);
    const auto eoa = w.state.create_eoa(0);
    const auto m = w["M"];
    EXPECT_EQ(execute(w.state, call(eoa, m, "under"), kSchedule).status,
        Status::failure(FailureReason::ArithmeticError));
    EXPECT_EQ(execute(w.state, call(eoa, m, "over", {u128{1} << 64}), kSchedule).status,
        Status::failure(FailureReason::ArithmeticError));
    EXPECT_EQ(execute(w.state, call(eoa, m, "localUnder"), kSchedule).status,
        Status::failure(FailureReason::ArithmeticError));
    EXPECT_TRUE(execute(w.state, call(eoa, m, "over", {u128{1} << 63}), kSchedule).status.success);
}

TEST(vm, dispatch_rules)
{
    const auto unit = minisol::parse(R"(
contract P {
    fn free() { }
    fn paid() payable { }
}
contract F {
    uint n;
    fallback payable { n += 1; }
})");
    World w;
    w.load(unit);
    const auto eoa = w.state.create_eoa(10 * kEther);
    EXPECT_EQ(execute(w.state, call(eoa, w["P"], "free", {}, 1), kSchedule).status,
        Status::failure(FailureReason::Revert));
    EXPECT_TRUE(execute(w.state, call(eoa, w["P"], "paid", {}, 1), kSchedule).status.success);
    EXPECT_EQ(execute(w.state, call(eoa, w["P"], "missing"), kSchedule).status,
        Status::failure(FailureReason::Revert));
    EXPECT_EQ(execute(w.state, call(eoa, w["P"], "free", {1}), kSchedule).status,
        Status::failure(FailureReason::Revert));

    Transaction plain = call(eoa, w["F"], "", {}, kEther);
    plain.function.reset();
    EXPECT_TRUE(execute(w.state, plain, kSchedule).status.success);
    EXPECT_EQ(w.state.at(w["F"]).load({"n", 0}), 1);
    EXPECT_EQ(execute(w.state, call(eoa, w["F"], "unknown"), kSchedule).status, Status::ok());
    EXPECT_EQ(w.state.at(w["F"]).load({"n", 0}), 2);
}

TEST(vm, plain_transfer_to_eoa)
{
    WorldState s;
    const auto a = s.create_eoa(3 * kEther);
    const auto b = s.create_eoa(0);
    Transaction tx = call(a, b, "", {}, kEther);
    tx.function.reset();
    const auto out = execute(s, tx, kSchedule);
    EXPECT_TRUE(out.status.success);
    EXPECT_EQ(out.gas_consumed, kSchedule.base_tx);
    EXPECT_EQ(out.balance_delta, -static_cast<i128>(kEther));
    EXPECT_EQ(s.at(b).balance, kEther);
    EXPECT_EQ(s.total_balance(), 3 * kEther);
}

TEST(vm, insufficient_balance)
{
    World w;
    w.load(minisol::parse("contract P { fn paid() payable { } }"));
    const auto eoa = w.state.create_eoa(1);
    const auto before = w.state;
    const auto out = execute(w.state, call(eoa, w["P"], "paid", {}, 2), kSchedule);
    EXPECT_EQ(out.status, Status::failure(FailureReason::BalanceInsufficient));
    EXPECT_TRUE(w.state.same_accounts(before));
}

TEST(vm, gasleft_reports_remaining)
{
    World w;
    w.load(minisol::parse("contract G { uint g; fn f() { g = gasleft(); } }"));
    const auto eoa = w.state.create_eoa(0);
    const auto out = execute(w.state, call(eoa, w["G"], "f", {}, 0, 100000), kSchedule);
    ASSERT_TRUE(out.status.success);
    EXPECT_EQ(w.state.at(w["G"]).load({"g", 0}), 100000u - 21000 - 100 - 2);
    EXPECT_TRUE(reads_gas_left(out.trace));
}

TEST(vm, stipend_and_gas_cap)
{
    const auto unit = minisol::parse(R"(
contract Payer {
    uint ok;
    fn capped(t: addr) payable { ok = lowcall t value 1 gas 0; }
    fn unfunded(t: addr) { ok = lowcall t gas 100000; }
})");
    World w;
    w.load(unit);
    w.load(minisol::parse(kHeavy));
    const auto eoa = w.state.create_eoa(10);
    const auto a = execute(w.state, call(eoa, w["Payer"], "capped", {w["Heavy"].value}, 1), kSchedule);
    ASSERT_TRUE(a.status.success);
    EXPECT_EQ(w.state.at(w["Payer"]).load({"ok", 0}), 0);
    const auto entered = std::find_if(a.trace.begin(), a.trace.end(),
        [](const TraceEvent& e) { return e.kind == TraceEvent::Kind::CallEntered; });
    ASSERT_NE(entered, a.trace.end());
    EXPECT_EQ(entered->gas_forwarded, kSchedule.stipend);
    EXPECT_EQ(entered->entry, "");
    EXPECT_TRUE(entered->callee_has_code);

    const auto b = execute(w.state, call(eoa, w["Payer"], "unfunded", {w["Heavy"].value}), kSchedule);
    ASSERT_TRUE(b.status.success);
    EXPECT_EQ(w.state.at(w["Payer"]).load({"ok", 0}), 1);
}

TEST(vm, depth_limit)
{
    const auto unit = minisol::parse(R"(
contract R {
    uint levels;
    fn viaDcall() { levels += 1; dcall this.viaDcall(); }
    fn viaLowcall() { levels += 1; lowcall this.viaLowcall(); }
})");
    World w;
    w.load(unit);
    const auto eoa = w.state.create_eoa(0);
    const auto d = execute(w.state, call(eoa, w["R"], "viaDcall"), kSchedule);
    EXPECT_EQ(d.status, Status::failure(FailureReason::DepthExceeded));

    const auto l = execute(w.state, call(eoa, w["R"], "viaLowcall"), kSchedule);
    ASSERT_TRUE(l.status.success) << to_string(l.status);
    EXPECT_EQ(w.state.at(w["R"]).load({"levels", 0}), static_cast<u128>(kMaxCallDepth + 1));
    int max_depth = 0;
    for (const auto& e : l.trace)
        max_depth = std::max(max_depth, e.depth);
    EXPECT_EQ(max_depth, kMaxCallDepth + 1);
}

TEST(vm, out_of_gas_consumes_limit_and_rolls_back)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    const auto eoa = w.state.create_eoa(5 * kEther);
    const auto dao = w["SimpleDAO"];
    const auto before = w.state;
    const auto out = execute(w.state, call(eoa, dao, "deposit", {eoa.value}, kEther, 30000), kSchedule);
    EXPECT_EQ(out.status, Status::failure(FailureReason::OutOfGas));
    EXPECT_EQ(out.gas_consumed, 30000u);
    EXPECT_EQ(out.balance_delta, 0);
    EXPECT_TRUE(w.state.same_accounts(before));
    EXPECT_EQ(w.state.fee_ledger(), before.fee_ledger() + 30000);
}

TEST(vm, trace_audit_matches_gas)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    w.load(minisol::parse_file(kCorpus + "/approve_and_call.msol"));
    w.load(minisol::parse(kHeavy), 5 * kEther);
    const auto heavy = w["Heavy"];
    const auto dao = w["SimpleDAO"];
    ASSERT_TRUE(execute(w.state, call(heavy, dao, "deposit", {heavy.value}, 3 * kEther), kSchedule).status.success);

    std::vector<Outcome> outs;
    outs.push_back(execute(w.state, call(heavy, dao, "withdraw", {kEther}), kSchedule));
    outs.push_back(execute(w.state, call(heavy, dao, "withdraw_a", {kEther}), kSchedule));
    outs.push_back(execute(w.state, call(heavy, dao, "withdraw_b", {kEther}), kSchedule));
    outs.push_back(execute(w.state, call(heavy, w["Token"], "approveAndCall", {w["Receiver"].value, 5}), kSchedule));
    for (const auto& out : outs)
    {
        ASSERT_TRUE(out.status.success);
        Audit audit{out.trace};
        EXPECT_EQ(audit.frame(0), out.gas_consumed);
        EXPECT_TRUE(audit.ok);
        EXPECT_EQ(audit.pos, out.trace.size());
    }
}

TEST(vm, execution_is_deterministic)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    w.load(minisol::parse(kHeavy), 5 * kEther);
    const auto heavy = w["Heavy"];
    ASSERT_TRUE(execute(w.state, call(heavy, w["SimpleDAO"], "deposit", {heavy.value}, kEther), kSchedule)
                    .status.success);
    WorldState a = w.state, b = w.state;
    const auto tx = call(heavy, w["SimpleDAO"], "withdraw", {kEther});
    EXPECT_EQ(execute(a, tx, kSchedule), execute(b, tx, kSchedule));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.serialize(), b.serialize());
}

TEST(vm, snapshot_round_trip)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    const auto eoa = w.state.create_eoa(5 * kEther);
    const auto text = w.state.serialize();
    const auto id = w.state.snapshot();
    execute(w.state, call(eoa, w["SimpleDAO"], "deposit", {eoa.value}, kEther), kSchedule);
    EXPECT_NE(w.state.serialize(), text);
    w.state.restore(id);
    EXPECT_EQ(w.state.serialize(), text);
    EXPECT_THROW(w.state.restore(id), UnknownSnapshot);
}

TEST(vm, snapshot_restores_address_counter)
{
    World w;
    const auto code = minisol::parse("contract E { }").contracts[0];
    const auto id = w.state.snapshot();
    const auto first = deploy(w.state, code, 0);
    w.state.restore(id);
    EXPECT_EQ(deploy(w.state, code, 0), first);
}

TEST(vm, snapshots_are_lifo)
{
    WorldState s;
    const auto outer = s.snapshot();
    s.create_eoa(1);
    const auto inner = s.snapshot();
    s.create_eoa(2);
    s.restore(outer);
    EXPECT_EQ(s.accounts().size(), 0u);
    EXPECT_THROW(s.restore(inner), UnknownSnapshot);
    EXPECT_EQ(s.snapshot_depth(), 0u);
}

TEST(vm, schedule_file)
{
    const auto s = parse_schedule("# comment\nsload = 800\n\nstipend=2300 # tail\n");
    EXPECT_EQ(s.sload, 800u);
    EXPECT_EQ(s.base_tx, 21000u);
    EXPECT_EQ(parse_schedule(format_schedule(s)), s);
    EXPECT_THROW(parse_schedule("bogus = 1"), ScheduleError);
    EXPECT_THROW(parse_schedule("sload"), ScheduleError);
    EXPECT_THROW(parse_schedule("sload = -1"), ScheduleError);
    EXPECT_THROW(parse_schedule("sstore_set = 10\nsstore_reset = 10"), ScheduleError);
}

TEST(vm, gas_limit_independence_without_gasleft)
{
    World w;
    w.load(minisol::parse_file(kCorpus + "/simple_dao.msol"), 10 * kEther);
    const auto eoa = w.state.create_eoa(5 * kEther);
    const auto dao = w["SimpleDAO"];
    ASSERT_TRUE(execute(w.state, call(eoa, dao, "deposit", {eoa.value}, kEther), kSchedule).status.success);
    auto id = w.state.snapshot();
    const auto base = execute(w.state, call(eoa, dao, "withdraw", {kEther}, 0, 40000), kSchedule);
    ASSERT_TRUE(base.status.success);
    for (Gas g = 40001; g < 400000; g += 37777)
    {
        w.state.restore(id);
        id = w.state.snapshot();
        const auto out = execute(w.state, call(eoa, dao, "withdraw", {kEther}, 0, g), kSchedule);
        EXPECT_EQ(out.status, base.status);
        EXPECT_EQ(out.gas_consumed, base.gas_consumed);
        EXPECT_EQ(out.balance_delta, base.balance_delta);
    }
}
