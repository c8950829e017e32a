// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/agents/agents.hpp"

#include <stdexcept>

namespace mtsc::agents
{
using minisol::AssignOp;
using minisol::BinaryOp;
using minisol::Expr;
using minisol::ExprKind;
using minisol::Stmt;
using minisol::StmtKind;
using minisol::VarKind;

std::string_view to_string(AgentKind kind)
{
    switch (kind)
    {
    case AgentKind::EOA:
        return "EOA";
    case AgentKind::CAO:
        return "CAO";
    case AgentKind::CAH:
        return "CAH";
    case AgentKind::CAR:
        return "CAR";
    case AgentKind::CAE:
        return "CAE";
    }
    return "?";
}

std::optional<AgentKind> parse_agent_kind(std::string_view text)
{
    for (const auto k : kAllKinds)
        if (to_string(k) == text)
            return k;
    return std::nullopt;
}

namespace
{
Expr literal(u128 v)
{
    Expr e;
    e.kind = ExprKind::Literal;
    e.value = v;
    return e;
}

Expr name(std::string n)
{
    Expr e;
    e.kind = ExprKind::Name;
    e.name = std::move(n);
    return e;
}

Expr builtin(ExprKind kind)
{
    Expr e;
    e.kind = kind;
    return e;
}

Expr binary(BinaryOp op, Expr lhs, Expr rhs)
{
    Expr e;
    e.kind = ExprKind::Binary;
    e.op = op;
    e.operands = {std::move(lhs), std::move(rhs)};
    return e;
}

Stmt assign(Expr target, AssignOp op, Expr rhs)
{
    Stmt s;
    s.kind = StmtKind::Assign;
    s.target = std::move(target);
    s.assign_op = op;
    s.expr = std::move(rhs);
    return s;
}

Stmt expr_stmt(Expr e)
{
    Stmt s;
    s.kind = StmtKind::ExprStmt;
    s.expr = std::move(e);
    return s;
}

Expr payload_call(ExprKind kind, const AgentSpec& spec, std::optional<Wei> value)
{
    Expr e;
    e.kind = kind;
    e.name = spec.function;
    e.has_function = true;
    e.operands.push_back(name("target_contract"));
    for (const auto& a : spec.args)
        e.args.push_back(a.actor ? builtin(ExprKind::This) : literal(a.value));
    if (value)
    {
        e.has_value = true;
        e.operands.push_back(literal(*value));
    }
    return e;
}

minisol::StateVar var(std::string n, VarKind kind)
{
    minisol::StateVar v;
    v.name = std::move(n);
    v.kind = kind;
    return v;
}
}  // namespace

void check(const AgentSpec& spec, const vm::GasSchedule& schedule)
{
    if (spec.car_gas_guard <= schedule.stipend)
        throw std::invalid_argument("car_gas_guard must exceed the stipend");
    if (spec.cah_iterations < 1)
        throw std::invalid_argument("cah_iterations must be at least 1");
}

minisol::ContractDef agent_code(const AgentSpec& spec)
{
    if (spec.kind == AgentKind::EOA)
        throw std::invalid_argument("an EOA has no agent code");

    minisol::ContractDef c;
    c.name = "Agent" + std::string{to_string(spec.kind)};
    c.state_vars = {var("target_contract", VarKind::Addr), var("call_msg_data", VarKind::Uint),
        var("storage_value", VarKind::Uint)};

    minisol::FunctionDef call;
    call.name = "AgentCall";
    call.body.push_back(assign(name("target_contract"), AssignOp::Set, literal(spec.target.value)));
    call.body.push_back(assign(name("call_msg_data"), AssignOp::Set, literal(1)));
    call.body.push_back(expr_stmt(payload_call(ExprKind::DirectCall, spec, spec.value)));
    c.functions.push_back(std::move(call));

    minisol::FallbackDef fallback;
    fallback.payable = true;
    switch (spec.kind)
    {
    case AgentKind::CAO:
        break;
    case AgentKind::CAH:
        fallback.body.push_back(assign(name("storage_value"), AssignOp::AddAssign, literal(1)));
        if (spec.cah_iterations > 1)
        {
            c.state_vars.push_back(var("storage_extra", VarKind::Map));
            for (int i = 1; i < spec.cah_iterations; ++i)
            {
                Expr slot;
                slot.kind = ExprKind::Index;
                slot.name = "storage_extra";
                slot.operands.push_back(literal(static_cast<u128>(i)));
                fallback.body.push_back(assign(std::move(slot), AssignOp::AddAssign, literal(1)));
            }
        }
        break;
    case AgentKind::CAE:
    {
        Stmt revert;
        revert.kind = StmtKind::Revert;
        fallback.body.push_back(revert);
        break;
    }
    case AgentKind::CAR:
    {
        Expr victim_funded;
        victim_funded.kind = ExprKind::BalanceOf;
        victim_funded.operands.push_back(name("target_contract"));
        Stmt reenter;
        reenter.kind = StmtKind::If;
        reenter.expr = binary(BinaryOp::And, binary(BinaryOp::Gt, std::move(victim_funded), literal(0)),
            binary(BinaryOp::Gt, builtin(ExprKind::GasLeft), literal(spec.car_gas_guard)));
        reenter.body.push_back(expr_stmt(payload_call(ExprKind::LowCall, spec, std::nullopt)));
        fallback.body.push_back(std::move(reenter));
        break;
    }
    case AgentKind::EOA:
        break;
    }
    c.fallback = std::move(fallback);
    return c;
}

Address make_agent(vm::WorldState& state, const AgentSpec& spec)
{
    if (spec.kind == AgentKind::EOA)
        return state.create_eoa(spec.initial_balance);
    return vm::deploy(state, agent_code(spec), spec.initial_balance);
}

vm::Transaction interaction_tx(Address agent, Address driver, Gas gas_limit)
{
    vm::Transaction tx;
    tx.actor = driver;
    tx.callee = agent;
    tx.function = "AgentCall";
    tx.gas_limit = gas_limit;
    return tx;
}

vm::Outcome agent_interact(vm::WorldState& state, Address agent, Address driver, Gas gas_limit,
    const vm::GasSchedule& schedule)
{
    return vm::execute(state, interaction_tx(agent, driver, gas_limit), schedule, agent);
}

}  // namespace mtsc::agents
