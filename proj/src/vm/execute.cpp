// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/vm/execute.hpp"

#include <algorithm>
#include <limits>

namespace mtsc::vm
{
using mtsc::to_string;

std::string_view to_string(FailureReason reason)
{
    switch (reason)
    {
    case FailureReason::OutOfGas:
        return "OutOfGas";
    case FailureReason::Revert:
        return "Revert";
    case FailureReason::RequireFailed:
        return "RequireFailed";
    case FailureReason::ArithmeticError:
        return "ArithmeticError";
    case FailureReason::BalanceInsufficient:
        return "BalanceInsufficient";
    case FailureReason::DepthExceeded:
        return "DepthExceeded";
    }
    return "?";
}

std::string to_string(const Status& status)
{
    return status.success ? "Success" : "Failure(" + std::string{to_string(status.reason)} + ")";
}

std::string_view to_string(CallForm form)
{
    switch (form)
    {
    case CallForm::LowCall:
        return "lowcall";
    case CallForm::DirectCall:
        return "dcall";
    case CallForm::Send:
        return "send";
    case CallForm::Transfer:
        return "transfer";
    case CallForm::Fallback:
        return "fallback";
    }
    return "?";
}

std::string to_string(const TraceEvent& e)
{
    std::string out = std::string(static_cast<std::size_t>(e.depth) * 2, ' ');
    switch (e.kind)
    {
    case TraceEvent::Kind::OpExecuted:
        return out + e.op + " " + std::to_string(e.gas_cost);
    case TraceEvent::Kind::CallEntered:
        return out + "enter " + std::string{to_string(e.form)} + " " + to_string(e.callee) + "." +
               (e.entry.empty() ? (e.callee_has_code ? "<fallback>" : "<none>") : e.entry) +
               " value=" + to_string(e.value) + " gas=" + std::to_string(e.gas_forwarded);
    case TraceEvent::Kind::CallExited:
        return out + "exit " + (e.success ? "ok" : std::string{to_string(e.reason)}) +
               " used=" + std::to_string(e.gas_used);
    case TraceEvent::Kind::ExceptionSwallowed:
        return out + "swallowed " + std::string{to_string(e.reason)};
    }
    return out;
}

bool reads_gas_left(const std::vector<TraceEvent>& trace)
{
    return std::any_of(trace.begin(), trace.end(),
        [](const TraceEvent& e) { return e.kind == TraceEvent::Kind::OpExecuted && e.op == "gasleft"; });
}

bool swallows_exception(const std::vector<TraceEvent>& trace)
{
    return std::any_of(trace.begin(), trace.end(),
        [](const TraceEvent& e) { return e.kind == TraceEvent::Kind::ExceptionSwallowed; });
}

namespace
{
using minisol::AssignOp;
using minisol::BinaryOp;
using minisol::Expr;
using minisol::ExprKind;
using minisol::Stmt;
using minisol::StmtKind;

struct Failure
{
    FailureReason reason;
};

struct Frame
{
    Address self;
    Address sender;
    Wei value = 0;
    Gas limit = 0;
    Gas left = 0;
    int depth = 0;
    const minisol::ContractDef* code = nullptr;
    std::vector<std::pair<std::string, u128>> params;
    std::vector<std::vector<std::pair<std::string, u128>>> scopes;
    bool returned = false;
    u128 ret = 0;
};

struct FrameResult
{
    Status status;
    Gas used = 0;
    u128 ret = 0;
};

struct Call
{
    CallForm form;
    Address caller;
    Address callee;
    std::optional<std::string> function;
    std::vector<u128> args;
    Wei value = 0;
    Gas limit = 0;
    int depth = 0;
};

std::optional<Address> to_address(u128 v)
{
    if (v > std::numeric_limits<std::uint64_t>::max())
        return std::nullopt;
    return Address{static_cast<std::uint64_t>(v)};
}

class Interpreter
{
public:
    Interpreter(WorldState& state, const GasSchedule& schedule, std::vector<TraceEvent>& trace)
      : state_{state}, gs_{schedule}, trace_{trace}
    {}

    FrameResult run(const Call& call)
    {
        auto saved = state_.accounts();
        auto fail = [&](FailureReason reason, Gas used) {
            state_.accounts() = std::move(saved);
            return FrameResult{Status::failure(reason), used, 0};
        };

        Account* callee = call.depth <= kMaxCallDepth ? state_.find(call.callee) : nullptr;
        if (call.depth > kMaxCallDepth)
            return fail(FailureReason::DepthExceeded, 0);
        if (!callee)
            return fail(FailureReason::Revert, 0);

        if (call.value > 0)
        {
            Account& from = state_.at(call.caller);
            if (from.balance < call.value)
                return fail(FailureReason::BalanceInsufficient, 0);
            from.balance -= call.value;
            state_.at(call.callee).balance += call.value;
        }

        callee = state_.find(call.callee);
        if (callee->kind == AccountKind::EOA || !callee->code)
            return {Status::ok(), 0, 0};

        const auto code = callee->code;
        const minisol::FunctionDef* fn = call.function ? code->find_function(*call.function) : nullptr;
        const std::vector<Stmt>* body = nullptr;
        bool payable = false;
        Frame f;
        if (fn)
        {
            if (fn->params.size() != call.args.size())
                return fail(FailureReason::Revert, 0);
            body = &fn->body;
            payable = fn->payable;
            for (std::size_t i = 0; i < fn->params.size(); ++i)
                f.params.emplace_back(fn->params[i].name, call.args[i]);
        }
        else if (code->fallback)
        {
            body = &code->fallback->body;
            payable = code->fallback->payable;
        }
        else
            return fail(FailureReason::Revert, 0);

        f.self = call.callee;
        f.sender = call.caller;
        f.value = call.value;
        f.limit = call.limit;
        f.left = call.limit;
        f.depth = call.depth;
        f.code = code.get();

        try
        {
            charge(f, gs_.dispatch, "dispatch");
            if (call.value > 0 && !payable)
                throw Failure{FailureReason::Revert};
            block(f, *body);
        }
        catch (const Failure& failure)
        {
            return fail(failure.reason,
                failure.reason == FailureReason::OutOfGas ? f.limit : f.limit - f.left);
        }
        return {Status::ok(), f.limit - f.left, f.ret};
    }

private:
    void charge(Frame& f, Gas cost, const char* op)
    {
        if (cost > f.left)
            throw Failure{FailureReason::OutOfGas};
        f.left -= cost;
        if (cost > 0)
        {
            TraceEvent e;
            e.kind = TraceEvent::Kind::OpExecuted;
            e.depth = f.depth;
            e.op = op;
            e.gas_cost = cost;
            trace_.push_back(std::move(e));
        }
    }

    void block(Frame& f, const std::vector<Stmt>& body)
    {
        f.scopes.emplace_back();
        for (const auto& s : body)
        {
            stmt(f, s);
            if (f.returned)
                break;
        }
        f.scopes.pop_back();
    }

    u128* local(Frame& f, const std::string& name)
    {
        for (auto scope = f.scopes.rbegin(); scope != f.scopes.rend(); ++scope)
            for (auto& [n, v] : *scope)
                if (n == name)
                    return &v;
        return nullptr;
    }

    const u128* param(const Frame& f, const std::string& name) const
    {
        for (const auto& [n, v] : f.params)
            if (n == name)
                return &v;
        return nullptr;
    }

    static u128 arith(BinaryOp op, u128 a, u128 b)
    {
        u128 r = 0;
        const bool ok = op == BinaryOp::Add   ? checked_add(a, b, r)
                        : op == BinaryOp::Sub ? checked_sub(a, b, r)
                                              : checked_mul(a, b, r);
        if (!ok)
            throw Failure{FailureReason::ArithmeticError};
        return r;
    }

    void stmt(Frame& f, const Stmt& s)
    {
        switch (s.kind)
        {
        case StmtKind::Require:
        {
            const auto cond = eval(f, s.expr);
            charge(f, gs_.require, "require");
            if (cond == 0)
                throw Failure{FailureReason::RequireFailed};
            break;
        }
        case StmtKind::Revert:
            charge(f, gs_.revert, "revert");
            throw Failure{FailureReason::Revert};
        case StmtKind::If:
            if (eval(f, s.expr) != 0)
                block(f, s.body);
            else if (!s.else_body.empty())
                block(f, s.else_body);
            break;
        case StmtKind::Let:
        {
            const auto v = eval(f, s.expr);
            f.scopes.back().emplace_back(s.name, v);
            break;
        }
        case StmtKind::Assign:
            assign(f, s);
            break;
        case StmtKind::Return:
            f.ret = s.has_expr ? eval(f, s.expr) : 0;
            f.returned = true;
            break;
        case StmtKind::Emit:
            for (const auto& a : s.args)
                eval(f, a);
            charge(f, gs_.emit, "emit");
            break;
        case StmtKind::ExprStmt:
            eval(f, s.expr);
            break;
        }
    }

    void assign(Frame& f, const Stmt& s)
    {
        const Expr& target = s.target;
        if (target.kind == ExprKind::Name)
        {
            if (u128* slot = local(f, target.name))
            {
                const auto rhs = eval(f, s.expr);
                if (s.assign_op == AssignOp::Set)
                    *slot = rhs;
                else
                {
                    charge(f, gs_.arith, "arith");
                    *slot = arith(s.assign_op == AssignOp::AddAssign ? BinaryOp::Add : BinaryOp::Sub, *slot, rhs);
                }
                return;
            }
        }
        const u128 key = target.kind == ExprKind::Index ? eval(f, target.operands[0]) : 0;
        const auto rhs = eval(f, s.expr);
        const Slot slot{target.name, key};
        Account& self = state_.at(f.self);
        const u128 old = self.load(slot);
        u128 next = rhs;
        if (s.assign_op != AssignOp::Set)
        {
            charge(f, gs_.sload, "sload");
            charge(f, gs_.arith, "arith");
            next = arith(s.assign_op == AssignOp::AddAssign ? BinaryOp::Add : BinaryOp::Sub, old, rhs);
        }
        if (old == 0 && next != 0)
            charge(f, gs_.sstore_set, "sstore_set");
        else
            charge(f, gs_.sstore_reset, "sstore_reset");
        state_.at(f.self).store(slot, next);
    }

    u128 eval(Frame& f, const Expr& e)
    {
        switch (e.kind)
        {
        case ExprKind::Literal:
            return e.value;
        case ExprKind::Name:
        {
            if (const u128* v = local(f, e.name))
                return *v;
            if (const u128* v = param(f, e.name))
                return *v;
            charge(f, gs_.sload, "sload");
            return state_.at(f.self).load({e.name, 0});
        }
        case ExprKind::Index:
        {
            const auto key = eval(f, e.operands[0]);
            charge(f, gs_.sload, "sload");
            return state_.at(f.self).load({e.name, key});
        }
        case ExprKind::Binary:
            return binary(f, e);
        case ExprKind::Not:
        {
            const auto v = eval(f, e.operands[0]);
            charge(f, gs_.logic, "logic");
            return v == 0 ? 1 : 0;
        }
        case ExprKind::MsgSender:
            return f.sender.value;
        case ExprKind::MsgValue:
            return f.value;
        case ExprKind::This:
            return f.self.value;
        case ExprKind::GasLeft:
            charge(f, gs_.gasleft, "gasleft");
            return f.left;
        case ExprKind::BalanceOf:
        {
            const auto who = eval(f, e.operands[0]);
            charge(f, gs_.balance_of, "balance");
            const auto addr = to_address(who);
            const Account* acct = addr ? state_.find(*addr) : nullptr;
            return acct ? acct->balance : 0;
        }
        case ExprKind::LowCall:
        case ExprKind::DirectCall:
        case ExprKind::Send:
        case ExprKind::Transfer:
            return call(f, e);
        }
        return 0;
    }

    u128 binary(Frame& f, const Expr& e)
    {
        const auto lhs = eval(f, e.operands[0]);
        switch (e.op)
        {
        case BinaryOp::And:
        case BinaryOp::Or:
        {
            charge(f, gs_.logic, "logic");
            const bool decided = e.op == BinaryOp::And ? lhs == 0 : lhs != 0;
            if (decided)
                return lhs != 0 ? 1 : 0;
            return eval(f, e.operands[1]) != 0 ? 1 : 0;
        }
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        {
            const auto rhs = eval(f, e.operands[1]);
            charge(f, gs_.arith, "arith");
            return arith(e.op, lhs, rhs);
        }
        default:
            break;
        }
        const auto rhs = eval(f, e.operands[1]);
        charge(f, gs_.compare, "compare");
        switch (e.op)
        {
        case BinaryOp::Eq:
            return lhs == rhs;
        case BinaryOp::Ne:
            return lhs != rhs;
        case BinaryOp::Lt:
            return lhs < rhs;
        case BinaryOp::Le:
            return lhs <= rhs;
        case BinaryOp::Gt:
            return lhs > rhs;
        case BinaryOp::Ge:
            return lhs >= rhs;
        default:
            return 0;
        }
    }

    u128 call(Frame& f, const Expr& e)
    {
        const auto target_value = eval(f, e.target());
        std::vector<u128> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args)
            args.push_back(eval(f, a));
        const Wei value = e.has_value ? eval(f, e.value_operand()) : 0;
        const std::optional<u128> gas_cap =
            e.has_gas ? std::optional<u128>{eval(f, e.gas_operand())} : std::nullopt;

        CallForm form = CallForm::LowCall;
        if (e.kind == ExprKind::DirectCall)
            form = CallForm::DirectCall;
        else if (e.kind == ExprKind::Send)
            form = CallForm::Send;
        else if (e.kind == ExprKind::Transfer)
            form = CallForm::Transfer;

        charge(f, gs_.call_base, "call");
        if (value > 0)
            charge(f, gs_.value_transfer_surcharge, "value_transfer");

        Gas forwarded = 0;
        if (form == CallForm::LowCall || form == CallForm::DirectCall)
            forwarded = gas_cap ? static_cast<Gas>(std::min<u128>(*gas_cap, f.left)) : f.left;
        const bool stipend_form = form == CallForm::Send || form == CallForm::Transfer;
        const Gas bonus = (stipend_form || value > 0) ? gs_.stipend : 0;

        const auto callee_addr = to_address(target_value);
        const Account* callee = callee_addr ? state_.find(*callee_addr) : nullptr;

        TraceEvent enter;
        enter.kind = TraceEvent::Kind::CallEntered;
        enter.depth = f.depth + 1;
        enter.form = form;
        enter.callee = callee_addr.value_or(Address{});
        enter.callee_has_code = callee && callee->code;
        if (enter.callee_has_code && e.has_function && callee->code->find_function(e.name))
            enter.entry = e.name;
        enter.value = value;
        enter.gas_forwarded = forwarded + bonus;
        trace_.push_back(enter);

        f.left -= forwarded;
        FrameResult r;
        if (!callee)
            r = {Status::failure(FailureReason::Revert), 0, 0};
        else
        {
            Call c;
            c.form = form;
            c.caller = f.self;
            c.callee = *callee_addr;
            if (e.has_function)
                c.function = e.name;
            c.args = std::move(args);
            c.value = value;
            c.limit = forwarded + bonus;
            c.depth = f.depth + 1;
            r = run(c);
        }
        const Gas charged = r.used > bonus ? r.used - bonus : 0;
        f.left += forwarded - charged;

        TraceEvent exit;
        exit.kind = TraceEvent::Kind::CallExited;
        exit.depth = f.depth + 1;
        exit.success = r.status.success;
        exit.gas_used = charged;
        exit.reason = r.status.reason;
        trace_.push_back(exit);

        if (r.status.success)
            return form == CallForm::DirectCall ? r.ret : (form == CallForm::Transfer ? 0 : 1);
        if (form == CallForm::DirectCall || form == CallForm::Transfer)
            throw Failure{r.status.reason};

        TraceEvent swallowed;
        swallowed.kind = TraceEvent::Kind::ExceptionSwallowed;
        swallowed.depth = f.depth;
        swallowed.reason = r.status.reason;
        trace_.push_back(swallowed);
        return 0;
    }

    WorldState& state_;
    const GasSchedule& gs_;
    std::vector<TraceEvent>& trace_;
};

i128 balance_of(const WorldState& state, Address a)
{
    const Account* acct = state.find(a);
    return acct ? static_cast<i128>(acct->balance) : 0;
}

}  // namespace

Outcome execute(WorldState& state, const Transaction& tx, const GasSchedule& schedule,
    std::optional<Address> observe)
{
    Outcome out;
    const Address observed = observe.value_or(tx.actor);
    const i128 before = balance_of(state, observed);

    if (tx.gas_limit < schedule.base_tx)
    {
        out.status = Status::failure(FailureReason::OutOfGas);
        out.gas_consumed = tx.gas_limit;
        state.charge_fee(out.gas_consumed);
        return out;
    }
    TraceEvent base;
    base.kind = TraceEvent::Kind::OpExecuted;
    base.op = "base_tx";
    base.gas_cost = schedule.base_tx;
    out.trace.push_back(base);

    if (!state.find(tx.actor))
    {
        out.status = Status::failure(FailureReason::Revert);
        out.gas_consumed = schedule.base_tx;
        state.charge_fee(out.gas_consumed);
        return out;
    }

    Call call;
    call.form = CallForm::Fallback;
    call.caller = tx.actor;
    call.callee = tx.callee;
    call.function = tx.function;
    call.args = tx.args;
    call.value = tx.value;
    call.limit = tx.gas_limit - schedule.base_tx;
    call.depth = 0;

    Interpreter interp{state, schedule, out.trace};
    const auto r = interp.run(call);
    out.status = r.status;
    if (!r.status.success && r.status.reason == FailureReason::OutOfGas)
        out.gas_consumed = tx.gas_limit;
    else
        out.gas_consumed = schedule.base_tx + r.used;
    if (r.status.success)
        out.balance_delta = balance_of(state, observed) - before;
    state.charge_fee(out.gas_consumed);
    return out;
}

}  // namespace mtsc::vm
