// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/gas_oracle/oracle.hpp"

#include <cmath>

namespace mtsc::gas_oracle
{
using vm::CallForm;
using vm::FailureReason;
using vm::TraceEvent;

NeverSucceeds::NeverSucceeds(FailureReason reason)
  : std::runtime_error("transaction fails at the block gas limit: " + std::string{vm::to_string(reason)}),
    reason_{reason}
{}

namespace
{
vm::Outcome scratch_run(WorldState& state, Transaction tx, Gas limit, const GasSchedule& schedule)
{
    tx.gas_limit = limit;
    const auto id = state.snapshot();
    auto out = vm::execute(state, tx, schedule);
    state.restore(id);
    return out;
}

Gas stipend_path_gas(const std::vector<TraceEvent>& trace)
{
    Gas total = 0;
    std::vector<bool> counted;
    bool inside = false;
    for (const auto& e : trace)
    {
        if (e.kind == TraceEvent::Kind::CallEntered)
        {
            const bool count = !inside && e.form != CallForm::DirectCall;
            counted.push_back(count);
            inside = inside || count;
        }
        else if (e.kind == TraceEvent::Kind::CallExited && !counted.empty())
        {
            if (counted.back())
            {
                total += e.gas_used;
                inside = false;
            }
            counted.pop_back();
        }
    }
    return total;
}
}  // namespace

Gas default_initial_estimator(WorldState& state, const Transaction& tx, const GasSchedule& schedule)
{
    const auto out = scratch_run(state, tx, schedule.block_gas_limit, schedule);
    if (!out.status.success)
        throw NeverSucceeds(out.status.reason);
    const Gas inner = stipend_path_gas(out.trace);
    const Gas estimate = out.gas_consumed > inner ? out.gas_consumed - inner : 0;
    return std::max(estimate, schedule.base_tx);
}

IntrinsicGas estimate_intrinsic_gas(WorldState& state, const Transaction& tx, const GasSchedule& schedule,
    const InitialEstimator& initial, double growth)
{
    if (!(growth > 1.0))
        throw std::invalid_argument("growth factor must exceed 1");
    const Gas block = schedule.block_gas_limit;
    Gas limit = std::clamp<Gas>(initial(state, tx, schedule), 1, block);

    IntrinsicGas result;
    for (;;)
    {
        ++result.trials;
        const auto out = scratch_run(state, tx, limit, schedule);
        if (out.status.success)
        {
            result.value = out.gas_consumed;
            break;
        }
        if (limit == block)
            throw NeverSucceeds(out.status.reason);
        const auto grown = static_cast<Gas>(std::ceil(static_cast<double>(limit) * growth));
        limit = std::min(block, std::max(grown, limit + 1));
    }

    const auto at = scratch_run(state, tx, result.value, schedule);
    const bool below_fails = result.value == 0 ||
        scratch_run(state, tx, result.value - 1, schedule).status == vm::Status::failure(FailureReason::OutOfGas);
    result.converged = at.status.success && at.gas_consumed == result.value && below_fails;
    return result;
}

AllocationPlan allocate_increasing(Gas gc, int count, Gas block_gas_limit)
{
    if (gc < 1)
        throw std::invalid_argument("gc must be at least 1");
    AllocationPlan plan;
    plan.direction = Direction::Increasing;
    plan.step = gc;
    plan.n = count;
    for (Gas k = 2; static_cast<int>(plan.limits.size()) < count; ++k)
    {
        if (gc > block_gas_limit / k)
            break;
        plan.limits.push_back(gc * k);
    }
    plan.warning = gc > block_gas_limit / 2;
    return plan;
}

AllocationPlan allocate_reducing(Gas gc, int n)
{
    if (gc < 1 || n < 1)
        throw std::invalid_argument("gc and n must be at least 1");
    AllocationPlan plan;
    plan.direction = Direction::Reducing;
    plan.n = n;
    plan.step = std::max<Gas>(1, gc / static_cast<Gas>(n));
    for (Gas taken = plan.step; taken <= gc; taken += plan.step)
        plan.limits.push_back(gc - taken);
    return plan;
}

}  // namespace mtsc::gas_oracle
