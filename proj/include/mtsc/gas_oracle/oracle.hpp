// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/vm/execute.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace mtsc::gas_oracle
{
using vm::GasSchedule;
using vm::Transaction;
using vm::WorldState;

struct IntrinsicGas
{
    Gas value = 0;
    /// Executions spent searching for the first success.
    int trials = 0;
    /// value succeeds with consumption == value and value - 1 runs out of gas.
    bool converged = false;
};

class NeverSucceeds : public std::runtime_error
{
public:
    explicit NeverSucceeds(vm::FailureReason reason);
    vm::FailureReason reason() const noexcept { return reason_; }

private:
    vm::FailureReason reason_;
};

/// Rough first guess at a transaction's cost. The state must be left as found.
using InitialEstimator = std::function<Gas(WorldState&, const Transaction&, const GasSchedule&)>;

/// Consumption of a block-limit run, minus the gas charged for lowcall, send
/// and transfer frames (outermost only), floored at base_tx. Underestimates
/// whenever such frames do real work.
Gas default_initial_estimator(WorldState& state, const Transaction& tx, const GasSchedule& schedule);

/// Runs tx.gas_limit = estimate, then keeps multiplying the limit by `growth`
/// (capped at the block limit) until a run succeeds; returns that run's
/// consumption. tx.gas_limit is ignored. Every run happens on a snapshot that
/// is restored, so the state is unchanged on return.
IntrinsicGas estimate_intrinsic_gas(WorldState& state, const Transaction& tx, const GasSchedule& schedule,
    const InitialEstimator& initial = default_initial_estimator, double growth = 1.5);

enum class Direction
{
    Increasing,
    Reducing,
};

struct AllocationPlan
{
    Direction direction = Direction::Increasing;
    std::vector<Gas> limits;
    Gas step = 0;
    int n = 0;
    /// Set when an increasing plan is empty because 2 * gc exceeds the block limit.
    bool warning = false;
};

/// gc * 2, gc * 3, ... up to the block limit, at most `count` entries.
AllocationPlan allocate_increasing(Gas gc, int count, Gas block_gas_limit);

/// gc - step, gc - 2 * step, ... down to 0 where step = max(1, gc / n).
AllocationPlan allocate_reducing(Gas gc, int n);

}  // namespace mtsc::gas_oracle
