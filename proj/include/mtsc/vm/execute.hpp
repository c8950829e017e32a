// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/vm/schedule.hpp"
#include "mtsc/vm/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtsc::vm
{
inline constexpr int kMaxCallDepth = 128;

enum class FailureReason
{
    OutOfGas,
    Revert,
    RequireFailed,
    ArithmeticError,
    BalanceInsufficient,
    DepthExceeded,
};

std::string_view to_string(FailureReason reason);

struct Status
{
    bool success = true;
    FailureReason reason = FailureReason::Revert;  // meaningful only on failure

    static Status ok() { return {}; }
    static Status failure(FailureReason r) { return {false, r}; }

    bool operator==(const Status& o) const { return success == o.success && (success || reason == o.reason); }
};

std::string to_string(const Status& status);

struct Transaction
{
    Address actor;
    Gas gas_limit = 0;
    Address callee;
    /// Function to dispatch; nullopt is a plain value transfer.
    std::optional<std::string> function;
    std::vector<u128> args;
    Wei value = 0;
};

enum class CallForm
{
    LowCall,
    DirectCall,
    Send,
    Transfer,
    Fallback,  // top-level plain value transfer into a contract
};

std::string_view to_string(CallForm form);

struct TraceEvent
{
    enum class Kind
    {
        OpExecuted,
        CallEntered,
        CallExited,
        ExceptionSwallowed,
    };

    Kind kind = Kind::OpExecuted;
    int depth = 0;

    // OpExecuted
    std::string op;
    Gas gas_cost = 0;

    // CallEntered
    CallForm form = CallForm::LowCall;
    Address callee;
    /// Entered function name; empty when the callee's fallback runs or the callee has no code.
    std::string entry;
    bool callee_has_code = false;
    Wei value = 0;
    Gas gas_forwarded = 0;  // includes any stipend

    // CallExited: gas_used is what the caller was charged for the frame.
    bool success = false;
    Gas gas_used = 0;

    // ExceptionSwallowed / failed CallExited
    FailureReason reason = FailureReason::Revert;

    bool operator==(const TraceEvent&) const = default;
};

std::string to_string(const TraceEvent& event);

struct Outcome
{
    Status status;
    Gas gas_consumed = 0;
    /// Signed balance change of the observed account (the actor by default), fees excluded.
    i128 balance_delta = 0;
    std::vector<TraceEvent> trace;

    bool operator==(const Outcome&) const = default;
};

/// Executes one top-level transaction.
///
/// Failures are reported through Outcome::status and never escape. On failure
/// every account effect is rolled back; the gas consumed is still added to the
/// fee ledger. `observe` selects whose balance change is reported as
/// balance_delta (defaults to tx.actor).
Outcome execute(WorldState& state, const Transaction& tx, const GasSchedule& schedule,
    std::optional<Address> observe = std::nullopt);

/// True if the trace evaluated gasleft() anywhere.
bool reads_gas_left(const std::vector<TraceEvent>& trace);
bool swallows_exception(const std::vector<TraceEvent>& trace);

}  // namespace mtsc::vm
