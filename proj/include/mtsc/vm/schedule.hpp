// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/common.hpp"

#include <string>
#include <string_view>

namespace mtsc::vm
{
/// Per-operation gas prices. Values other than the storage costs and the
/// stipend are Ethereum-like magnitudes; nothing downstream depends on them.
struct GasSchedule
{
    Gas base_tx = 21000;
    Gas dispatch = 100;
    Gas arith = 3;
    Gas compare = 3;
    Gas logic = 3;
    Gas sload = 200;
    Gas sstore_set = 20000;   // zero -> nonzero
    Gas sstore_reset = 5000;  // every other write
    Gas call_base = 700;
    Gas value_transfer_surcharge = 9000;
    Gas stipend = 2300;
    Gas emit = 375;
    Gas require = 10;
    Gas revert = 0;
    Gas balance_of = 20;
    Gas gasleft = 2;
    Gas block_gas_limit = 30'000'000;

    bool operator==(const GasSchedule&) const = default;
};

class ScheduleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Throws ScheduleError unless sstore_set > sstore_reset and base_tx <= block_gas_limit.
void check(const GasSchedule& schedule);

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and malformed
/// values are rejected, missing keys keep their defaults.
GasSchedule parse_schedule(std::string_view text);
GasSchedule load_schedule(const std::string& path);

std::string format_schedule(const GasSchedule& schedule);

}  // namespace mtsc::vm
