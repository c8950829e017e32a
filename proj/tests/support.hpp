// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/minisol/parser.hpp"
#include "mtsc/vm/execute.hpp"

#include <map>
#include <string>

namespace mtsc::test
{
inline const std::string kCorpus = MTSC_CORPUS_DIR;
inline const vm::GasSchedule kSchedule;

inline constexpr auto kHeavy = R"(
contract Heavy {
    uint hits;
    fallback payable { hits += 1; }
})";

struct World
{
    vm::WorldState state;
    std::map<std::string, Address> contracts;

    void load(const minisol::SourceUnit& unit, Wei balance = 0)
    {
        for (const auto& c : unit.contracts)
            contracts[c.name] = vm::deploy(state, c, balance);
    }
    void load_file(const std::string& corpus_name, Wei balance = 0)
    {
        load(minisol::parse_file(kCorpus + "/" + corpus_name), balance);
    }
    Address operator[](const std::string& name) const { return contracts.at(name); }
};

inline vm::Transaction call(Address actor, Address callee, std::string fn, std::vector<u128> args = {},
    Wei value = 0, Gas gas = kSchedule.block_gas_limit)
{
    vm::Transaction tx;
    tx.actor = actor;
    tx.callee = callee;
    tx.function = std::move(fn);
    tx.args = std::move(args);
    tx.value = value;
    tx.gas_limit = gas;
    return tx;
}

}  // namespace mtsc::test
