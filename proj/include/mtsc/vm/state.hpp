// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/common.hpp"
#include "mtsc/minisol/ast.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mtsc::vm
{
enum class AccountKind
{
    EOA,
    Contract,
};

/// Storage slot: state variable name plus map key (0 for scalars).
using Slot = std::pair<std::string, u128>;

struct Account
{
    Address address;
    Wei balance = 0;
    AccountKind kind = AccountKind::EOA;
    std::shared_ptr<const minisol::ContractDef> code;
    /// Zero-valued slots are never stored, so equal contents compare equal.
    std::map<Slot, u128> storage;

    u128 load(const Slot& slot) const;
    void store(const Slot& slot, u128 value);

    bool operator==(const Account& other) const;
};

using SnapshotId = std::uint64_t;

class UnknownSnapshot : public std::runtime_error
{
public:
    explicit UnknownSnapshot(SnapshotId id);
};

/// Accounts, the gas fee ledger and the address counter: the whole execution context.
///
/// A WorldState is single-owner. Copying one yields an independent state.
class WorldState
{
public:
    Address create_eoa(Wei balance);
    Address deploy(std::shared_ptr<const minisol::ContractDef> code, Wei initial_balance);

    const Account* find(Address a) const;
    Account* find(Address a);
    const Account& at(Address a) const;
    Account& at(Address a);

    const std::map<Address, Account>& accounts() const noexcept { return accounts_; }
    std::map<Address, Account>& accounts() noexcept { return accounts_; }

    /// Next address that create_eoa/deploy will hand out.
    Address peek_next_address() const noexcept { return Address{next_address_}; }

    /// Gas charged to top-level transactions so far, in gas units at unit price.
    u128 fee_ledger() const noexcept { return fee_ledger_; }
    void charge_fee(Gas gas) noexcept { fee_ledger_ += gas; }

    Wei total_balance() const;

    /// Saves the full state. Ids are consumed by restore in LIFO order.
    SnapshotId snapshot();
    /// Restores the state saved under `id` and discards it and every later snapshot.
    void restore(SnapshotId id);
    std::size_t snapshot_depth() const noexcept { return snapshots_.size(); }

    /// Canonical text rendering of accounts, storage, counter and fee ledger.
    std::string serialize() const;
    /// FNV-1a over serialize().
    std::uint64_t hash() const;

    /// Equality of everything except the fee ledger and the snapshot stack.
    bool same_accounts(const WorldState& other) const;

    bool operator==(const WorldState& other) const;

private:
    struct Saved
    {
        SnapshotId id;
        std::map<Address, Account> accounts;
        std::uint64_t next_address;
        u128 fee_ledger;
    };

    std::map<Address, Account> accounts_;
    std::uint64_t next_address_ = 1;
    u128 fee_ledger_ = 0;
    std::vector<Saved> snapshots_;
    SnapshotId next_snapshot_ = 1;
};

/// Deploys `code` at a fresh sequential address.
Address deploy(WorldState& state, const minisol::ContractDef& code, Wei initial_balance);

}  // namespace mtsc::vm
