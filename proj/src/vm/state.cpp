// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/vm/state.hpp"

#include <algorithm>
#include <sstream>

namespace mtsc::vm
{
u128 Account::load(const Slot& slot) const
{
    const auto it = storage.find(slot);
    return it == storage.end() ? 0 : it->second;
}

void Account::store(const Slot& slot, u128 value)
{
    if (value == 0)
        storage.erase(slot);
    else
        storage[slot] = value;
}

bool Account::operator==(const Account& other) const
{
    const bool same_code = code == other.code || (code && other.code && *code == *other.code);
    return address == other.address && balance == other.balance && kind == other.kind && same_code &&
           storage == other.storage;
}

UnknownSnapshot::UnknownSnapshot(SnapshotId id)
  : std::runtime_error("unknown snapshot " + std::to_string(id))
{}

Address WorldState::create_eoa(Wei balance)
{
    const Address a{next_address_++};
    Account acct;
    acct.address = a;
    acct.balance = balance;
    acct.kind = AccountKind::EOA;
    accounts_.emplace(a, std::move(acct));
    return a;
}

Address WorldState::deploy(std::shared_ptr<const minisol::ContractDef> code, Wei initial_balance)
{
    const Address a{next_address_++};
    Account acct;
    acct.address = a;
    acct.balance = initial_balance;
    acct.kind = AccountKind::Contract;
    acct.code = std::move(code);
    accounts_.emplace(a, std::move(acct));
    return a;
}

const Account* WorldState::find(Address a) const
{
    const auto it = accounts_.find(a);
    return it == accounts_.end() ? nullptr : &it->second;
}

Account* WorldState::find(Address a)
{
    const auto it = accounts_.find(a);
    return it == accounts_.end() ? nullptr : &it->second;
}

const Account& WorldState::at(Address a) const
{
    const auto* acct = find(a);
    if (!acct)
        throw std::out_of_range("no account at " + to_string(a));
    return *acct;
}

Account& WorldState::at(Address a)
{
    auto* acct = find(a);
    if (!acct)
        throw std::out_of_range("no account at " + to_string(a));
    return *acct;
}

Wei WorldState::total_balance() const
{
    Wei sum = 0;
    for (const auto& [_, acct] : accounts_)
        sum += acct.balance;
    return sum;
}

SnapshotId WorldState::snapshot()
{
    const auto id = next_snapshot_++;
    snapshots_.push_back({id, accounts_, next_address_, fee_ledger_});
    return id;
}

void WorldState::restore(SnapshotId id)
{
    const auto it = std::find_if(
        snapshots_.begin(), snapshots_.end(), [id](const Saved& s) { return s.id == id; });
    if (it == snapshots_.end())
        throw UnknownSnapshot(id);
    accounts_ = std::move(it->accounts);
    next_address_ = it->next_address;
    fee_ledger_ = it->fee_ledger;
    snapshots_.erase(it, snapshots_.end());
}

std::string WorldState::serialize() const
{
    std::ostringstream out;
    out << "next=" << next_address_ << " fees=" << to_string(fee_ledger_) << '\n';
    for (const auto& [addr, acct] : accounts_)
    {
        out << to_string(addr) << ' ' << (acct.kind == AccountKind::EOA ? "eoa" : "contract") << ' '
            << to_string(acct.balance);
        if (acct.code)
            out << " code=" << acct.code->name;
        out << '\n';
        for (const auto& [slot, value] : acct.storage)
            out << "  " << slot.first << '[' << to_string(slot.second) << "]=" << to_string(value) << '\n';
    }
    return out.str();
}

std::uint64_t WorldState::hash() const
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : serialize())
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool WorldState::same_accounts(const WorldState& other) const
{
    return next_address_ == other.next_address_ && accounts_ == other.accounts_;
}

bool WorldState::operator==(const WorldState& other) const
{
    return same_accounts(other) && fee_ledger_ == other.fee_ledger_;
}

Address deploy(WorldState& state, const minisol::ContractDef& code, Wei initial_balance)
{
    return state.deploy(std::make_shared<const minisol::ContractDef>(code), initial_balance);
}

}  // namespace mtsc::vm
