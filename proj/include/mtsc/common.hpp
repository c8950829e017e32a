// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mtsc
{
using u128 = unsigned __int128;
using i128 = __int128;

/// Gas units. 64 bits is plenty: the block gas limit is a few tens of millions.
using Gas = std::uint64_t;

/// Amounts of ether, in wei.
using Wei = u128;

inline constexpr Wei kGwei = 1'000'000'000;
inline constexpr Wei kEther = kGwei * kGwei;

/// Opaque account identifier. Allocated sequentially by the world state.
struct Address
{
    std::uint64_t value = 0;

    auto operator<=>(const Address&) const = default;
};

std::string to_string(u128 v);
std::string to_string(i128 v);
std::string to_string(Address a);

/// Parses a decimal integer that must fit in 128 bits.
/// Throws std::invalid_argument on malformed input and std::out_of_range on overflow.
u128 parse_u128(std::string_view text);

/// Parses "<integer> [wei|gwei|ether]". A bare integer is in wei.
Wei parse_amount(std::string_view text);

/// Checked arithmetic. Each returns false on overflow/underflow and leaves `out` untouched.
bool checked_add(u128 a, u128 b, u128& out) noexcept;
bool checked_sub(u128 a, u128 b, u128& out) noexcept;
bool checked_mul(u128 a, u128 b, u128& out) noexcept;

}  // namespace mtsc

template <>
struct std::hash<mtsc::Address>
{
    std::size_t operator()(const mtsc::Address& a) const noexcept
    {
        return std::hash<std::uint64_t>{}(a.value);
    }
};
