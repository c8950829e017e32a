// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/common.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace mtsc
{
std::string to_string(u128 v)
{
    if (v == 0)
        return "0";
    std::string out;
    while (v != 0)
    {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string to_string(i128 v)
{
    if (v < 0)
        return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
    return to_string(static_cast<u128>(v));
}

std::string to_string(Address a)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "0x";
    out.resize(2 + 16);
    auto v = a.value;
    for (int i = 17; i >= 2; --i)
    {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

u128 parse_u128(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty integer");
    u128 v = 0;
    for (const char c : text)
    {
        if (c == '_')
            continue;
        if (c < '0' || c > '9')
            throw std::invalid_argument("malformed integer: " + std::string{text});
        u128 next = 0;
        if (!checked_mul(v, 10, next) || !checked_add(next, static_cast<u128>(c - '0'), v))
            throw std::out_of_range("integer exceeds 128 bits: " + std::string{text});
    }
    return v;
}

Wei parse_amount(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    const auto space = text.find(' ');
    if (space == std::string_view::npos)
        return parse_u128(text);

    const auto number = parse_u128(trim(text.substr(0, space)));
    const auto unit = trim(text.substr(space + 1));
    Wei scale = 1;
    if (unit == "ether")
        scale = kEther;
    else if (unit == "gwei")
        scale = kGwei;
    else if (unit != "wei")
        throw std::invalid_argument("unknown unit: " + std::string{unit});
    Wei out = 0;
    if (!checked_mul(number, scale, out))
        throw std::out_of_range("amount exceeds 128 bits: " + std::string{text});
    return out;
}

bool checked_add(u128 a, u128 b, u128& out) noexcept
{
    const u128 r = a + b;
    if (r < a)
        return false;
    out = r;
    return true;
}

bool checked_sub(u128 a, u128 b, u128& out) noexcept
{
    if (b > a)
        return false;
    out = a - b;
    return true;
}

bool checked_mul(u128 a, u128 b, u128& out) noexcept
{
    if (a != 0 && b > std::numeric_limits<u128>::max() / a)
        return false;
    out = a * b;
    return true;
}

}  // namespace mtsc
