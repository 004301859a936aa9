// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vgas {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Gas units. Signed so that differences (diff, refund arithmetic) stay natural.
using Gas = std::int64_t;

/// Sentinel meaning "consumes all remaining gas" (INVALID and undefined opcodes).
inline constexpr Gas kAllRemainingGas = std::numeric_limits<Gas>::max();

/// Block gas limit used when none is configured.
inline constexpr Gas kDefaultGasLimit = 80'039'143;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HexError : public Error {
public:
    using Error::Error;
};

inline int hex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

/// Parses ASCII hex with an optional 0x prefix and surrounding whitespace.
inline Bytes from_hex(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        text.remove_prefix(2);
    if (text.size() % 2 != 0)
        throw HexError("odd-length hex string (" + std::to_string(text.size()) + " digits)");

    Bytes out;
    out.reserve(text.size() / 2);
    for (std::size_t i = 0; i < text.size(); i += 2)
    {
        const int hi = hex_digit(text[i]);
        const int lo = hex_digit(text[i + 1]);
        if (hi < 0 || lo < 0)
            throw HexError("invalid hex digit at position " + std::to_string(hi < 0 ? i : i + 1));
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

inline std::string to_hex(ByteView bytes, bool prefix = false)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2 + 2);
    if (prefix)
        out += "0x";
    for (const auto b : bytes)
    {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

}  // namespace vgas
