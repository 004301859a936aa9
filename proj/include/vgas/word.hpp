// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "common.hpp"

namespace vgas {

static_assert(sizeof(boost::multiprecision::limb_type) == 8, "64-bit limbs expected");

/// 256-bit EVM machine word. Arithmetic wraps modulo 2^256.
using Word = boost::multiprecision::uint256_t;
using Word512 = boost::multiprecision::uint512_t;

inline const Word kWordMax = ~Word{0};
inline const Word kSignBit = Word{1} << 255;

/// Interprets up to 32 big-endian bytes; shorter input is left-padded.
inline Word word_from_be(ByteView bytes)
{
    std::array<std::uint64_t, 4> limbs{};  // little-endian limbs
    const auto n = std::min<std::size_t>(bytes.size(), 32);
    const auto* p = bytes.data() + (bytes.size() - n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto k = n - 1 - i;  // byte index from the least significant end
        limbs[k / 8] |= std::uint64_t{p[i]} << (8 * (k % 8));
    }
    Word w;
    auto& be = w.backend();
    be.resize(4, 4);
    std::copy(limbs.begin(), limbs.end(), be.limbs());
    be.normalize();
    return w;
}

inline std::array<std::uint8_t, 32> word_to_be(const Word& w)
{
    std::array<std::uint8_t, 32> out{};
    const auto& be = w.backend();
    for (std::size_t l = 0; l < be.size(); ++l)
    {
        const std::uint64_t v = be.limbs()[l];
        for (std::size_t b = 0; b < 8; ++b)
            out[31 - (l * 8 + b)] = static_cast<std::uint8_t>(v >> (8 * b));
    }
    return out;
}

inline bool is_negative(const Word& w) { return (w & kSignBit) != 0; }
inline Word negate(const Word& w) { return ~w + 1; }

/// Fits the value in a uint64 when it is small enough; otherwise saturates.
inline std::uint64_t saturate_u64(const Word& w)
{
    if (w > std::numeric_limits<std::uint64_t>::max())
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(w);
}

inline std::string to_hex(const Word& w)
{
    const auto be = word_to_be(w);
    return to_hex(ByteView{be}, true);
}

/// Number of significant bytes (EXP pricing).
inline unsigned byte_length(const Word& w)
{
    if (w == 0)
        return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(w) / 8 + 1);
}

/// 160-bit account address kept in the low bits of a Word.
using Address = Word;

inline const Word kAddressMask = (Word{1} << 160) - 1;

inline std::string address_hex(const Address& a)
{
    const auto be = word_to_be(a);
    return to_hex(ByteView{be}.subspan(12), true);
}

}  // namespace vgas
