// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string_view>

#include "common.hpp"

namespace vgas {

using Hash256 = std::array<std::uint8_t, 32>;

namespace detail {

inline constexpr std::array<std::uint64_t, 24> keccak_round_constants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

inline constexpr std::array<int, 25> keccak_rotations = {
    0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14,
};

inline void keccak_f1600(std::array<std::uint64_t, 25>& a) noexcept
{
    for (const auto rc : keccak_round_constants)
    {
        // theta
        std::array<std::uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const auto d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                a[y + x] ^= d;
        }

        // rho + pi
        std::array<std::uint64_t, 25> b{};
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(a[x + 5 * y], keccak_rotations[x + 5 * y]);

        // chi
        for (int y = 0; y < 25; y += 5)
            for (int x = 0; x < 5; ++x)
                a[y + x] = b[y + x] ^ (~b[y + (x + 1) % 5] & b[y + (x + 2) % 5]);

        // iota
        a[0] ^= rc;
    }
}

}  // namespace detail

/// Keccak-256 as used by Ethereum (original Keccak padding, not FIPS-202 SHA3).
inline Hash256 keccak256(ByteView data) noexcept
{
    constexpr std::size_t rate = 136;
    std::array<std::uint64_t, 25> state{};

    auto absorb = [&state](const std::uint8_t* block) {
        for (std::size_t i = 0; i < rate / 8; ++i)
        {
            std::uint64_t lane = 0;
            for (int j = 7; j >= 0; --j)
                lane = lane << 8 | block[i * 8 + static_cast<std::size_t>(j)];
            state[i] ^= lane;
        }
        detail::keccak_f1600(state);
    };

    std::size_t offset = 0;
    for (; offset + rate <= data.size(); offset += rate)
        absorb(data.data() + offset);

    std::array<std::uint8_t, rate> last{};
    const auto tail = data.size() - offset;
    for (std::size_t i = 0; i < tail; ++i)
        last[i] = data[offset + i];
    last[tail] ^= 0x01;
    last[rate - 1] ^= 0x80;
    absorb(last.data());

    Hash256 out{};
    for (std::size_t i = 0; i < 32; ++i)
        out[i] = static_cast<std::uint8_t>(state[i / 8] >> (8 * (i % 8)));
    return out;
}

inline Hash256 keccak256(std::string_view text) noexcept
{
    return keccak256(ByteView{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

}  // namespace vgas
