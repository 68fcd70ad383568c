// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/keccak.hpp"

#include <cstring>

namespace flint {

namespace {

constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808aull, 0x8000000080008000ull,
    0x000000000000808bull, 0x0000000080000001ull, 0x8000000080008081ull, 0x8000000000008009ull,
    0x000000000000008aull, 0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000aull,
    0x000000008000808bull, 0x800000000000008bull, 0x8000000000008089ull, 0x8000000000008003ull,
    0x8000000000008002ull, 0x8000000000000080ull, 0x000000000000800aull, 0x800000008000000aull,
    0x8000000080008081ull, 0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull,
};

constexpr int kRotations[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

constexpr int kPiLanes[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                              15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline uint64_t rotl(uint64_t x, int n) {
    return (x << n) | (x >> (64 - n));
}

void keccak_f1600(uint64_t state[25]) {
    for (int round = 0; round < 24; ++round) {
        // theta
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        for (int x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
        for (int i = 0; i < 25; ++i)
            state[i] ^= d[i % 5];

        // rho + pi
        uint64_t cur = state[1];
        for (int i = 0; i < 24; ++i) {
            int lane = kPiLanes[i];
            uint64_t tmp = state[lane];
            state[lane] = rotl(cur, kRotations[i]);
            cur = tmp;
        }

        // chi
        for (int y = 0; y < 25; y += 5) {
            uint64_t row[5];
            std::memcpy(row, &state[y], sizeof(row));
            for (int x = 0; x < 5; ++x)
                state[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }

        // iota
        state[0] ^= kRoundConstants[round];
    }
}

}  // namespace

std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t len) {
    constexpr size_t kRate = 136;  // 1088-bit rate for 256-bit output
    uint64_t state[25] = {0};
    uint8_t block[kRate];

    // absorb full blocks
    while (len >= kRate) {
        for (size_t i = 0; i < kRate / 8; ++i) {
            uint64_t lane;
            std::memcpy(&lane, data + i * 8, 8);
            state[i] ^= lane;
        }
        keccak_f1600(state);
        data += kRate;
        len -= kRate;
    }

    // final block with 0x01 ... 0x80 padding
    std::memset(block, 0, kRate);
    if (len)
        std::memcpy(block, data, len);
    block[len] = 0x01;
    block[kRate - 1] |= 0x80;
    for (size_t i = 0; i < kRate / 8; ++i) {
        uint64_t lane;
        std::memcpy(&lane, block + i * 8, 8);
        state[i] ^= lane;
    }
    keccak_f1600(state);

    std::array<uint8_t, 32> out;
    std::memcpy(out.data(), state, 32);
    return out;
}

std::array<uint8_t, 32> keccak256(std::string_view text) {
    return keccak256(reinterpret_cast<const uint8_t*>(text.data()), text.size());
}

}  // namespace flint
