// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/uint256.hpp"

#include <algorithm>
#include <cstring>

namespace flint {

using u128 = unsigned __int128;

UInt256 UInt256::max() {
    return from_limbs(~0ull, ~0ull, ~0ull, ~0ull);
}

UInt256 UInt256::wrapping_add(const UInt256& o) const {
    UInt256 r;
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = (u128)limbs_[i] + o.limbs_[i] + carry;
        r.limbs_[i] = (uint64_t)s;
        carry = s >> 64;
    }
    return r;
}

UInt256 UInt256::wrapping_sub(const UInt256& o) const {
    UInt256 r;
    u128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = (u128)limbs_[i] - o.limbs_[i] - borrow;
        r.limbs_[i] = (uint64_t)d;
        borrow = (d >> 64) ? 1 : 0;
    }
    return r;
}

UInt256 UInt256::wrapping_mul(const UInt256& o) const {
    // Schoolbook 4x4 keeping the low 4 limbs.
    uint64_t prod[8] = {0};
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j + i < 8; ++j) {
            u128 cur = (u128)prod[i + j] + carry;
            if (j < 4)
                cur += (u128)limbs_[i] * o.limbs_[j];
            prod[i + j] = (uint64_t)cur;
            carry = cur >> 64;
        }
    }
    return from_limbs(prod[0], prod[1], prod[2], prod[3]);
}

std::optional<UInt256> UInt256::checked_add(const UInt256& o) const {
    UInt256 r = wrapping_add(o);
    if (r < *this)
        return std::nullopt;
    return r;
}

std::optional<UInt256> UInt256::checked_sub(const UInt256& o) const {
    if (*this < o)
        return std::nullopt;
    return wrapping_sub(o);
}

std::optional<UInt256> UInt256::checked_mul(const UInt256& o) const {
    uint64_t prod[8] = {0};
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = (u128)prod[i + j] + (u128)limbs_[i] * o.limbs_[j] + carry;
            prod[i + j] = (uint64_t)cur;
            carry = cur >> 64;
        }
        prod[i + 4] = (uint64_t)carry;
    }
    if (prod[4] | prod[5] | prod[6] | prod[7])
        return std::nullopt;
    return from_limbs(prod[0], prod[1], prod[2], prod[3]);
}

std::optional<UInt256> UInt256::checked_div(const UInt256& o) const {
    if (o.is_zero())
        return std::nullopt;
    return divmod(o).first;
}

std::optional<UInt256> UInt256::checked_exp(const UInt256& e) const {
    // Square-and-multiply from the most significant exponent bit; no
    // speculative squares, so an overflow only surfaces when the result
    // really leaves the domain.
    if (e.is_zero())
        return UInt256(1);
    int top = e.highest_bit();
    UInt256 acc(1);
    for (int i = top; i >= 0; --i) {
        auto sq = acc.checked_mul(acc);
        if (!sq)
            return std::nullopt;
        acc = *sq;
        if (e.bit((unsigned)i)) {
            auto m = acc.checked_mul(*this);
            if (!m)
                return std::nullopt;
            acc = *m;
        }
    }
    return acc;
}

int UInt256::highest_bit() const {
    for (int i = 3; i >= 0; --i) {
        if (limbs_[i] != 0)
            return i * 64 + (63 - __builtin_clzll(limbs_[i]));
    }
    return -1;
}

std::pair<UInt256, UInt256> UInt256::divmod(const UInt256& o) const {
    // Shift-subtract long division; at most 256 iterations.
    UInt256 q, rem;
    int top = highest_bit();
    for (int i = top; i >= 0; --i) {
        rem = rem << 1;
        if (bit((unsigned)i))
            rem.limbs_[0] |= 1;
        if (rem >= o) {
            rem = rem.wrapping_sub(o);
            q.limbs_[i / 64] |= 1ull << (i % 64);
        }
    }
    return {q, rem};
}

UInt256 UInt256::operator<<(unsigned n) const {
    if (n >= 256)
        return UInt256();
    UInt256 r;
    unsigned limb = n / 64, bits = n % 64;
    for (int i = 3; i >= 0; --i) {
        uint64_t v = 0;
        int src = i - (int)limb;
        if (src >= 0) {
            v = limbs_[src] << bits;
            if (bits && src > 0)
                v |= limbs_[src - 1] >> (64 - bits);
        }
        r.limbs_[i] = v;
    }
    return r;
}

UInt256 UInt256::operator>>(unsigned n) const {
    if (n >= 256)
        return UInt256();
    UInt256 r;
    unsigned limb = n / 64, bits = n % 64;
    for (int i = 0; i < 4; ++i) {
        uint64_t v = 0;
        int src = i + (int)limb;
        if (src < 4) {
            v = limbs_[src] >> bits;
            if (bits && src < 3)
                v |= limbs_[src + 1] << (64 - bits);
        }
        r.limbs_[i] = v;
    }
    return r;
}

UInt256 UInt256::operator|(const UInt256& o) const {
    return from_limbs(limbs_[0] | o.limbs_[0], limbs_[1] | o.limbs_[1], limbs_[2] | o.limbs_[2],
                      limbs_[3] | o.limbs_[3]);
}

UInt256 UInt256::operator&(const UInt256& o) const {
    return from_limbs(limbs_[0] & o.limbs_[0], limbs_[1] & o.limbs_[1], limbs_[2] & o.limbs_[2],
                      limbs_[3] & o.limbs_[3]);
}

bool UInt256::operator<(const UInt256& o) const {
    for (int i = 3; i >= 0; --i) {
        if (limbs_[i] != o.limbs_[i])
            return limbs_[i] < o.limbs_[i];
    }
    return false;
}

std::string UInt256::to_decimal() const {
    if (is_zero())
        return "0";
    // Peel off 19 decimal digits at a time via 64-bit chunk division.
    constexpr uint64_t kChunk = 10'000'000'000'000'000'000ull;
    UInt256 v = *this;
    std::string out;
    while (!v.is_zero()) {
        u128 rem = 0;
        UInt256 q;
        for (int i = 3; i >= 0; --i) {
            u128 cur = (rem << 64) | v.limbs_[i];
            q.limbs_[i] = (uint64_t)(cur / kChunk);
            rem = cur % kChunk;
        }
        std::string part = std::to_string((uint64_t)rem);
        if (!q.is_zero())
            part.insert(0, 19 - part.size(), '0');
        out.insert(0, part);
        v = q;
    }
    return out;
}

std::string UInt256::to_hex() const {
    static const char* digits = "0123456789abcdef";
    if (is_zero())
        return "0x0";
    std::string out;
    bool started = false;
    for (int i = 63; i >= 0; --i) {
        unsigned nib = (unsigned)((limbs_[i / 16] >> ((i % 16) * 4)) & 0xf);
        if (!started && nib == 0)
            continue;
        started = true;
        out.push_back(digits[nib]);
    }
    return "0x" + out;
}

std::string UInt256::to_hex_padded() const {
    static const char* digits = "0123456789abcdef";
    std::string out = "0x";
    for (int i = 63; i >= 0; --i)
        out.push_back(digits[(limbs_[i / 16] >> ((i % 16) * 4)) & 0xf]);
    return out;
}

std::string UInt256::to_address_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out = "0x";
    for (int i = 39; i >= 0; --i)
        out.push_back(digits[(limbs_[i / 16] >> ((i % 16) * 4)) & 0xf]);
    return out;
}

std::array<uint8_t, 32> UInt256::to_be_bytes() const {
    std::array<uint8_t, 32> out{};
    for (int i = 0; i < 32; ++i)
        out[31 - i] = (uint8_t)(limbs_[i / 8] >> ((i % 8) * 8));
    return out;
}

UInt256 UInt256::from_be_bytes(const uint8_t* data, size_t len) {
    UInt256 r;
    if (len > 32)
        len = 32;
    for (size_t i = 0; i < len; ++i) {
        size_t pos = len - 1 - i;  // byte significance, 0 = least
        r.limbs_[i / 8] |= (uint64_t)data[pos] << ((i % 8) * 8);
    }
    return r;
}

std::optional<UInt256> UInt256::from_decimal(std::string_view s) {
    if (s.empty())
        return std::nullopt;
    UInt256 r;
    for (char c : s) {
        if (c < '0' || c > '9')
            return std::nullopt;
        auto t = r.checked_mul(UInt256(10));
        if (!t)
            return std::nullopt;
        auto u = t->checked_add(UInt256((uint64_t)(c - '0')));
        if (!u)
            return std::nullopt;
        r = *u;
    }
    return r;
}

std::optional<UInt256> UInt256::from_hex(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X"))
        s.remove_prefix(2);
    if (s.empty() || s.size() > 64)
        return std::nullopt;
    UInt256 r;
    for (char c : s) {
        unsigned v;
        if (c >= '0' && c <= '9')
            v = (unsigned)(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = (unsigned)(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = (unsigned)(c - 'A' + 10);
        else
            return std::nullopt;
        r = (r << 4) | UInt256(v);
    }
    return r;
}

}  // namespace flint
