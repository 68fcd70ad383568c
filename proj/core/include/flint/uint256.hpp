// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace flint {

/// Unsigned 256-bit integer, the word type of the whole toolchain: every
/// value the VM touches (integers, addresses, booleans, storage slots) is
/// one of these. Little-endian limb order.
class UInt256 {
public:
    constexpr UInt256() = default;
    constexpr UInt256(uint64_t v) : limbs_{v, 0, 0, 0} {}

    static constexpr UInt256 from_limbs(uint64_t l0, uint64_t l1, uint64_t l2, uint64_t l3) {
        UInt256 r;
        r.limbs_ = {l0, l1, l2, l3};
        return r;
    }
    static UInt256 max();

    // Wrapping arithmetic, mod 2^256.
    UInt256 wrapping_add(const UInt256& o) const;
    UInt256 wrapping_sub(const UInt256& o) const;
    UInt256 wrapping_mul(const UInt256& o) const;

    // Checked arithmetic: nullopt on overflow/underflow or division by zero.
    std::optional<UInt256> checked_add(const UInt256& o) const;
    std::optional<UInt256> checked_sub(const UInt256& o) const;
    std::optional<UInt256> checked_mul(const UInt256& o) const;
    std::optional<UInt256> checked_div(const UInt256& o) const;  // floor division
    std::optional<UInt256> checked_exp(const UInt256& e) const;

    // (quotient, remainder); divisor must be nonzero.
    std::pair<UInt256, UInt256> divmod(const UInt256& o) const;

    UInt256 operator<<(unsigned n) const;
    UInt256 operator>>(unsigned n) const;
    UInt256 operator|(const UInt256& o) const;
    UInt256 operator&(const UInt256& o) const;

    bool operator==(const UInt256& o) const = default;
    bool operator<(const UInt256& o) const;
    bool operator<=(const UInt256& o) const { return !(o < *this); }
    bool operator>(const UInt256& o) const { return o < *this; }
    bool operator>=(const UInt256& o) const { return !(*this < o); }

    bool is_zero() const { return limbs_[0] == 0 && limbs_[1] == 0 && limbs_[2] == 0 && limbs_[3] == 0; }
    bool bit(unsigned i) const { return (limbs_[i / 64] >> (i % 64)) & 1; }
    int highest_bit() const;  // -1 when zero
    uint64_t low64() const { return limbs_[0]; }
    bool fits_u64() const { return limbs_[1] == 0 && limbs_[2] == 0 && limbs_[3] == 0; }

    std::string to_decimal() const;
    std::string to_hex() const;         // 0x-prefixed, no leading zeros ("0x0" for zero)
    std::string to_hex_padded() const;  // 0x + 64 hex digits
    std::string to_address_hex() const; // 0x + 40 hex digits (low 160 bits)

    std::array<uint8_t, 32> to_be_bytes() const;
    static UInt256 from_be_bytes(const uint8_t* data, size_t len);  // len <= 32, left-padded

    static std::optional<UInt256> from_decimal(std::string_view s);
    static std::optional<UInt256> from_hex(std::string_view s);  // with or without 0x

    const std::array<uint64_t, 4>& limbs() const { return limbs_; }

private:
    std::array<uint64_t, 4> limbs_{0, 0, 0, 0};
};

}  // namespace flint
