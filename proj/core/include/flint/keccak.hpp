// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace flint {

/// keccak-256 (original Keccak padding 0x01, as used for selectors and
/// storage addressing on Ethereum; not FIPS-202 SHA3).
std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t len);
std::array<uint8_t, 32> keccak256(std::string_view text);

}  // namespace flint
