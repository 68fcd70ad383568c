// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flint/types.hpp"
#include "flint/uint256.hpp"

namespace flint::abi {

/// First four bytes of keccak-256 of a canonical signature text such as
/// "transfer(address,uint256)", packed big-endian into a uint32.
uint32_t selector(std::string_view canonical_signature);

std::string selector_hex(uint32_t sel);  // "a9059cbb"

/// Canonical ABI name of a Flint type: Int -> uint256, Address -> address,
/// Bool -> bool, String -> string, [T] -> T[].
std::string canonical_type_name(const TypeRef& type);

/// "name(type1,type2,...)" over the external (non-implicit) parameters.
std::string canonical_signature(const std::string& name, const std::vector<TypeRef>& params);

/// Selector followed by each argument as a 32-byte big-endian word.
std::vector<uint8_t> encode_call(uint32_t sel, const std::vector<UInt256>& args);

struct DecodedCall {
    uint32_t selector = 0;
    std::vector<UInt256> words;
};

/// Exact inverse of encode_call for static arguments. nullopt when the
/// payload is shorter than a selector or not word-aligned after it.
std::optional<DecodedCall> decode_call(const std::vector<uint8_t>& payload);

}  // namespace flint::abi
