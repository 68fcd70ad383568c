// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/abi.hpp"

#include "flint/keccak.hpp"

namespace flint::abi {

uint32_t selector(std::string_view canonical_signature) {
    auto hash = keccak256(canonical_signature);
    return ((uint32_t)hash[0] << 24) | ((uint32_t)hash[1] << 16) | ((uint32_t)hash[2] << 8) |
           (uint32_t)hash[3];
}

std::string selector_hex(uint32_t sel) {
    static const char* digits = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 0; i < 8; ++i)
        out[i] = digits[(sel >> ((7 - i) * 4)) & 0xf];
    return out;
}

std::string canonical_type_name(const TypeRef& type) {
    switch (type.kind) {
    case TypeRef::Kind::Int:
        return "uint256";
    case TypeRef::Kind::Address:
        return "address";
    case TypeRef::Kind::Bool:
        return "bool";
    case TypeRef::Kind::String:
        return "string";
    case TypeRef::Kind::Array:
        return canonical_type_name(type.args[0]) + "[]";
    case TypeRef::Kind::FixedArray:
        return canonical_type_name(type.args[0]) + "[" + std::to_string(type.fixed_size) + "]";
    case TypeRef::Kind::Named:
        // enums travel as their raw ordinal
        return "uint256";
    default:
        return "uint256";
    }
}

std::string canonical_signature(const std::string& name, const std::vector<TypeRef>& params) {
    std::string sig = name + "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i)
            sig += ",";
        sig += canonical_type_name(params[i]);
    }
    sig += ")";
    return sig;
}

std::vector<uint8_t> encode_call(uint32_t sel, const std::vector<UInt256>& args) {
    std::vector<uint8_t> out;
    out.reserve(4 + args.size() * 32);
    out.push_back((uint8_t)(sel >> 24));
    out.push_back((uint8_t)(sel >> 16));
    out.push_back((uint8_t)(sel >> 8));
    out.push_back((uint8_t)sel);
    for (const auto& a : args) {
        auto bytes = a.to_be_bytes();
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

std::optional<DecodedCall> decode_call(const std::vector<uint8_t>& payload) {
    if (payload.size() < 4 || (payload.size() - 4) % 32 != 0)
        return std::nullopt;
    DecodedCall d;
    d.selector = ((uint32_t)payload[0] << 24) | ((uint32_t)payload[1] << 16) |
                 ((uint32_t)payload[2] << 8) | (uint32_t)payload[3];
    for (size_t off = 4; off < payload.size(); off += 32)
        d.words.push_back(UInt256::from_be_bytes(payload.data() + off, 32));
    return d;
}

}  // namespace flint::abi
