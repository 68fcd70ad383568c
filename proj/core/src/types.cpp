// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/types.hpp"

namespace flint {

std::string TypeRef::to_string() const {
    switch (kind) {
    case Kind::Error:
        return "<error>";
    case Kind::Void:
        return "Void";
    case Kind::Int:
        return "Int";
    case Kind::Bool:
        return "Bool";
    case Kind::Address:
        return "Address";
    case Kind::String:
        return "String";
    case Kind::SelfType:
        return "Self";
    case Kind::Named:
        return name;
    case Kind::Array:
        return "[" + args[0].to_string() + "]";
    case Kind::FixedArray:
        return args[0].to_string() + "[" + std::to_string(fixed_size) + "]";
    case Kind::Dictionary:
        return "[" + args[0].to_string() + ": " + args[1].to_string() + "]";
    }
    return "<?>";
}

}  // namespace flint
