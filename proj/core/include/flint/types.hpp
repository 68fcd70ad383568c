// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flint {

/// A resolved Flint type. Equality is structural; there is no subtyping.
struct TypeRef {
    enum class Kind {
        Error,  // propagated after a diagnostic; compares equal to nothing real
        Void,
        Int,
        Bool,
        Address,
        String,
        SelfType,    // `Self` inside traits
        Named,       // struct, contract, trait or enum name
        Array,       // [T]
        FixedArray,  // T[n]
        Dictionary,  // [K: V]
    };

    Kind kind = Kind::Error;
    std::string name;            // Named
    std::vector<TypeRef> args;   // element / key+value types
    uint64_t fixed_size = 0;     // FixedArray length

    bool operator==(const TypeRef&) const = default;

    bool is_error() const { return kind == Kind::Error; }
    bool is_void() const { return kind == Kind::Void; }
    bool is_numeric() const { return kind == Kind::Int; }
    bool is_basic() const {
        return kind == Kind::Int || kind == Kind::Bool || kind == Kind::Address ||
               kind == Kind::String || kind == Kind::Void;
    }
    bool is_collection() const {
        return kind == Kind::Array || kind == Kind::FixedArray || kind == Kind::Dictionary;
    }

    std::string to_string() const;

    static TypeRef error() { return {}; }
    static TypeRef void_() { return make(Kind::Void); }
    static TypeRef int_() { return make(Kind::Int); }
    static TypeRef bool_() { return make(Kind::Bool); }
    static TypeRef address() { return make(Kind::Address); }
    static TypeRef string() { return make(Kind::String); }
    static TypeRef self_type() { return make(Kind::SelfType); }
    static TypeRef named(std::string n) {
        TypeRef t = make(Kind::Named);
        t.name = std::move(n);
        return t;
    }
    static TypeRef array(TypeRef elem) {
        TypeRef t = make(Kind::Array);
        t.args.push_back(std::move(elem));
        return t;
    }
    static TypeRef fixed_array(TypeRef elem, uint64_t n) {
        TypeRef t = make(Kind::FixedArray);
        t.args.push_back(std::move(elem));
        t.fixed_size = n;
        return t;
    }
    static TypeRef dictionary(TypeRef key, TypeRef value) {
        TypeRef t = make(Kind::Dictionary);
        t.args.push_back(std::move(key));
        t.args.push_back(std::move(value));
        return t;
    }

private:
    static TypeRef make(Kind k) {
        TypeRef t;
        t.kind = k;
        return t;
    }
};

}  // namespace flint
