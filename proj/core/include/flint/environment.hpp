// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flint/ast.hpp"
#include "flint/diagnostics.hpp"
#include "flint/types.hpp"

namespace flint {

struct ParamSig {
    std::string name;
    TypeRef type;
    bool is_implicit = false;
    bool is_inout = false;
    bool has_default = false;
};

/// One function (or initializer, or fallback) as later passes see it.
/// Contract functions carry the protections and typestates of their
/// enclosing behaviour block; struct functions never do.
struct FunctionSig {
    enum class Kind { Function, Initializer, Fallback };

    Kind kind = Kind::Function;
    std::string name;  // empty for init/fallback
    std::vector<ParamSig> params;
    TypeRef return_type = TypeRef::void_();
    bool is_public = false;
    bool is_mutating = false;
    bool is_payable = false;

    std::string owner;  // contract or struct name
    std::vector<std::string> protections;   // as written; contains "any" when open
    std::vector<std::string> state_group;   // normalized: empty = callable in all states
    std::string caller_binding;

    const ast::FunctionDecl* decl = nullptr;
    const ast::BehaviourDecl* behaviour = nullptr;

    bool from_trait = false;  // body embedded from a trait default
    std::string trait_name;
    bool is_stdlib = false;
    bool is_generated = false;  // synthesized property getter

    std::string mangled;  // filled by lowering

    bool has_body() const { return decl && decl->body.has_value(); }
    bool protections_contain_any() const;
    std::string display_name() const;
};

struct PropertySig {
    std::string name;
    TypeRef type;
    bool is_let = false;
    bool is_public = false;
    bool is_visible = false;
    bool has_default = false;
    int index = 0;  // declaration order
    const ast::PropertyDecl* decl = nullptr;
};

struct EventSig {
    std::string name;
    std::vector<PropertySig> fields;
    const ast::EventDecl* decl = nullptr;
};

struct ContractInfo {
    std::string name;
    std::vector<std::string> typestates;  // header order; ordinals are index+1
    std::vector<PropertySig> properties;
    std::vector<EventSig> events;
    std::vector<FunctionSig> functions;  // declaration order across behaviour blocks
    std::vector<const ast::BehaviourDecl*> behaviours;
    const ast::ContractDecl* decl = nullptr;
    int public_init = -1;  // index into functions

    const PropertySig* find_property(const std::string& n) const;
    const EventSig* find_event(const std::string& n) const;
    bool has_typestate(const std::string& n) const;
    int typestate_ordinal(const std::string& n) const;  // 1-based, -1 if unknown
};

struct StructInfo {
    std::string name;
    std::vector<std::string> conformances;
    std::vector<PropertySig> properties;
    std::vector<FunctionSig> functions;  // own members plus embedded trait defaults
    const ast::StructDecl* decl = nullptr;
    bool is_stdlib = false;

    // AST clones created when trait defaults were embedded; owned here.
    std::vector<std::unique_ptr<ast::FunctionDecl>> owned_clones;

    const PropertySig* find_property(const std::string& n) const;
};

struct TraitInfo {
    std::string name;
    bool is_struct_trait = true;
    std::vector<FunctionSig> members;  // has_body() distinguishes defaults
    const ast::TraitDecl* decl = nullptr;
};

struct EnumInfo {
    std::string name;
    std::vector<std::string> cases;
    const ast::EnumDecl* decl = nullptr;

    int case_ordinal(const std::string& n) const;
};

/// How one caller-protection identifier resolved.
struct Protection {
    enum class Kind { Any, AddressProperty, AddressListProperty, Predicate };
    Kind kind = Kind::Any;
    std::string name;  // property or predicate function name
};

class Environment {
public:
    std::map<std::string, ContractInfo> contracts;
    std::map<std::string, StructInfo> structs;
    std::map<std::string, TraitInfo> traits;
    std::map<std::string, EnumInfo> enums;
    std::vector<FunctionSig> globals;  // send, fatalError, assert

    // AST clones created by trait embedding into contracts; owned here.
    std::vector<std::unique_ptr<ast::FunctionDecl>> owned_clones;

    static constexpr const char* kCurrencyType = "Wei";

    bool has_stdlib_currency() const;
    bool is_type_name(const std::string& n) const;

    /// Dynamic types live in memory or storage and travel by reference:
    /// arrays, dictionaries and structs. Enums and basic types are words.
    bool is_dynamic_type(const TypeRef& t) const;

    /// Word footprint of a type when laid out in storage or memory.
    uint64_t type_word_count(const TypeRef& t) const;

    const FunctionSig* find_global(const std::string& name) const;

    /// Candidate member functions with the given name (or initializers when
    /// `name` is empty) on a contract or struct.
    std::vector<const FunctionSig*> functions_named(const std::string& type_name,
                                                    const std::string& name) const;
};

/// Resolution precedence for a protection identifier: `any`, then Address /
/// [Address] properties, then (Address) -> Bool predicate functions.
std::optional<Protection> resolve_protection(const Environment& env, const ContractInfo& contract,
                                             const std::string& identifier);

Environment build_environment(const ast::SourceModule& module, DiagnosticList& diags);

}  // namespace flint
