// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flint/source.hpp"
#include "flint/types.hpp"

namespace flint {
struct FunctionSig;  // environment.hpp
}

namespace flint::ast {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinaryOp {
    Add, Sub, Mul, Div, Pow,
    WrapAdd, WrapSub, WrapMul,
    Lt, Le, Gt, Ge, Eq, Ne,
    And, Or,
    Assign, AddAssign, SubAssign, MulAssign, DivAssign,
};

bool is_assignment(BinaryOp op);
bool is_compound_assignment(BinaryOp op);
std::string_view binary_op_text(BinaryOp op);

enum class ExprKind {
    Identifier,
    SelfRef,
    IntLit,
    AddressLit,
    StringLit,
    BoolLit,
    ArrayLit,  // []
    DictLit,   // [:]
    Binary,
    Call,       // callee is Identifier (free/constructor) or Member (method)
    Member,     // lhs.text
    Subscript,  // lhs[index]
    Inout,      // &lhs
    Range,      // (lhs..<rhs) / (lhs...rhs)
    Try,        // try lhs
};

/// How an identifier resolved during analysis.
enum class SymbolKind {
    Unresolved,
    Local,
    Parameter,
    CallerBinding,
    StateProperty,  // property of the enclosing contract or struct
    EnumType,
    TypeName,
    FunctionName,  // bare function reference (only as a call callee)
};

struct CallArg {
    std::string label;  // empty when positional
    ExprPtr value;
    SourceSpan span;
};

struct Expr {
    ExprKind kind;
    SourceSpan span;

    std::string text;  // identifier name / member name / literal text
    bool bool_value = false;
    bool has_fraction = false;  // IntLit with a '.' (no fixed-point type exists)

    BinaryOp op{};
    ExprPtr lhs;
    ExprPtr rhs;
    bool range_closed = false;

    ExprPtr callee;
    std::vector<CallArg> args;

    // ---- analysis annotations ----
    mutable TypeRef type;
    mutable SymbolKind symbol = SymbolKind::Unresolved;
    mutable const FunctionSig* resolved_callee = nullptr;
    mutable bool is_constructor_call = false;

    static ExprPtr make(ExprKind k, SourceSpan span);
};

ExprPtr clone(const Expr& e);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    std::vector<StmtPtr> statements;
    SourceSpan span;
};

enum class StmtKind { Expr, VarDecl, Return, Become, Emit, ForIn, If };

struct Stmt {
    StmtKind kind;
    SourceSpan span;

    ExprPtr expr;  // Expr statement / return value (may be null) / emit call

    // var/let declaration (also reused for the for-in loop variable)
    bool is_let = false;
    std::string name;  // declared name / become target state
    TypeRef declared_type;
    ExprPtr initial;

    // for-in
    ExprPtr sequence;
    Block body;

    // if
    ExprPtr condition;
    Block then_block;
    std::optional<Block> else_block;

    static StmtPtr make(StmtKind k, SourceSpan span);
};

Block clone(const Block& b);

struct Modifiers {
    bool is_public = false;
    bool is_visible = false;
    bool is_mutating = false;
};

struct Attribute {
    std::string name;  // "payable"
    SourceSpan span;
};

struct Parameter {
    bool is_implicit = false;
    bool is_inout = false;
    std::string name;
    TypeRef type;
    ExprPtr default_value;
    SourceSpan span;
};

struct FunctionDecl {
    enum class Kind { Function, Initializer, Fallback };
    Kind kind = Kind::Function;
    std::vector<Attribute> attributes;
    Modifiers modifiers;
    std::string name;  // empty for initializers and fallbacks
    std::vector<Parameter> parameters;
    TypeRef return_type = TypeRef::void_();
    std::optional<Block> body;  // absent for trait signatures
    SourceSpan span;
    SourceSpan name_span;

    bool is_payable() const;
};

FunctionDecl clone(const FunctionDecl& f);

struct PropertyDecl {
    Modifiers modifiers;
    bool is_let = false;
    std::string name;
    TypeRef type;
    ExprPtr default_value;
    SourceSpan span;
};

struct EventDecl {
    std::string name;
    std::vector<PropertyDecl> fields;
    SourceSpan span;
};

struct ContractDecl {
    std::string name;
    std::vector<std::string> typestates;  // header order fixes ordinals
    std::vector<std::string> conformances;
    std::vector<PropertyDecl> properties;  // declaration order fixes storage layout
    std::vector<EventDecl> events;
    SourceSpan span;
    SourceSpan name_span;
};

struct BehaviourDecl {
    std::string contract_name;
    std::optional<std::vector<std::string>> state_group;  // the @(...) group
    std::string caller_binding;                           // empty when absent
    std::vector<std::string> protections;
    std::vector<FunctionDecl> members;
    SourceSpan span;
    SourceSpan name_span;
    std::vector<SourceSpan> protection_spans;
    std::vector<SourceSpan> state_spans;
};

struct StructDecl {
    std::string name;
    std::vector<std::string> conformances;
    std::vector<PropertyDecl> properties;
    std::vector<FunctionDecl> functions;  // includes initializers
    SourceSpan span;
    SourceSpan name_span;
};

struct TraitDecl {
    bool is_struct_trait = true;
    std::string name;
    std::vector<FunctionDecl> members;  // with or without bodies
    SourceSpan span;
    SourceSpan name_span;
};

struct EnumDecl {
    std::string name;
    std::vector<std::string> cases;
    SourceSpan span;
    SourceSpan name_span;
};

using TopLevel = std::variant<ContractDecl, BehaviourDecl, StructDecl, TraitDecl, EnumDecl>;

struct SourceModule {
    std::vector<TopLevel> declarations;
};

}  // namespace flint::ast
