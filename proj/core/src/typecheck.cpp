// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "flint/analysis.hpp"
#include "flint/uint256.hpp"

namespace flint {

using namespace ast;

namespace {

/// Error types compare compatible with everything to stop cascades.
bool types_equal(const TypeRef& a, const TypeRef& b) {
    if (a.is_error() || b.is_error())
        return true;
    return a == b;
}

bool is_lvalue_path(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Identifier:
        return true;
    case ExprKind::Member:
    case ExprKind::Subscript:
        return e.lhs && (e.lhs->kind == ExprKind::SelfRef || is_lvalue_path(*e.lhs));
    default:
        return false;
    }
}

class Checker {
public:
    Checker(Environment& env, DiagnosticList& diags) : env_(env), diags_(diags) {
        diags_.set_pass_rank(3);
    }

    void run() {
        for (auto& [name, info] : env_.contracts)
            check_contract(info);
        for (auto& [name, info] : env_.structs)
            check_struct(info);
    }

private:
    struct Local {
        TypeRef type;
        bool is_let = false;
        SourceSpan span;
    };

    Environment& env_;
    DiagnosticList& diags_;
    const ContractInfo* contract_ = nullptr;
    const StructInfo* struct_ = nullptr;
    const FunctionSig* fn_ = nullptr;
    std::vector<std::map<std::string, Local>> scopes_;
    bool in_property_default_ = false;

    std::string owner_name() const { return contract_ ? contract_->name : struct_->name; }

    const PropertySig* owner_property(const std::string& name) const {
        if (contract_)
            return contract_->find_property(name);
        if (struct_)
            return struct_->find_property(name);
        return nullptr;
    }

    std::vector<const FunctionSig*> owner_functions(const std::string& name) const {
        if (contract_ || struct_)
            return env_.functions_named(owner_name(), name);
        return {};
    }

    // ---- declaration-level walks ----

    void check_contract(const ContractInfo& info) {
        contract_ = &info;
        struct_ = nullptr;
        for (const auto& prop : info.properties)
            check_property(prop);
        for (const auto& event : info.events) {
            for (const auto& field : event.fields) {
                if (!field.type.is_basic() || field.type.is_void()) {
                    diags_.error(diag::TypeGeneral, field.decl ? field.decl->span : SourceSpan{},
                                 "Event field '" + field.name + "' must have a basic type.");
                }
            }
        }
        for (const auto& fn : info.functions)
            check_function(fn);
        contract_ = nullptr;
    }

    void check_struct(const StructInfo& info) {
        struct_ = &info;
        contract_ = nullptr;
        for (const auto& prop : info.properties)
            check_property(prop);
        for (const auto& fn : info.functions)
            check_function(fn);
        struct_ = nullptr;
    }

    void check_property(const PropertySig& prop) {
        SourceSpan span = prop.decl ? prop.decl->span : SourceSpan{};
        validate_type(prop.type, span);
        if (prop.decl && prop.decl->default_value) {
            in_property_default_ = true;
            TypeRef t = check_expr(*prop.decl->default_value, &prop.type);
            in_property_default_ = false;
            if (!types_equal(t, prop.type)) {
                diags_.error(diag::TypeAssignMismatch, prop.decl->default_value->span,
                             "Incompatible assignment between values of type " +
                                 prop.type.to_string() + " and " + t.to_string() + ".");
            }
        }
    }

    void check_function(const FunctionSig& fn) {
        if (!fn.decl)
            return;
        fn_ = &fn;
        scopes_.clear();
        scopes_.emplace_back();
        if (!fn.caller_binding.empty())
            scopes_.back()[fn.caller_binding] = {TypeRef::address(), true, fn.decl->name_span};
        for (size_t i = 0; i < fn.params.size(); ++i) {
            const auto& p = fn.params[i];
            const auto& pd = fn.decl->parameters[i];
            validate_type(p.type, pd.span);
            if (pd.default_value) {
                TypeRef t = check_expr(*pd.default_value, &p.type);
                if (!types_equal(t, p.type)) {
                    diags_.error(diag::TypeArgumentMismatch, pd.default_value->span,
                                 "Cannot convert expression of type " + t.to_string() +
                                     " to expected argument type " + p.type.to_string());
                }
            }
            scopes_.back()[p.name] = {p.type, true, pd.span};
        }
        if (!fn.return_type.is_void())
            validate_type(fn.return_type, fn.decl->name_span);
        if (!fn.return_type.is_void() && env_.is_dynamic_type(fn.return_type)) {
            diags_.error(diag::TypeGeneral, fn.decl->name_span,
                         "Functions cannot return dynamic types; '" + fn.return_type.to_string() +
                             "' is dynamic.");
        }
        if (fn.decl->body)
            check_block(*fn.decl->body);
        fn_ = nullptr;
    }

    // ---- scopes ----

    Local* lookup_local(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end())
                return &found->second;
        }
        return nullptr;
    }

    void declare_local(const std::string& name, TypeRef type, bool is_let, SourceSpan span) {
        auto& scope = scopes_.back();
        auto it = scope.find(name);
        if (it != scope.end()) {
            auto& d =
                diags_.error(diag::DeclRedeclaration, span, "Invalid redeclaration of '" + name + "'.");
            d.notes.push_back(
                {"Previous declaration on line " + std::to_string(it->second.span.line) +
                     ", column " + std::to_string(it->second.span.column) + ".",
                 it->second.span});
            return;
        }
        scope[name] = {std::move(type), is_let, span};
    }

    // ---- types ----

    void validate_type(const TypeRef& t, SourceSpan span) {
        switch (t.kind) {
        case TypeRef::Kind::Named:
            if (env_.structs.count(t.name) || env_.enums.count(t.name))
                return;
            if (env_.contracts.count(t.name)) {
                diags_.error(diag::TypeGeneral, span,
                             "Contract type '" + t.name + "' cannot be used as a value type.");
                return;
            }
            if (env_.traits.count(t.name)) {
                diags_.error(diag::TypeGeneral, span,
                             "Trait type '" + t.name + "' cannot be used as a value type.");
                return;
            }
            diags_.error(diag::DeclUndeclaredId, span, "Use of undeclared type '" + t.name + "'.");
            return;
        case TypeRef::Kind::SelfType:
            if (!struct_ && !contract_)
                diags_.error(diag::TypeGeneral, span, "'Self' may only appear inside traits.");
            return;
        case TypeRef::Kind::Array:
        case TypeRef::Kind::FixedArray:
            validate_type(t.args[0], span);
            return;
        case TypeRef::Kind::Dictionary:
            validate_type(t.args[0], span);
            validate_type(t.args[1], span);
            if (!t.args[0].is_basic() || t.args[0].is_void())
                diags_.error(diag::TypeGeneral, span,
                             "Dictionary keys must have a basic type, found '" +
                                 t.args[0].to_string() + "'.");
            return;
        default:
            return;
        }
    }

    // ---- statements ----

    void check_block(const Block& block) {
        scopes_.emplace_back();
        for (const auto& stmt : block.statements)
            check_stmt(*stmt);
        scopes_.pop_back();
    }

    void check_stmt(const Stmt& s) {
        switch (s.kind) {
        case StmtKind::Expr:
            if (s.expr->kind == ExprKind::Binary && is_assignment(s.expr->op))
                check_assignment(*s.expr);
            else
                check_expr(*s.expr);
            return;
        case StmtKind::VarDecl: {
            validate_type(s.declared_type, s.span);
            if (s.declared_type.is_void())
                diags_.error(diag::TypeGeneral, s.span, "Variables cannot have type 'Void'.");
            if (s.initial) {
                TypeRef t = check_expr(*s.initial, &s.declared_type);
                if (!types_equal(t, s.declared_type)) {
                    diags_.error(diag::TypeAssignMismatch, s.initial->span,
                                 "Incompatible assignment between values of type " +
                                     s.declared_type.to_string() + " and " + t.to_string() + ".");
                }
            }
            declare_local(s.name, s.declared_type, s.is_let, s.span);
            return;
        }
        case StmtKind::Return: {
            TypeRef expected = fn_ ? fn_->return_type : TypeRef::void_();
            if (s.expr) {
                TypeRef t = check_expr(*s.expr, &expected);
                if (!types_equal(t, expected)) {
                    diags_.error(diag::TypeReturnMismatch, s.expr->span,
                                 "Cannot convert expression of type '" + t.to_string() +
                                     "' to expected return type '" + expected.to_string() + "'.");
                }
            } else if (!expected.is_void()) {
                diags_.error(diag::TypeReturnMismatch, s.span,
                             "Cannot convert expression of type 'Void' to expected return type '" +
                                 expected.to_string() + "'.");
            }
            return;
        }
        case StmtKind::Become:
            if (!contract_) {
                diags_.error(diag::TypeGeneral, s.span,
                             "'become' may only appear inside contract functions.");
                return;
            }
            if (!contract_->has_typestate(s.name)) {
                diags_.error(diag::TypeUnknownState, s.span,
                             "Typestate '" + s.name + "' is undefined in '" + contract_->name +
                                 "'.");
            }
            return;
        case StmtKind::Emit:
            check_emit(s);
            return;
        case StmtKind::ForIn:
            check_for(s);
            return;
        case StmtKind::If: {
            TypeRef t = check_expr(*s.condition);
            if (!types_equal(t, TypeRef::bool_())) {
                diags_.error(diag::TypeGeneral, s.condition->span,
                             "Condition of 'if' must be 'Bool', found '" + t.to_string() + "'.");
            }
            check_block(s.then_block);
            if (s.else_block)
                check_block(*s.else_block);
            return;
        }
        }
    }

    void check_emit(const Stmt& s) {
        if (!contract_) {
            diags_.error(diag::TypeGeneral, s.span,
                         "Events can only be emitted from contract functions.");
            return;
        }
        const Expr& call = *s.expr;
        const std::string& name = call.callee->text;
        const EventSig* event = contract_->find_event(name);
        if (!event) {
            diags_.error(diag::DeclUndeclaredId, call.callee->span,
                         "Use of undeclared identifier '" + name + "'.");
            return;
        }
        if (call.args.size() != event->fields.size()) {
            diags_.error(diag::TypeGeneral, call.span,
                         "Event '" + name + "' expects " + std::to_string(event->fields.size()) +
                             " arguments, found " + std::to_string(call.args.size()) + ".");
            return;
        }
        for (size_t i = 0; i < call.args.size(); ++i) {
            const auto& field = event->fields[i];
            if (!call.args[i].label.empty() && call.args[i].label != field.name) {
                diags_.error(diag::TypeGeneral, call.args[i].span,
                             "Event argument label '" + call.args[i].label +
                                 "' does not match field '" + field.name + "'.");
            }
            TypeRef t = check_expr(*call.args[i].value, &field.type);
            if (!types_equal(t, field.type)) {
                diags_.error(diag::TypeArgumentMismatch, call.args[i].value->span,
                             "Cannot convert expression of type " + t.to_string() +
                                 " to expected argument type " + field.type.to_string());
            }
        }
    }

    void check_for(const Stmt& s) {
        validate_type(s.declared_type, s.span);
        TypeRef elem = TypeRef::error();
        if (s.sequence->kind == ExprKind::Range) {
            TypeRef a = check_expr(*s.sequence->lhs);
            TypeRef b = check_expr(*s.sequence->rhs);
            if (!types_equal(a, TypeRef::int_()) || !types_equal(b, TypeRef::int_())) {
                diags_.error(diag::TypeGeneral, s.sequence->span,
                             "Range bounds must have type 'Int'.");
            }
            s.sequence->type = TypeRef::error();  // ranges are not first-class values
            elem = TypeRef::int_();
        } else {
            TypeRef t = check_expr(*s.sequence);
            switch (t.kind) {
            case TypeRef::Kind::Array:
            case TypeRef::Kind::FixedArray:
                elem = t.args[0];
                break;
            case TypeRef::Kind::Dictionary:
                elem = t.args[1];  // iteration yields values
                break;
            case TypeRef::Kind::Error:
                break;
            default:
                diags_.error(diag::TypeGeneral, s.sequence->span,
                             "Cannot iterate over a value of type '" + t.to_string() + "'.");
                break;
            }
        }
        if (!elem.is_error() && !types_equal(s.declared_type, elem)) {
            diags_.error(diag::TypeGeneral, s.span,
                         "Loop variable of type '" + s.declared_type.to_string() +
                             "' cannot bind elements of type '" + elem.to_string() + "'.");
        }
        scopes_.emplace_back();
        scopes_.back()[s.name] = {s.declared_type, s.is_let, s.span};
        check_block(s.body);
        scopes_.pop_back();
    }

    void check_assignment(const Expr& e) {
        TypeRef lhs = check_expr(*e.lhs);
        if (!is_lvalue_path(*e.lhs) && !lhs.is_error()) {
            diags_.error(diag::TypeGeneral, e.lhs->span, "Cannot assign to this expression.");
        }
        TypeRef rhs = check_expr(*e.rhs, &lhs);
        if (is_compound_assignment(e.op)) {
            if (!types_equal(lhs, TypeRef::int_()) || !types_equal(rhs, TypeRef::int_())) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Compound assignment requires 'Int' operands, found '" +
                                 lhs.to_string() + "' and '" + rhs.to_string() + "'.");
            }
        } else if (!types_equal(lhs, rhs)) {
            diags_.error(diag::TypeAssignMismatch, e.span,
                         "Incompatible assignment between values of type " + lhs.to_string() +
                             " and " + rhs.to_string() + ".");
        }
        e.type = TypeRef::void_();
    }

    // ---- expressions ----

    TypeRef check_expr(const Expr& e, const TypeRef* expected = nullptr) {
        TypeRef t = check_expr_inner(e, expected);
        e.type = t;
        return t;
    }

    TypeRef check_expr_inner(const Expr& e, const TypeRef* expected) {
        switch (e.kind) {
        case ExprKind::Identifier:
            return check_identifier(e);
        case ExprKind::SelfRef:
            if (!contract_ && !struct_) {
                diags_.error(diag::TypeGeneral, e.span, "'self' is not available here.");
                return TypeRef::error();
            }
            return TypeRef::named(owner_name());
        case ExprKind::IntLit: {
            if (e.has_fraction) {
                diags_.error(diag::TypeFractionalLiteral, e.span,
                             "Fractional numeric literals are not supported; 'Int' is the only "
                             "numeric type.");
                return TypeRef::int_();
            }
            if (!UInt256::from_decimal(e.text)) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Integer literal '" + e.text + "' does not fit in 256 bits.");
            }
            return TypeRef::int_();
        }
        case ExprKind::AddressLit:
            return TypeRef::address();
        case ExprKind::StringLit:
            if (e.text.size() > 32) {
                diags_.error(diag::TypeGeneral, e.span,
                             "String literals longer than 32 bytes are not supported.");
            }
            return TypeRef::string();
        case ExprKind::BoolLit:
            return TypeRef::bool_();
        case ExprKind::ArrayLit:
            if (expected && (expected->kind == TypeRef::Kind::Array ||
                             expected->kind == TypeRef::Kind::FixedArray))
                return *expected;
            diags_.error(diag::TypeGeneral, e.span, "'[]' needs an array type from context.");
            return TypeRef::error();
        case ExprKind::DictLit:
            if (expected && expected->kind == TypeRef::Kind::Dictionary)
                return *expected;
            diags_.error(diag::TypeGeneral, e.span, "'[:]' needs a dictionary type from context.");
            return TypeRef::error();
        case ExprKind::Binary:
            return check_binary(e);
        case ExprKind::Call:
            return check_call(e);
        case ExprKind::Member:
            return check_member(e);
        case ExprKind::Subscript:
            return check_subscript(e);
        case ExprKind::Inout:
            diags_.error(diag::TypeGeneral, e.span,
                         "'&' may only be used to pass an inout argument at a call site.");
            check_expr(*e.lhs);
            return TypeRef::error();
        case ExprKind::Range:
            diags_.error(diag::TypeGeneral, e.span,
                         "Ranges may only appear as the sequence of a for-in loop.");
            return TypeRef::error();
        case ExprKind::Try: {
            TypeRef t = check_call(*e.lhs);
            e.lhs->type = t;
            const FunctionSig* callee = e.lhs->resolved_callee;
            if (callee && !(callee->behaviour && contract_ && callee->owner == contract_->name)) {
                diags_.error(diag::TypeGeneral, e.span,
                             "'try' applies only to calls of functions of the enclosing "
                             "contract.");
            }
            return t;
        }
        }
        return TypeRef::error();
    }

    TypeRef check_identifier(const Expr& e) {
        if (const Local* local = lookup_local(e.text)) {
            bool is_binding = fn_ && fn_->caller_binding == e.text &&
                              !scopes_.empty() && scopes_.front().count(e.text) &&
                              &scopes_.front().at(e.text) == local;
            bool is_param = false;
            if (fn_ && !scopes_.empty() && scopes_.front().count(e.text) &&
                &scopes_.front().at(e.text) == local) {
                for (const auto& p : fn_->params)
                    is_param |= p.name == e.text;
            }
            e.symbol = is_binding ? SymbolKind::CallerBinding
                       : is_param ? SymbolKind::Parameter
                                  : SymbolKind::Local;
            return local->type;
        }
        if (!in_property_default_) {
            if (const PropertySig* prop = owner_property(e.text)) {
                e.symbol = SymbolKind::StateProperty;
                return prop->type;
            }
        }
        if (env_.enums.count(e.text)) {
            e.symbol = SymbolKind::EnumType;
            diags_.error(diag::TypeGeneral, e.span,
                         "Enum type '" + e.text + "' cannot be used as a value; name a case.");
            return TypeRef::error();
        }
        if (in_property_default_ && owner_property(e.text)) {
            diags_.error(diag::TypeGeneral, e.span,
                         "State property defaults cannot reference other state properties.");
            return TypeRef::error();
        }
        diags_.error(diag::DeclUndeclaredId, e.span,
                     "Use of undeclared identifier '" + e.text + "'.");
        return TypeRef::error();
    }

    TypeRef check_binary(const Expr& e) {
        if (is_assignment(e.op)) {
            diags_.error(diag::TypeGeneral, e.span, "Assignment cannot be used as an expression.");
            return TypeRef::void_();
        }
        TypeRef a = check_expr(*e.lhs);
        TypeRef b = check_expr(*e.rhs);
        switch (e.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Pow:
        case BinaryOp::WrapAdd:
        case BinaryOp::WrapSub:
        case BinaryOp::WrapMul:
            if (!types_equal(a, TypeRef::int_()) || !types_equal(b, TypeRef::int_())) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Binary operator '" + std::string(binary_op_text(e.op)) +
                                 "' requires 'Int' operands, found '" + a.to_string() + "' and '" +
                                 b.to_string() + "'.");
            }
            return TypeRef::int_();
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge:
            if (!types_equal(a, TypeRef::int_()) || !types_equal(b, TypeRef::int_())) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Comparison operator '" + std::string(binary_op_text(e.op)) +
                                 "' requires 'Int' operands, found '" + a.to_string() + "' and '" +
                                 b.to_string() + "'.");
            }
            return TypeRef::bool_();
        case BinaryOp::Eq:
        case BinaryOp::Ne:
            if (!types_equal(a, b)) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Cannot compare values of type '" + a.to_string() + "' and '" +
                                 b.to_string() + "'.");
            } else if (!a.is_error() && env_.is_dynamic_type(a)) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Cannot compare values of dynamic type '" + a.to_string() + "'.");
            }
            return TypeRef::bool_();
        case BinaryOp::And:
        case BinaryOp::Or:
            if (!types_equal(a, TypeRef::bool_()) || !types_equal(b, TypeRef::bool_())) {
                diags_.error(diag::TypeGeneral, e.span,
                             "Logical operator '" + std::string(binary_op_text(e.op)) +
                                 "' requires 'Bool' operands, found '" + a.to_string() +
                                 "' and '" + b.to_string() + "'.");
            }
            return TypeRef::bool_();
        default:
            return TypeRef::error();
        }
    }

    TypeRef check_member(const Expr& e) {
        // EnumName.case
        if (e.lhs->kind == ExprKind::Identifier && !lookup_local(e.lhs->text) &&
            env_.enums.count(e.lhs->text)) {
            e.lhs->symbol = SymbolKind::EnumType;
            e.lhs->type = TypeRef::error();
            const EnumInfo& en = env_.enums.at(e.lhs->text);
            if (en.case_ordinal(e.text) < 0) {
                diags_.error(diag::DeclUndeclaredId, e.span,
                             "Enum '" + en.name + "' has no case '" + e.text + "'.");
                return TypeRef::error();
            }
            return TypeRef::named(en.name);
        }
        TypeRef base = check_expr(*e.lhs);
        if (base.is_error())
            return TypeRef::error();
        if (base.is_collection()) {
            if (e.text == "size")
                return TypeRef::int_();
            diags_.error(diag::TypeGeneral, e.span,
                         "Value of type '" + base.to_string() + "' has no member '" + e.text +
                             "'.");
            return TypeRef::error();
        }
        if (base.kind == TypeRef::Kind::Named) {
            if (auto it = env_.structs.find(base.name); it != env_.structs.end()) {
                if (const PropertySig* prop = it->second.find_property(e.text))
                    return prop->type;
                diags_.error(diag::TypeGeneral, e.span,
                             "Value of type '" + base.name + "' has no member '" + e.text + "'.");
                return TypeRef::error();
            }
            if (auto it = env_.contracts.find(base.name); it != env_.contracts.end()) {
                // only self.prop, inside the contract itself
                if (contract_ == &it->second) {
                    if (const PropertySig* prop = it->second.find_property(e.text))
                        return prop->type;
                }
                diags_.error(diag::TypeGeneral, e.span,
                             "'" + base.name + "' has no accessible member '" + e.text + "'.");
                return TypeRef::error();
            }
        }
        diags_.error(diag::TypeGeneral, e.span,
                     "Value of type '" + base.to_string() + "' has no member '" + e.text + "'.");
        return TypeRef::error();
    }

    TypeRef check_subscript(const Expr& e) {
        TypeRef base = check_expr(*e.lhs);
        TypeRef index = check_expr(*e.rhs);
        switch (base.kind) {
        case TypeRef::Kind::Array:
        case TypeRef::Kind::FixedArray:
            if (!types_equal(index, TypeRef::int_())) {
                diags_.error(diag::TypeGeneral, e.rhs->span,
                             "Array index must have type 'Int', found '" + index.to_string() +
                                 "'.");
            }
            return base.args[0];
        case TypeRef::Kind::Dictionary:
            if (!types_equal(index, base.args[0])) {
                diags_.error(diag::TypeGeneral, e.rhs->span,
                             "Dictionary key must have type '" + base.args[0].to_string() +
                                 "', found '" + index.to_string() + "'.");
            }
            return base.args[1];
        case TypeRef::Kind::Error:
            return TypeRef::error();
        default:
            diags_.error(diag::TypeGeneral, e.span,
                         "Cannot subscript a value of type '" + base.to_string() + "'.");
            return TypeRef::error();
        }
    }

    struct CheckedArg {
        TypeRef type;
        bool is_inout = false;
        SourceSpan span;
    };

    TypeRef check_call(const Expr& e) {
        // arguments first; inout arguments carry the inner expression's type
        std::vector<CheckedArg> checked;
        for (const auto& arg : e.args) {
            CheckedArg ca;
            ca.span = arg.value->span;
            if (arg.value->kind == ExprKind::Inout) {
                ca.is_inout = true;
                ca.type = check_expr(*arg.value->lhs);
                arg.value->type = ca.type;
                if (!ca.type.is_error() && !env_.is_dynamic_type(ca.type)) {
                    diags_.error(diag::TypeGeneral, arg.value->span,
                                 "'&' applies only to dynamic types; '" + ca.type.to_string() +
                                     "' is passed by value.");
                }
                if (!is_lvalue_path(*arg.value->lhs)) {
                    diags_.error(diag::TypeGeneral, arg.value->span,
                                 "Cannot pass this expression by reference.");
                }
            } else {
                ca.type = check_expr(*arg.value);
            }
            checked.push_back(std::move(ca));
        }

        std::vector<const FunctionSig*> candidates;
        std::string callee_desc;
        bool constructor = false;

        if (e.callee->kind == ExprKind::Identifier) {
            const std::string& name = e.callee->text;
            callee_desc = name;
            candidates = owner_functions(name);
            if (const FunctionSig* global = env_.find_global(name))
                candidates.push_back(global);
            if (candidates.empty() && env_.structs.count(name)) {
                constructor = true;
                candidates = env_.functions_named(name, "");
                if (candidates.empty()) {
                    diags_.error(diag::TypeGeneral, e.callee->span,
                                 "'" + name + "' has no initialisers.");
                    return TypeRef::error();
                }
            }
            if (candidates.empty() && env_.contracts.count(name)) {
                diags_.error(diag::TypeGeneral, e.callee->span,
                             "Contracts cannot be constructed from contract code.");
                return TypeRef::error();
            }
            if (candidates.empty()) {
                diags_.error(diag::DeclUndeclaredId, e.callee->span,
                             "Use of undeclared identifier '" + name + "'.");
                return TypeRef::error();
            }
            e.callee->symbol = constructor ? SymbolKind::TypeName : SymbolKind::FunctionName;
            e.callee->type = TypeRef::error();
        } else {
            const Expr& receiver = *e.callee->lhs;
            TypeRef base;
            if (receiver.kind == ExprKind::SelfRef && (contract_ || struct_)) {
                base = TypeRef::named(owner_name());
                receiver.type = base;
            } else {
                base = check_expr(receiver);
            }
            if (base.is_error())
                return TypeRef::error();
            callee_desc = e.callee->text;
            if (base.kind != TypeRef::Kind::Named) {
                diags_.error(diag::TypeGeneral, e.callee->span,
                             "Value of type '" + base.to_string() + "' has no member function '" +
                                 callee_desc + "'.");
                return TypeRef::error();
            }
            candidates = env_.functions_named(base.name, callee_desc);
            if (candidates.empty()) {
                diags_.error(diag::TypeGeneral, e.callee->span,
                             "Value of type '" + base.name + "' has no member function '" +
                                 callee_desc + "'.");
                return TypeRef::error();
            }
        }

        return resolve_overload(e, candidates, checked, callee_desc, constructor);
    }

    TypeRef resolve_overload(const Expr& e, const std::vector<const FunctionSig*>& candidates,
                             const std::vector<CheckedArg>& args, const std::string& name,
                             bool constructor) {
        auto viable_for = [&](const FunctionSig* c) -> bool {
            if (c->is_payable)
                return false;  // only a transaction can supply the implicit value
            if (c->params.size() != args.size())
                return false;
            for (size_t i = 0; i < args.size(); ++i) {
                if (c->params[i].is_inout != args[i].is_inout)
                    return false;
                if (!types_equal(c->params[i].type, args[i].type))
                    return false;
            }
            return true;
        };

        std::vector<const FunctionSig*> viable;
        for (const auto* c : candidates) {
            if (viable_for(c))
                viable.push_back(c);
        }

        if (viable.empty()) {
            if (candidates.size() == 1 && candidates.front()->is_payable) {
                diags_.error(diag::TypeGeneral, e.span,
                             "'" + name +
                                 "' is @payable and can only be invoked by a transaction "
                                 "carrying value.");
                return TypeRef::error();
            }
            for (const auto* c : candidates) {
                if (c->params.size() != args.size())
                    continue;
                for (size_t i = 0; i < args.size(); ++i) {
                    if (c->params[i].is_inout != args[i].is_inout) {
                        diags_.error(diag::TypeArgumentMismatch, args[i].span,
                                     c->params[i].is_inout
                                         ? "Argument must be passed by reference with '&'."
                                         : "Argument cannot be passed by reference here.");
                        return TypeRef::error();
                    }
                    if (!types_equal(c->params[i].type, args[i].type)) {
                        diags_.error(diag::TypeArgumentMismatch, args[i].span,
                                     "Cannot convert expression of type " +
                                         args[i].type.to_string() +
                                         " to expected argument type " +
                                         c->params[i].type.to_string());
                        return TypeRef::error();
                    }
                }
            }
            diags_.error(diag::TypeGeneral, e.span,
                         "No matching " + std::string(constructor ? "initialiser" : "function") +
                             " for call to '" + name + "' with " + std::to_string(args.size()) +
                             " argument(s).");
            return TypeRef::error();
        }

        if (viable.size() > 1) {
            std::vector<const FunctionSig*> labelled;
            for (const auto* c : viable) {
                bool ok = true;
                for (size_t i = 0; i < e.args.size(); ++i) {
                    if (!e.args[i].label.empty() && e.args[i].label != c->params[i].name)
                        ok = false;
                }
                if (ok)
                    labelled.push_back(c);
            }
            if (labelled.size() == 1)
                viable = labelled;
        }
        if (viable.size() > 1) {
            diags_.error(diag::TypeGeneral, e.span, "Ambiguous call to '" + name + "'.");
            return TypeRef::error();
        }

        const FunctionSig* chosen = viable.front();
        e.resolved_callee = chosen;
        e.is_constructor_call = constructor;
        return constructor ? TypeRef::named(chosen->owner) : chosen->return_type;
    }
};

}  // namespace

DiagnosticList type_check(Environment& env) {
    DiagnosticList diags;
    Checker(env, diags).run();
    return diags;
}

}  // namespace flint
