// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/ast.hpp"

namespace flint::ast {

bool is_assignment(BinaryOp op) {
    switch (op) {
    case BinaryOp::Assign:
    case BinaryOp::AddAssign:
    case BinaryOp::SubAssign:
    case BinaryOp::MulAssign:
    case BinaryOp::DivAssign:
        return true;
    default:
        return false;
    }
}

bool is_compound_assignment(BinaryOp op) {
    return is_assignment(op) && op != BinaryOp::Assign;
}

std::string_view binary_op_text(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "**";
    case BinaryOp::WrapAdd: return "&+";
    case BinaryOp::WrapSub: return "&-";
    case BinaryOp::WrapMul: return "&*";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Assign: return "=";
    case BinaryOp::AddAssign: return "+=";
    case BinaryOp::SubAssign: return "-=";
    case BinaryOp::MulAssign: return "*=";
    case BinaryOp::DivAssign: return "/=";
    }
    return "?";
}

ExprPtr Expr::make(ExprKind k, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->span = span;
    return e;
}

StmtPtr Stmt::make(StmtKind k, SourceSpan span) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->span = span;
    return s;
}

bool FunctionDecl::is_payable() const {
    for (const auto& attr : attributes) {
        if (attr.name == "payable")
            return true;
    }
    return false;
}

ExprPtr clone(const Expr& e) {
    auto c = Expr::make(e.kind, e.span);
    c->text = e.text;
    c->bool_value = e.bool_value;
    c->has_fraction = e.has_fraction;
    c->op = e.op;
    c->range_closed = e.range_closed;
    if (e.lhs)
        c->lhs = clone(*e.lhs);
    if (e.rhs)
        c->rhs = clone(*e.rhs);
    if (e.callee)
        c->callee = clone(*e.callee);
    for (const auto& a : e.args) {
        CallArg arg;
        arg.label = a.label;
        arg.span = a.span;
        arg.value = clone(*a.value);
        c->args.push_back(std::move(arg));
    }
    return c;
}

static StmtPtr clone_stmt(const Stmt& s) {
    auto c = Stmt::make(s.kind, s.span);
    c->is_let = s.is_let;
    c->name = s.name;
    c->declared_type = s.declared_type;
    if (s.expr)
        c->expr = clone(*s.expr);
    if (s.initial)
        c->initial = clone(*s.initial);
    if (s.sequence)
        c->sequence = clone(*s.sequence);
    c->body = clone(s.body);
    if (s.condition)
        c->condition = clone(*s.condition);
    c->then_block = clone(s.then_block);
    if (s.else_block)
        c->else_block = clone(*s.else_block);
    return c;
}

Block clone(const Block& b) {
    Block c;
    c.span = b.span;
    for (const auto& s : b.statements)
        c.statements.push_back(clone_stmt(*s));
    return c;
}

FunctionDecl clone(const FunctionDecl& f) {
    FunctionDecl c;
    c.kind = f.kind;
    c.attributes = f.attributes;
    c.modifiers = f.modifiers;
    c.name = f.name;
    c.return_type = f.return_type;
    c.span = f.span;
    c.name_span = f.name_span;
    for (const auto& p : f.parameters) {
        Parameter cp;
        cp.is_implicit = p.is_implicit;
        cp.is_inout = p.is_inout;
        cp.name = p.name;
        cp.type = p.type;
        cp.span = p.span;
        if (p.default_value)
            cp.default_value = clone(*p.default_value);
        c.parameters.push_back(std::move(cp));
    }
    if (f.body)
        c.body = clone(*f.body);
    return c;
}

}  // namespace flint::ast
