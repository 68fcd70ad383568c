// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/printer.hpp"

#include <sstream>

namespace flint {

using namespace ast;

namespace {

int precedence_of(BinaryOp op) {
    switch (op) {
    case BinaryOp::Assign:
    case BinaryOp::AddAssign:
    case BinaryOp::SubAssign:
    case BinaryOp::MulAssign:
    case BinaryOp::DivAssign:
        return 1;
    case BinaryOp::Or:
        return 2;
    case BinaryOp::And:
        return 3;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
        return 4;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
        return 5;
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::WrapAdd:
    case BinaryOp::WrapSub:
        return 6;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::WrapMul:
        return 7;
    case BinaryOp::Pow:
        return 8;
    }
    return 0;
}

class Printer {
public:
    std::string run(const SourceModule& module) {
        for (const auto& decl : module.declarations) {
            std::visit([this](const auto& d) { print(d); }, decl);
            out_ << "\n";
        }
        return out_.str();
    }

    void expr(const Expr& e, int parent_prec = 0) { print_expr_inner(e, parent_prec); }

    std::string take() { return out_.str(); }

private:
    void indent() {
        for (int i = 0; i < depth_; ++i)
            out_ << "  ";
    }

    void print(const ContractDecl& d) {
        out_ << "contract " << d.name;
        if (!d.typestates.empty()) {
            out_ << " (";
            join(d.typestates);
            out_ << ")";
        }
        if (!d.conformances.empty()) {
            out_ << ": ";
            join(d.conformances);
        }
        out_ << " {\n";
        ++depth_;
        for (const auto& p : d.properties)
            print(p);
        for (const auto& e : d.events)
            print(e);
        --depth_;
        out_ << "}\n";
    }

    void print(const PropertyDecl& p) {
        indent();
        if (p.modifiers.is_public)
            out_ << "public ";
        if (p.modifiers.is_visible)
            out_ << "visible ";
        out_ << (p.is_let ? "let " : "var ") << p.name << ": " << p.type.to_string();
        if (p.default_value) {
            out_ << " = ";
            expr(*p.default_value);
        }
        out_ << "\n";
    }

    void print(const EventDecl& e) {
        indent();
        out_ << "event " << e.name << " {\n";
        ++depth_;
        for (const auto& f : e.fields)
            print(f);
        --depth_;
        indent();
        out_ << "}\n";
    }

    void print(const BehaviourDecl& d) {
        out_ << d.contract_name;
        if (d.state_group) {
            out_ << " @(";
            join(*d.state_group);
            out_ << ")";
        }
        out_ << " :: ";
        if (!d.caller_binding.empty())
            out_ << d.caller_binding << " <- ";
        out_ << "(";
        join(d.protections);
        out_ << ") {\n";
        ++depth_;
        for (const auto& fn : d.members) {
            print(fn);
            out_ << "\n";
        }
        --depth_;
        out_ << "}\n";
    }

    void print(const StructDecl& d) {
        out_ << "struct " << d.name;
        if (!d.conformances.empty()) {
            out_ << ": ";
            join(d.conformances);
        }
        out_ << " {\n";
        ++depth_;
        for (const auto& p : d.properties)
            print(p);
        for (const auto& fn : d.functions) {
            print(fn);
            out_ << "\n";
        }
        --depth_;
        out_ << "}\n";
    }

    void print(const TraitDecl& d) {
        out_ << (d.is_struct_trait ? "struct trait " : "contract trait ") << d.name << " {\n";
        ++depth_;
        for (const auto& fn : d.members) {
            print(fn);
            out_ << "\n";
        }
        --depth_;
        out_ << "}\n";
    }

    void print(const EnumDecl& d) {
        out_ << "enum " << d.name << " {\n";
        ++depth_;
        for (const auto& c : d.cases) {
            indent();
            out_ << "case " << c << "\n";
        }
        --depth_;
        out_ << "}\n";
    }

    void print(const FunctionDecl& fn) {
        for (const auto& attr : fn.attributes) {
            indent();
            out_ << "@" << attr.name << "\n";
        }
        indent();
        if (fn.modifiers.is_public)
            out_ << "public ";
        if (fn.modifiers.is_visible)
            out_ << "visible ";
        if (fn.modifiers.is_mutating)
            out_ << "mutating ";
        switch (fn.kind) {
        case FunctionDecl::Kind::Function:
            out_ << "func " << fn.name;
            break;
        case FunctionDecl::Kind::Initializer:
            out_ << "init";
            break;
        case FunctionDecl::Kind::Fallback:
            out_ << "fallback";
            break;
        }
        out_ << "(";
        for (size_t i = 0; i < fn.parameters.size(); ++i) {
            if (i)
                out_ << ", ";
            const auto& p = fn.parameters[i];
            if (p.is_implicit)
                out_ << "implicit ";
            out_ << p.name << ": ";
            if (p.is_inout)
                out_ << "inout ";
            out_ << p.type.to_string();
            if (p.default_value) {
                out_ << " = ";
                expr(*p.default_value);
            }
        }
        out_ << ")";
        if (!fn.return_type.is_void())
            out_ << " -> " << fn.return_type.to_string();
        if (fn.body) {
            out_ << " ";
            print(*fn.body);
        }
    }

    void print(const Block& block) {
        out_ << "{\n";
        ++depth_;
        for (const auto& stmt : block.statements)
            print(*stmt);
        --depth_;
        indent();
        out_ << "}";
    }

    void print(const Stmt& s) {
        indent();
        switch (s.kind) {
        case StmtKind::Expr:
            expr(*s.expr);
            break;
        case StmtKind::VarDecl:
            out_ << (s.is_let ? "let " : "var ") << s.name << ": " << s.declared_type.to_string();
            if (s.initial) {
                out_ << " = ";
                expr(*s.initial);
            }
            break;
        case StmtKind::Return:
            out_ << "return";
            if (s.expr) {
                out_ << " ";
                expr(*s.expr);
            }
            break;
        case StmtKind::Become:
            out_ << "become " << s.name;
            break;
        case StmtKind::Emit:
            out_ << "emit ";
            expr(*s.expr);
            break;
        case StmtKind::ForIn:
            out_ << "for " << (s.is_let ? "let " : "var ") << s.name << ": "
                 << s.declared_type.to_string() << " in ";
            expr(*s.sequence);
            out_ << " ";
            print(s.body);
            break;
        case StmtKind::If:
            out_ << "if ";
            expr(*s.condition);
            out_ << " ";
            print(s.then_block);
            if (s.else_block) {
                out_ << " else ";
                print(*s.else_block);
            }
            break;
        }
        out_ << "\n";
    }

    void print_expr_inner(const Expr& e, int parent_prec) {
        switch (e.kind) {
        case ExprKind::Identifier:
            out_ << e.text;
            return;
        case ExprKind::SelfRef:
            out_ << "self";
            return;
        case ExprKind::IntLit:
            out_ << e.text;
            return;
        case ExprKind::AddressLit:
            out_ << e.text;
            return;
        case ExprKind::StringLit:
            out_ << '"' << e.text << '"';
            return;
        case ExprKind::BoolLit:
            out_ << (e.bool_value ? "true" : "false");
            return;
        case ExprKind::ArrayLit:
            out_ << "[]";
            return;
        case ExprKind::DictLit:
            out_ << "[:]";
            return;
        case ExprKind::Binary: {
            int prec = precedence_of(e.op);
            bool right_assoc = e.op == BinaryOp::Pow || is_assignment(e.op);
            bool parens = prec < parent_prec;
            if (parens)
                out_ << "(";
            print_expr_inner(*e.lhs, right_assoc ? prec + 1 : prec);
            out_ << " " << binary_op_text(e.op) << " ";
            print_expr_inner(*e.rhs, right_assoc ? prec : prec + 1);
            if (parens)
                out_ << ")";
            return;
        }
        case ExprKind::Call: {
            print_expr_inner(*e.callee, 100);
            out_ << "(";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i)
                    out_ << ", ";
                if (!e.args[i].label.empty())
                    out_ << e.args[i].label << ": ";
                print_expr_inner(*e.args[i].value, 0);
            }
            out_ << ")";
            return;
        }
        case ExprKind::Member:
            print_expr_inner(*e.lhs, 100);
            out_ << "." << e.text;
            return;
        case ExprKind::Subscript:
            print_expr_inner(*e.lhs, 100);
            out_ << "[";
            print_expr_inner(*e.rhs, 0);
            out_ << "]";
            return;
        case ExprKind::Inout:
            out_ << "&";
            print_expr_inner(*e.lhs, 100);
            return;
        case ExprKind::Range:
            out_ << "(";
            print_expr_inner(*e.lhs, 0);
            out_ << (e.range_closed ? " ... " : " ..< ");
            print_expr_inner(*e.rhs, 0);
            out_ << ")";
            return;
        case ExprKind::Try:
            out_ << "try ";
            print_expr_inner(*e.lhs, 100);
            return;
        }
    }

    void join(const std::vector<std::string>& items) {
        for (size_t i = 0; i < items.size(); ++i) {
            if (i)
                out_ << ", ";
            out_ << items[i];
        }
    }

    std::ostringstream out_;
    int depth_ = 0;
};

// ---- structural equality ----

bool equal(const Expr& a, const Expr& b);

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b)
        return !a && !b;
    return equal(*a, *b);
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind)
        return false;
    if (a.text != b.text || a.bool_value != b.bool_value || a.has_fraction != b.has_fraction)
        return false;
    if (a.kind == ExprKind::Binary && a.op != b.op)
        return false;
    if (a.kind == ExprKind::Range && a.range_closed != b.range_closed)
        return false;
    if (!equal(a.lhs, b.lhs) || !equal(a.rhs, b.rhs) || !equal(a.callee, b.callee))
        return false;
    if (a.args.size() != b.args.size())
        return false;
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (a.args[i].label != b.args[i].label || !equal(*a.args[i].value, *b.args[i].value))
            return false;
    }
    return true;
}

bool equal(const Block& a, const Block& b);

bool equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.is_let != b.is_let || a.name != b.name)
        return false;
    if (a.declared_type != b.declared_type)
        return false;
    if (!equal(a.expr, b.expr) || !equal(a.initial, b.initial) || !equal(a.sequence, b.sequence) ||
        !equal(a.condition, b.condition))
        return false;
    if (!equal(a.body, b.body) || !equal(a.then_block, b.then_block))
        return false;
    if (a.else_block.has_value() != b.else_block.has_value())
        return false;
    if (a.else_block && !equal(*a.else_block, *b.else_block))
        return false;
    return true;
}

bool equal(const Block& a, const Block& b) {
    if (a.statements.size() != b.statements.size())
        return false;
    for (size_t i = 0; i < a.statements.size(); ++i) {
        if (!equal(*a.statements[i], *b.statements[i]))
            return false;
    }
    return true;
}

bool equal(const FunctionDecl& a, const FunctionDecl& b) {
    if (a.kind != b.kind || a.name != b.name || a.return_type != b.return_type)
        return false;
    if (a.modifiers.is_public != b.modifiers.is_public ||
        a.modifiers.is_visible != b.modifiers.is_visible ||
        a.modifiers.is_mutating != b.modifiers.is_mutating)
        return false;
    if (a.attributes.size() != b.attributes.size())
        return false;
    for (size_t i = 0; i < a.attributes.size(); ++i) {
        if (a.attributes[i].name != b.attributes[i].name)
            return false;
    }
    if (a.parameters.size() != b.parameters.size())
        return false;
    for (size_t i = 0; i < a.parameters.size(); ++i) {
        const auto& pa = a.parameters[i];
        const auto& pb = b.parameters[i];
        if (pa.name != pb.name || pa.type != pb.type || pa.is_implicit != pb.is_implicit ||
            pa.is_inout != pb.is_inout || !equal(pa.default_value, pb.default_value))
            return false;
    }
    if (a.body.has_value() != b.body.has_value())
        return false;
    if (a.body && !equal(*a.body, *b.body))
        return false;
    return true;
}

bool equal(const PropertyDecl& a, const PropertyDecl& b) {
    return a.name == b.name && a.type == b.type && a.is_let == b.is_let &&
           a.modifiers.is_public == b.modifiers.is_public &&
           a.modifiers.is_visible == b.modifiers.is_visible &&
           equal(a.default_value, b.default_value);
}

bool equal(const EventDecl& a, const EventDecl& b);

template <typename T>
bool equal_vec(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!equal(a[i], b[i]))
            return false;
    }
    return true;
}

bool equal(const EventDecl& a, const EventDecl& b) {
    return a.name == b.name && equal_vec(a.fields, b.fields);
}

struct TopLevelEq {
    bool operator()(const ContractDecl& a, const ContractDecl& b) const {
        return a.name == b.name && a.typestates == b.typestates &&
               a.conformances == b.conformances && equal_vec(a.properties, b.properties) &&
               equal_vec(a.events, b.events);
    }
    bool operator()(const BehaviourDecl& a, const BehaviourDecl& b) const {
        return a.contract_name == b.contract_name && a.state_group == b.state_group &&
               a.caller_binding == b.caller_binding && a.protections == b.protections &&
               equal_vec(a.members, b.members);
    }
    bool operator()(const StructDecl& a, const StructDecl& b) const {
        return a.name == b.name && a.conformances == b.conformances &&
               equal_vec(a.properties, b.properties) && equal_vec(a.functions, b.functions);
    }
    bool operator()(const TraitDecl& a, const TraitDecl& b) const {
        return a.name == b.name && a.is_struct_trait == b.is_struct_trait &&
               equal_vec(a.members, b.members);
    }
    bool operator()(const EnumDecl& a, const EnumDecl& b) const {
        return a.name == b.name && a.cases == b.cases;
    }
    template <typename A, typename B>
    bool operator()(const A&, const B&) const {
        return false;
    }
};

}  // namespace

std::string print_module(const SourceModule& module) {
    return Printer().run(module);
}

std::string print_expr(const Expr& e) {
    Printer p;
    p.expr(e);
    return p.take();
}

bool structurally_equal(const SourceModule& a, const SourceModule& b) {
    if (a.declarations.size() != b.declarations.size())
        return false;
    for (size_t i = 0; i < a.declarations.size(); ++i) {
        if (!std::visit(TopLevelEq{}, a.declarations[i], b.declarations[i]))
            return false;
    }
    return true;
}

}  // namespace flint
