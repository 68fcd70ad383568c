// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/parser.hpp"

#include <cassert>

namespace flint {

using namespace ast;

namespace {

// Thrown to unwind out of a malformed construct; the catch site resynchronizes.
struct SyntaxAbort {};

/// Fold identifier runs glued together by '$' into a single identifier and
/// report the reserved-character diagnostic once per run. Malformed 0x
/// literals are also reported here and patched so parsing can continue.
std::vector<Token> preprocess(const std::vector<Token>& tokens, DiagnosticList& diags) {
    std::vector<Token> out;
    out.reserve(tokens.size());
    auto adjacent = [](const Token& a, const Token& b) {
        return a.span.line == b.span.line && a.span.column + a.span.length == b.span.column;
    };
    for (size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        bool word = t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword;
        if (word && i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::Invalid &&
            tokens[i + 1].text == "$" && adjacent(t, tokens[i + 1])) {
            Token merged = t;
            merged.kind = TokenKind::Identifier;
            size_t j = i + 1;
            while (j < tokens.size() && adjacent(tokens[j - 1], tokens[j]) &&
                   ((tokens[j].kind == TokenKind::Invalid && tokens[j].text == "$") ||
                    tokens[j].kind == TokenKind::Identifier ||
                    tokens[j].kind == TokenKind::Keyword ||
                    tokens[j].kind == TokenKind::Number)) {
                merged.text += tokens[j].text;
                merged.span.length += tokens[j].span.length;
                ++j;
            }
            diags.error(diag::DeclInvalidChar, merged.span,
                        "Use of invalid character '$' in '" + merged.text + "'.");
            out.push_back(std::move(merged));
            i = j - 1;
            continue;
        }
        if (t.kind == TokenKind::Invalid && t.text.starts_with("0x")) {
            diags.error(diag::SyntaxError, t.span,
                        "Invalid address literal '" + t.text +
                            "': expected exactly 40 hexadecimal digits after '0x'.");
            Token patched = t;
            patched.kind = TokenKind::AddressLit;
            patched.text = "0x0000000000000000000000000000000000000000";
            out.push_back(std::move(patched));
            continue;
        }
        out.push_back(t);
    }
    return out;
}

class Parser {
public:
    Parser(SourceModule& module, std::vector<Token> tokens, DiagnosticList& diags)
        : module_(module), tokens_(std::move(tokens)), diags_(diags) {}

    void run() {
        skip_separators();
        while (!at_end()) {
            try {
                parse_top_level();
            } catch (SyntaxAbort&) {
                synchronize_top_level();
            }
            skip_separators();
        }
    }

private:
    // ---- token plumbing ----

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    bool at_end() const { return peek().kind == TokenKind::EndOfFile; }

    Token advance() {
        Token t = peek();
        if (pos_ + 1 < tokens_.size())
            ++pos_;
        return t;
    }

    bool match_punct(std::string_view p) {
        if (peek().is_punct(p)) {
            advance();
            return true;
        }
        return false;
    }

    bool match_op(std::string_view o) {
        if (peek().is_op(o)) {
            advance();
            return true;
        }
        return false;
    }

    bool match_keyword(std::string_view k) {
        if (peek().is_keyword(k)) {
            advance();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) {
        std::string found = at.kind == TokenKind::EndOfFile ? "end of file"
                            : at.kind == TokenKind::Newline ? "end of line"
                                                            : "'" + at.text + "'";
        diags_.error(diag::SyntaxError, at.span, message + ", found " + found + ".");
        throw SyntaxAbort{};
    }

    Token expect_punct(std::string_view p) {
        if (!peek().is_punct(p))
            fail(peek(), "Expected '" + std::string(p) + "'");
        return advance();
    }

    Token expect_op(std::string_view o) {
        if (!peek().is_op(o))
            fail(peek(), "Expected '" + std::string(o) + "'");
        return advance();
    }

    Token expect_identifier(const char* what) {
        if (peek().kind != TokenKind::Identifier)
            fail(peek(), std::string("Expected ") + what);
        return advance();
    }

    void skip_newlines() {
        while (peek().kind == TokenKind::Newline)
            advance();
    }

    void skip_separators() {
        while (peek().kind == TokenKind::Newline || peek().is_punct(";"))
            advance();
    }

    /// A statement ends at a newline, a ';', or just before '}'.
    void expect_terminator() {
        if (peek().kind == TokenKind::Newline || peek().is_punct(";")) {
            advance();
            skip_separators();
            return;
        }
        if (peek().is_punct("}") || at_end())
            return;
        fail(peek(), "Expected end of statement");
    }

    void synchronize_top_level() {
        while (!at_end()) {
            const Token& t = peek();
            if (t.is_keyword("contract") || t.is_keyword("struct") || t.is_keyword("enum")) {
                return;
            }
            if (t.kind == TokenKind::Identifier &&
                (peek(1).is_op("::") || (peek(1).is_punct("@") && peek(2).is_punct("(")))) {
                return;
            }
            advance();
        }
    }

    void synchronize_statement() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = peek();
            if (depth == 0 &&
                (t.kind == TokenKind::Newline || t.is_punct(";") || t.is_punct("}")))
                return;
            if (t.is_punct("{"))
                ++depth;
            if (t.is_punct("}"))
                --depth;
            advance();
        }
    }

    // ---- top level ----

    void parse_top_level() {
        const Token& t = peek();
        if (t.is_keyword("contract")) {
            if (peek(1).is_keyword("trait"))
                parse_trait(false);
            else
                parse_contract();
            return;
        }
        if (t.is_keyword("struct")) {
            if (peek(1).is_keyword("trait"))
                parse_trait(true);
            else
                parse_struct();
            return;
        }
        if (t.is_keyword("enum")) {
            parse_enum();
            return;
        }
        if (t.kind == TokenKind::Identifier) {
            parse_behaviour();
            return;
        }
        fail(t, "Expected a top-level declaration");
    }

    void parse_contract() {
        ContractDecl decl;
        decl.span = peek().span;
        advance();  // contract
        Token name = expect_identifier("contract name");
        decl.name = name.text;
        decl.name_span = name.span;
        if (peek().is_punct("("))
            decl.typestates = parse_identifier_group(nullptr);
        if (match_punct(":"))
            decl.conformances = parse_name_list();
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            if (peek().is_keyword("event")) {
                decl.events.push_back(parse_event());
            } else {
                decl.properties.push_back(parse_property());
            }
            skip_separators();
        }
        expect_punct("}");
        module_.declarations.emplace_back(std::move(decl));
    }

    std::vector<std::string> parse_name_list() {
        std::vector<std::string> names;
        names.push_back(expect_identifier("name").text);
        while (match_punct(","))
            names.push_back(expect_identifier("name").text);
        return names;
    }

    std::vector<std::string> parse_identifier_group(std::vector<SourceSpan>* spans) {
        expect_punct("(");
        std::vector<std::string> items;
        if (!peek().is_punct(")")) {
            while (true) {
                Token id = expect_identifier("identifier");
                items.push_back(id.text);
                if (spans)
                    spans->push_back(id.span);
                if (!match_punct(","))
                    break;
            }
        }
        expect_punct(")");
        return items;
    }

    PropertyDecl parse_property() {
        PropertyDecl prop;
        prop.span = peek().span;
        while (true) {
            if (match_keyword("public")) {
                prop.modifiers.is_public = true;
            } else if (match_keyword("visible")) {
                prop.modifiers.is_visible = true;
            } else {
                break;
            }
        }
        if (match_keyword("let"))
            prop.is_let = true;
        else if (!match_keyword("var"))
            fail(peek(), "Expected 'var' or 'let'");
        Token name = expect_identifier("property name");
        prop.name = name.text;
        prop.span = name.span;
        expect_punct(":");
        prop.type = parse_type();
        if (match_op("="))
            prop.default_value = parse_expression();
        expect_terminator();
        return prop;
    }

    EventDecl parse_event() {
        EventDecl event;
        event.span = peek().span;
        advance();  // event
        Token name = expect_identifier("event name");
        event.name = name.text;
        event.span = name.span;
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            event.fields.push_back(parse_property());
            skip_separators();
        }
        expect_punct("}");
        expect_terminator();
        return event;
    }

    void parse_behaviour() {
        BehaviourDecl decl;
        Token name = expect_identifier("contract name");
        decl.contract_name = name.text;
        decl.name_span = name.span;
        decl.span = name.span;
        if (match_punct("@"))
            decl.state_group = parse_identifier_group(&decl.state_spans);
        expect_op("::");
        // `binding <- (protections)` or just `(protections)`
        if (peek().kind == TokenKind::Identifier && peek(1).is_op("<-")) {
            decl.caller_binding = advance().text;
            advance();  // <-
        }
        decl.protections = parse_identifier_group(&decl.protection_spans);
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            decl.members.push_back(parse_function());
            skip_separators();
        }
        expect_punct("}");
        module_.declarations.emplace_back(std::move(decl));
    }

    void parse_struct() {
        StructDecl decl;
        decl.span = peek().span;
        advance();  // struct
        Token name = expect_identifier("struct name");
        decl.name = name.text;
        decl.name_span = name.span;
        if (match_punct(":"))
            decl.conformances = parse_name_list();
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            if (starts_function_member())
                decl.functions.push_back(parse_function());
            else
                decl.properties.push_back(parse_property());
            skip_separators();
        }
        expect_punct("}");
        module_.declarations.emplace_back(std::move(decl));
    }

    void parse_trait(bool struct_trait) {
        TraitDecl decl;
        decl.is_struct_trait = struct_trait;
        decl.span = peek().span;
        advance();  // struct | contract
        advance();  // trait
        Token name = expect_identifier("trait name");
        decl.name = name.text;
        decl.name_span = name.span;
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            decl.members.push_back(parse_function());
            skip_separators();
        }
        expect_punct("}");
        module_.declarations.emplace_back(std::move(decl));
    }

    void parse_enum() {
        EnumDecl decl;
        decl.span = peek().span;
        advance();  // enum
        Token name = expect_identifier("enum name");
        decl.name = name.text;
        decl.name_span = name.span;
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            if (!match_keyword("case"))
                fail(peek(), "Expected 'case'");
            decl.cases.push_back(expect_identifier("case name").text);
            expect_terminator();
            skip_separators();
        }
        expect_punct("}");
        module_.declarations.emplace_back(std::move(decl));
    }

    bool starts_function_member() const {
        size_t i = 0;
        while (true) {
            if (peek(i).kind == TokenKind::Newline) {
                ++i;
                continue;
            }
            if (peek(i).is_punct("@")) {
                i += 2;  // attribute name
                continue;
            }
            if (peek(i).kind == TokenKind::Keyword &&
                (peek(i).text == "public" || peek(i).text == "visible" ||
                 peek(i).text == "mutating")) {
                ++i;
                continue;
            }
            break;
        }
        const Token& t = peek(i);
        return t.is_keyword("func") || t.is_keyword("init") || t.is_keyword("fallback");
    }

    FunctionDecl parse_function() {
        FunctionDecl fn;
        fn.span = peek().span;
        while (true) {
            if (peek().is_punct("@") && !peek(1).is_punct("(")) {
                advance();
                Token attr = expect_identifier("attribute name");
                fn.attributes.push_back({attr.text, attr.span});
                skip_newlines();  // attributes usually sit on their own line
                continue;
            }
            if (match_keyword("public")) {
                fn.modifiers.is_public = true;
                continue;
            }
            if (match_keyword("visible")) {
                fn.modifiers.is_visible = true;
                continue;
            }
            if (match_keyword("mutating")) {
                fn.modifiers.is_mutating = true;
                continue;
            }
            break;
        }
        if (match_keyword("init")) {
            fn.kind = FunctionDecl::Kind::Initializer;
            fn.name_span = tokens_[pos_ - 1].span;
        } else if (match_keyword("fallback")) {
            fn.kind = FunctionDecl::Kind::Fallback;
            fn.name_span = tokens_[pos_ - 1].span;
        } else if (match_keyword("func")) {
            Token name = expect_identifier("function name");
            fn.name = name.text;
            fn.name_span = name.span;
        } else {
            fail(peek(), "Expected 'func', 'init' or 'fallback'");
        }
        fn.parameters = parse_parameter_list();
        if (match_op("->"))
            fn.return_type = parse_type();
        skip_newlines_before_body();
        if (peek().is_punct("{"))
            fn.body = parse_block();
        return fn;
    }

    void skip_newlines_before_body() {
        // Signatures in traits end at the line break; bodies may open on the
        // same line only. Nothing to do: '{' on the same line is not
        // separated by a Newline token.
    }

    std::vector<Parameter> parse_parameter_list() {
        expect_punct("(");
        std::vector<Parameter> params;
        if (!peek().is_punct(")")) {
            while (true) {
                params.push_back(parse_parameter());
                if (!match_punct(","))
                    break;
            }
        }
        expect_punct(")");
        return params;
    }

    Parameter parse_parameter() {
        Parameter p;
        p.span = peek().span;
        while (true) {
            if (match_keyword("implicit")) {
                p.is_implicit = true;
            } else if (match_keyword("inout")) {
                p.is_inout = true;
            } else {
                break;
            }
        }
        Token name = expect_identifier("parameter name");
        p.name = name.text;
        p.span = name.span;
        expect_punct(":");
        if (match_keyword("inout"))
            p.is_inout = true;
        p.type = parse_type();
        if (match_op("="))
            p.default_value = parse_expression();
        return p;
    }

    // ---- types ----

    TypeRef parse_type() {
        TypeRef base = parse_type_base();
        // postfix fixed-size arrays: T[n]
        while (peek().is_punct("[") && peek(1).kind == TokenKind::Number) {
            advance();
            Token n = advance();
            expect_punct("]");
            base = TypeRef::fixed_array(std::move(base), std::stoull(n.text));
        }
        return base;
    }

    TypeRef parse_type_base() {
        if (match_punct("[")) {
            TypeRef first = parse_type();
            if (match_punct(":")) {
                TypeRef value = parse_type();
                expect_punct("]");
                return TypeRef::dictionary(std::move(first), std::move(value));
            }
            expect_punct("]");
            return TypeRef::array(std::move(first));
        }
        Token name = expect_identifier("type name");
        if (name.text == "Int")
            return TypeRef::int_();
        if (name.text == "Bool")
            return TypeRef::bool_();
        if (name.text == "Address")
            return TypeRef::address();
        if (name.text == "String")
            return TypeRef::string();
        if (name.text == "Void")
            return TypeRef::void_();
        if (name.text == "Self")
            return TypeRef::self_type();
        return TypeRef::named(name.text);
    }

    // ---- statements ----

    Block parse_block() {
        Block block;
        block.span = peek().span;
        expect_punct("{");
        skip_separators();
        while (!peek().is_punct("}") && !at_end()) {
            try {
                block.statements.push_back(parse_statement());
            } catch (SyntaxAbort&) {
                synchronize_statement();
            }
            skip_separators();
        }
        expect_punct("}");
        return block;
    }

    StmtPtr parse_statement() {
        const Token& t = peek();
        if (t.is_keyword("return")) {
            auto stmt = Stmt::make(StmtKind::Return, t.span);
            advance();
            if (peek().kind != TokenKind::Newline && !peek().is_punct(";") && !peek().is_punct("}"))
                stmt->expr = parse_expression();
            expect_terminator();
            return stmt;
        }
        if (t.is_keyword("become")) {
            auto stmt = Stmt::make(StmtKind::Become, t.span);
            advance();
            Token state = expect_identifier("typestate name");
            stmt->name = state.text;
            stmt->span = state.span;
            expect_terminator();
            return stmt;
        }
        if (t.is_keyword("emit")) {
            auto stmt = Stmt::make(StmtKind::Emit, t.span);
            advance();
            stmt->expr = parse_expression();
            if (stmt->expr->kind != ExprKind::Call || stmt->expr->callee->kind != ExprKind::Identifier)
                fail(t, "Expected an event call after 'emit'");
            expect_terminator();
            return stmt;
        }
        if (t.is_keyword("for")) {
            auto stmt = Stmt::make(StmtKind::ForIn, t.span);
            advance();
            if (match_keyword("let"))
                stmt->is_let = true;
            else if (!match_keyword("var"))
                fail(peek(), "Expected 'var' or 'let' after 'for'");
            Token name = expect_identifier("loop variable name");
            stmt->name = name.text;
            expect_punct(":");
            stmt->declared_type = parse_type();
            if (!match_keyword("in"))
                fail(peek(), "Expected 'in'");
            stmt->sequence = parse_expression();
            stmt->body = parse_block();
            expect_terminator();
            return stmt;
        }
        if (t.is_keyword("if")) {
            return parse_if();
        }
        if (t.is_keyword("var") || t.is_keyword("let")) {
            auto stmt = Stmt::make(StmtKind::VarDecl, t.span);
            stmt->is_let = t.is_keyword("let");
            advance();
            Token name = expect_identifier("variable name");
            stmt->name = name.text;
            stmt->span = name.span;
            expect_punct(":");
            stmt->declared_type = parse_type();
            if (match_op("="))
                stmt->initial = parse_expression();
            expect_terminator();
            return stmt;
        }
        auto stmt = Stmt::make(StmtKind::Expr, t.span);
        stmt->expr = parse_expression(/*allow_assignment=*/true);
        stmt->span = stmt->expr->span;
        expect_terminator();
        return stmt;
    }

    StmtPtr parse_if() {
        auto stmt = Stmt::make(StmtKind::If, peek().span);
        advance();  // if
        stmt->condition = parse_expression();
        stmt->then_block = parse_block();
        if (match_keyword("else")) {
            if (peek().is_keyword("if")) {
                Block wrapper;
                wrapper.span = peek().span;
                wrapper.statements.push_back(parse_if());
                stmt->else_block = std::move(wrapper);
            } else {
                stmt->else_block = parse_block();
                expect_terminator();
            }
        } else {
            expect_terminator();
        }
        return stmt;
    }

    // ---- expressions ----

    struct OpInfo {
        BinaryOp op;
        int precedence;
        bool right_assoc;
    };

    std::optional<OpInfo> binary_op_info(const Token& t, bool allow_assignment) const {
        if (t.kind != TokenKind::Op)
            return std::nullopt;
        const std::string& s = t.text;
        if (allow_assignment) {
            if (s == "=")
                return OpInfo{BinaryOp::Assign, 1, true};
            if (s == "+=")
                return OpInfo{BinaryOp::AddAssign, 1, true};
            if (s == "-=")
                return OpInfo{BinaryOp::SubAssign, 1, true};
            if (s == "*=")
                return OpInfo{BinaryOp::MulAssign, 1, true};
            if (s == "/=")
                return OpInfo{BinaryOp::DivAssign, 1, true};
        }
        if (s == "||")
            return OpInfo{BinaryOp::Or, 2, false};
        if (s == "&&")
            return OpInfo{BinaryOp::And, 3, false};
        if (s == "==")
            return OpInfo{BinaryOp::Eq, 4, false};
        if (s == "!=")
            return OpInfo{BinaryOp::Ne, 4, false};
        if (s == "<")
            return OpInfo{BinaryOp::Lt, 5, false};
        if (s == "<=")
            return OpInfo{BinaryOp::Le, 5, false};
        if (s == ">")
            return OpInfo{BinaryOp::Gt, 5, false};
        if (s == ">=")
            return OpInfo{BinaryOp::Ge, 5, false};
        if (s == "+")
            return OpInfo{BinaryOp::Add, 6, false};
        if (s == "-")
            return OpInfo{BinaryOp::Sub, 6, false};
        if (s == "&+")
            return OpInfo{BinaryOp::WrapAdd, 6, false};
        if (s == "&-")
            return OpInfo{BinaryOp::WrapSub, 6, false};
        if (s == "*")
            return OpInfo{BinaryOp::Mul, 7, false};
        if (s == "/")
            return OpInfo{BinaryOp::Div, 7, false};
        if (s == "&*")
            return OpInfo{BinaryOp::WrapMul, 7, false};
        if (s == "**")
            return OpInfo{BinaryOp::Pow, 8, true};
        return std::nullopt;
    }

    ExprPtr parse_expression(bool allow_assignment = false, int min_precedence = 1) {
        ExprPtr lhs = parse_prefix();
        while (true) {
            auto info = binary_op_info(peek(), allow_assignment);
            if (!info || info->precedence < min_precedence)
                break;
            Token op_tok = advance();
            int next_min = info->right_assoc ? info->precedence : info->precedence + 1;
            // only the outermost statement expression may assign
            ExprPtr rhs = parse_expression(allow_assignment && info->right_assoc &&
                                               is_assignment(info->op),
                                           next_min);
            auto node = Expr::make(ExprKind::Binary, op_tok.span);
            node->op = info->op;
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_prefix() {
        const Token& t = peek();
        if (t.is_op("&")) {
            advance();
            auto node = Expr::make(ExprKind::Inout, t.span);
            node->lhs = parse_postfix();
            return node;
        }
        if (t.is_keyword("try")) {
            advance();
            auto node = Expr::make(ExprKind::Try, t.span);
            node->lhs = parse_postfix();
            if (node->lhs->kind != ExprKind::Call)
                fail(t, "Expected a function call after 'try'");
            return node;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr expr = parse_primary();
        while (true) {
            if (peek().is_op(".")) {
                Token dot = advance();
                Token name = expect_identifier("member name");
                auto node = Expr::make(ExprKind::Member, name.span);
                node->text = name.text;
                node->lhs = std::move(expr);
                expr = std::move(node);
                continue;
            }
            if (peek().is_punct("[")) {
                Token bracket = advance();
                auto node = Expr::make(ExprKind::Subscript, bracket.span);
                node->lhs = std::move(expr);
                node->rhs = parse_expression();
                expect_punct("]");
                expr = std::move(node);
                continue;
            }
            if (peek().is_punct("(")) {
                if (expr->kind != ExprKind::Identifier && expr->kind != ExprKind::Member)
                    fail(peek(), "Expected a function name before a call");
                auto node = Expr::make(ExprKind::Call, expr->span);
                node->callee = std::move(expr);
                node->args = parse_call_arguments();
                expr = std::move(node);
                continue;
            }
            break;
        }
        return expr;
    }

    std::vector<CallArg> parse_call_arguments() {
        expect_punct("(");
        std::vector<CallArg> args;
        if (!peek().is_punct(")")) {
            while (true) {
                CallArg arg;
                arg.span = peek().span;
                if (peek().kind == TokenKind::Identifier && peek(1).is_punct(":")) {
                    arg.label = advance().text;
                    advance();  // :
                }
                arg.value = parse_expression();
                args.push_back(std::move(arg));
                if (!match_punct(","))
                    break;
            }
        }
        expect_punct(")");
        return args;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Identifier: {
            auto node = Expr::make(ExprKind::Identifier, t.span);
            node->text = t.text;
            advance();
            return node;
        }
        case TokenKind::Number: {
            auto node = Expr::make(ExprKind::IntLit, t.span);
            node->text = t.text;
            node->has_fraction = t.has_fraction;
            advance();
            return node;
        }
        case TokenKind::AddressLit: {
            auto node = Expr::make(ExprKind::AddressLit, t.span);
            node->text = t.text;
            advance();
            return node;
        }
        case TokenKind::StringLit: {
            auto node = Expr::make(ExprKind::StringLit, t.span);
            node->text = t.text;
            advance();
            return node;
        }
        case TokenKind::BoolLit: {
            auto node = Expr::make(ExprKind::BoolLit, t.span);
            node->bool_value = t.text == "true";
            advance();
            return node;
        }
        default:
            break;
        }
        if (t.is_keyword("self")) {
            auto node = Expr::make(ExprKind::SelfRef, t.span);
            advance();
            return node;
        }
        if (t.is_punct("[")) {
            Token bracket = advance();
            if (match_punct(":")) {
                expect_punct("]");
                return Expr::make(ExprKind::DictLit, bracket.span);
            }
            expect_punct("]");
            return Expr::make(ExprKind::ArrayLit, bracket.span);
        }
        if (t.is_punct("(")) {
            advance();
            ExprPtr inner = parse_expression();
            if (peek().is_op("..<") || peek().is_op("...")) {
                bool closed = peek().is_op("...");
                Token op = advance();
                auto node = Expr::make(ExprKind::Range, op.span);
                node->range_closed = closed;
                node->lhs = std::move(inner);
                node->rhs = parse_expression();
                expect_punct(")");
                return node;
            }
            expect_punct(")");
            return inner;
        }
        fail(t, "Expected an expression");
    }

    SourceModule& module_;
    std::vector<Token> tokens_;
    DiagnosticList& diags_;
    size_t pos_ = 0;
};

}  // namespace

void parse_into(ast::SourceModule& module, const std::vector<Token>& tokens, DiagnosticList& diags) {
    diags.set_pass_rank(0);
    Parser(module, preprocess(tokens, diags), diags).run();
}

ParseResult parse(const std::vector<Token>& tokens) {
    ParseResult result;
    parse_into(result.module, tokens, result.diagnostics);
    return result;
}

}  // namespace flint
