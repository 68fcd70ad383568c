// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace flint {

bool is_flint_keyword(std::string_view word) {
    static const std::unordered_set<std::string_view> kKeywords = {
        "contract", "struct", "enum",   "case",   "trait",  "event", "func",
        "init",     "fallback", "mutating", "public", "visible", "var",  "let",
        "return",   "become", "emit",   "for",    "in",     "if",    "else",
        "self",     "try",    "implicit", "inout",
    };
    return kKeywords.count(word) > 0;
}

namespace {

// Longest operators first so maximal munch falls out of a linear scan.
constexpr std::array<std::string_view, 27> kOperators = {
    "..<", "...", "&+", "&-", "&*", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=",
    "*=",  "/=",  "**", "::", "->", "<-", "=",  "+",  "-",  "*",  "/",  "<",  ">",
    "&",
};

bool is_ident_start(char c) {
    return std::isalpha((unsigned char)c) || c == '_';
}

bool is_ident_continue(char c) {
    return std::isalnum((unsigned char)c) || c == '_';
}

bool is_hex_digit(char c) {
    return std::isxdigit((unsigned char)c);
}

class Lexer {
public:
    Lexer(const std::string& source, int file_id) : src_(source), file_(file_id) {}

    std::vector<Token> run() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                emit_newline();
                advance();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
                continue;
            }
            if (is_ident_start(c)) {
                lex_word();
                continue;
            }
            if (std::isdigit((unsigned char)c)) {
                lex_number();
                continue;
            }
            if (c == '"') {
                lex_string();
                continue;
            }
            lex_symbol();
        }
        // a final newline so the parser can treat EOF like a terminator
        emit_newline();
        push(TokenKind::EndOfFile, "", 0);
        return std::move(tokens_);
    }

private:
    char peek(size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    SourceSpan span_here(int length) const { return {file_, line_, column_, length}; }

    void push(TokenKind kind, std::string text, int length, bool fraction = false) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.span = span_here(length);
        t.has_fraction = fraction;
        tokens_.push_back(std::move(t));
    }

    void emit_newline() {
        if (bracket_depth_ > 0)
            return;
        if (!tokens_.empty() && tokens_.back().kind == TokenKind::Newline)
            return;
        push(TokenKind::Newline, "\n", 1);
    }

    void consume(int n) {
        for (int i = 0; i < n; ++i)
            advance();
    }

    void lex_word() {
        size_t start = pos_;
        while (pos_ < src_.size() && is_ident_continue(src_[pos_]))
            ++pos_;
        std::string word = src_.substr(start, pos_ - start);
        int len = (int)word.size();
        pos_ = start;  // rewind, then advance properly for column tracking
        if (word == "true" || word == "false")
            push(TokenKind::BoolLit, word, len);
        else if (is_flint_keyword(word))
            push(TokenKind::Keyword, word, len);
        else
            push(TokenKind::Identifier, word, len);
        consume(len);
    }

    void lex_number() {
        // 0x... is an address literal: exactly 40 hex digits, else invalid.
        if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            size_t start = pos_;
            size_t p = pos_ + 2;
            while (p < src_.size() && is_hex_digit(src_[p]))
                ++p;
            std::string text = src_.substr(start, p - start);
            int len = (int)text.size();
            push(p - start - 2 == 40 ? TokenKind::AddressLit : TokenKind::Invalid, text, len);
            consume(len);
            return;
        }
        size_t start = pos_;
        size_t p = pos_;
        while (p < src_.size() && std::isdigit((unsigned char)src_[p]))
            ++p;
        bool fraction = false;
        if (p < src_.size() && src_[p] == '.' && p + 1 < src_.size() &&
            std::isdigit((unsigned char)src_[p + 1])) {
            fraction = true;
            ++p;
            while (p < src_.size() && std::isdigit((unsigned char)src_[p]))
                ++p;
        }
        std::string text = src_.substr(start, p - start);
        int len = (int)text.size();
        push(TokenKind::Number, text, len, fraction);
        consume(len);
    }

    void lex_string() {
        size_t start = pos_;
        size_t p = pos_ + 1;
        while (p < src_.size() && src_[p] != '"' && src_[p] != '\n')
            ++p;
        if (p < src_.size() && src_[p] == '"') {
            std::string text = src_.substr(start + 1, p - start - 1);
            push(TokenKind::StringLit, text, (int)(p - start + 1));
            consume((int)(p - start + 1));
        } else {
            push(TokenKind::Invalid, "\"", 1);
            consume(1);
        }
    }

    void lex_symbol() {
        char c = src_[pos_];
        switch (c) {
        case '(':
        case '[':
            ++bracket_depth_;
            push(TokenKind::Punct, std::string(1, c), 1);
            consume(1);
            return;
        case ')':
        case ']':
            if (bracket_depth_ > 0)
                --bracket_depth_;
            push(TokenKind::Punct, std::string(1, c), 1);
            consume(1);
            return;
        case '{':
        case '}':
        case ',':
        case ':':
            if (c == ':' && peek(1) == ':')
                break;  // '::' is an operator
            push(TokenKind::Punct, std::string(1, c), 1);
            consume(1);
            return;
        case ';':
        case '@':
            push(TokenKind::Punct, std::string(1, c), 1);
            consume(1);
            return;
        case '.':
            if (peek(1) != '.') {
                push(TokenKind::Op, ".", 1);
                consume(1);
                return;
            }
            break;
        default:
            break;
        }
        std::string_view rest(src_.data() + pos_, src_.size() - pos_);
        for (std::string_view op : kOperators) {
            if (rest.substr(0, op.size()) == op) {
                push(TokenKind::Op, std::string(op), (int)op.size());
                consume((int)op.size());
                return;
            }
        }
        push(TokenKind::Invalid, std::string(1, c), 1);
        consume(1);
    }

    const std::string& src_;
    int file_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    int bracket_depth_ = 0;
    std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(const std::string& source, int file_id) {
    return Lexer(source, file_id).run();
}

}  // namespace flint
