// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flint/source.hpp"

namespace flint {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,      // decimal, possibly with a fractional part (rejected later)
    AddressLit,  // 0x + exactly 40 hex digits
    StringLit,   // text without the quotes
    BoolLit,     // "true" / "false"
    Punct,       // ( ) { } [ ] , : ; @
    Op,          // operators, incl. :: -> <- ..< ...
    Newline,
    Invalid,  // stray character, e.g. '$' or malformed 0x literal
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;
    SourceSpan span;
    bool has_fraction = false;  // Number of the form a.b

    bool is(TokenKind k) const { return kind == k; }
    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_keyword(std::string_view kw) const { return kind == TokenKind::Keyword && text == kw; }
    bool is_op(std::string_view op) const { return kind == TokenKind::Op && text == op; }
    bool is_punct(std::string_view p) const { return kind == TokenKind::Punct && text == p; }
};

bool is_flint_keyword(std::string_view word);

/// Tokenize one source file. Never fails: malformed characters become
/// Invalid tokens and are reported by the parser. Newline tokens are
/// collapsed and suppressed inside ( ) and [ ] nesting. The trailing
/// EndOfFile token is always present.
std::vector<Token> tokenize(const std::string& source, int file_id = 0);

}  // namespace flint
