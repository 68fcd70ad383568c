// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "flint/ast.hpp"
#include "flint/diagnostics.hpp"
#include "flint/lexer.hpp"

namespace flint {

/// Parse one token stream, appending declarations to `module` and syntax
/// diagnostics to `diags`. Never throws: a malformed declaration is
/// reported and skipped up to the next top-level declaration.
void parse_into(ast::SourceModule& module, const std::vector<Token>& tokens, DiagnosticList& diags);

struct ParseResult {
    ast::SourceModule module;
    DiagnosticList diagnostics;
};

ParseResult parse(const std::vector<Token>& tokens);

}  // namespace flint
