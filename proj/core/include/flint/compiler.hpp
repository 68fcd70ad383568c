// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>

#include "flint/ast.hpp"
#include "flint/diagnostics.hpp"
#include "flint/environment.hpp"
#include "flint/ir.hpp"

namespace flint {

struct CompileOptions {
    bool include_stdlib = true;
};

/// Everything one compilation produces. The module owns the AST that the
/// environment points into; keep the result alive while using `env`.
struct CompileResult {
    std::vector<SourceFile> files;
    std::unique_ptr<ast::SourceModule> module;
    std::unique_ptr<Environment> env;
    DiagnosticList diagnostics;
    std::shared_ptr<const IRProgram> program;  // set when there were no errors

    bool ok() const { return !diagnostics.has_errors(); }
};

/// Lex, parse, analyze and lower a set of source files (concatenated into
/// one module in order, after the embedded stdlib).
CompileResult compile(std::vector<SourceFile> sources, const CompileOptions& options = {});

}  // namespace flint
