// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "flint/ast.hpp"

namespace flint {

/// Render a module back to Flint source in a canonical layout. Reparsing
/// the output yields a structurally identical module.
std::string print_module(const ast::SourceModule& module);

std::string print_expr(const ast::Expr& expr);

/// Structural equality ignoring spans and analysis annotations.
bool structurally_equal(const ast::SourceModule& a, const ast::SourceModule& b);

}  // namespace flint
