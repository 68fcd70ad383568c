// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "flint/ast.hpp"
#include "flint/diagnostics.hpp"
#include "flint/environment.hpp"

namespace flint {

/// Embed trait defaults into conforming structs and contracts, checking
/// conformance along the way. Mutates `env` (registers cloned bodies).
DiagnosticList resolve_traits(Environment& env);

/// Name resolution and type checking. Annotates expression nodes in place
/// (types, symbol kinds, resolved callees).
DiagnosticList type_check(Environment& env);

/// The semantic checks that run over an annotated module: caller/typestate
/// protection compatibility of internal calls, mutation discipline,
/// definite initialization, payable shape, discarded results, fallback
/// restrictions, reachability.
DiagnosticList semantic_check(Environment& env);

/// All analysis passes in order; diagnostics merged and sorted.
DiagnosticList analyze(Environment& env);

}  // namespace flint
