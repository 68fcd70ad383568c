// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/analysis.hpp"

namespace flint {

DiagnosticList analyze(Environment& env) {
    // Embedding first so the checkers see the full member surface of every
    // conformer; trait-sourced bodies are then checked per conformer.
    DiagnosticList diags = resolve_traits(env);
    diags.append(type_check(env));
    diags.append(semantic_check(env));
    diags.sort();
    return diags;
}

}  // namespace flint
