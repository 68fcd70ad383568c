// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "flint/diagnostics.hpp"
#include "flint/environment.hpp"
#include "flint/ir.hpp"

namespace flint {

/// `Type$function$param1_param2...`; inout parameters carry a '&' suffix.
/// Injective over (type, name, parameter types).
std::string mangle(const std::string& type_name, const std::string& function_name,
                   const std::vector<ParamSig>& params);

std::string mangle_type_name(const TypeRef& type);

/// First four bytes of keccak-256 over the canonical signature.
uint32_t compute_selector(const std::string& canonical_signature);

/// Lower an analyzed module to IR. Expects zero analysis errors; the only
/// diagnostics it can add are ABI selector clashes. Mutates `env` to record
/// mangled names.
IRProgram lower(Environment& env, DiagnosticList& diags);

}  // namespace flint
