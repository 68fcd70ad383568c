// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/compiler.hpp"

#include "flint/analysis.hpp"
#include "flint/lexer.hpp"
#include "flint/lowering.hpp"
#include "flint/parser.hpp"
#include "flint/stdlib_source.hpp"

namespace flint {

CompileResult compile(std::vector<SourceFile> sources, const CompileOptions& options) {
    CompileResult result;
    if (options.include_stdlib) {
        result.files.push_back({kStdlibFileName, std::string(stdlib_source())});
    }
    for (auto& f : sources)
        result.files.push_back(std::move(f));

    result.module = std::make_unique<ast::SourceModule>();
    for (size_t i = 0; i < result.files.size(); ++i) {
        auto tokens = tokenize(result.files[i].text, (int)i);
        parse_into(*result.module, tokens, result.diagnostics);
    }

    result.env = std::make_unique<Environment>(
        build_environment(*result.module, result.diagnostics));

    // mark stdlib-origin structs (file 0 when the stdlib is embedded)
    if (options.include_stdlib) {
        for (auto& [name, info] : result.env->structs) {
            if (info.decl && info.decl->span.file == 0)
                info.is_stdlib = true;
        }
    }

    result.diagnostics.append(analyze(*result.env));
    result.diagnostics.sort();

    if (!result.diagnostics.has_errors()) {
        DiagnosticList lowering_diags;
        IRProgram program = lower(*result.env, lowering_diags);
        result.diagnostics.append(std::move(lowering_diags));
        result.diagnostics.sort();
        if (!result.diagnostics.has_errors())
            result.program = std::make_shared<IRProgram>(std::move(program));
    }
    return result;
}

}  // namespace flint
