// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flint/source.hpp"

namespace flint {

enum class Severity { Error, Warning, Note };

// Stable machine-readable codes, one per diagnostic category. Golden tests
// anchor on these rather than on message text.
namespace diag {
inline constexpr const char* ProtUndefined = "E-PROT-001";
inline constexpr const char* ProtIncompatibleCall = "E-PROT-002";
inline constexpr const char* MutInNonMutating = "E-MUT-001";
inline constexpr const char* MutNotNeeded = "W-MUT-002";
inline constexpr const char* MutLetReassign = "E-MUT-003";
inline constexpr const char* InitPropertyUnassigned = "E-INIT-001";
inline constexpr const char* InitIncomplete = "E-INIT-002";
inline constexpr const char* InitMissingPublic = "E-INIT-003";
inline constexpr const char* InitMultiplePublic = "E-INIT-004";
inline constexpr const char* InitNotAny = "E-INIT-005";
inline constexpr const char* DeclRedeclaration = "E-DECL-001";
inline constexpr const char* DeclInvalidChar = "E-DECL-002";
inline constexpr const char* DeclOrphanBehaviour = "E-DECL-003";
inline constexpr const char* DeclPayableNoImplicit = "E-DECL-004";
inline constexpr const char* DeclPayableAmbiguous = "E-DECL-005";
inline constexpr const char* DeclDynamicParams = "E-DECL-006";
inline constexpr const char* DeclUndeclaredId = "E-DECL-007";
inline constexpr const char* DeclMissingReturn = "E-DECL-008";
inline constexpr const char* DeclCodeAfterReturn = "W-DECL-009";
inline constexpr const char* DeclSignatureBody = "E-DECL-010";
inline constexpr const char* DeclMutatingFallback = "W-DECL-011";
inline constexpr const char* TypeReturnMismatch = "E-TYPE-001";
inline constexpr const char* TypeAssignMismatch = "E-TYPE-002";
inline constexpr const char* TypeArgumentMismatch = "E-TYPE-003";
inline constexpr const char* TypeGeneral = "E-TYPE-004";
inline constexpr const char* TypeFractionalLiteral = "E-TYPE-005";
inline constexpr const char* TypeUnknownState = "E-TYPE-006";
inline constexpr const char* ResultDiscarded = "E-RES-001";
inline constexpr const char* FallbackMutates = "E-RES-002";
inline constexpr const char* TraitMissingMember = "E-TRAIT-001";
inline constexpr const char* TraitDuplicateBody = "E-TRAIT-002";
inline constexpr const char* SyntaxError = "E-SYN-001";
inline constexpr const char* AbiSelectorClash = "E-ABI-001";
inline constexpr const char* WarnShadowedProtection = "W-PROT-003";
}  // namespace diag

struct DiagnosticNote {
    std::string message;
    std::optional<SourceSpan> span;
};

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;
    std::vector<DiagnosticNote> notes;
    int pass_rank = 0;  // parser=0, env=1, sema=2, type=3, traits=4, lowering=5
    int sequence = 0;   // emission order, final tie-break
};

class DiagnosticList {
public:
    Diagnostic& add(Severity sev, const char* code, SourceSpan span, std::string message);
    Diagnostic& error(const char* code, SourceSpan span, std::string message) {
        return add(Severity::Error, code, span, std::move(message));
    }
    Diagnostic& warning(const char* code, SourceSpan span, std::string message) {
        return add(Severity::Warning, code, span, std::move(message));
    }

    void set_pass_rank(int rank) { pass_rank_ = rank; }
    void append(DiagnosticList other);

    bool has_errors() const;
    size_t error_count() const;
    bool empty() const { return items_.empty(); }
    size_t size() const { return items_.size(); }

    /// Order by (file, line, column, pass, emission sequence).
    void sort();

    const std::vector<Diagnostic>& items() const { return items_; }

    std::string render_human(const std::vector<SourceFile>& files) const;
    std::string render_json() const;

private:
    std::vector<Diagnostic> items_;
    int pass_rank_ = 0;
    int next_sequence_ = 0;
};

std::string render_human(const Diagnostic& d, const std::vector<SourceFile>& files);

}  // namespace flint
