// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/diagnostics.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace flint {

Diagnostic& DiagnosticList::add(Severity sev, const char* code, SourceSpan span, std::string message) {
    Diagnostic d;
    d.severity = sev;
    d.code = code;
    d.message = std::move(message);
    d.span = span;
    d.pass_rank = pass_rank_;
    d.sequence = next_sequence_++;
    items_.push_back(std::move(d));
    return items_.back();
}

void DiagnosticList::append(DiagnosticList other) {
    for (auto& d : other.items_) {
        d.sequence = next_sequence_++;
        items_.push_back(std::move(d));
    }
}

bool DiagnosticList::has_errors() const {
    return std::any_of(items_.begin(), items_.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

size_t DiagnosticList::error_count() const {
    return (size_t)std::count_if(items_.begin(), items_.end(),
                                 [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void DiagnosticList::sort() {
    std::stable_sort(items_.begin(), items_.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.file != b.span.file)
            return a.span.file < b.span.file;
        if (a.span.line != b.span.line)
            return a.span.line < b.span.line;
        if (a.span.column != b.span.column)
            return a.span.column < b.span.column;
        if (a.pass_rank != b.pass_rank)
            return a.pass_rank < b.pass_rank;
        return a.sequence < b.sequence;
    });
}

namespace {

const char* severity_name(Severity s) {
    switch (s) {
    case Severity::Error:
        return "error";
    case Severity::Warning:
        return "warning";
    case Severity::Note:
        return "note";
    }
    return "?";
}

}  // namespace

std::string render_human(const Diagnostic& d, const std::vector<SourceFile>& files) {
    std::ostringstream out;
    if (d.span.valid()) {
        if (d.span.file >= 0 && d.span.file < (int)files.size() && !files[d.span.file].name.empty())
            out << files[d.span.file].name << ":";
        out << d.span.line << ":" << d.span.column << ": ";
    }
    out << severity_name(d.severity) << ": " << d.message;
    for (const auto& note : d.notes)
        out << "\n  Note: " << note.message;
    return out.str();
}

std::string DiagnosticList::render_human(const std::vector<SourceFile>& files) const {
    std::string out;
    for (const auto& d : items_) {
        out += flint::render_human(d, files);
        out += "\n";
    }
    return out;
}

std::string DiagnosticList::render_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : items_) {
        nlohmann::json j;
        j["severity"] = severity_name(d.severity);
        j["code"] = d.code;
        j["message"] = d.message;
        j["file"] = d.span.file;
        j["line"] = d.span.line;
        j["column"] = d.span.column;
        nlohmann::json notes = nlohmann::json::array();
        for (const auto& n : d.notes) {
            nlohmann::json jn;
            jn["message"] = n.message;
            if (n.span) {
                jn["line"] = n.span->line;
                jn["column"] = n.span->column;
            }
            notes.push_back(jn);
        }
        j["notes"] = notes;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

}  // namespace flint
