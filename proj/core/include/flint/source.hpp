// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace flint {

struct SourceFile {
    std::string name;
    std::string text;
};

/// Location of a token or node: 1-based line/column inside file `file`
/// (an index into the compilation's file list), plus character length.
struct SourceSpan {
    int file = 0;
    int line = 0;
    int column = 0;
    int length = 0;

    bool valid() const { return line > 0; }
    bool operator==(const SourceSpan&) const = default;
};

}  // namespace flint
