// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace flint {

/// The Flint source of the standard library: the Asset trait and the Wei
/// currency struct. Prepended to every compilation unless --no-stdlib.
std::string_view stdlib_source();

inline constexpr const char* kStdlibFileName = "<stdlib>";

}  // namespace flint
