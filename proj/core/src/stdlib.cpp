// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/stdlib_source.hpp"

namespace flint {

std::string_view stdlib_source() {
    // Any currency conforms to Asset; only getRawValue and setRawValue need
    // to be implemented, the transfer defaults do the guarded moves.
    static constexpr std::string_view kSource = R"flint(
struct trait Asset {
  init(unsafeRawValue: Int)
  init(source: inout Self, amount: Int)
  init(source: inout Self)

  mutating func transfer(source: inout Self, amount: Int) {
    if source.getRawValue() < amount {
      fatalError()
    }
    let unused1: Int = source.setRawValue(value: source.getRawValue() - amount)
    let unused2: Int = setRawValue(value: getRawValue() + amount)
  }

  mutating func transfer(source: inout Self) {
    transfer(source: &source, amount: source.getRawValue())
  }

  mutating func setRawValue(value: Int) -> Int
  func getRawValue() -> Int
}

struct Wei: Asset {
  var rawValue: Int = 0

  init(unsafeRawValue: Int) {
    self.rawValue = unsafeRawValue
  }

  init(source: inout Wei, amount: Int) {
    transfer(source: &source, amount: amount)
  }

  init(source: inout Wei) {
    let amount: Int = source.getRawValue()
    transfer(source: &source, amount: amount)
  }

  mutating func setRawValue(value: Int) -> Int {
    rawValue = value
    return rawValue
  }

  func getRawValue() -> Int {
    return rawValue
  }
}
)flint";
    return kSource;
}

}  // namespace flint
