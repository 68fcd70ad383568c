// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flint/types.hpp"
#include "flint/uint256.hpp"

namespace flint {

/// Register-based linear IR. Registers hold 256-bit words; references to
/// dynamic values travel as an (address, isMem) register pair, mirroring
/// the calling convention where every by-reference parameter is followed
/// by its location flag.
enum class Op {
    Const,  // dst <- imm
    Move,   // dst <- op0
    Load,   // dst <- [op1] in space op0 (0 storage, 1 memory)
    Store,  // [op1] in space op0 <- op2
    Alloc,  // dst <- bump-allocate op0 bytes of transaction memory
    Add,    // checked arithmetic: trap on overflow / underflow / div by zero
    Sub,
    Mul,
    Div,
    Exp,
    WAdd,  // wrapping arithmetic, mod 2^256
    WSub,
    WMul,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Jump,    // to instruction index target_a
    Branch,  // cond op0; true -> target_a, false -> target_b
    Call,    // dst (optional) <- call `symbol` with operand args; checked
             // calls run the callee's entry checks (try sites, dispatch)
    Ret,     // optional op0
    Revert,  // reason code imm op0
    Emit,    // event `symbol` with operand args
    Become,  // typestate ordinal op0
    SendWei,  // dest op0; source Wei reference: addr op1, space op2
    ProtCheck,   // run the enclosing function's protection spec
    StateCheck,  // run the enclosing function's typestate spec
    Keccak1,     // dst <- keccak256(word op0)
    Keccak2,     // dst <- keccak256(word op0 ++ word op1)
    Mint,        // currency created from thin air: op0 amount
    Caller,      // dst <- transaction caller address
};

const char* op_name(Op op);

enum class RevertReason {
    Protection,
    Typestate,
    Overflow,
    DivisionByZero,
    Assertion,
    FatalError,
    InsufficientFunds,
    OutOfGas,
    UnknownSelector,
};

const char* revert_reason_name(RevertReason r);

struct Operand {
    enum class Kind { Reg, Imm };
    Kind kind = Kind::Imm;
    int reg = -1;
    UInt256 imm;

    static Operand r(int reg) {
        Operand o;
        o.kind = Kind::Reg;
        o.reg = reg;
        return o;
    }
    static Operand immediate(UInt256 v) {
        Operand o;
        o.kind = Kind::Imm;
        o.imm = v;
        return o;
    }
    bool operator==(const Operand&) const = default;
};

struct IRInstr {
    Op op;
    int dst = -1;  // -1 = none
    std::vector<Operand> operands;
    int target_a = -1;
    int target_b = -1;
    std::string symbol;    // callee mangled name / event name
    bool checked = false;  // Call through the callee's checked entry

    bool operator==(const IRInstr&) const = default;
};

struct IRProtection {
    enum class Kind { AddressProperty, AddressListProperty, Predicate };
    Kind kind = Kind::AddressProperty;
    UInt256 slot;           // property head slot
    std::string predicate;  // mangled name of the (Address) -> Bool function

    bool operator==(const IRProtection&) const = default;
};

struct IRParam {
    std::string name;
    TypeRef type;
    bool is_ref = false;  // takes two registers: address then isMem flag

    bool operator==(const IRParam&) const = default;
};

struct IRFunction {
    std::string mangled;
    std::string source_name;  // pre-mangling name; "init"/"fallback" for those
    std::vector<IRParam> params;
    TypeRef return_type = TypeRef::void_();
    bool is_public = false;
    bool is_payable = false;
    int implicit_param = -1;  // params index bound to the attached value
    std::vector<int> required_states;      // empty = no typestate check
    std::vector<IRProtection> protections;  // empty = no caller check
    std::vector<IRInstr> body;
    int reg_count = 0;
    int param_regs = 0;   // leading registers holding the arguments
    // Runtime checks sit at the top of the body. External dispatch and
    // `try` call sites enter at 0; internal direct calls skip them.
    int entry_skip = 0;

    bool operator==(const IRFunction&) const = default;
};

struct IRLayoutEntry {
    std::string name;
    uint64_t slot = 0;
    uint64_t words = 1;
    TypeRef type;

    bool operator==(const IRLayoutEntry&) const = default;
};

struct IREvent {
    std::string name;
    std::vector<std::pair<std::string, TypeRef>> fields;

    bool operator==(const IREvent&) const = default;
};

struct IRContract {
    std::string name;
    std::vector<IRLayoutEntry> layout;
    std::vector<std::pair<std::string, int>> typestates;  // declared states, ordinal = index+1
    int ready_ordinal = 1;  // marker state when the initialiser never ran `become`
    std::vector<IREvent> events;
    // §-order: contract functions, then struct functions, then runtime helpers
    std::vector<IRFunction> functions;
    std::map<uint32_t, std::string> dispatch;  // selector -> mangled name
    std::string init_mangled;
    std::string fallback_mangled;  // empty when no fallback is declared

    const IRFunction* function(const std::string& mangled) const;
    const IRLayoutEntry* layout_entry(const std::string& name) const;
    const IREvent* event(const std::string& name) const;
    int state_ordinal(const std::string& name) const;  // -1 when unknown

    bool operator==(const IRContract&) const = default;
};

struct IRProgram {
    std::vector<IRContract> contracts;

    const IRContract* contract(const std::string& name) const;

    bool operator==(const IRProgram&) const = default;
};

/// Textual form: one instruction per line, `;` comments, layout tables as
/// header pragmas. parse_ir(dump(p)) == p.
std::string dump(const IRProgram& program);
IRProgram parse_ir(const std::string& text);  // throws std::runtime_error

/// Type spelling used inside IR dumps (no embedded spaces).
std::string type_text(const TypeRef& t);
TypeRef parse_type_text(const std::string& text);

}  // namespace flint
