// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flint/ir.hpp"
#include "flint/uint256.hpp"

namespace flint {

using Address = UInt256;

/// Deterministic execution costs, configurable via a JSON table.
struct GasTable {
    uint64_t instr = 1;
    uint64_t sload = 20;
    uint64_t sstore = 100;
    uint64_t protection_check = 50;
    uint64_t typestate_check = 50;
    uint64_t event_word = 9;

    static GasTable from_json(const nlohmann::json& j);
};

struct EventField {
    std::string name;
    UInt256 value;
    TypeRef type;
};

struct EmittedEvent {
    Address contract;
    std::string name;
    std::vector<EventField> fields;
};

struct ContractInstance {
    std::string contract_name;
    std::map<UInt256, UInt256> storage;  // zero words are absent
    int typestate = 0;                   // 0 until the initialiser completes
    UInt256 balance;
};

enum class CallStatus { Ok, Reverted };

struct CallResult {
    CallStatus status = CallStatus::Ok;
    RevertReason reason = RevertReason::FatalError;  // valid when reverted
    std::optional<UInt256> return_word;
    TypeRef return_type = TypeRef::void_();
    uint64_t gas_used = 0;
    uint64_t protection_checks = 0;
    uint64_t typestate_checks = 0;
    std::vector<EmittedEvent> events;  // events committed by this transaction
    Address deployed_address;          // set by deploy

    bool ok() const { return status == CallStatus::Ok; }
};

struct Transaction {
    Address caller;
    Address target;
    std::string function;
    std::vector<UInt256> args;  // already encoded as words
    UInt256 value;
    std::optional<uint64_t> gas_limit;
};

/// An in-memory blockchain: externally-owned accounts, deployed contract
/// instances, an event log, and per-transaction gas and check counters.
/// Transactions are atomic: any trap restores the pre-transaction state.
class ChainState {
public:
    explicit ChainState(std::shared_ptr<const IRProgram> program, GasTable gas = {});

    void create_account(Address address, UInt256 balance);
    bool has_account(Address address) const { return accounts_.count(address) > 0; }
    UInt256 balance_of(Address address) const;
    const ContractInstance* instance(Address address) const;

    CallResult deploy(const std::string& contract_name, Address caller,
                      const std::vector<UInt256>& args, UInt256 value,
                      std::optional<uint64_t> gas_limit = {});

    CallResult call(const Transaction& tx);

    /// Raw ABI entry: payload is a selector followed by 32-byte words.
    CallResult call_raw(Address target, Address caller, const std::vector<uint8_t>& payload,
                        UInt256 value, std::optional<uint64_t> gas_limit = {});

    const std::vector<EmittedEvent>& event_log() const { return event_log_; }
    UInt256 minted_total() const { return minted_total_; }

    /// Σ account balances + Σ contract balances. Invariant across
    /// transactions up to minted_total().
    UInt256 total_value() const;

    nlohmann::json serialize() const;

    const IRProgram& program() const { return *program_; }
    const GasTable& gas() const { return gas_; }

    static Address contract_address_base();

private:
    friend class Executor;

    CallResult execute_dispatch(Address target, Address caller, uint32_t selector,
                                const std::vector<UInt256>& args, UInt256 value,
                                std::optional<uint64_t> gas_limit, bool unknown_name);

    /// Plain balance credit; contract destinations run no code.
    void credit(Address dest, const UInt256& amount);

    std::shared_ptr<const IRProgram> program_;
    GasTable gas_;
    std::map<Address, UInt256> accounts_;
    std::map<Address, ContractInstance> contracts_;
    std::vector<EmittedEvent> event_log_;
    UInt256 minted_total_;
    uint64_t contracts_deployed_ = 0;
};

/// Render one word as the given Flint type for JSON output: decimals for
/// Int, 0x-addresses, true/false, quoted text for String.
nlohmann::json render_word(const UInt256& word, const TypeRef& type);

}  // namespace flint
