// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/chain.hpp"

#include <cassert>
#include <stdexcept>

#include "flint/abi.hpp"
#include "flint/keccak.hpp"

namespace flint {

GasTable GasTable::from_json(const nlohmann::json& j) {
    GasTable t;
    if (j.contains("instr"))
        t.instr = j["instr"].get<uint64_t>();
    if (j.contains("sload"))
        t.sload = j["sload"].get<uint64_t>();
    if (j.contains("sstore"))
        t.sstore = j["sstore"].get<uint64_t>();
    if (j.contains("protection_check"))
        t.protection_check = j["protection_check"].get<uint64_t>();
    if (j.contains("typestate_check"))
        t.typestate_check = j["typestate_check"].get<uint64_t>();
    if (j.contains("event_word"))
        t.event_word = j["event_word"].get<uint64_t>();
    return t;
}

namespace {

struct Trap {
    RevertReason reason;
};

UInt256 keccak_words(const UInt256& a, const UInt256* b) {
    uint8_t buf[64];
    auto ab = a.to_be_bytes();
    std::copy(ab.begin(), ab.end(), buf);
    size_t len = 32;
    if (b) {
        auto bb = b->to_be_bytes();
        std::copy(bb.begin(), bb.end(), buf + 32);
        len = 64;
    }
    auto hash = keccak256(buf, len);
    return UInt256::from_be_bytes(hash.data(), 32);
}

constexpr uint64_t kFreePointer = 0x40;
constexpr uint64_t kInitialFreeMemory = 0x60;

}  // namespace

/// Runs one transaction against one contract instance. Reverts unwind via
/// Trap exceptions; the ChainState wrapper restores its snapshot.
class Executor {
public:
    Executor(ChainState& chain, ContractInstance& inst, Address inst_address,
             const IRContract& code, Address caller, std::optional<uint64_t> gas_limit)
        : chain_(chain),
          inst_(inst),
          inst_address_(inst_address),
          code_(code),
          caller_(caller),
          gas_limit_(gas_limit) {}

    UInt256 run(const IRFunction& fn, std::vector<UInt256> args, bool checked_entry) {
        return exec(fn, std::move(args), checked_entry);
    }

    uint64_t alloc_memory(uint64_t bytes) {
        UInt256 ptr = memory_load(UInt256(kFreePointer));
        if (ptr.is_zero())
            ptr = UInt256(kInitialFreeMemory);
        uint64_t rounded = (bytes + 31) / 32 * 32;
        memory_store(UInt256(kFreePointer), ptr.wrapping_add(UInt256(rounded)));
        return ptr.low64();
    }

    void memory_store(const UInt256& addr, const UInt256& value) {
        if (value.is_zero())
            memory_.erase(addr);
        else
            memory_[addr] = value;
    }

    UInt256 memory_load(const UInt256& addr) const {
        auto it = memory_.find(addr);
        return it == memory_.end() ? UInt256(0) : it->second;
    }

    uint64_t gas_used = 0;
    uint64_t protection_checks = 0;
    uint64_t typestate_checks = 0;
    std::vector<EmittedEvent> staged_events;

private:
    ChainState& chain_;
    ContractInstance& inst_;
    Address inst_address_;
    const IRContract& code_;
    Address caller_;
    std::optional<uint64_t> gas_limit_;
    std::map<UInt256, UInt256> memory_;

    void charge(uint64_t amount) {
        gas_used += amount;
        if (gas_limit_ && gas_used > *gas_limit_)
            throw Trap{RevertReason::OutOfGas};
    }

    void storage_store(const UInt256& slot, const UInt256& value) {
        if (value.is_zero())
            inst_.storage.erase(slot);
        else
            inst_.storage[slot] = value;
    }

    UInt256 storage_load(const UInt256& slot) const {
        auto it = inst_.storage.find(slot);
        return it == inst_.storage.end() ? UInt256(0) : it->second;
    }

    UInt256 exec(const IRFunction& fn, std::vector<UInt256> args, bool checked_entry) {
        std::vector<UInt256> regs(std::max(fn.reg_count, fn.param_regs));
        assert((int)args.size() == fn.param_regs);
        std::copy(args.begin(), args.end(), regs.begin());

        size_t pc = checked_entry ? 0 : (size_t)fn.entry_skip;
        const GasTable& cost = chain_.gas_;

        auto value_of = [&](const Operand& o) -> UInt256 {
            return o.kind == Operand::Kind::Reg ? regs[(size_t)o.reg] : o.imm;
        };

        while (pc < fn.body.size()) {
            const IRInstr& in = fn.body[pc];
            ++pc;
            switch (in.op) {
            case Op::Const:
                charge(cost.instr);
                regs[in.dst] = in.operands[0].imm;
                break;
            case Op::Move:
                charge(cost.instr);
                regs[in.dst] = value_of(in.operands[0]);
                break;
            case Op::Load: {
                UInt256 space = value_of(in.operands[0]);
                UInt256 addr = value_of(in.operands[1]);
                charge(space.is_zero() ? cost.sload : cost.instr);
                regs[in.dst] = space.is_zero() ? storage_load(addr) : memory_load(addr);
                break;
            }
            case Op::Store: {
                UInt256 space = value_of(in.operands[0]);
                UInt256 addr = value_of(in.operands[1]);
                UInt256 value = value_of(in.operands[2]);
                charge(space.is_zero() ? cost.sstore : cost.instr);
                if (space.is_zero())
                    storage_store(addr, value);
                else
                    memory_store(addr, value);
                break;
            }
            case Op::Alloc:
                charge(cost.instr);
                regs[in.dst] = UInt256(alloc_memory(value_of(in.operands[0]).low64()));
                break;
            case Op::Add: {
                charge(cost.instr);
                auto r = value_of(in.operands[0]).checked_add(value_of(in.operands[1]));
                if (!r)
                    throw Trap{RevertReason::Overflow};
                regs[in.dst] = *r;
                break;
            }
            case Op::Sub: {
                charge(cost.instr);
                auto r = value_of(in.operands[0]).checked_sub(value_of(in.operands[1]));
                if (!r)
                    throw Trap{RevertReason::Overflow};
                regs[in.dst] = *r;
                break;
            }
            case Op::Mul: {
                charge(cost.instr);
                auto r = value_of(in.operands[0]).checked_mul(value_of(in.operands[1]));
                if (!r)
                    throw Trap{RevertReason::Overflow};
                regs[in.dst] = *r;
                break;
            }
            case Op::Div: {
                charge(cost.instr);
                UInt256 divisor = value_of(in.operands[1]);
                if (divisor.is_zero())
                    throw Trap{RevertReason::DivisionByZero};
                regs[in.dst] = *value_of(in.operands[0]).checked_div(divisor);
                break;
            }
            case Op::Exp: {
                charge(cost.instr);
                auto r = value_of(in.operands[0]).checked_exp(value_of(in.operands[1]));
                if (!r)
                    throw Trap{RevertReason::Overflow};
                regs[in.dst] = *r;
                break;
            }
            case Op::WAdd:
                charge(cost.instr);
                regs[in.dst] = value_of(in.operands[0]).wrapping_add(value_of(in.operands[1]));
                break;
            case Op::WSub:
                charge(cost.instr);
                regs[in.dst] = value_of(in.operands[0]).wrapping_sub(value_of(in.operands[1]));
                break;
            case Op::WMul:
                charge(cost.instr);
                regs[in.dst] = value_of(in.operands[0]).wrapping_mul(value_of(in.operands[1]));
                break;
            case Op::Eq:
                charge(cost.instr);
                regs[in.dst] = UInt256(value_of(in.operands[0]) == value_of(in.operands[1]) ? 1 : 0);
                break;
            case Op::Ne:
                charge(cost.instr);
                regs[in.dst] = UInt256(value_of(in.operands[0]) == value_of(in.operands[1]) ? 0 : 1);
                break;
            case Op::Lt:
                charge(cost.instr);
                regs[in.dst] = UInt256(value_of(in.operands[0]) < value_of(in.operands[1]) ? 1 : 0);
                break;
            case Op::Le:
                charge(cost.instr);
                regs[in.dst] = UInt256(value_of(in.operands[0]) <= value_of(in.operands[1]) ? 1 : 0);
                break;
            case Op::Gt:
                charge(cost.instr);
                regs[in.dst] = UInt256(value_of(in.operands[1]) < value_of(in.operands[0]) ? 1 : 0);
                break;
            case Op::Ge:
                charge(cost.instr);
                regs[in.dst] = UInt256(value_of(in.operands[1]) <= value_of(in.operands[0]) ? 1 : 0);
                break;
            case Op::Jump:
                charge(cost.instr);
                pc = (size_t)in.target_a;
                break;
            case Op::Branch:
                charge(cost.instr);
                pc = (size_t)(!value_of(in.operands[0]).is_zero() ? in.target_a : in.target_b);
                break;
            case Op::Call: {
                charge(cost.instr);
                const IRFunction* callee = code_.function(in.symbol);
                if (!callee)
                    throw std::runtime_error("unknown callee: " + in.symbol);
                std::vector<UInt256> callee_args;
                callee_args.reserve(in.operands.size());
                for (const auto& o : in.operands)
                    callee_args.push_back(value_of(o));
                UInt256 result = exec(*callee, std::move(callee_args), in.checked);
                if (in.dst >= 0)
                    regs[in.dst] = result;
                break;
            }
            case Op::Ret:
                charge(cost.instr);
                return in.operands.empty() ? UInt256(0) : value_of(in.operands[0]);
            case Op::Revert:
                charge(cost.instr);
                throw Trap{(RevertReason)value_of(in.operands[0]).low64()};
            case Op::Emit: {
                const IREvent* event = code_.event(in.symbol);
                if (!event)
                    throw std::runtime_error("unknown event: " + in.symbol);
                charge(cost.instr + cost.event_word * in.operands.size());
                EmittedEvent e;
                e.contract = inst_address_;
                e.name = in.symbol;
                for (size_t i = 0; i < in.operands.size(); ++i)
                    e.fields.push_back(
                        {event->fields[i].first, value_of(in.operands[i]), event->fields[i].second});
                staged_events.push_back(std::move(e));
                break;
            }
            case Op::Become:
                charge(cost.instr);
                inst_.typestate = (int)value_of(in.operands[0]).low64();
                break;
            case Op::SendWei: {
                charge(cost.instr);
                UInt256 dest = value_of(in.operands[0]);
                UInt256 addr = value_of(in.operands[1]);
                UInt256 space = value_of(in.operands[2]);
                UInt256 amount = space.is_zero() ? storage_load(addr) : memory_load(addr);
                if (inst_.balance < amount)
                    throw Trap{RevertReason::InsufficientFunds};
                if (space.is_zero())
                    storage_store(addr, UInt256(0));
                else
                    memory_store(addr, UInt256(0));
                inst_.balance = inst_.balance.wrapping_sub(amount);
                chain_.credit(dest, amount);
                break;
            }
            case Op::ProtCheck:
                charge(cost.protection_check);
                ++protection_checks;
                run_protection_check(fn);
                break;
            case Op::StateCheck:
                charge(cost.typestate_check);
                ++typestate_checks;
                if (std::find(fn.required_states.begin(), fn.required_states.end(),
                              inst_.typestate) == fn.required_states.end())
                    throw Trap{RevertReason::Typestate};
                break;
            case Op::Keccak1:
                charge(cost.instr);
                regs[in.dst] = keccak_words(value_of(in.operands[0]), nullptr);
                break;
            case Op::Keccak2: {
                charge(cost.instr);
                UInt256 b = value_of(in.operands[1]);
                regs[in.dst] = keccak_words(value_of(in.operands[0]), &b);
                break;
            }
            case Op::Mint: {
                charge(cost.instr);
                UInt256 amount = value_of(in.operands[0]);
                inst_.balance = inst_.balance.wrapping_add(amount);
                chain_.minted_total_ = chain_.minted_total_.wrapping_add(amount);
                break;
            }
            case Op::Caller:
                charge(cost.instr);
                regs[in.dst] = caller_;
                break;
            }
        }
        return UInt256(0);  // fall-off; lowering always emits Ret
    }

    void run_protection_check(const IRFunction& fn) {
        for (const auto& spec : fn.protections) {
            switch (spec.kind) {
            case IRProtection::Kind::AddressProperty:
                if (storage_load(spec.slot) == caller_)
                    return;
                break;
            case IRProtection::Kind::AddressListProperty: {
                UInt256 len = storage_load(spec.slot);
                UInt256 base = keccak_words(spec.slot, nullptr);
                for (UInt256 i(0); i < len; i = i.wrapping_add(UInt256(1))) {
                    if (storage_load(base.wrapping_add(i)) == caller_)
                        return;
                }
                break;
            }
            case IRProtection::Kind::Predicate: {
                const IRFunction* pred = code_.function(spec.predicate);
                if (!pred)
                    throw std::runtime_error("unknown predicate: " + spec.predicate);
                try {
                    if (!exec(*pred, {caller_}, /*checked_entry=*/false).is_zero())
                        return;
                } catch (Trap&) {
                    // a revert inside the predicate fails this protection
                }
                break;
            }
            }
        }
        throw Trap{RevertReason::Protection};
    }

    friend class ChainState;
};

ChainState::ChainState(std::shared_ptr<const IRProgram> program, GasTable gas)
    : program_(std::move(program)), gas_(gas) {}

void ChainState::create_account(Address address, UInt256 balance) {
    accounts_[address] = balance;
}

UInt256 ChainState::balance_of(Address address) const {
    auto it = accounts_.find(address);
    return it == accounts_.end() ? UInt256(0) : it->second;
}

const ContractInstance* ChainState::instance(Address address) const {
    auto it = contracts_.find(address);
    return it == contracts_.end() ? nullptr : &it->second;
}

Address ChainState::contract_address_base() {
    return UInt256(0x10000);
}

void ChainState::credit(Address dest, const UInt256& amount) {
    auto contract = contracts_.find(dest);
    if (contract != contracts_.end()) {
        contract->second.balance = contract->second.balance.wrapping_add(amount);
        return;
    }
    accounts_[dest] = balance_of(dest).wrapping_add(amount);
}

UInt256 ChainState::total_value() const {
    UInt256 total;
    for (const auto& [addr, bal] : accounts_)
        total = total.wrapping_add(bal);
    for (const auto& [addr, inst] : contracts_)
        total = total.wrapping_add(inst.balance);
    return total;
}

namespace {

/// Bind external argument words to parameter registers. The implicit
/// currency parameter becomes a fresh memory struct holding the attached
/// value.
std::vector<UInt256> bind_arguments(Executor& exec, const IRFunction& fn,
                                    const std::vector<UInt256>& args, const UInt256& value) {
    std::vector<UInt256> regs;
    size_t next_arg = 0;
    for (size_t i = 0; i < fn.params.size(); ++i) {
        if ((int)i == fn.implicit_param) {
            uint64_t addr = exec.alloc_memory(32);
            exec.memory_store(UInt256(addr), value);
            regs.push_back(UInt256(addr));
            regs.push_back(UInt256(1));
            continue;
        }
        if (next_arg >= args.size())
            throw Trap{RevertReason::UnknownSelector};
        regs.push_back(args[next_arg++]);
        if (fn.params[i].is_ref)
            throw Trap{RevertReason::UnknownSelector};  // no dynamic external args
    }
    if (next_arg != args.size())
        throw Trap{RevertReason::UnknownSelector};
    return regs;
}

size_t external_arity(const IRFunction& fn) {
    size_t n = 0;
    for (size_t i = 0; i < fn.params.size(); ++i) {
        if ((int)i != fn.implicit_param)
            ++n;
    }
    return n;
}

}  // namespace

CallResult ChainState::deploy(const std::string& contract_name, Address caller,
                              const std::vector<UInt256>& args, UInt256 value,
                              std::optional<uint64_t> gas_limit) {
    CallResult result;
    const IRContract* code = program_->contract(contract_name);
    if (!code || code->init_mangled.empty()) {
        result.status = CallStatus::Reverted;
        result.reason = RevertReason::UnknownSelector;
        return result;
    }
    const IRFunction* init = code->function(code->init_mangled);

    auto accounts_snapshot = accounts_;
    auto contracts_snapshot = contracts_;
    UInt256 minted_snapshot = minted_total_;

    Address address = contract_address_base().wrapping_add(UInt256(contracts_deployed_ + 1));
    auto [it, inserted] = contracts_.emplace(address, ContractInstance{contract_name, {}, 0, {}});
    ContractInstance& inst = it->second;

    Executor exec(*this, inst, address, *code, caller, gas_limit);
    try {
        if (balance_of(caller) < value)
            throw Trap{RevertReason::InsufficientFunds};
        accounts_[caller] = balance_of(caller).wrapping_sub(value);
        inst.balance = inst.balance.wrapping_add(value);
        if (!init->is_payable && !value.is_zero())
            throw Trap{RevertReason::FatalError};

        auto regs = bind_arguments(exec, *init, args, value);
        exec.run(*init, std::move(regs), /*checked_entry=*/true);
        if (inst.typestate == 0)
            inst.typestate = code->ready_ordinal;

        ++contracts_deployed_;
        result.deployed_address = address;
        for (auto& e : exec.staged_events)
            event_log_.push_back(e);
        result.events = std::move(exec.staged_events);
    } catch (Trap& trap) {
        accounts_ = std::move(accounts_snapshot);
        contracts_ = std::move(contracts_snapshot);
        minted_total_ = minted_snapshot;
        result.status = CallStatus::Reverted;
        result.reason = trap.reason;
    }
    result.gas_used = exec.gas_used;
    result.protection_checks = exec.protection_checks;
    result.typestate_checks = exec.typestate_checks;
    return result;
}

CallResult ChainState::call(const Transaction& tx) {
    // resolve by name and arity among the dispatchable functions
    auto it = contracts_.find(tx.target);
    if (it == contracts_.end()) {
        CallResult result;
        result.status = CallStatus::Reverted;
        result.reason = RevertReason::UnknownSelector;
        return result;
    }
    const IRContract* code = program_->contract(it->second.contract_name);
    uint32_t selector = 0;
    bool found = false;
    for (const auto& [sel, mangled] : code->dispatch) {
        const IRFunction* fn = code->function(mangled);
        if (fn->source_name == tx.function && external_arity(*fn) == tx.args.size()) {
            selector = sel;
            found = true;
            break;
        }
    }
    return execute_dispatch(tx.target, tx.caller, selector, tx.args, tx.value, tx.gas_limit,
                            !found);
}

CallResult ChainState::call_raw(Address target, Address caller,
                                const std::vector<uint8_t>& payload, UInt256 value,
                                std::optional<uint64_t> gas_limit) {
    auto decoded = abi::decode_call(payload);
    if (!decoded) {
        CallResult result;
        result.status = CallStatus::Reverted;
        result.reason = RevertReason::UnknownSelector;
        return result;
    }
    return execute_dispatch(target, caller, decoded->selector, decoded->words, value, gas_limit,
                            false);
}

CallResult ChainState::execute_dispatch(Address target, Address caller, uint32_t selector,
                                        const std::vector<UInt256>& args, UInt256 value,
                                        std::optional<uint64_t> gas_limit, bool unknown_name) {
    CallResult result;
    auto it = contracts_.find(target);
    if (it == contracts_.end()) {
        result.status = CallStatus::Reverted;
        result.reason = RevertReason::UnknownSelector;
        return result;
    }
    ContractInstance& inst = it->second;
    const IRContract* code = program_->contract(inst.contract_name);

    const IRFunction* fn = nullptr;
    bool is_fallback = false;
    if (!unknown_name) {
        auto entry = code->dispatch.find(selector);
        if (entry != code->dispatch.end()) {
            fn = code->function(entry->second);
            if (fn && external_arity(*fn) != args.size())
                fn = nullptr;  // length mismatch: treat as unknown call
        }
    }
    if (!fn) {
        if (code->fallback_mangled.empty()) {
            result.status = CallStatus::Reverted;
            result.reason = RevertReason::UnknownSelector;
            return result;
        }
        fn = code->function(code->fallback_mangled);
        is_fallback = true;
    }

    auto accounts_snapshot = accounts_;
    auto contracts_snapshot = contracts_;
    UInt256 minted_snapshot = minted_total_;
    // `it` and `inst` may be invalidated by the rollback only; safe here.

    Executor exec(*this, inst, target, *code, caller, gas_limit);
    try {
        if (balance_of(caller) < value)
            throw Trap{RevertReason::InsufficientFunds};
        accounts_[caller] = balance_of(caller).wrapping_sub(value);
        inst.balance = inst.balance.wrapping_add(value);
        if (!fn->is_payable && !value.is_zero())
            throw Trap{RevertReason::FatalError};

        std::vector<UInt256> regs =
            is_fallback ? std::vector<UInt256>{} : bind_arguments(exec, *fn, args, value);
        UInt256 ret = exec.run(*fn, std::move(regs), /*checked_entry=*/true);

        if (!fn->return_type.is_void()) {
            result.return_word = ret;
            result.return_type = fn->return_type;
        }
        for (auto& e : exec.staged_events)
            event_log_.push_back(e);
        result.events = std::move(exec.staged_events);
    } catch (Trap& trap) {
        accounts_ = std::move(accounts_snapshot);
        contracts_ = std::move(contracts_snapshot);
        minted_total_ = minted_snapshot;
        result.status = CallStatus::Reverted;
        result.reason = trap.reason;
    }
    result.gas_used = exec.gas_used;
    result.protection_checks = exec.protection_checks;
    result.typestate_checks = exec.typestate_checks;
    return result;
}

nlohmann::json render_word(const UInt256& word, const TypeRef& type) {
    switch (type.kind) {
    case TypeRef::Kind::Address:
        return word.to_address_hex();
    case TypeRef::Kind::Bool:
        return !word.is_zero();
    case TypeRef::Kind::String: {
        auto bytes = word.to_be_bytes();
        std::string text;
        for (uint8_t c : bytes) {
            if (c == 0)
                break;
            text.push_back((char)c);
        }
        return text;
    }
    default:
        return word.to_decimal();
    }
}

nlohmann::json ChainState::serialize() const {
    nlohmann::json j;
    nlohmann::json accounts = nlohmann::json::object();
    for (const auto& [addr, bal] : accounts_)
        accounts[addr.to_address_hex()] = bal.to_decimal();
    j["accounts"] = accounts;

    nlohmann::json contracts = nlohmann::json::object();
    for (const auto& [addr, inst] : contracts_) {
        nlohmann::json c;
        c["contract"] = inst.contract_name;
        c["typestate"] = inst.typestate;
        c["balance"] = inst.balance.to_decimal();
        nlohmann::json storage = nlohmann::json::object();
        for (const auto& [slot, word] : inst.storage)
            storage[slot.to_hex()] = word.to_hex();
        c["storage"] = storage;
        contracts[addr.to_address_hex()] = c;
    }
    j["contracts"] = contracts;

    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : event_log_) {
        nlohmann::json je;
        je["contract"] = e.contract.to_address_hex();
        je["name"] = e.name;
        nlohmann::json fields = nlohmann::json::object();
        for (const auto& f : e.fields)
            fields[f.name] = render_word(f.value, f.type);
        je["fields"] = fields;
        events.push_back(je);
    }
    j["events"] = events;
    j["mintedTotal"] = minted_total_.to_decimal();
    return j;
}

}  // namespace flint
