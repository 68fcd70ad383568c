// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/lowering.hpp"

#include <cassert>
#include <cstring>
#include <stdexcept>

#include "flint/abi.hpp"

namespace flint {

using namespace ast;

std::string mangle_type_name(const TypeRef& type) {
    switch (type.kind) {
    case TypeRef::Kind::Array:
        return "Arr[" + mangle_type_name(type.args[0]) + "]";
    case TypeRef::Kind::FixedArray:
        return "FixArr[" + mangle_type_name(type.args[0]) + ";" +
               std::to_string(type.fixed_size) + "]";
    case TypeRef::Kind::Dictionary:
        return "Dict[" + mangle_type_name(type.args[0]) + ":" + mangle_type_name(type.args[1]) +
               "]";
    case TypeRef::Kind::Named:
        return type.name;
    default:
        return type.to_string();
    }
}

std::string mangle(const std::string& type_name, const std::string& function_name,
                   const std::vector<ParamSig>& params) {
    std::string out = type_name + "$" + function_name + "$";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i)
            out += "_";
        out += mangle_type_name(params[i].type);
        if (params[i].is_inout)
            out += "&";
    }
    return out;
}

uint32_t compute_selector(const std::string& canonical_signature) {
    return abi::selector(canonical_signature);
}

namespace {

constexpr uint64_t kWordBytes = 32;

std::string sig_function_name(const FunctionSig& fn) {
    switch (fn.kind) {
    case FunctionSig::Kind::Initializer:
        return "init";
    case FunctionSig::Kind::Fallback:
        return "fallback";
    default:
        return fn.name;
    }
}

UInt256 string_literal_word(const std::string& text) {
    uint8_t buf[32] = {0};
    std::memcpy(buf, text.data(), std::min<size_t>(text.size(), 32));
    return UInt256::from_be_bytes(buf, 32);
}

/// Emits the body of one function. Word values live in registers; dynamic
/// values are (address, space) register pairs where space 0 is storage and
/// 1 is transaction memory.
class FunctionLowerer {
public:
    FunctionLowerer(const Environment& env, const ContractInfo* contract,
                    const StructInfo* strct, const FunctionSig& fn, IRFunction& out,
                    const std::map<std::string, uint64_t>& slots)
        : env_(env), contract_(contract), struct_(strct), fn_(fn), out_(out), slots_(slots) {}

    void run() {
        scopes_.emplace_back();
        // parameter registers, in IRParam order
        if (struct_) {
            self_addr_ = alloc_reg();
            self_space_ = alloc_reg();
            out_.params.push_back({"self", TypeRef::named(struct_->name), true});
        }
        for (size_t i = 0; i < fn_.params.size(); ++i) {
            const auto& p = fn_.params[i];
            bool ref = env_.is_dynamic_type(p.type);
            Binding b;
            b.type = p.type;
            if (ref) {
                b.is_ref = true;
                b.addr = alloc_reg();
                b.space = alloc_reg();
            } else {
                b.reg = alloc_reg();
            }
            scopes_.back()[p.name] = b;
            out_.params.push_back({p.name, p.type, ref});
            if (p.is_implicit)
                out_.implicit_param = (int)(out_.params.size() - 1);
        }
        out_.param_regs = next_reg_;
        if (!fn_.caller_binding.empty()) {
            int reg = alloc_reg();
            emit({Op::Caller, reg, {}});
            Binding b;
            b.type = TypeRef::address();
            b.reg = reg;
            scopes_.back()[fn_.caller_binding] = b;
        }

        // initializers start by applying property defaults in order
        if (fn_.kind == FunctionSig::Kind::Initializer)
            emit_property_defaults();

        lower_block(*fn_.decl->body);

        // implicit return at fall-off
        if (out_.body.empty() || out_.body.back().op != Op::Ret)
            emit({Op::Ret, -1, {}});
        out_.reg_count = next_reg_;
    }

private:
    struct Binding {
        TypeRef type;
        bool is_ref = false;
        int reg = -1;    // word binding
        int addr = -1;   // reference binding
        int space = -1;
    };

    /// An lvalue: a register for word locals, or an (address, space) pair.
    struct Place {
        bool in_reg = false;
        int reg = -1;
        int addr = -1;
        int space = -1;
        TypeRef type;
    };

    /// An rvalue: a word register, or a reference for dynamic values.
    struct Value {
        bool is_ref = false;
        int reg = -1;
        int addr = -1;
        int space = -1;
        TypeRef type;
    };

    const Environment& env_;
    const ContractInfo* contract_;
    const StructInfo* struct_;
    const FunctionSig& fn_;
    IRFunction& out_;
    const std::map<std::string, uint64_t>& slots_;  // contract storage layout

    std::vector<std::map<std::string, Binding>> scopes_;
    int next_reg_ = 0;
    int self_addr_ = -1;
    int self_space_ = -1;

    int alloc_reg() { return next_reg_++; }

    int emit(IRInstr instr) {
        out_.body.push_back(std::move(instr));
        return (int)out_.body.size() - 1;
    }

    int emit_const(UInt256 v) {
        int reg = alloc_reg();
        emit({Op::Const, reg, {Operand::immediate(v)}});
        return reg;
    }

    [[noreturn]] void ice(const std::string& what) const {
        throw std::runtime_error("internal lowering error: " + what);
    }

    Binding* lookup(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end())
                return &found->second;
        }
        return nullptr;
    }

    uint64_t words_of(const TypeRef& t) const { return env_.type_word_count(t); }

    uint64_t struct_field_offset(const std::string& struct_name, const std::string& field) const {
        const StructInfo& info = env_.structs.at(struct_name);
        uint64_t off = 0;
        for (const auto& p : info.properties) {
            if (p.name == field)
                return off;
            off += words_of(p.type);
        }
        ice("unknown field " + field + " of " + struct_name);
    }

    const PropertySig* owner_property(const std::string& name) const {
        if (contract_)
            return contract_->find_property(name);
        if (struct_)
            return struct_->find_property(name);
        return nullptr;
    }

    // ---- property defaults (initializer prologue) ----

    void emit_property_defaults() {
        const auto& props = contract_ ? contract_->properties : struct_->properties;
        for (const auto& p : props) {
            if (!p.decl || !p.decl->default_value)
                continue;
            Place place = property_place(p.name);
            assign_into(place, *p.decl->default_value);
        }
    }

    Place property_place(const std::string& name) {
        if (contract_) {
            Place place;
            place.addr = emit_const(UInt256(slots_.at(name)));
            place.space = emit_const(UInt256(0));
            place.type = contract_->find_property(name)->type;
            return place;
        }
        uint64_t off = struct_field_offset(struct_->name, name);
        Place place;
        int off_reg = emit_const(UInt256(off));
        place.addr = alloc_reg();
        emit({Op::WAdd, place.addr, {Operand::r(self_addr_), Operand::r(off_reg)}});
        place.space = self_space_;
        place.type = struct_->find_property(name)->type;
        return place;
    }

    // ---- statements ----

    void lower_block(const Block& block) {
        scopes_.emplace_back();
        for (const auto& stmt : block.statements)
            lower_stmt(*stmt);
        scopes_.pop_back();
    }

    void lower_stmt(const Stmt& s) {
        switch (s.kind) {
        case StmtKind::Expr:
            if (s.expr->kind == ExprKind::Binary && is_assignment(s.expr->op))
                lower_assignment(*s.expr);
            else
                lower_expr(*s.expr);
            return;
        case StmtKind::VarDecl:
            lower_var_decl(s);
            return;
        case StmtKind::Return:
            if (s.expr) {
                Value v = lower_expr(*s.expr);
                emit({Op::Ret, -1, {Operand::r(word_of(v))}});
            } else {
                emit({Op::Ret, -1, {}});
            }
            return;
        case StmtKind::Become: {
            int ord = contract_->typestate_ordinal(s.name);
            emit({Op::Become, -1, {Operand::immediate(UInt256((uint64_t)ord))}});
            return;
        }
        case StmtKind::Emit: {
            IRInstr instr{Op::Emit, -1, {}};
            instr.symbol = s.expr->callee->text;
            for (const auto& arg : s.expr->args) {
                Value v = lower_expr(*arg.value);
                instr.operands.push_back(Operand::r(word_of(v)));
            }
            emit(std::move(instr));
            return;
        }
        case StmtKind::ForIn:
            lower_for(s);
            return;
        case StmtKind::If:
            lower_if(s);
            return;
        }
    }

    void lower_var_decl(const Stmt& s) {
        Binding b;
        b.type = s.declared_type;
        if (env_.is_dynamic_type(s.declared_type)) {
            b.is_ref = true;
            b.addr = alloc_reg();
            uint64_t bytes = words_of(s.declared_type) * kWordBytes;
            emit({Op::Alloc, b.addr, {Operand::immediate(UInt256(bytes))}});
            b.space = emit_const(UInt256(1));
            scopes_.back()[s.name] = b;
            if (s.initial) {
                Place place;
                place.addr = b.addr;
                place.space = b.space;
                place.type = s.declared_type;
                assign_into(place, *s.initial);
            }
        } else {
            if (s.initial) {
                Value v = lower_expr(*s.initial);
                b.reg = word_of(v);
            } else {
                b.reg = emit_const(UInt256(0));
            }
            scopes_.back()[s.name] = b;
        }
    }

    void lower_if(const Stmt& s) {
        Value cond = lower_expr(*s.condition);
        int branch = emit({Op::Branch, -1, {Operand::r(cond.reg)}});
        out_.body[branch].target_a = (int)out_.body.size();
        lower_block(s.then_block);
        if (s.else_block) {
            int jump_end = emit({Op::Jump, -1, {}});
            out_.body[branch].target_b = (int)out_.body.size();
            lower_block(*s.else_block);
            out_.body[jump_end].target_a = (int)out_.body.size();
        } else {
            out_.body[branch].target_b = (int)out_.body.size();
        }
    }

    void lower_for(const Stmt& s) {
        scopes_.emplace_back();
        if (s.sequence->kind == ExprKind::Range) {
            Value start = lower_expr(*s.sequence->lhs);
            Value end = lower_expr(*s.sequence->rhs);
            int induction = alloc_reg();
            emit({Op::Move, induction, {Operand::r(start.reg)}});
            int loop_top = (int)out_.body.size();
            int cond = alloc_reg();
            emit({s.sequence->range_closed ? Op::Le : Op::Lt,
                  cond,
                  {Operand::r(induction), Operand::r(end.reg)}});
            int branch = emit({Op::Branch, -1, {Operand::r(cond)}});
            out_.body[branch].target_a = (int)out_.body.size();
            Binding b;
            b.type = TypeRef::int_();
            b.reg = alloc_reg();
            emit({Op::Move, b.reg, {Operand::r(induction)}});
            scopes_.back()[s.name] = b;
            lower_block(s.body);
            int one = emit_const(UInt256(1));
            emit({Op::WAdd, induction, {Operand::r(induction), Operand::r(one)}});
            int jump = emit({Op::Jump, -1, {}});
            out_.body[jump].target_a = loop_top;
            out_.body[branch].target_b = (int)out_.body.size();
            scopes_.pop_back();
            return;
        }

        Value seq = lower_expr(*s.sequence);
        if (!seq.is_ref)
            ice("for-in sequence is not a reference");
        const TypeRef& seq_type = seq.type;
        bool is_dict = seq_type.kind == TypeRef::Kind::Dictionary;
        bool is_fixed = seq_type.kind == TypeRef::Kind::FixedArray;
        TypeRef elem_type = is_dict ? seq_type.args[1] : seq_type.args[0];
        uint64_t elem_words = words_of(elem_type);

        int count = alloc_reg();
        if (is_fixed) {
            emit({Op::Const, count, {Operand::immediate(UInt256(seq_type.fixed_size))}});
        } else {
            emit({Op::Load, count, {Operand::r(seq.space), Operand::r(seq.addr)}});
        }
        int keys_base = -1;
        if (is_dict) {
            keys_base = alloc_reg();
            emit({Op::Keccak1, keys_base, {Operand::r(seq.addr)}});
        }
        int induction = emit_const(UInt256(0));
        int loop_top = (int)out_.body.size();
        int cond = alloc_reg();
        emit({Op::Lt, cond, {Operand::r(induction), Operand::r(count)}});
        int branch = emit({Op::Branch, -1, {Operand::r(cond)}});
        out_.body[branch].target_a = (int)out_.body.size();

        // element address
        int elem_addr = alloc_reg();
        if (is_dict) {
            int key_slot = alloc_reg();
            emit({Op::WAdd, key_slot, {Operand::r(keys_base), Operand::r(induction)}});
            int key = alloc_reg();
            emit({Op::Load, key, {Operand::r(seq.space), Operand::r(key_slot)}});
            emit({Op::Keccak2, elem_addr, {Operand::r(key), Operand::r(seq.addr)}});
        } else if (is_fixed) {
            int size_reg = emit_const(UInt256(elem_words));
            int off = alloc_reg();
            emit({Op::WMul, off, {Operand::r(induction), Operand::r(size_reg)}});
            emit({Op::WAdd, elem_addr, {Operand::r(seq.addr), Operand::r(off)}});
        } else {
            int base = alloc_reg();
            emit({Op::Keccak1, base, {Operand::r(seq.addr)}});
            int size_reg = emit_const(UInt256(elem_words));
            int off = alloc_reg();
            emit({Op::WMul, off, {Operand::r(induction), Operand::r(size_reg)}});
            emit({Op::WAdd, elem_addr, {Operand::r(base), Operand::r(off)}});
        }

        Binding b;
        b.type = elem_type;
        if (env_.is_dynamic_type(elem_type)) {
            b.is_ref = true;
            b.addr = elem_addr;
            b.space = seq.space;
        } else {
            b.reg = alloc_reg();
            emit({Op::Load, b.reg, {Operand::r(seq.space), Operand::r(elem_addr)}});
        }
        scopes_.back()[s.name] = b;
        lower_block(s.body);
        int one = emit_const(UInt256(1));
        emit({Op::WAdd, induction, {Operand::r(induction), Operand::r(one)}});
        int jump = emit({Op::Jump, -1, {}});
        out_.body[jump].target_a = loop_top;
        out_.body[branch].target_b = (int)out_.body.size();
        scopes_.pop_back();
    }

    // ---- assignments ----

    void lower_assignment(const Expr& e) {
        Place place = resolve_place(*e.lhs, /*write=*/true);
        if (is_compound_assignment(e.op)) {
            int current = load_place(place);
            Value rhs = lower_expr(*e.rhs);
            Op op = e.op == BinaryOp::AddAssign   ? Op::Add
                    : e.op == BinaryOp::SubAssign ? Op::Sub
                    : e.op == BinaryOp::MulAssign ? Op::Mul
                                                  : Op::Div;
            int result = alloc_reg();
            emit({op, result, {Operand::r(current), Operand::r(rhs.reg)}});
            store_place(place, result);
            return;
        }
        assign_into(place, *e.rhs);
    }

    /// Store the value of `expr` into `place`, covering word stores,
    /// struct construction in place, and word-wise copies of dynamic
    /// values.
    void assign_into(const Place& place, const Expr& expr) {
        if (expr.kind == ExprKind::Call && expr.is_constructor_call) {
            construct_into(place, expr);
            return;
        }
        if (expr.kind == ExprKind::ArrayLit || expr.kind == ExprKind::DictLit) {
            // reset the head word; element slots are unreachable afterwards
            int zero = emit_const(UInt256(0));
            store_place(place, zero);
            return;
        }
        if (env_.is_dynamic_type(place.type)) {
            Value src = lower_expr(expr);
            if (!src.is_ref)
                ice("dynamic assignment from non-reference");
            copy_words(src, place, words_of(place.type));
            return;
        }
        Value v = lower_expr(expr);
        store_place(place, word_of(v));
    }

    void copy_words(const Value& src, const Place& dst, uint64_t words) {
        for (uint64_t w = 0; w < words; ++w) {
            int off = emit_const(UInt256(w));
            int src_addr = alloc_reg();
            emit({Op::WAdd, src_addr, {Operand::r(src.addr), Operand::r(off)}});
            int tmp = alloc_reg();
            emit({Op::Load, tmp, {Operand::r(src.space), Operand::r(src_addr)}});
            int dst_addr = alloc_reg();
            emit({Op::WAdd, dst_addr, {Operand::r(dst.addr), Operand::r(off)}});
            emit({Op::Store, -1, {Operand::r(dst.space), Operand::r(dst_addr), Operand::r(tmp)}});
        }
    }

    /// Run a struct initializer with `place` as self: defaults first, then
    /// the chosen init body.
    void construct_into(const Place& place, const Expr& call) {
        const FunctionSig* init = call.resolved_callee;
        const std::string& struct_name = init->owner;
        const StructInfo& info = env_.structs.at(struct_name);

        // field defaults, in declaration order
        uint64_t off = 0;
        for (const auto& p : info.properties) {
            if (p.decl && p.decl->default_value) {
                Place field;
                int off_reg = emit_const(UInt256(off));
                field.addr = alloc_reg();
                emit({Op::WAdd, field.addr, {Operand::r(place.addr), Operand::r(off_reg)}});
                field.space = place.space;
                field.type = p.type;
                assign_into(field, *p.decl->default_value);
            }
            off += words_of(p.type);
        }

        IRInstr instr{Op::Call, -1, {}};
        instr.symbol = init->mangled;
        instr.operands.push_back(Operand::r(place.addr));
        instr.operands.push_back(Operand::r(place.space));
        append_call_args(instr, call, *init);
        emit(std::move(instr));
    }

    // ---- places ----

    Place resolve_place(const Expr& e, bool write) {
        switch (e.kind) {
        case ExprKind::Identifier: {
            if (e.symbol == SymbolKind::StateProperty)
                return property_place(e.text);
            Binding* b = lookup(e.text);
            if (!b)
                ice("unbound identifier " + e.text);
            if (b->is_ref) {
                Place place;
                place.addr = b->addr;
                place.space = b->space;
                place.type = b->type;
                return place;
            }
            Place place;
            place.in_reg = true;
            place.reg = b->reg;
            place.type = b->type;
            return place;
        }
        case ExprKind::Member: {
            if (e.lhs->kind == ExprKind::SelfRef)
                return property_place(e.text);
            Place base = resolve_place(*e.lhs, write);
            if (base.in_reg)
                ice("member access on register value");
            const TypeRef& bt = base.type;
            if (bt.kind != TypeRef::Kind::Named)
                ice("member place on non-struct");
            uint64_t off = struct_field_offset(bt.name, e.text);
            Place place;
            int off_reg = emit_const(UInt256(off));
            place.addr = alloc_reg();
            emit({Op::WAdd, place.addr, {Operand::r(base.addr), Operand::r(off_reg)}});
            place.space = base.space;
            place.type = env_.structs.at(bt.name).find_property(e.text)->type;
            return place;
        }
        case ExprKind::Subscript: {
            Place base = resolve_place(*e.lhs, write);
            if (base.in_reg)
                ice("subscript on register value");
            Value index = lower_expr(*e.rhs);
            const TypeRef& bt = base.type;
            Place place;
            place.space = base.space;
            if (bt.kind == TypeRef::Kind::Dictionary) {
                place.type = bt.args[1];
                IRInstr instr{Op::Call, -1, {}};
                instr.symbol = write ? "flint$dictOffsetWrite" : "flint$dictOffsetRead";
                instr.operands = {Operand::r(base.addr), Operand::r(base.space),
                                  Operand::r(index.reg)};
                place.addr = alloc_reg();
                instr.dst = place.addr;
                emit(std::move(instr));
                return place;
            }
            if (bt.kind == TypeRef::Kind::FixedArray) {
                place.type = bt.args[0];
                // inline bounds check against the static size
                int limit = emit_const(UInt256(bt.fixed_size));
                int ok = alloc_reg();
                emit({Op::Lt, ok, {Operand::r(index.reg), Operand::r(limit)}});
                int branch = emit({Op::Branch, -1, {Operand::r(ok)}});
                out_.body[branch].target_b = (int)out_.body.size();
                emit({Op::Revert, -1, {Operand::immediate(UInt256((uint64_t)RevertReason::Assertion))}});
                out_.body[branch].target_a = (int)out_.body.size();
                int size_reg = emit_const(UInt256(words_of(bt.args[0])));
                int off = alloc_reg();
                emit({Op::WMul, off, {Operand::r(index.reg), Operand::r(size_reg)}});
                place.addr = alloc_reg();
                emit({Op::WAdd, place.addr, {Operand::r(base.addr), Operand::r(off)}});
                return place;
            }
            if (bt.kind == TypeRef::Kind::Array) {
                place.type = bt.args[0];
                IRInstr instr{Op::Call, -1, {}};
                instr.symbol = write ? "flint$arrayOffsetWrite" : "flint$arrayOffsetRead";
                instr.operands = {Operand::r(base.addr), Operand::r(base.space),
                                  Operand::r(index.reg),
                                  Operand::immediate(UInt256(words_of(bt.args[0])))};
                place.addr = alloc_reg();
                instr.dst = place.addr;
                emit(std::move(instr));
                return place;
            }
            ice("subscript on non-collection");
        }
        default:
            ice("not an lvalue");
        }
    }

    int load_place(const Place& place) {
        if (place.in_reg)
            return place.reg;
        int reg = alloc_reg();
        emit({Op::Load, reg, {Operand::r(place.space), Operand::r(place.addr)}});
        return reg;
    }

    void store_place(const Place& place, int value_reg) {
        if (place.in_reg) {
            emit({Op::Move, place.reg, {Operand::r(value_reg)}});
            return;
        }
        emit({Op::Store, -1,
              {Operand::r(place.space), Operand::r(place.addr), Operand::r(value_reg)}});
    }

    // ---- expressions ----

    int word_of(const Value& v) {
        if (!v.is_ref)
            return v.reg;
        ice("expected a word value");
    }

    Value word_value(int reg, TypeRef type) {
        Value v;
        v.reg = reg;
        v.type = std::move(type);
        return v;
    }

    Value ref_value(const Place& place) {
        Value v;
        v.is_ref = true;
        v.addr = place.addr;
        v.space = place.space;
        v.type = place.type;
        return v;
    }

    Value lower_expr(const Expr& e) {
        switch (e.kind) {
        case ExprKind::IntLit:
            return word_value(emit_const(*UInt256::from_decimal(e.text)), TypeRef::int_());
        case ExprKind::AddressLit:
            return word_value(emit_const(*UInt256::from_hex(e.text)), TypeRef::address());
        case ExprKind::StringLit:
            return word_value(emit_const(string_literal_word(e.text)), TypeRef::string());
        case ExprKind::BoolLit:
            return word_value(emit_const(UInt256(e.bool_value ? 1 : 0)), TypeRef::bool_());
        case ExprKind::Identifier: {
            if (e.symbol == SymbolKind::StateProperty) {
                Place place = property_place(e.text);
                if (env_.is_dynamic_type(place.type))
                    return ref_value(place);
                return word_value(load_place(place), place.type);
            }
            Binding* b = lookup(e.text);
            if (!b)
                ice("unbound identifier " + e.text);
            if (b->is_ref) {
                Value v;
                v.is_ref = true;
                v.addr = b->addr;
                v.space = b->space;
                v.type = b->type;
                return v;
            }
            return word_value(b->reg, b->type);
        }
        case ExprKind::Member:
            return lower_member(e);
        case ExprKind::Subscript: {
            Place place = resolve_place(e, /*write=*/false);
            if (env_.is_dynamic_type(place.type))
                return ref_value(place);
            return word_value(load_place(place), place.type);
        }
        case ExprKind::Binary:
            return lower_binary(e);
        case ExprKind::Call:
            return lower_call(e, /*checked=*/false, nullptr);
        case ExprKind::Try:
            return lower_call(*e.lhs, /*checked=*/true, nullptr);
        case ExprKind::Inout: {
            Place place = resolve_place(*e.lhs, /*write=*/true);
            return ref_value(place);
        }
        case ExprKind::SelfRef: {
            if (struct_) {
                Value v;
                v.is_ref = true;
                v.addr = self_addr_;
                v.space = self_space_;
                v.type = TypeRef::named(struct_->name);
                return v;
            }
            ice("self as a value in contract code");
        }
        default:
            ice("unexpected expression kind in lowering");
        }
    }

    Value lower_member(const Expr& e) {
        // enum case
        if (e.lhs->kind == ExprKind::Identifier && e.lhs->symbol == SymbolKind::EnumType) {
            const EnumInfo& en = env_.enums.at(e.lhs->text);
            return word_value(emit_const(UInt256((uint64_t)en.case_ordinal(e.text))),
                              TypeRef::named(en.name));
        }
        // collection .size
        if (e.text == "size") {
            TypeRef base_type = e.lhs->type;
            if (base_type.kind == TypeRef::Kind::FixedArray)
                return word_value(emit_const(UInt256(base_type.fixed_size)), TypeRef::int_());
            if (base_type.kind == TypeRef::Kind::Array ||
                base_type.kind == TypeRef::Kind::Dictionary) {
                Value seq = lower_expr(*e.lhs);
                int reg = alloc_reg();
                emit({Op::Load, reg, {Operand::r(seq.space), Operand::r(seq.addr)}});
                return word_value(reg, TypeRef::int_());
            }
        }
        Place place = resolve_place(e, /*write=*/false);
        if (env_.is_dynamic_type(place.type))
            return ref_value(place);
        return word_value(load_place(place), place.type);
    }

    Value lower_binary(const Expr& e) {
        if (e.op == BinaryOp::And || e.op == BinaryOp::Or) {
            // short-circuit evaluation
            int result = alloc_reg();
            Value lhs = lower_expr(*e.lhs);
            emit({Op::Move, result, {Operand::r(lhs.reg)}});
            int branch = emit({Op::Branch, -1, {Operand::r(result)}});
            int rhs_start = (int)out_.body.size();
            Value rhs = lower_expr(*e.rhs);
            emit({Op::Move, result, {Operand::r(rhs.reg)}});
            int end = (int)out_.body.size();
            if (e.op == BinaryOp::And) {
                out_.body[branch].target_a = rhs_start;  // true: evaluate rhs
                out_.body[branch].target_b = end;        // false: result stays 0
            } else {
                out_.body[branch].target_a = end;        // true: result stays 1
                out_.body[branch].target_b = rhs_start;  // false: evaluate rhs
            }
            return word_value(result, TypeRef::bool_());
        }
        Value a = lower_expr(*e.lhs);
        Value b = lower_expr(*e.rhs);
        Op op;
        TypeRef type = TypeRef::int_();
        switch (e.op) {
        case BinaryOp::Add: op = Op::Add; break;
        case BinaryOp::Sub: op = Op::Sub; break;
        case BinaryOp::Mul: op = Op::Mul; break;
        case BinaryOp::Div: op = Op::Div; break;
        case BinaryOp::Pow: op = Op::Exp; break;
        case BinaryOp::WrapAdd: op = Op::WAdd; break;
        case BinaryOp::WrapSub: op = Op::WSub; break;
        case BinaryOp::WrapMul: op = Op::WMul; break;
        case BinaryOp::Lt: op = Op::Lt; type = TypeRef::bool_(); break;
        case BinaryOp::Le: op = Op::Le; type = TypeRef::bool_(); break;
        case BinaryOp::Gt: op = Op::Gt; type = TypeRef::bool_(); break;
        case BinaryOp::Ge: op = Op::Ge; type = TypeRef::bool_(); break;
        case BinaryOp::Eq: op = Op::Eq; type = TypeRef::bool_(); break;
        case BinaryOp::Ne: op = Op::Ne; type = TypeRef::bool_(); break;
        default:
            ice("unexpected binary operator");
        }
        int dst = alloc_reg();
        emit({op, dst, {Operand::r(word_of(a)), Operand::r(word_of(b))}});
        return word_value(dst, type);
    }

    void append_call_args(IRInstr& instr, const Expr& call, const FunctionSig& callee) {
        for (size_t i = 0; i < call.args.size(); ++i) {
            const Expr& arg = *call.args[i].value;
            const ParamSig& param = callee.params[i];
            if (param.is_inout) {
                Place place = resolve_place(*arg.lhs, /*write=*/true);
                instr.operands.push_back(Operand::r(place.addr));
                instr.operands.push_back(Operand::r(place.space));
            } else if (env_.is_dynamic_type(param.type)) {
                // by-value dynamic argument: copy into fresh memory
                Value src = lower_expr(arg);
                uint64_t words = words_of(param.type);
                int copy_addr = alloc_reg();
                emit({Op::Alloc, copy_addr, {Operand::immediate(UInt256(words * kWordBytes))}});
                int mem_space = emit_const(UInt256(1));
                Place dst;
                dst.addr = copy_addr;
                dst.space = mem_space;
                dst.type = param.type;
                copy_words(src, dst, words);
                instr.operands.push_back(Operand::r(copy_addr));
                instr.operands.push_back(Operand::r(mem_space));
            } else {
                Value v = lower_expr(arg);
                instr.operands.push_back(Operand::r(word_of(v)));
            }
        }
    }

    Value lower_call(const Expr& e, bool checked, const Place* construct_target) {
        const FunctionSig* callee = e.resolved_callee;
        if (!callee)
            ice("unresolved call");

        if (e.is_constructor_call) {
            Place target;
            if (construct_target) {
                target = *construct_target;
            } else {
                target.addr = alloc_reg();
                uint64_t bytes = words_of(TypeRef::named(callee->owner)) * kWordBytes;
                emit({Op::Alloc, target.addr, {Operand::immediate(UInt256(bytes))}});
                target.space = emit_const(UInt256(1));
                target.type = TypeRef::named(callee->owner);
            }
            construct_into(target, e);
            return ref_value(target);
        }

        IRInstr instr{Op::Call, -1, {}};
        instr.checked = checked;
        instr.symbol = callee->mangled;

        bool is_struct_method = env_.structs.count(callee->owner) > 0;
        if (is_struct_method) {
            // receiver: explicit for member calls, self for unqualified ones
            if (e.callee->kind == ExprKind::Member) {
                Place receiver = resolve_place(*e.callee->lhs, callee->is_mutating);
                instr.operands.push_back(Operand::r(receiver.addr));
                instr.operands.push_back(Operand::r(receiver.space));
            } else {
                instr.operands.push_back(Operand::r(self_addr_));
                instr.operands.push_back(Operand::r(self_space_));
            }
        }
        append_call_args(instr, e, *callee);

        if (!callee->return_type.is_void()) {
            instr.dst = alloc_reg();
            int dst = instr.dst;
            emit(std::move(instr));
            return word_value(dst, callee->return_type);
        }
        emit(std::move(instr));
        return word_value(-1, TypeRef::void_());
    }

    friend class ModuleLowerer;
};

/// Whole-module lowering: layouts, mangles, selectors, functions, getters,
/// struct bodies and runtime helpers, per contract.
class ModuleLowerer {
public:
    ModuleLowerer(Environment& env, DiagnosticList& diags) : env_(env), diags_(diags) {
        diags_.set_pass_rank(5);
    }

    IRProgram run() {
        assign_mangled_names();
        IRProgram program;
        for (auto& [name, contract] : env_.contracts)
            program.contracts.push_back(lower_contract(contract));
        return program;
    }

private:
    Environment& env_;
    DiagnosticList& diags_;

    void assign_mangled_names() {
        for (auto& [name, contract] : env_.contracts) {
            for (auto& fn : contract.functions)
                fn.mangled = mangle(name, sig_function_name(fn), fn.params);
        }
        for (auto& [name, strct] : env_.structs) {
            for (auto& fn : strct.functions)
                fn.mangled = mangle(name, sig_function_name(fn), fn.params);
        }
        for (auto& fn : env_.globals)
            fn.mangled = "Flint$Global$" + fn.name;
    }

    IRContract lower_contract(ContractInfo& contract) {
        IRContract out;
        out.name = contract.name;

        // storage layout: declaration order from slot 0
        std::map<std::string, uint64_t> slots;
        uint64_t cursor = 0;
        for (const auto& p : contract.properties) {
            IRLayoutEntry entry;
            entry.name = p.name;
            entry.slot = cursor;
            entry.words = env_.type_word_count(p.type);
            entry.type = p.type;
            slots[p.name] = cursor;
            cursor += entry.words;
            out.layout.push_back(std::move(entry));
        }

        for (size_t i = 0; i < contract.typestates.size(); ++i)
            out.typestates.emplace_back(contract.typestates[i], (int)i + 1);
        out.ready_ordinal = (int)contract.typestates.size() + 1;

        for (const auto& ev : contract.events) {
            IREvent event;
            event.name = ev.name;
            for (const auto& f : ev.fields)
                event.fields.emplace_back(f.name, f.type);
            out.events.push_back(std::move(event));
        }

        // contract functions
        for (auto& fn : contract.functions) {
            IRFunction lowered = lower_function(contract, fn, slots);
            if (fn.kind == FunctionSig::Kind::Initializer && fn.is_public)
                out.init_mangled = lowered.mangled;
            if (fn.kind == FunctionSig::Kind::Fallback)
                out.fallback_mangled = lowered.mangled;
            out.functions.push_back(std::move(lowered));
        }

        // getters for visible/public basic-typed properties
        for (const auto& p : contract.properties) {
            if (!(p.is_visible || p.is_public))
                continue;
            if (!p.type.is_basic() || p.type.is_void())
                continue;
            IRFunction getter;
            getter.mangled = contract.name + "$" + p.name + "$";
            getter.source_name = p.name;
            getter.is_public = true;
            getter.return_type = p.type;
            int slot_reg = 0;
            getter.body.push_back({Op::Const, slot_reg, {Operand::immediate(UInt256(slots[p.name]))}});
            getter.body.push_back({Op::Const, 1, {Operand::immediate(UInt256(0))}});
            getter.body.push_back({Op::Load, 2, {Operand::r(1), Operand::r(slot_reg)}});
            IRInstr ret{Op::Ret, -1, {Operand::r(2)}};
            getter.body.push_back(ret);
            getter.reg_count = 3;
            out.functions.push_back(std::move(getter));
        }

        // struct functions (stdlib structs first by name, deterministic)
        for (auto& [sname, strct] : env_.structs) {
            for (auto& fn : strct.functions) {
                if (!fn.has_body())
                    continue;  // trait requirements carry no code of their own
                out.functions.push_back(lower_struct_function(strct, fn));
            }
        }

        // runtime helpers
        emit_runtime_helpers(out);

        // dispatch table over public contract functions and getters
        build_dispatch(contract, out);

        return out;
    }

    IRFunction lower_function(ContractInfo& contract, FunctionSig& fn,
                              const std::map<std::string, uint64_t>& slots) {
        IRFunction out;
        out.mangled = fn.mangled;
        out.source_name = sig_function_name(fn);
        out.is_public = fn.is_public;
        out.is_payable = fn.is_payable;
        out.return_type = fn.return_type;

        for (const auto& s : fn.state_group)
            out.required_states.push_back(contract.typestate_ordinal(s));

        if (!fn.protections_contain_any()) {
            for (const auto& ident : fn.protections) {
                auto prot = resolve_protection(env_, contract, ident);
                if (!prot)
                    continue;  // already diagnosed
                IRProtection spec;
                switch (prot->kind) {
                case Protection::Kind::Any:
                    continue;
                case Protection::Kind::AddressProperty:
                    spec.kind = IRProtection::Kind::AddressProperty;
                    spec.slot = UInt256(slots.at(prot->name));
                    break;
                case Protection::Kind::AddressListProperty:
                    spec.kind = IRProtection::Kind::AddressListProperty;
                    spec.slot = UInt256(slots.at(prot->name));
                    break;
                case Protection::Kind::Predicate: {
                    spec.kind = IRProtection::Kind::Predicate;
                    for (const auto& f : contract.functions) {
                        if (f.kind == FunctionSig::Kind::Function && f.name == prot->name)
                            spec.predicate = f.mangled;
                    }
                    break;
                }
                }
                out.protections.push_back(std::move(spec));
            }
        }

        if (fn.decl && fn.decl->body) {
            FunctionLowerer body(env_, &contract, nullptr, fn, out, slots);
            body.run();
        }

        // entry checks ahead of the body: typestate first, then caller.
        // Direct internal calls enter past them.
        int checks = 0;
        if (!out.protections.empty()) {
            out.body.insert(out.body.begin(), IRInstr{Op::ProtCheck, -1, {}});
            ++checks;
        }
        if (!out.required_states.empty()) {
            out.body.insert(out.body.begin(), IRInstr{Op::StateCheck, -1, {}});
            ++checks;
        }
        if (checks) {
            fixup_targets(out.body, checks);
            out.entry_skip = checks;
        }
        return out;
    }

    IRFunction lower_struct_function(StructInfo& strct, FunctionSig& fn) {
        IRFunction out;
        out.mangled = fn.mangled;
        out.source_name = sig_function_name(fn);
        out.return_type = fn.return_type;
        static const std::map<std::string, uint64_t> kNoSlots;
        FunctionLowerer body(env_, nullptr, &strct, fn, out, kNoSlots);
        body.run();

        // currency creation from a raw integer is the one mint point
        if (strct.name == Environment::kCurrencyType &&
            fn.kind == FunctionSig::Kind::Initializer && fn.params.size() == 1 &&
            fn.params[0].type == TypeRef::int_() && !fn.params[0].is_inout) {
            // self takes registers 0-1, the amount is register 2
            out.body.insert(out.body.begin(), {Op::Mint, -1, {Operand::r(2)}});
            fixup_targets(out.body, 1);
        }
        return out;
    }

    static void fixup_targets(std::vector<IRInstr>& body, int shift) {
        for (size_t i = (size_t)shift; i < body.size(); ++i) {
            if (body[i].target_a >= 0)
                body[i].target_a += shift;
            if (body[i].target_b >= 0)
                body[i].target_b += shift;
        }
    }

    void build_dispatch(ContractInfo& contract, IRContract& out) {
        for (const auto& f : out.functions) {
            if (!f.is_public)
                continue;
            if (f.mangled == out.init_mangled || f.mangled == out.fallback_mangled)
                continue;
            if (f.mangled.rfind(contract.name + "$", 0) != 0)
                continue;  // struct functions and helpers are not dispatchable
            std::vector<TypeRef> external;
            for (size_t i = 0; i < f.params.size(); ++i) {
                if ((int)i == f.implicit_param)
                    continue;
                external.push_back(f.params[i].type);
            }
            std::string sig = abi::canonical_signature(f.source_name, external);
            uint32_t sel = abi::selector(sig);
            auto [it, inserted] = out.dispatch.emplace(sel, f.mangled);
            if (!inserted) {
                diags_.error(diag::AbiSelectorClash, SourceSpan{},
                             "Functions '" + it->second + "' and '" + f.mangled +
                                 "' share the ABI selector " + abi::selector_hex(sel) +
                                 " ('" + sig + "').");
            }
        }
    }

    // ---- runtime helpers, emitted as IR ----

    void emit_runtime_helpers(IRContract& out) {
        out.functions.push_back(make_array_offset(/*grow=*/false));
        out.functions.push_back(make_array_offset(/*grow=*/true));
        out.functions.push_back(make_dict_offset(/*write=*/false));
        out.functions.push_back(make_dict_offset(/*write=*/true));
        out.functions.push_back(make_send());
        out.functions.push_back(make_assert());
        out.functions.push_back(make_fatal_error());
    }

    static IRFunction make_array_offset(bool grow) {
        // params: r0 head, r1 space, r2 index, r3 elemWords -> element slot
        IRFunction f;
        f.mangled = grow ? "flint$arrayOffsetWrite" : "flint$arrayOffsetRead";
        f.params = {{"head", TypeRef::int_(), false},
                    {"space", TypeRef::int_(), false},
                    {"index", TypeRef::int_(), false},
                    {"elemWords", TypeRef::int_(), false}};
        f.return_type = TypeRef::int_();
        f.param_regs = 4;
        auto& b = f.body;
        b.push_back({Op::Load, 4, {Operand::r(1), Operand::r(0)}});     // 0: len
        b.push_back({Op::Lt, 5, {Operand::r(2), Operand::r(4)}});       // 1: index < len
        IRInstr branch{Op::Branch, -1, {Operand::r(5)}};
        if (grow) {
            branch.target_a = 6;  // in range: compute
            branch.target_b = 3;  // grow first
            b.push_back(branch);                                             // 2
            b.push_back({Op::Add, 6, {Operand::r(2), Operand::immediate(UInt256(1))}});  // 3
            b.push_back({Op::Store, -1, {Operand::r(1), Operand::r(0), Operand::r(6)}});  // 4
            b.push_back({Op::Jump, -1, {}});                                 // 5
            b.back().target_a = 6;
        } else {
            branch.target_a = 5;  // in range: compute
            branch.target_b = 3;  // bounds failure
            b.push_back(branch);                                             // 2
            b.push_back({Op::Revert, -1,
                         {Operand::immediate(UInt256((uint64_t)RevertReason::Assertion))}});  // 3
            b.push_back({Op::Jump, -1, {}});                                 // 4 (unreachable pad)
            b.back().target_a = 5;
        }
        b.push_back({Op::Keccak1, 7, {Operand::r(0)}});                  // 5/6: base
        b.push_back({Op::Mul, 8, {Operand::r(2), Operand::r(3)}});       // offset
        b.push_back({Op::WAdd, 9, {Operand::r(7), Operand::r(8)}});
        b.push_back({Op::Ret, -1, {Operand::r(9)}});
        f.reg_count = 10;
        return f;
    }

    static IRFunction make_dict_offset(bool write) {
        // params: r0 head, r1 space, r2 key -> value slot. The write variant
        // appends unseen keys to the shadow key index behind keccak(head).
        IRFunction f;
        f.mangled = write ? "flint$dictOffsetWrite" : "flint$dictOffsetRead";
        f.params = {{"head", TypeRef::int_(), false},
                    {"space", TypeRef::int_(), false},
                    {"key", TypeRef::int_(), false}};
        f.return_type = TypeRef::int_();
        f.param_regs = 3;
        auto& b = f.body;
        if (!write) {
            b.push_back({Op::Keccak2, 3, {Operand::r(2), Operand::r(0)}});
            b.push_back({Op::Ret, -1, {Operand::r(3)}});
            f.reg_count = 4;
            return f;
        }
        b.push_back({Op::Load, 3, {Operand::r(1), Operand::r(0)}});      // 0: n
        b.push_back({Op::Keccak1, 4, {Operand::r(0)}});                  // 1: keys base
        b.push_back({Op::Const, 5, {Operand::immediate(UInt256(0))}});   // 2: i = 0
        b.push_back({Op::Lt, 6, {Operand::r(5), Operand::r(3)}});        // 3: loop: i < n
        IRInstr branch{Op::Branch, -1, {Operand::r(6)}};
        branch.target_a = 5;   // scan
        branch.target_b = 11;  // insert
        b.push_back(branch);                                             // 4
        b.push_back({Op::WAdd, 7, {Operand::r(4), Operand::r(5)}});      // 5
        b.push_back({Op::Load, 8, {Operand::r(1), Operand::r(7)}});      // 6
        b.push_back({Op::Eq, 9, {Operand::r(8), Operand::r(2)}});        // 7
        IRInstr found{Op::Branch, -1, {Operand::r(9)}};
        found.target_a = 15;  // found: compute slot
        found.target_b = 9;   // next i
        b.push_back(found);                                              // 8
        b.push_back({Op::Add, 5, {Operand::r(5), Operand::immediate(UInt256(1))}});  // 9
        b.push_back({Op::Jump, -1, {}});                                 // 10
        b.back().target_a = 3;
        b.push_back({Op::WAdd, 10, {Operand::r(4), Operand::r(3)}});     // 11
        b.push_back({Op::Store, -1, {Operand::r(1), Operand::r(10), Operand::r(2)}});  // 12
        b.push_back({Op::Add, 11, {Operand::r(3), Operand::immediate(UInt256(1))}});   // 13
        b.push_back({Op::Store, -1, {Operand::r(1), Operand::r(0), Operand::r(11)}});  // 14
        b.push_back({Op::Keccak2, 12, {Operand::r(2), Operand::r(0)}});  // 15
        b.push_back({Op::Ret, -1, {Operand::r(12)}});                    // 16
        f.reg_count = 13;
        return f;
    }

    static IRFunction make_send() {
        IRFunction f;
        f.mangled = "Flint$Global$send";
        f.params = {{"address", TypeRef::address(), false},
                    {"value", TypeRef::named(Environment::kCurrencyType), true}};
        f.param_regs = 3;
        f.body.push_back({Op::SendWei, -1, {Operand::r(0), Operand::r(1), Operand::r(2)}});
        f.body.push_back({Op::Ret, -1, {}});
        f.reg_count = 3;
        return f;
    }

    static IRFunction make_assert() {
        IRFunction f;
        f.mangled = "Flint$Global$assert";
        f.params = {{"condition", TypeRef::bool_(), false}};
        f.param_regs = 1;
        IRInstr branch{Op::Branch, -1, {Operand::r(0)}};
        branch.target_a = 2;
        branch.target_b = 1;
        f.body.push_back(branch);
        f.body.push_back(
            {Op::Revert, -1, {Operand::immediate(UInt256((uint64_t)RevertReason::Assertion))}});
        f.body.push_back({Op::Ret, -1, {}});
        f.reg_count = 1;
        return f;
    }

    static IRFunction make_fatal_error() {
        IRFunction f;
        f.mangled = "Flint$Global$fatalError";
        f.param_regs = 0;
        f.body.push_back(
            {Op::Revert, -1, {Operand::immediate(UInt256((uint64_t)RevertReason::FatalError))}});
        f.reg_count = 0;
        return f;
    }
};

}  // namespace

IRProgram lower(Environment& env, DiagnosticList& diags) {
    ModuleLowerer lowerer(env, diags);
    return lowerer.run();
}

}  // namespace flint
