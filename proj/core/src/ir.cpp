// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/ir.hpp"

#include <sstream>
#include <stdexcept>

namespace flint {

const char* op_name(Op op) {
    switch (op) {
    case Op::Const: return "const";
    case Op::Move: return "move";
    case Op::Load: return "load";
    case Op::Store: return "store";
    case Op::Alloc: return "alloc";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Exp: return "exp";
    case Op::WAdd: return "wadd";
    case Op::WSub: return "wsub";
    case Op::WMul: return "wmul";
    case Op::Eq: return "eq";
    case Op::Ne: return "ne";
    case Op::Lt: return "lt";
    case Op::Le: return "le";
    case Op::Gt: return "gt";
    case Op::Ge: return "ge";
    case Op::Jump: return "jump";
    case Op::Branch: return "br";
    case Op::Call: return "call";
    case Op::Ret: return "ret";
    case Op::Revert: return "revert";
    case Op::Emit: return "emit";
    case Op::Become: return "become";
    case Op::SendWei: return "send";
    case Op::ProtCheck: return "protcheck";
    case Op::StateCheck: return "statecheck";
    case Op::Keccak1: return "keccak1";
    case Op::Keccak2: return "keccak2";
    case Op::Mint: return "mint";
    case Op::Caller: return "caller";
    }
    return "?";
}

const char* revert_reason_name(RevertReason r) {
    switch (r) {
    case RevertReason::Protection: return "protection";
    case RevertReason::Typestate: return "typestate";
    case RevertReason::Overflow: return "overflow";
    case RevertReason::DivisionByZero: return "division-by-zero";
    case RevertReason::Assertion: return "assertion";
    case RevertReason::FatalError: return "fatalError";
    case RevertReason::InsufficientFunds: return "insufficient-funds";
    case RevertReason::OutOfGas: return "out-of-gas";
    case RevertReason::UnknownSelector: return "unknown-selector-with-reverting-fallback";
    }
    return "?";
}

const IRFunction* IRContract::function(const std::string& mangled) const {
    for (const auto& f : functions) {
        if (f.mangled == mangled)
            return &f;
    }
    return nullptr;
}

const IRLayoutEntry* IRContract::layout_entry(const std::string& name) const {
    for (const auto& e : layout) {
        if (e.name == name)
            return &e;
    }
    return nullptr;
}

const IREvent* IRContract::event(const std::string& name) const {
    for (const auto& e : events) {
        if (e.name == name)
            return &e;
    }
    return nullptr;
}

int IRContract::state_ordinal(const std::string& name) const {
    for (const auto& [n, ord] : typestates) {
        if (n == name)
            return ord;
    }
    return -1;
}

const IRContract* IRProgram::contract(const std::string& name) const {
    for (const auto& c : contracts) {
        if (c.name == name)
            return &c;
    }
    return nullptr;
}

std::string type_text(const TypeRef& t) {
    switch (t.kind) {
    case TypeRef::Kind::Array:
        return "[" + type_text(t.args[0]) + "]";
    case TypeRef::Kind::FixedArray:
        return type_text(t.args[0]) + "[" + std::to_string(t.fixed_size) + "]";
    case TypeRef::Kind::Dictionary:
        return "[" + type_text(t.args[0]) + ":" + type_text(t.args[1]) + "]";
    default:
        return t.to_string();
    }
}

namespace {

// minimal recursive-descent over the no-space type spelling
struct TypeTextParser {
    const std::string& s;
    size_t pos = 0;

    TypeRef parse() {
        TypeRef base = parse_base();
        while (pos < s.size() && s[pos] == '[' && pos + 1 < s.size() && isdigit(s[pos + 1])) {
            ++pos;
            uint64_t n = 0;
            while (pos < s.size() && isdigit(s[pos]))
                n = n * 10 + (uint64_t)(s[pos++] - '0');
            expect(']');
            base = TypeRef::fixed_array(std::move(base), n);
        }
        return base;
    }

    TypeRef parse_base() {
        if (pos < s.size() && s[pos] == '[') {
            ++pos;
            TypeRef first = parse();
            if (pos < s.size() && s[pos] == ':') {
                ++pos;
                TypeRef value = parse();
                expect(']');
                return TypeRef::dictionary(std::move(first), std::move(value));
            }
            expect(']');
            return TypeRef::array(std::move(first));
        }
        size_t start = pos;
        while (pos < s.size() && (isalnum(s[pos]) || s[pos] == '_' || s[pos] == '$'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name == "Int")
            return TypeRef::int_();
        if (name == "Bool")
            return TypeRef::bool_();
        if (name == "Address")
            return TypeRef::address();
        if (name == "String")
            return TypeRef::string();
        if (name == "Void")
            return TypeRef::void_();
        if (name == "Self")
            return TypeRef::self_type();
        if (name.empty())
            throw std::runtime_error("bad type text: " + s);
        return TypeRef::named(name);
    }

    void expect(char c) {
        if (pos >= s.size() || s[pos] != c)
            throw std::runtime_error("bad type text: " + s);
        ++pos;
    }
};

std::string operand_text(const Operand& o) {
    if (o.kind == Operand::Kind::Reg)
        return "r" + std::to_string(o.reg);
    return "#" + o.imm.to_decimal();
}

Operand parse_operand(const std::string& tok) {
    if (tok.size() >= 2 && tok[0] == 'r' && isdigit(tok[1]))
        return Operand::r(std::stoi(tok.substr(1)));
    if (tok.size() >= 2 && tok[0] == '#') {
        auto v = UInt256::from_decimal(tok.substr(1));
        if (!v)
            throw std::runtime_error("bad operand: " + tok);
        return Operand::immediate(*v);
    }
    throw std::runtime_error("bad operand: " + tok);
}

Op op_from_name(const std::string& name) {
    for (int i = 0; i <= (int)Op::Caller; ++i) {
        if (name == op_name((Op)i))
            return (Op)i;
    }
    throw std::runtime_error("unknown op: " + name);
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

void dump_instr(std::ostream& out, const IRInstr& in) {
    out << "  ";
    if (in.dst >= 0)
        out << "r" << in.dst << " = ";
    out << op_name(in.op);
    if (in.op == Op::Call && in.checked)
        out << "!";
    if (!in.symbol.empty())
        out << " " << in.symbol;
    for (const auto& o : in.operands)
        out << " " << operand_text(o);
    if (in.target_a >= 0)
        out << " @" << in.target_a;
    if (in.target_b >= 0)
        out << " @" << in.target_b;
    out << "\n";
}

IRInstr parse_instr(const std::string& line) {
    IRInstr instr;
    auto toks = split_ws(line);
    size_t i = 0;
    if (toks.size() >= 2 && toks[1] == "=") {
        instr.dst = std::stoi(toks[0].substr(1));
        i = 2;
    }
    if (i >= toks.size())
        throw std::runtime_error("bad instruction: " + line);
    std::string opname = toks[i++];
    if (opname.back() == '!') {
        instr.checked = true;
        opname.pop_back();
    }
    instr.op = op_from_name(opname);
    bool takes_symbol = instr.op == Op::Call || instr.op == Op::Emit;
    if (takes_symbol) {
        if (i >= toks.size())
            throw std::runtime_error("bad instruction: " + line);
        instr.symbol = toks[i++];
    }
    for (; i < toks.size(); ++i) {
        const std::string& tok = toks[i];
        if (tok[0] == '@') {
            int t = std::stoi(tok.substr(1));
            if (instr.target_a < 0)
                instr.target_a = t;
            else
                instr.target_b = t;
        } else {
            instr.operands.push_back(parse_operand(tok));
        }
    }
    return instr;
}

}  // namespace

std::string dump(const IRProgram& program) {
    std::ostringstream out;
    out << "; flintc IR v1\n";
    for (const auto& c : program.contracts) {
        out << ".contract " << c.name << "\n";
        for (const auto& e : c.layout)
            out << ".layout " << e.name << " " << e.slot << " " << e.words << " "
                << type_text(e.type) << "\n";
        for (const auto& [name, ord] : c.typestates)
            out << ".typestate " << name << " " << ord << "\n";
        out << ".ready " << c.ready_ordinal << "\n";
        for (const auto& e : c.events) {
            out << ".event " << e.name;
            for (const auto& [fname, ftype] : e.fields)
                out << " " << fname << ":" << type_text(ftype);
            out << "\n";
        }
        if (!c.init_mangled.empty())
            out << ".init " << c.init_mangled << "\n";
        if (!c.fallback_mangled.empty())
            out << ".fallback " << c.fallback_mangled << "\n";
        for (const auto& [sel, fn] : c.dispatch) {
            char buf[9];
            snprintf(buf, sizeof buf, "%08x", sel);
            out << ".dispatch " << buf << " " << fn << "\n";
        }
        for (const auto& f : c.functions) {
            out << ".function " << f.mangled << " name " << (f.source_name.empty() ? "-" : f.source_name)
                << " public " << (f.is_public ? 1 : 0) << " payable " << (f.is_payable ? 1 : 0)
                << " implicit " << f.implicit_param << " regs " << f.reg_count << " paramregs "
                << f.param_regs << " entry " << f.entry_skip << "\n";
            for (const auto& p : f.params)
                out << ".param " << p.name << " " << type_text(p.type) << " "
                    << (p.is_ref ? "ref" : "val") << "\n";
            out << ".returns " << type_text(f.return_type) << "\n";
            if (!f.required_states.empty()) {
                out << ".states";
                for (int s : f.required_states)
                    out << " " << s;
                out << "\n";
            }
            for (const auto& p : f.protections) {
                switch (p.kind) {
                case IRProtection::Kind::AddressProperty:
                    out << ".prot addr " << p.slot.to_decimal() << "\n";
                    break;
                case IRProtection::Kind::AddressListProperty:
                    out << ".prot list " << p.slot.to_decimal() << "\n";
                    break;
                case IRProtection::Kind::Predicate:
                    out << ".prot pred " << p.predicate << "\n";
                    break;
                }
            }
            out << ".body " << f.body.size() << "\n";
            for (const auto& in : f.body)
                dump_instr(out, in);
            out << ".end\n";
        }
    }
    return out.str();
}

IRProgram parse_ir(const std::string& text) {
    IRProgram program;
    IRContract* contract = nullptr;
    IRFunction* fn = nullptr;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        // strip comments
        size_t semi = line.find(';');
        if (semi != std::string::npos)
            line = line.substr(0, semi);
        auto toks = split_ws(line);
        if (toks.empty())
            continue;
        const std::string& head = toks[0];
        if (head == ".contract") {
            program.contracts.emplace_back();
            contract = &program.contracts.back();
            contract->name = toks.at(1);
            fn = nullptr;
        } else if (head == ".layout") {
            IRLayoutEntry e;
            e.name = toks.at(1);
            e.slot = std::stoull(toks.at(2));
            e.words = std::stoull(toks.at(3));
            e.type = parse_type_text(toks.at(4));
            contract->layout.push_back(std::move(e));
        } else if (head == ".typestate") {
            contract->typestates.emplace_back(toks.at(1), std::stoi(toks.at(2)));
        } else if (head == ".ready") {
            contract->ready_ordinal = std::stoi(toks.at(1));
        } else if (head == ".event") {
            IREvent e;
            e.name = toks.at(1);
            for (size_t i = 2; i < toks.size(); ++i) {
                size_t colon = toks[i].rfind(':');
                e.fields.emplace_back(toks[i].substr(0, colon),
                                      parse_type_text(toks[i].substr(colon + 1)));
            }
            contract->events.push_back(std::move(e));
        } else if (head == ".init") {
            contract->init_mangled = toks.at(1);
        } else if (head == ".fallback") {
            contract->fallback_mangled = toks.at(1);
        } else if (head == ".dispatch") {
            contract->dispatch[(uint32_t)std::stoul(toks.at(1), nullptr, 16)] = toks.at(2);
        } else if (head == ".function") {
            contract->functions.emplace_back();
            fn = &contract->functions.back();
            fn->mangled = toks.at(1);
            for (size_t i = 2; i + 1 < toks.size(); i += 2) {
                const std::string& key = toks[i];
                const std::string& val = toks[i + 1];
                if (key == "name")
                    fn->source_name = val == "-" ? "" : val;
                else if (key == "public")
                    fn->is_public = val == "1";
                else if (key == "payable")
                    fn->is_payable = val == "1";
                else if (key == "implicit")
                    fn->implicit_param = std::stoi(val);
                else if (key == "regs")
                    fn->reg_count = std::stoi(val);
                else if (key == "paramregs")
                    fn->param_regs = std::stoi(val);
                else if (key == "entry")
                    fn->entry_skip = std::stoi(val);
            }
        } else if (head == ".param") {
            fn->params.push_back({toks.at(1), parse_type_text(toks.at(2)), toks.at(3) == "ref"});
        } else if (head == ".returns") {
            fn->return_type = parse_type_text(toks.at(1));
        } else if (head == ".states") {
            for (size_t i = 1; i < toks.size(); ++i)
                fn->required_states.push_back(std::stoi(toks[i]));
        } else if (head == ".prot") {
            IRProtection p;
            if (toks.at(1) == "addr") {
                p.kind = IRProtection::Kind::AddressProperty;
                p.slot = *UInt256::from_decimal(toks.at(2));
            } else if (toks.at(1) == "list") {
                p.kind = IRProtection::Kind::AddressListProperty;
                p.slot = *UInt256::from_decimal(toks.at(2));
            } else {
                p.kind = IRProtection::Kind::Predicate;
                p.predicate = toks.at(2);
            }
            fn->protections.push_back(std::move(p));
        } else if (head == ".body") {
            size_t count = std::stoull(toks.at(1));
            for (size_t i = 0; i < count; ++i) {
                if (!std::getline(in, line))
                    throw std::runtime_error("truncated body");
                fn->body.push_back(parse_instr(line));
            }
        } else if (head == ".end") {
            fn = nullptr;
        } else {
            throw std::runtime_error("unknown directive: " + head);
        }
    }
    return program;
}

TypeRef parse_type_text(const std::string& text) {
    TypeTextParser p{text};
    TypeRef t = p.parse();
    if (p.pos != text.size())
        throw std::runtime_error("bad type text: " + text);
    return t;
}

}  // namespace flint
