// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "flint/environment.hpp"

#include <algorithm>

namespace flint {

using namespace ast;

bool FunctionSig::protections_contain_any() const {
    return std::find(protections.begin(), protections.end(), "any") != protections.end();
}

std::string FunctionSig::display_name() const {
    switch (kind) {
    case Kind::Initializer:
        return "init";
    case Kind::Fallback:
        return "fallback";
    default:
        return name;
    }
}

const PropertySig* ContractInfo::find_property(const std::string& n) const {
    for (const auto& p : properties) {
        if (p.name == n)
            return &p;
    }
    return nullptr;
}

const EventSig* ContractInfo::find_event(const std::string& n) const {
    for (const auto& e : events) {
        if (e.name == n)
            return &e;
    }
    return nullptr;
}

bool ContractInfo::has_typestate(const std::string& n) const {
    return std::find(typestates.begin(), typestates.end(), n) != typestates.end();
}

int ContractInfo::typestate_ordinal(const std::string& n) const {
    for (size_t i = 0; i < typestates.size(); ++i) {
        if (typestates[i] == n)
            return (int)i + 1;
    }
    return -1;
}

const PropertySig* StructInfo::find_property(const std::string& n) const {
    for (const auto& p : properties) {
        if (p.name == n)
            return &p;
    }
    return nullptr;
}

int EnumInfo::case_ordinal(const std::string& n) const {
    for (size_t i = 0; i < cases.size(); ++i) {
        if (cases[i] == n)
            return (int)i;
    }
    return -1;
}

bool Environment::has_stdlib_currency() const {
    auto it = structs.find(kCurrencyType);
    return it != structs.end();
}

bool Environment::is_type_name(const std::string& n) const {
    return contracts.count(n) || structs.count(n) || traits.count(n) || enums.count(n);
}

bool Environment::is_dynamic_type(const TypeRef& t) const {
    switch (t.kind) {
    case TypeRef::Kind::Array:
    case TypeRef::Kind::FixedArray:
    case TypeRef::Kind::Dictionary:
    case TypeRef::Kind::SelfType:
        return true;
    case TypeRef::Kind::Named:
        return structs.count(t.name) > 0;  // enums are words
    default:
        return false;
    }
}

uint64_t Environment::type_word_count(const TypeRef& t) const {
    switch (t.kind) {
    case TypeRef::Kind::Array:
    case TypeRef::Kind::Dictionary:
        return 1;  // head slot; elements relocate behind keccak addressing
    case TypeRef::Kind::FixedArray:
        return t.fixed_size * type_word_count(t.args[0]);
    case TypeRef::Kind::Named: {
        auto it = structs.find(t.name);
        if (it == structs.end())
            return 1;
        uint64_t words = 0;
        for (const auto& p : it->second.properties)
            words += type_word_count(p.type);
        return words ? words : 1;
    }
    default:
        return 1;
    }
}

const FunctionSig* Environment::find_global(const std::string& name) const {
    for (const auto& g : globals) {
        if (g.name == name)
            return &g;
    }
    return nullptr;
}

std::vector<const FunctionSig*> Environment::functions_named(const std::string& type_name,
                                                             const std::string& name) const {
    std::vector<const FunctionSig*> out;
    auto scan = [&](const std::vector<FunctionSig>& fns) {
        for (const auto& f : fns) {
            if (name.empty() ? f.kind == FunctionSig::Kind::Initializer
                             : (f.kind == FunctionSig::Kind::Function && f.name == name))
                out.push_back(&f);
        }
    };
    if (auto it = contracts.find(type_name); it != contracts.end())
        scan(it->second.functions);
    if (auto it = structs.find(type_name); it != structs.end())
        scan(it->second.functions);
    if (auto it = traits.find(type_name); it != traits.end())
        scan(it->second.members);
    return out;
}

std::optional<Protection> resolve_protection(const Environment& env, const ContractInfo& contract,
                                             const std::string& identifier) {
    if (identifier == "any")
        return Protection{Protection::Kind::Any, ""};
    if (const PropertySig* prop = contract.find_property(identifier)) {
        if (prop->type == TypeRef::address())
            return Protection{Protection::Kind::AddressProperty, identifier};
        if (prop->type == TypeRef::array(TypeRef::address()))
            return Protection{Protection::Kind::AddressListProperty, identifier};
        return std::nullopt;  // wrong type
    }
    for (const auto& fn : contract.functions) {
        if (fn.kind == FunctionSig::Kind::Function && fn.name == identifier) {
            if (fn.params.size() == 1 && fn.params[0].type == TypeRef::address() &&
                fn.return_type == TypeRef::bool_() && !fn.is_mutating)
                return Protection{Protection::Kind::Predicate, identifier};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {

struct Builder {
    const SourceModule& module;
    DiagnosticList& diags;
    Environment env;

    // (name, span) of every top-level declaration seen, for redeclarations.
    std::map<std::string, SourceSpan> declared_names;

    void run() {
        diags.set_pass_rank(1);
        // First pass: register type-introducing declarations so behaviour
        // blocks can be attached in a second pass regardless of file order.
        for (const auto& decl : module.declarations)
            std::visit([this](const auto& d) { register_decl(d); }, decl);
        for (const auto& decl : module.declarations) {
            if (const auto* b = std::get_if<BehaviourDecl>(&decl))
                attach_behaviour(*b);
        }
        for (auto& [name, contract] : env.contracts)
            validate_contract(contract);
        register_globals();
    }

    bool check_redeclaration(const std::string& name, SourceSpan span) {
        auto [it, inserted] = declared_names.emplace(name, span);
        if (!inserted) {
            auto& d = diags.error(diag::DeclRedeclaration, span,
                                  "Invalid redeclaration of '" + name + "'.");
            d.notes.push_back({"Previous declaration on line " + std::to_string(it->second.line) +
                                   ", column " + std::to_string(it->second.column) + ".",
                               it->second});
            return false;
        }
        return true;
    }

    std::vector<PropertySig> collect_properties(const std::vector<PropertyDecl>& decls,
                                                const std::string& owner_desc) {
        std::vector<PropertySig> props;
        for (const auto& p : decls) {
            bool duplicate = std::any_of(props.begin(), props.end(),
                                         [&](const PropertySig& q) { return q.name == p.name; });
            if (duplicate) {
                diags.error(diag::DeclRedeclaration, p.span,
                            "Invalid redeclaration of '" + p.name + "' in " + owner_desc + ".");
                continue;
            }
            PropertySig sig;
            sig.name = p.name;
            sig.type = p.type;
            sig.is_let = p.is_let;
            sig.is_public = p.modifiers.is_public;
            sig.is_visible = p.modifiers.is_visible;
            sig.has_default = p.default_value != nullptr;
            sig.index = (int)props.size();
            sig.decl = &p;
            props.push_back(std::move(sig));
        }
        return props;
    }

    void register_decl(const ContractDecl& d) {
        if (!check_redeclaration(d.name, d.name_span))
            return;
        ContractInfo info;
        info.name = d.name;
        info.decl = &d;
        info.typestates = d.typestates;
        info.properties = collect_properties(d.properties, "'" + d.name + "'");
        for (const auto& e : d.events) {
            if (info.find_event(e.name)) {
                diags.error(diag::DeclRedeclaration, e.span,
                            "Invalid redeclaration of '" + e.name + "'.");
                continue;
            }
            EventSig sig;
            sig.name = e.name;
            sig.fields = collect_properties(e.fields, "event '" + e.name + "'");
            sig.decl = &e;
            info.events.push_back(std::move(sig));
        }
        // typestates share the contract's namespace with its properties
        for (const auto& state : d.typestates) {
            if (info.find_property(state)) {
                diags.error(diag::DeclRedeclaration, d.name_span,
                            "Typestate '" + state + "' collides with a state property of '" +
                                d.name + "'.");
            }
        }
        env.contracts.emplace(d.name, std::move(info));
    }

    void register_decl(const StructDecl& d) {
        if (!check_redeclaration(d.name, d.name_span))
            return;
        StructInfo info;
        info.name = d.name;
        info.decl = &d;
        info.conformances = d.conformances;
        info.properties = collect_properties(d.properties, "'" + d.name + "'");
        for (const auto& fn : d.functions)
            add_function(info.functions, fn, d.name, nullptr);
        env.structs.emplace(d.name, std::move(info));
    }

    void register_decl(const TraitDecl& d) {
        if (!check_redeclaration(d.name, d.name_span))
            return;
        TraitInfo info;
        info.name = d.name;
        info.is_struct_trait = d.is_struct_trait;
        info.decl = &d;
        for (const auto& fn : d.members)
            add_function(info.members, fn, d.name, nullptr);
        env.traits.emplace(d.name, std::move(info));
    }

    void register_decl(const EnumDecl& d) {
        if (!check_redeclaration(d.name, d.name_span))
            return;
        EnumInfo info;
        info.name = d.name;
        info.cases = d.cases;
        info.decl = &d;
        env.enums.emplace(d.name, std::move(info));
    }

    void register_decl(const BehaviourDecl&) {}  // second pass

    void add_function(std::vector<FunctionSig>& into, const FunctionDecl& fn,
                      const std::string& owner, const BehaviourDecl* behaviour) {
        FunctionSig sig;
        switch (fn.kind) {
        case FunctionDecl::Kind::Function:
            sig.kind = FunctionSig::Kind::Function;
            break;
        case FunctionDecl::Kind::Initializer:
            sig.kind = FunctionSig::Kind::Initializer;
            break;
        case FunctionDecl::Kind::Fallback:
            sig.kind = FunctionSig::Kind::Fallback;
            break;
        }
        sig.name = fn.name;
        sig.owner = owner;
        sig.return_type = fn.return_type;
        sig.is_public = fn.modifiers.is_public || fn.modifiers.is_visible;
        sig.is_mutating = fn.modifiers.is_mutating;
        sig.is_payable = fn.is_payable();
        sig.decl = &fn;
        sig.behaviour = behaviour;
        if (behaviour) {
            sig.protections = behaviour->protections;
            sig.caller_binding = behaviour->caller_binding;
            if (behaviour->state_group) {
                for (const auto& s : *behaviour->state_group) {
                    if (s == "any") {
                        sig.state_group.clear();
                        break;
                    }
                    sig.state_group.push_back(s);
                }
            }
        }
        std::map<std::string, SourceSpan> param_names;
        for (const auto& p : fn.parameters) {
            ParamSig ps;
            ps.name = p.name;
            ps.type = p.type;
            ps.is_implicit = p.is_implicit;
            ps.is_inout = p.is_inout;
            ps.has_default = p.default_value != nullptr;
            auto [it, inserted] = param_names.emplace(p.name, p.span);
            if (!inserted) {
                diags.error(diag::DeclRedeclaration, p.span,
                            "Invalid redeclaration of parameter '" + p.name + "'.");
            }
            sig.params.push_back(std::move(ps));
        }
        into.push_back(std::move(sig));
    }

    void attach_behaviour(const BehaviourDecl& d) {
        auto it = env.contracts.find(d.contract_name);
        if (it == env.contracts.end()) {
            diags.error(diag::DeclOrphanBehaviour, d.name_span,
                        "Contract behaviour declaration for '" + d.contract_name +
                            "' has no associated contract declaration.");
            return;
        }
        ContractInfo& contract = it->second;
        contract.behaviours.push_back(&d);

        // typestate group identifiers must name declared states
        if (d.state_group) {
            for (size_t i = 0; i < d.state_group->size(); ++i) {
                const std::string& s = (*d.state_group)[i];
                if (s != "any" && !contract.has_typestate(s)) {
                    SourceSpan span = i < d.state_spans.size() ? d.state_spans[i] : d.name_span;
                    diags.error(diag::TypeUnknownState, span,
                                "Typestate '" + s + "' is undefined in '" + d.contract_name + "'.");
                }
            }
        }
        for (const auto& fn : d.members)
            add_function(contract.functions, fn, contract.name, &d);
    }

    void validate_contract(ContractInfo& contract) {
        // duplicate function signatures (same name, same parameter types)
        for (size_t i = 0; i < contract.functions.size(); ++i) {
            for (size_t j = 0; j < i; ++j) {
                const auto& a = contract.functions[i];
                const auto& b = contract.functions[j];
                if (a.kind != b.kind || a.name != b.name || a.params.size() != b.params.size())
                    continue;
                bool same = true;
                for (size_t k = 0; k < a.params.size(); ++k) {
                    if (!(a.params[k].type == b.params[k].type))
                        same = false;
                }
                if (same && a.decl && b.decl) {
                    auto& diag = diags.error(diag::DeclRedeclaration, a.decl->name_span,
                                             "Invalid redeclaration of '" + a.display_name() + "'.");
                    diag.notes.push_back(
                        {"Previous declaration on line " + std::to_string(b.decl->name_span.line) +
                             ", column " + std::to_string(b.decl->name_span.column) + ".",
                         b.decl->name_span});
                }
            }
        }

        // every protection identifier must resolve
        for (const auto* behaviour : contract.behaviours) {
            for (size_t i = 0; i < behaviour->protections.size(); ++i) {
                const std::string& ident = behaviour->protections[i];
                auto prot = resolve_protection(env, contract, ident);
                SourceSpan span = i < behaviour->protection_spans.size()
                                      ? behaviour->protection_spans[i]
                                      : behaviour->name_span;
                if (!prot) {
                    diags.error(diag::ProtUndefined, span,
                                "Caller protection '" + ident + "' is undefined in '" +
                                    contract.name + "', or has incompatible type.");
                    continue;
                }
                if (prot->kind != Protection::Kind::Any && prot->kind != Protection::Kind::Predicate) {
                    // property wins over a function of the same name
                    bool also_function = std::any_of(
                        contract.functions.begin(), contract.functions.end(),
                        [&](const FunctionSig& f) {
                            return f.kind == FunctionSig::Kind::Function && f.name == ident;
                        });
                    if (also_function) {
                        diags.warning(diag::WarnShadowedProtection, span,
                                      "Caller protection '" + ident +
                                          "' names both a state property and a function; the "
                                          "property is used.");
                    }
                }
            }
        }
    }

    void register_globals() {
        auto make_global = [](std::string name, std::vector<ParamSig> params, TypeRef ret) {
            FunctionSig sig;
            sig.kind = FunctionSig::Kind::Function;
            sig.name = std::move(name);
            sig.params = std::move(params);
            sig.return_type = std::move(ret);
            sig.is_stdlib = true;
            sig.owner = "Flint$Global";
            return sig;
        };
        env.globals.push_back(make_global(
            "send",
            {{"address", TypeRef::address(), false, false, false},
             {"value", TypeRef::named(Environment::kCurrencyType), false, true, false}},
            TypeRef::void_()));
        env.globals.push_back(make_global("fatalError", {}, TypeRef::void_()));
        env.globals.push_back(
            make_global("assert", {{"condition", TypeRef::bool_(), false, false, false}},
                        TypeRef::void_()));
    }
};

}  // namespace

Environment build_environment(const SourceModule& module, DiagnosticList& diags) {
    Builder b{module, diags};
    b.run();
    return std::move(b.env);
}

}  // namespace flint
