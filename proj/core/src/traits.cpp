// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "flint/analysis.hpp"

namespace flint {

using namespace ast;

namespace {

TypeRef substitute_self(const TypeRef& t, const std::string& conformer) {
    if (t.kind == TypeRef::Kind::SelfType)
        return TypeRef::named(conformer);
    TypeRef out = t;
    for (auto& arg : out.args)
        arg = substitute_self(arg, conformer);
    return out;
}

bool params_match(const std::vector<ParamSig>& req, const std::vector<ParamSig>& impl,
                  const std::string& conformer) {
    if (req.size() != impl.size())
        return false;
    for (size_t i = 0; i < req.size(); ++i) {
        if (!(substitute_self(req[i].type, conformer) == substitute_self(impl[i].type, conformer)))
            return false;
        if (req[i].is_inout != impl[i].is_inout)
            return false;
    }
    return true;
}

std::string member_description(const FunctionSig& fn) {
    std::string out = fn.display_name() + "(";
    for (size_t i = 0; i < fn.params.size(); ++i) {
        if (i)
            out += ", ";
        out += fn.params[i].name + ": ";
        if (fn.params[i].is_inout)
            out += "inout ";
        out += fn.params[i].type.to_string();
    }
    out += ")";
    return out;
}

struct Embedder {
    Environment& env;
    DiagnosticList diags;

    void run() {
        diags.set_pass_rank(4);
        for (auto& [name, info] : env.structs)
            embed_into(info.conformances, info.functions, info.owned_clones, name,
                       info.decl ? info.decl->name_span : SourceSpan{}, /*is_struct=*/true);
        // contract trait conformance reuses the same machinery; embedded
        // members land in an implicit any-protection block
        for (auto& [name, info] : env.contracts) {
            if (!info.decl || info.decl->conformances.empty())
                continue;
            embed_into(info.decl->conformances, info.functions, env.owned_clones, name,
                       info.decl->name_span, /*is_struct=*/false);
        }
    }

    void embed_into(const std::vector<std::string>& conformances, std::vector<FunctionSig>& fns,
                    std::vector<std::unique_ptr<FunctionDecl>>& clones, const std::string& name,
                    SourceSpan name_span, bool is_struct) {
        for (const auto& trait_name : conformances) {
            auto it = env.traits.find(trait_name);
            if (it == env.traits.end()) {
                diags.error(diag::TraitMissingMember, name_span,
                            "'" + name + "' conforms to '" + trait_name +
                                "', which is not a declared trait.");
                continue;
            }
            const TraitInfo& trait = it->second;
            if (trait.is_struct_trait != is_struct) {
                diags.error(diag::TraitMissingMember, name_span,
                            "'" + name + "' cannot conform to trait '" + trait_name +
                                "': wrong trait kind.");
                continue;
            }
            for (const auto& member : trait.members) {
                auto matching = std::find_if(fns.begin(), fns.end(), [&](const FunctionSig& f) {
                    return f.kind == member.kind && f.name == member.name &&
                           params_match(member.params, f.params, name);
                });
                if (!member.has_body()) {
                    if (matching == fns.end()) {
                        diags.error(diag::TraitMissingMember, name_span,
                                    "'" + name + "' does not conform to trait '" + trait_name +
                                        "': missing implementation of '" +
                                        member_description(member) + "'.");
                    }
                    continue;
                }
                // defaulted body: at most one body may exist per function
                if (matching != fns.end() && matching->has_body()) {
                    SourceSpan at = matching->decl ? matching->decl->name_span : name_span;
                    diags.error(diag::TraitDuplicateBody, at,
                                "'" + name + "' redefines '" + member.display_name() +
                                    "', which already has a body in trait '" + trait_name + "'.");
                    continue;
                }
                clones.push_back(std::make_unique<FunctionDecl>(clone(*member.decl)));
                FunctionDecl* cloned = clones.back().get();
                for (auto& p : cloned->parameters)
                    p.type = substitute_self(p.type, name);
                cloned->return_type = substitute_self(cloned->return_type, name);

                FunctionSig sig = member;
                sig.owner = name;
                sig.decl = cloned;
                sig.from_trait = true;
                sig.trait_name = trait_name;
                sig.return_type = substitute_self(sig.return_type, name);
                for (auto& p : sig.params)
                    p.type = substitute_self(p.type, name);
                if (!is_struct)
                    sig.protections = {"any"};
                fns.push_back(std::move(sig));
            }
        }
    }
};

}  // namespace

DiagnosticList resolve_traits(Environment& env) {
    Embedder e{env};
    e.run();
    return std::move(e.diags);
}

}  // namespace flint
