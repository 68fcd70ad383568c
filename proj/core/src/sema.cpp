// flintc: compiler and chain simulator for the Flint contract language
// Copyright 2026 The flintc Authors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "flint/analysis.hpp"

namespace flint {

using namespace ast;

namespace {

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return std::all_of(a.begin(), a.end(), [&](const std::string& x) {
        return std::find(b.begin(), b.end(), x) != b.end();
    });
}

std::string group_text(const std::vector<std::string>& items) {
    std::string out = "(";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ", ";
        out += items[i];
    }
    out += ")";
    return out;
}

/// How a statement relates to the mutation discipline. `Satisfies` marks
/// statements that justify a `mutating` keyword without requiring one
/// (the send special case).
enum class MutKind { None, Satisfies, Requires };

MutKind worse(MutKind a, MutKind b) {
    return (int)a > (int)b ? a : b;
}

/// Where an lvalue or receiver path bottoms out.
enum class RootKind { None, State, Local, Binding };

struct Root {
    RootKind kind = RootKind::None;
    std::string name;
};

class Sema {
public:
    Sema(Environment& env, DiagnosticList& diags) : env_(env), diags_(diags) {
        diags_.set_pass_rank(2);
    }

    void run() {
        for (auto& [name, info] : env_.contracts)
            check_contract(info);
        for (auto& [name, info] : env_.structs)
            check_struct(info);
    }

private:
    struct LocalMeta {
        bool is_let = false;
        bool initialized = false;
        bool state_alias = false;  // loop variable referencing storage elements
        SourceSpan span;
    };

    struct FlowState {
        std::set<std::string> assigned;  // properties definitely assigned (inits)
        bool terminated = false;
    };

    Environment& env_;
    DiagnosticList& diags_;
    const ContractInfo* contract_ = nullptr;
    const StructInfo* struct_ = nullptr;
    const FunctionSig* fn_ = nullptr;
    std::vector<std::map<std::string, LocalMeta>> scopes_;
    MutKind fn_mutation_ = MutKind::None;

    bool in_initializer() const { return fn_ && fn_->kind == FunctionSig::Kind::Initializer; }

    const PropertySig* owner_property(const std::string& name) const {
        if (contract_)
            return contract_->find_property(name);
        if (struct_)
            return struct_->find_property(name);
        return nullptr;
    }

    // ---- declaration-level checks ----

    void check_contract(const ContractInfo& info) {
        contract_ = &info;
        struct_ = nullptr;
        check_contract_initializers(info);
        for (const auto& fn : info.functions) {
            check_function_shape(fn);
            if (fn.decl && fn.decl->body)
                check_body(fn);
        }
        contract_ = nullptr;
    }

    void check_struct(const StructInfo& info) {
        struct_ = &info;
        contract_ = nullptr;
        bool has_init = std::any_of(info.functions.begin(), info.functions.end(),
                                    [](const FunctionSig& f) {
                                        return f.kind == FunctionSig::Kind::Initializer;
                                    });
        if (!has_init) {
            for (const auto& p : info.properties) {
                if (!p.has_default) {
                    diags_.error(diag::InitPropertyUnassigned,
                                 p.decl ? p.decl->span : SourceSpan{},
                                 "State property '" + p.name +
                                     "' needs to be assigned a value, as no initialiser was "
                                     "declared.");
                }
            }
        }
        for (const auto& fn : info.functions) {
            check_function_shape(fn);
            if (fn.decl && fn.decl->body)
                check_body(fn);
        }
        struct_ = nullptr;
    }

    void check_contract_initializers(const ContractInfo& info) {
        std::vector<const FunctionSig*> public_inits;
        bool has_any_init = false;
        for (const auto& fn : info.functions) {
            if (fn.kind != FunctionSig::Kind::Initializer)
                continue;
            has_any_init = true;
            if (fn.is_public)
                public_inits.push_back(&fn);
        }
        SourceSpan at = info.decl ? info.decl->name_span : SourceSpan{};
        if (public_inits.empty()) {
            diags_.error(diag::InitMissingPublic, at,
                         "Contract '" + info.name +
                             "' needs a public initialiser accessible using caller capability "
                             "'any'.");
        } else {
            for (size_t i = 1; i < public_inits.size(); ++i) {
                const auto* first = public_inits.front();
                auto& d = diags_.error(diag::InitMultiplePublic,
                                       public_inits[i]->decl->name_span,
                                       "A public initialiser has already been defined.");
                d.notes.push_back({"A public initialiser is defined on line " +
                                       std::to_string(first->decl->name_span.line) + ", column " +
                                       std::to_string(first->decl->name_span.column) + ".",
                                   first->decl->name_span});
            }
            for (const auto* init : public_inits) {
                if (!init->protections_contain_any()) {
                    diags_.error(diag::InitNotAny, init->decl->name_span,
                                 "Public contract initialiser should be callable using caller "
                                 "capability 'any'.");
                }
            }
        }
        if (!has_any_init) {
            for (const auto& p : info.properties) {
                if (!p.has_default) {
                    diags_.error(diag::InitPropertyUnassigned,
                                 p.decl ? p.decl->span : SourceSpan{},
                                 "State property '" + p.name +
                                     "' needs to be assigned a value, as no initialiser was "
                                     "declared.");
                }
            }
        }
    }

    void check_function_shape(const FunctionSig& fn) {
        if (!fn.decl)
            return;
        // bodies are mandatory outside traits
        if (!fn.decl->body) {
            diags_.error(diag::DeclSignatureBody, fn.decl->name_span,
                         "Function declarations outside traits must have bodies.");
        }
        // @payable: exactly one implicit parameter of the currency type
        if (fn.is_payable) {
            int implicit_currency = 0;
            int implicit_other = 0;
            for (const auto& p : fn.params) {
                if (!p.is_implicit)
                    continue;
                if (p.type == TypeRef::named(Environment::kCurrencyType))
                    ++implicit_currency;
                else
                    ++implicit_other;
            }
            if (implicit_currency + implicit_other > 1) {
                diags_.error(diag::DeclPayableAmbiguous, fn.decl->name_span,
                             "Ambiguous implicit payable value parameter. Only one parameter can "
                             "be declared 'implicit' with a currency type.");
            } else if (implicit_currency == 0) {
                diags_.error(diag::DeclPayableNoImplicit, fn.decl->name_span,
                             "'" + fn.display_name() +
                                 "' is declared @payable but doesn't have an implicit parameter "
                                 "of a currency type.");
            }
        }
        // public functions expose the ABI: no dynamic parameters
        if (contract_ && fn.is_public &&
            (fn.kind == FunctionSig::Kind::Function ||
             fn.kind == FunctionSig::Kind::Initializer)) {
            for (const auto& p : fn.params) {
                if (p.is_implicit && p.type == TypeRef::named(Environment::kCurrencyType))
                    continue;
                if (env_.is_dynamic_type(p.type)) {
                    auto& d = diags_.error(diag::DeclDynamicParams, fn.decl->name_span,
                                           "Function '" + fn.display_name() +
                                               "' cannot have dynamic parameters.");
                    d.notes.push_back({"'" + p.name + "' cannot be used as a parameter.",
                                       std::nullopt});
                    break;
                }
            }
        }
        if (fn.kind == FunctionSig::Kind::Fallback) {
            if (!fn.params.empty()) {
                diags_.error(diag::TypeGeneral, fn.decl->name_span,
                             "Fallback functions cannot declare parameters.");
            }
            if (fn.is_mutating) {
                diags_.warning(diag::DeclMutatingFallback, fn.decl->name_span,
                               "Modifier 'mutating' has no effect on fallback functions: "
                               "fallbacks cannot change state.");
            }
        }
    }

    // ---- function bodies ----

    void check_body(const FunctionSig& fn) {
        fn_ = &fn;
        fn_mutation_ = MutKind::None;
        reported_mutation_.clear();
        scopes_.clear();
        scopes_.emplace_back();
        if (!fn.caller_binding.empty())
            scopes_.back()[fn.caller_binding] = {true, true, false, fn.decl->name_span};
        for (size_t i = 0; i < fn.params.size(); ++i)
            scopes_.back()[fn.params[i].name] = {true, true, false, fn.decl->parameters[i].span};

        FlowState flow;
        walk_block(*fn.decl->body, flow);

        bool is_fallback = fn.kind == FunctionSig::Kind::Fallback;
        if (in_initializer())
            check_init_complete(flow, fn.decl->span);
        if (!flow.terminated && fn.kind == FunctionSig::Kind::Function &&
            !fn.return_type.is_void()) {
            diags_.error(diag::DeclMissingReturn, fn.decl->name_span,
                         "Missing return in function expected to return '" +
                             fn.return_type.to_string() + "'.");
        }
        if (fn.kind == FunctionSig::Kind::Function && fn.is_mutating &&
            fn_mutation_ == MutKind::None) {
            diags_.warning(diag::MutNotNeeded, fn.decl->name_span,
                           "Function does not have to be declared mutating: none of its "
                           "statements are mutating.");
        }
        (void)is_fallback;
        fn_ = nullptr;
    }

    void check_init_complete(const FlowState& flow, SourceSpan at) {
        if (flow.terminated)
            return;  // every path returned or aborted; returns were checked in place
        report_missing_properties(flow, at);
    }

    void report_missing_properties(const FlowState& flow, SourceSpan at) {
        const auto& props = contract_ ? contract_->properties : struct_->properties;
        std::vector<const PropertySig*> missing;
        for (const auto& p : props) {
            if (!p.has_default && !flow.assigned.count(p.name))
                missing.push_back(&p);
        }
        if (missing.empty())
            return;
        auto& d = diags_.error(diag::InitIncomplete, at,
                               "Return from initialiser without initialising all properties.");
        for (const auto* p : missing)
            d.notes.push_back({"'" + p->name + "' is uninitialised.", std::nullopt});
    }

    // ---- scope helpers ----

    LocalMeta* lookup_local(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end())
                return &found->second;
        }
        return nullptr;
    }

    // ---- roots ----

    Root root_of(const Expr& e) {
        switch (e.kind) {
        case ExprKind::Identifier:
            switch (e.symbol) {
            case SymbolKind::StateProperty:
                return {RootKind::State, e.text};
            case SymbolKind::CallerBinding:
                return {RootKind::Binding, e.text};
            case SymbolKind::Local:
            case SymbolKind::Parameter: {
                if (const LocalMeta* meta = lookup_local(e.text); meta && meta->state_alias)
                    return {RootKind::State, e.text};
                return {RootKind::Local, e.text};
            }
            default:
                return {RootKind::None, ""};
            }
        case ExprKind::SelfRef:
            return {RootKind::State, ""};
        case ExprKind::Member:
            if (e.lhs->kind == ExprKind::SelfRef)
                return {RootKind::State, e.text};
            return root_of(*e.lhs);
        case ExprKind::Subscript:
        case ExprKind::Inout:
            return root_of(*e.lhs);
        default:
            return {RootKind::None, ""};
        }
    }

    /// The property a whole-value assignment initializes, when the lvalue is
    /// `name` or `self.name`.
    const PropertySig* direct_property_target(const Expr& lhs) {
        if (lhs.kind == ExprKind::Identifier && lhs.symbol == SymbolKind::StateProperty)
            return owner_property(lhs.text);
        if (lhs.kind == ExprKind::Member && lhs.lhs->kind == ExprKind::SelfRef)
            return owner_property(lhs.text);
        return nullptr;
    }

    // ---- mutation classification ----

    bool is_global_send(const FunctionSig* callee) const {
        return callee && callee->is_stdlib && callee->owner == "Flint$Global" &&
               callee->name == "send";
    }

    bool is_global_fatal(const FunctionSig* callee) const {
        return callee && callee->is_stdlib && callee->owner == "Flint$Global" &&
               callee->name == "fatalError";
    }

    MutKind expr_mutation(const Expr& e) {
        MutKind m = MutKind::None;
        switch (e.kind) {
        case ExprKind::Call: {
            for (const auto& arg : e.args)
                m = worse(m, expr_mutation(*arg.value));
            const FunctionSig* callee = e.resolved_callee;
            // &state arguments hand out mutable storage references
            for (const auto& arg : e.args) {
                if (arg.value->kind == ExprKind::Inout &&
                    root_of(*arg.value).kind == RootKind::State)
                    m = worse(m, is_global_send(callee) ? MutKind::Satisfies : MutKind::Requires);
            }
            if (callee && callee->is_mutating && !e.is_constructor_call) {
                Root receiver{RootKind::State, ""};  // unqualified: receiver is self
                if (e.callee->kind == ExprKind::Member)
                    receiver = root_of(*e.callee->lhs);
                if (receiver.kind == RootKind::State)
                    m = worse(m, MutKind::Requires);
            }
            return m;
        }
        case ExprKind::Binary:
            return worse(expr_mutation(*e.lhs), expr_mutation(*e.rhs));
        case ExprKind::Member:
        case ExprKind::Inout:
        case ExprKind::Try:
            return e.lhs ? expr_mutation(*e.lhs) : MutKind::None;
        case ExprKind::Subscript:
            return worse(expr_mutation(*e.lhs), expr_mutation(*e.rhs));
        default:
            return MutKind::None;
        }
    }

    void note_mutation(MutKind m, SourceSpan at) {
        fn_mutation_ = worse(fn_mutation_, m);
        if (m == MutKind::Requires && !in_initializer() && fn_ && !fn_->is_mutating) {
            auto key = std::make_pair(at.line, at.column);
            if (!reported_mutation_.insert(key).second)
                return;
            if (fn_->kind == FunctionSig::Kind::Fallback) {
                diags_.error(diag::FallbackMutates, at, "Fallback functions cannot change state.");
            } else {
                diags_.error(diag::MutInNonMutating, at,
                             "Use of mutating statement in a nonmutating function.");
            }
        }
    }

    std::set<std::pair<int, int>> reported_mutation_;

    // ---- statement walk ----

    void walk_block(const Block& block, FlowState& flow) {
        scopes_.emplace_back();
        bool warned_unreachable = false;
        for (const auto& stmt : block.statements) {
            if (flow.terminated && !warned_unreachable) {
                diags_.warning(diag::DeclCodeAfterReturn, stmt->span,
                               "Code after return will never be executed.");
                warned_unreachable = true;
            }
            walk_stmt(*stmt, flow);
        }
        scopes_.pop_back();
    }

    void walk_stmt(const Stmt& s, FlowState& flow) {
        switch (s.kind) {
        case StmtKind::Expr:
            walk_expr_stmt(s, flow);
            return;
        case StmtKind::VarDecl: {
            if (s.initial) {
                note_mutation(expr_mutation(*s.initial), s.span);
                walk_nested_calls(*s.initial, false);
            }
            scopes_.back()[s.name] = {s.is_let, s.initial != nullptr, false, s.span};
            return;
        }
        case StmtKind::Return:
            if (s.expr) {
                note_mutation(expr_mutation(*s.expr), s.span);
                walk_nested_calls(*s.expr, false);
            }
            if (in_initializer())
                report_missing_properties(flow, s.span);
            flow.terminated = true;
            return;
        case StmtKind::Become:
            note_mutation(MutKind::Requires, s.span);
            return;
        case StmtKind::Emit: {
            MutKind m = MutKind::None;
            for (const auto& arg : s.expr->args) {
                m = worse(m, expr_mutation(*arg.value));
                walk_nested_calls(*arg.value, false);
            }
            note_mutation(m, s.span);
            return;
        }
        case StmtKind::ForIn: {
            if (s.sequence->kind != ExprKind::Range) {
                note_mutation(expr_mutation(*s.sequence), s.span);
            }
            walk_nested_calls(*s.sequence, false);
            scopes_.emplace_back();
            bool alias = false;
            if (s.sequence->kind != ExprKind::Range &&
                root_of(*s.sequence).kind == RootKind::State &&
                env_.is_dynamic_type(s.declared_type))
                alias = true;
            scopes_.back()[s.name] = {s.is_let, true, alias, s.span};
            // zero iterations are possible: assignments inside don't count,
            // termination inside doesn't terminate
            FlowState body_flow = flow;
            walk_block(s.body, body_flow);
            scopes_.pop_back();
            return;
        }
        case StmtKind::If: {
            note_mutation(expr_mutation(*s.condition), s.span);
            walk_nested_calls(*s.condition, false);
            FlowState then_flow = flow;
            walk_block(s.then_block, then_flow);
            FlowState else_flow = flow;
            if (s.else_block)
                walk_block(*s.else_block, else_flow);
            // join: assigned on both paths; terminated only if both end
            std::set<std::string> joined;
            if (then_flow.terminated) {
                joined = else_flow.assigned;
            } else if (else_flow.terminated) {
                joined = then_flow.assigned;
            } else {
                std::set_intersection(then_flow.assigned.begin(), then_flow.assigned.end(),
                                      else_flow.assigned.begin(), else_flow.assigned.end(),
                                      std::inserter(joined, joined.begin()));
            }
            flow.assigned = std::move(joined);
            flow.terminated = then_flow.terminated && else_flow.terminated;
            return;
        }
        }
    }

    void walk_expr_stmt(const Stmt& s, FlowState& flow) {
        const Expr& e = *s.expr;
        if (e.kind == ExprKind::Binary && is_assignment(e.op)) {
            walk_assignment(e, flow);
            return;
        }
        note_mutation(expr_mutation(e), s.span);
        walk_nested_calls(e, false);
        const Expr* call = &e;
        if (e.kind == ExprKind::Try)
            call = e.lhs.get();
        if (call->kind == ExprKind::Call) {
            const FunctionSig* callee = call->resolved_callee;
            bool yields_value =
                call->is_constructor_call || (callee && !callee->return_type.is_void());
            if (yields_value) {
                diags_.error(diag::ResultDiscarded, e.span,
                             "Cannot discard the result of a call to '" + call->callee->text +
                                 "'.");
            }
            if (is_global_fatal(callee))
                flow.terminated = true;
        }
    }

    void walk_assignment(const Expr& e, FlowState& flow) {
        note_mutation(worse(expr_mutation(*e.rhs), expr_mutation(*e.lhs)), e.span);
        walk_nested_calls(*e.rhs, false);
        walk_nested_calls(*e.lhs, false);

        Root root = root_of(*e.lhs);
        if (root.kind == RootKind::State) {
            note_mutation(MutKind::Requires, e.span);
        } else if (root.kind == RootKind::Binding) {
            diags_.error(diag::MutLetReassign, e.span,
                         "Cannot reassign to value: '" + root.name + "' is a let-constant.");
            return;
        } else if (root.kind == RootKind::Local) {
            LocalMeta* meta = lookup_local(root.name);
            if (meta && e.lhs->kind == ExprKind::Identifier) {
                if (meta->is_let && meta->initialized) {
                    auto& d = diags_.error(diag::MutLetReassign, e.span,
                                           "Cannot reassign to value: '" + root.name +
                                               "' is a let-constant.");
                    d.notes.push_back({"'" + root.name + "' is declared on line " +
                                           std::to_string(meta->span.line) + ", column " +
                                           std::to_string(meta->span.column) + ".",
                                       meta->span});
                } else {
                    meta->initialized = true;
                }
            }
        }

        // definite assignment and let discipline for state properties
        if (const PropertySig* prop = direct_property_target(*e.lhs)) {
            bool already = flow.assigned.count(prop->name) > 0;
            if (prop->is_let && (prop->has_default || already || !in_initializer())) {
                SourceSpan decl_span = prop->decl ? prop->decl->span : SourceSpan{};
                auto& d = diags_.error(diag::MutLetReassign, e.span,
                                       "Cannot reassign to value: '" + prop->name +
                                           "' is a let-constant.");
                d.notes.push_back({"'" + prop->name + "' is declared on line " +
                                       std::to_string(decl_span.line) + ", column " +
                                       std::to_string(decl_span.column) + ".",
                                   decl_span});
            }
            if (in_initializer())
                flow.assigned.insert(prop->name);
        }
    }

    /// Protection compatibility for every call expression in a subtree.
    void walk_nested_calls(const Expr& e, bool under_try) {
        switch (e.kind) {
        case ExprKind::Call:
            check_call_protection(e, under_try);
            for (const auto& arg : e.args)
                walk_nested_calls(*arg.value, false);
            if (e.callee->kind == ExprKind::Member)
                walk_nested_calls(*e.callee->lhs, false);
            return;
        case ExprKind::Try:
            walk_nested_calls(*e.lhs, true);
            return;
        case ExprKind::Binary:
        case ExprKind::Subscript:
        case ExprKind::Range:
            walk_nested_calls(*e.lhs, false);
            walk_nested_calls(*e.rhs, false);
            return;
        case ExprKind::Member:
        case ExprKind::Inout:
            if (e.lhs)
                walk_nested_calls(*e.lhs, false);
            return;
        default:
            return;
        }
    }

    void check_call_protection(const Expr& call, bool under_try) {
        const FunctionSig* callee = call.resolved_callee;
        if (!callee || !contract_ || !fn_ || under_try)
            return;
        if (!callee->behaviour || callee->owner != contract_->name)
            return;  // struct functions and globals have no protections
        if (!fn_->behaviour)
            return;

        bool protections_ok = callee->protections_contain_any() ||
                              subset(fn_->protections, callee->protections);
        bool states_ok = callee->state_group.empty() ||
                         subset(fn_->state_group, callee->state_group);
        if (protections_ok && states_ok)
            return;

        if (!protections_ok) {
            auto& d = diags_.error(diag::ProtIncompatibleCall, call.span,
                                   "Function '" + callee->display_name() +
                                       "' is not in scope or cannot be called using caller "
                                       "protection '" +
                                       group_text(fn_->protections) + "'.");
            d.notes.push_back({"Perhaps you meant this function, which requires caller "
                               "protection '" +
                                   group_text(callee->protections) + "'.",
                               callee->decl ? std::optional(callee->decl->name_span)
                                            : std::nullopt});
        } else {
            auto& d = diags_.error(
                diag::ProtIncompatibleCall, call.span,
                "Function '" + callee->display_name() +
                    "' cannot be called from a function restricted to typestates '" +
                    group_text(fn_->state_group) + "'.");
            d.notes.push_back({"Perhaps you meant this function, which requires typestate '" +
                                   group_text(callee->state_group) + "'.",
                               callee->decl ? std::optional(callee->decl->name_span)
                                            : std::nullopt});
        }
    }
};

}  // namespace

DiagnosticList semantic_check(Environment& env) {
    DiagnosticList diags;
    Sema(env, diags).run();
    return diags;
}

}  // namespace flint
