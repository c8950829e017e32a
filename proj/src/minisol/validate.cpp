// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/minisol/parser.hpp"

#include <set>

namespace mtsc::minisol
{
std::string_view to_string(SemanticErrorKind kind)
{
    switch (kind)
    {
    case SemanticErrorKind::DuplicateContract:
        return "DuplicateContract";
    case SemanticErrorKind::DuplicateFunction:
        return "DuplicateFunction";
    case SemanticErrorKind::DuplicateStateVar:
        return "DuplicateStateVar";
    case SemanticErrorKind::DuplicateParam:
        return "DuplicateParam";
    case SemanticErrorKind::DuplicateFallback:
        return "DuplicateFallback";
    case SemanticErrorKind::UndeclaredName:
        return "UndeclaredName";
    case SemanticErrorKind::TypeMismatch:
        return "TypeMismatch";
    case SemanticErrorKind::AssignToParam:
        return "AssignToParam";
    }
    return "?";
}

namespace
{
class Checker
{
public:
    Checker(const ContractDef& c, std::vector<SemanticError>& errors) : contract_{c}, errors_{errors} {}

    void run()
    {
        std::set<std::string> seen;
        for (const auto& v : contract_.state_vars)
            if (!seen.insert(v.name).second)
                report(SemanticErrorKind::DuplicateStateVar, v.loc,
                    "state variable '" + v.name + "' declared twice in " + contract_.name);
        seen.clear();
        for (const auto& f : contract_.functions)
        {
            if (!seen.insert(f.name).second)
                report(SemanticErrorKind::DuplicateFunction, f.loc,
                    "function '" + f.name + "' declared twice in " + contract_.name);
            function(f);
        }
        if (contract_.extra_fallbacks > 0)
            report(SemanticErrorKind::DuplicateFallback, contract_.loc,
                contract_.name + " declares more than one fallback");
        if (contract_.fallback)
        {
            params_.clear();
            scopes_.assign(1, {});
            body(contract_.fallback->body);
        }
    }

private:
    void report(SemanticErrorKind kind, SourceLoc loc, std::string msg)
    {
        errors_.push_back({kind, loc, std::move(msg)});
    }

    void function(const FunctionDef& f)
    {
        params_.clear();
        for (const auto& p : f.params)
            if (!params_.insert(p.name).second)
                report(SemanticErrorKind::DuplicateParam, f.loc,
                    "parameter '" + p.name + "' repeated in " + f.name);
        scopes_.assign(1, {});
        body(f.body);
    }

    bool is_local(const std::string& n) const
    {
        for (const auto& s : scopes_)
            if (s.contains(n))
                return true;
        return false;
    }

    void body(const std::vector<Stmt>& stmts)
    {
        for (const auto& s : stmts)
            stmt(s);
    }

    void nested(const std::vector<Stmt>& stmts)
    {
        scopes_.emplace_back();
        body(stmts);
        scopes_.pop_back();
    }

    void stmt(const Stmt& s)
    {
        switch (s.kind)
        {
        case StmtKind::Require:
        case StmtKind::ExprStmt:
            expr(s.expr);
            break;
        case StmtKind::Return:
            if (s.has_expr)
                expr(s.expr);
            break;
        case StmtKind::Revert:
            break;
        case StmtKind::If:
            expr(s.expr);
            nested(s.body);
            nested(s.else_body);
            break;
        case StmtKind::Let:
            expr(s.expr);
            scopes_.back().insert(s.name);
            break;
        case StmtKind::Emit:
            for (const auto& a : s.args)
                expr(a);
            break;
        case StmtKind::Assign:
            lvalue(s.target);
            expr(s.expr);
            break;
        }
    }

    void lvalue(const Expr& e)
    {
        if (e.kind == ExprKind::Name && !is_local(e.name) && params_.contains(e.name))
        {
            report(SemanticErrorKind::AssignToParam, e.loc, "cannot assign to parameter '" + e.name + "'");
            return;
        }
        expr(e);
    }

    void expr(const Expr& e)
    {
        switch (e.kind)
        {
        case ExprKind::Name:
        {
            if (is_local(e.name) || params_.contains(e.name))
                break;
            const auto* v = contract_.find_state_var(e.name);
            if (!v)
                report(SemanticErrorKind::UndeclaredName, e.loc, "undeclared name '" + e.name + "'");
            else if (v->kind == VarKind::Map)
                report(SemanticErrorKind::TypeMismatch, e.loc, "map '" + e.name + "' used without an index");
            break;
        }
        case ExprKind::Index:
        {
            const auto* v = contract_.find_state_var(e.name);
            if (!v)
            {
                if (is_local(e.name) || params_.contains(e.name))
                    report(SemanticErrorKind::TypeMismatch, e.loc, "'" + e.name + "' is not a map");
                else
                    report(SemanticErrorKind::UndeclaredName, e.loc, "undeclared map '" + e.name + "'");
            }
            else if (v->kind != VarKind::Map)
                report(SemanticErrorKind::TypeMismatch, e.loc,
                    "index applied to " + std::string{to_string(v->kind)} + " state variable '" + e.name + "'");
            break;
        }
        default:
            break;
        }
        for (const auto& o : e.operands)
            expr(o);
        for (const auto& a : e.args)
            expr(a);
    }

    const ContractDef& contract_;
    std::vector<SemanticError>& errors_;
    std::set<std::string> params_;
    std::vector<std::set<std::string>> scopes_;
};

}  // namespace

std::vector<SemanticError> validate(const ContractDef& contract)
{
    std::vector<SemanticError> errors;
    Checker{contract, errors}.run();
    return errors;
}

std::vector<SemanticError> validate(const SourceUnit& unit)
{
    std::vector<SemanticError> errors;
    std::set<std::string> names;
    for (const auto& c : unit.contracts)
    {
        if (!names.insert(c.name).second)
            errors.push_back({SemanticErrorKind::DuplicateContract, c.loc,
                "contract '" + c.name + "' declared twice"});
        Checker{c, errors}.run();
    }
    return errors;
}

}  // namespace mtsc::minisol
