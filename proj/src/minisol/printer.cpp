// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/minisol/parser.hpp"

#include <sstream>

namespace mtsc::minisol
{
std::string_view to_string(VarKind kind)
{
    switch (kind)
    {
    case VarKind::Uint:
        return "uint";
    case VarKind::Bool:
        return "bool";
    case VarKind::Addr:
        return "addr";
    case VarKind::Map:
        return "map";
    }
    return "?";
}

std::string_view to_string(BinaryOp op)
{
    switch (op)
    {
    case BinaryOp::Add:
        return "+";
    case BinaryOp::Sub:
        return "-";
    case BinaryOp::Mul:
        return "*";
    case BinaryOp::Eq:
        return "==";
    case BinaryOp::Ne:
        return "!=";
    case BinaryOp::Lt:
        return "<";
    case BinaryOp::Le:
        return "<=";
    case BinaryOp::Gt:
        return ">";
    case BinaryOp::Ge:
        return ">=";
    case BinaryOp::And:
        return "&&";
    case BinaryOp::Or:
        return "||";
    }
    return "?";
}

const FunctionDef* ContractDef::find_function(std::string_view fn) const
{
    for (const auto& f : functions)
        if (f.name == fn)
            return &f;
    return nullptr;
}

const StateVar* ContractDef::find_state_var(std::string_view var) const
{
    for (const auto& v : state_vars)
        if (v.name == var)
            return &v;
    return nullptr;
}

const ContractDef* SourceUnit::find_contract(std::string_view contract) const
{
    for (const auto& c : contracts)
        if (c.name == contract)
            return &c;
    return nullptr;
}

namespace
{
bool is_atomic(const Expr& e)
{
    switch (e.kind)
    {
    case ExprKind::Literal:
    case ExprKind::Name:
    case ExprKind::Index:
    case ExprKind::MsgSender:
    case ExprKind::MsgValue:
    case ExprKind::This:
    case ExprKind::GasLeft:
    case ExprKind::BalanceOf:
        return true;
    default:
        return false;
    }
}

class Printer
{
public:
    std::string str() const { return out_.str(); }

    void contract(const ContractDef& c)
    {
        out_ << "contract " << c.name << " {\n";
        for (const auto& v : c.state_vars)
            out_ << "    " << to_string(v.kind) << ' ' << v.name << ";\n";
        for (const auto& f : c.functions)
        {
            out_ << "    fn " << f.name << '(';
            for (std::size_t i = 0; i < f.params.size(); ++i)
                out_ << (i ? ", " : "") << f.params[i].name << ": " << to_string(f.params[i].kind);
            out_ << ')' << (f.payable ? " payable" : "");
            block(f.body, 1);
            out_ << '\n';
        }
        if (c.fallback)
        {
            out_ << "    fallback" << (c.fallback->payable ? " payable" : "");
            block(c.fallback->body, 1);
            out_ << '\n';
        }
        out_ << "}\n";
    }

private:
    void indent(int level)
    {
        for (int i = 0; i < level; ++i)
            out_ << "    ";
    }

    void block(const std::vector<Stmt>& body, int level)
    {
        out_ << " {\n";
        for (const auto& s : body)
            stmt(s, level + 1);
        indent(level);
        out_ << '}';
    }

    void stmt(const Stmt& s, int level)
    {
        indent(level);
        switch (s.kind)
        {
        case StmtKind::Require:
            out_ << "require(" << expr(s.expr) << ");\n";
            break;
        case StmtKind::Revert:
            out_ << "revert();\n";
            break;
        case StmtKind::If:
            out_ << "if (" << expr(s.expr) << ')';
            block(s.body, level);
            if (!s.else_body.empty())
            {
                out_ << " else";
                block(s.else_body, level);
            }
            out_ << '\n';
            break;
        case StmtKind::Let:
            out_ << "let " << s.name << " = " << expr(s.expr) << ";\n";
            break;
        case StmtKind::Assign:
            out_ << expr(s.target)
                 << (s.assign_op == AssignOp::Set         ? " = "
                        : s.assign_op == AssignOp::AddAssign ? " += "
                                                             : " -= ")
                 << expr(s.expr) << ";\n";
            break;
        case StmtKind::Return:
            out_ << "return" << (s.has_expr ? " " + expr(s.expr) : "") << ";\n";
            break;
        case StmtKind::Emit:
            out_ << "emit " << s.name << args(s.args) << ";\n";
            break;
        case StmtKind::ExprStmt:
            out_ << expr(s.expr) << ";\n";
            break;
        }
    }

    std::string args(const std::vector<Expr>& list)
    {
        std::string r = "(";
        for (std::size_t i = 0; i < list.size(); ++i)
            r += (i ? ", " : "") + expr(list[i]);
        return r + ")";
    }

    std::string operand(const Expr& e) { return is_atomic(e) ? expr(e) : "(" + expr(e) + ")"; }

    std::string expr(const Expr& e)
    {
        switch (e.kind)
        {
        case ExprKind::Literal:
            return e.is_bool ? (e.value ? "true" : "false") : mtsc::to_string(e.value);
        case ExprKind::Name:
            return e.name;
        case ExprKind::Index:
            return e.name + "[" + expr(e.operands[0]) + "]";
        case ExprKind::Binary:
            return operand(e.operands[0]) + " " + std::string{to_string(e.op)} + " " +
                   operand(e.operands[1]);
        case ExprKind::Not:
            return "!" + operand(e.operands[0]);
        case ExprKind::MsgSender:
            return "msg.sender";
        case ExprKind::MsgValue:
            return "msg.value";
        case ExprKind::This:
            return "this";
        case ExprKind::GasLeft:
            return "gasleft()";
        case ExprKind::BalanceOf:
            return "balance(" + expr(e.operands[0]) + ")";
        case ExprKind::LowCall:
        case ExprKind::DirectCall:
        {
            std::string r = e.kind == ExprKind::LowCall ? "lowcall " : "dcall ";
            r += operand(e.target());
            if (e.has_function)
                r += "." + e.name + args(e.args);
            if (e.has_value)
                r += " value " + operand(e.value_operand());
            if (e.has_gas)
                r += " gas " + operand(e.gas_operand());
            return r;
        }
        case ExprKind::Send:
        case ExprKind::Transfer:
            return std::string{e.kind == ExprKind::Send ? "send " : "transfer "} +
                   operand(e.target()) + " value " + operand(e.value_operand());
        }
        return "?";
    }

    std::ostringstream out_;
};

}  // namespace

std::string print(const ContractDef& contract)
{
    Printer p;
    p.contract(contract);
    return p.str();
}

std::string print(const SourceUnit& unit)
{
    std::string out;
    for (std::size_t i = 0; i < unit.contracts.size(); ++i)
        out += (i ? "\n" : "") + print(unit.contracts[i]);
    return out;
}

}  // namespace mtsc::minisol
