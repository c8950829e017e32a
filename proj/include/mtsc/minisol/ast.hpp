// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtsc::minisol
{
/// Position in a source file, 1-based.
///
/// Locations are diagnostics only: they never take part in AST equality, so a
/// pretty-printed and re-parsed unit compares equal to the original.
struct SourceLoc
{
    int line = 0;
    int column = 0;

    bool operator==(const SourceLoc&) const noexcept { return true; }
};

enum class VarKind
{
    Uint,
    Bool,
    Addr,
    Map,
};

enum class BinaryOp
{
    Add,
    Sub,
    Mul,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
};

enum class ExprKind
{
    Literal,     // `value`; `is_bool` marks true/false
    Name,        // local, parameter or scalar state variable called `name`
    Index,       // `name[operands[0]]`, map state variable only
    Binary,      // operands[0] `op` operands[1]
    Not,         // !operands[0]
    MsgSender,
    MsgValue,
    This,
    GasLeft,
    BalanceOf,   // balance(operands[0])
    LowCall,     // lowcall target[.name(args)] [value v] [gas g]
    DirectCall,  // dcall target.name(args) [value v]
    Send,        // send target value v
    Transfer,    // transfer target value v
};

/// Expression node. Call forms keep their target in `operands[0]`; the optional
/// `value` and `gas` operands follow in that order when the flags are set.
struct Expr
{
    ExprKind kind = ExprKind::Literal;
    u128 value = 0;
    bool is_bool = false;
    std::string name;
    BinaryOp op = BinaryOp::Add;
    std::vector<Expr> operands;
    std::vector<Expr> args;
    bool has_function = false;
    bool has_value = false;
    bool has_gas = false;
    SourceLoc loc;

    const Expr& target() const { return operands.at(0); }
    const Expr& value_operand() const { return operands.at(1); }
    const Expr& gas_operand() const { return operands.at(has_value ? 2 : 1); }

    bool operator==(const Expr&) const = default;
};

enum class StmtKind
{
    Require,   // require(expr)
    Revert,
    If,        // if (expr) body [else else_body]
    Let,       // let name = expr
    Assign,    // target assign_op expr
    Return,    // return [expr]; has_expr marks the optional value
    Emit,      // emit name(args)
    ExprStmt,
};

enum class AssignOp
{
    Set,
    AddAssign,
    SubAssign,
};

struct Stmt
{
    StmtKind kind = StmtKind::ExprStmt;
    Expr expr;
    bool has_expr = false;
    std::string name;
    Expr target;  // Assign lvalue: Name or Index
    AssignOp assign_op = AssignOp::Set;
    std::vector<Expr> args;
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
    SourceLoc loc;

    bool operator==(const Stmt&) const = default;
};

struct StateVar
{
    std::string name;
    VarKind kind = VarKind::Uint;
    SourceLoc loc;

    bool operator==(const StateVar&) const = default;
};

struct Param
{
    std::string name;
    VarKind kind = VarKind::Uint;

    bool operator==(const Param&) const = default;
};

struct FunctionDef
{
    std::string name;
    std::vector<Param> params;
    bool payable = false;
    std::vector<Stmt> body;
    SourceLoc loc;

    bool operator==(const FunctionDef&) const = default;
};

struct FallbackDef
{
    bool payable = false;
    std::vector<Stmt> body;
    SourceLoc loc;

    bool operator==(const FallbackDef&) const = default;
};

struct ContractDef
{
    std::string name;
    std::vector<StateVar> state_vars;
    std::vector<FunctionDef> functions;
    std::optional<FallbackDef> fallback;
    /// Any fallback past the first. Kept so validation can report it.
    int extra_fallbacks = 0;
    SourceLoc loc;

    const FunctionDef* find_function(std::string_view fn) const;
    const StateVar* find_state_var(std::string_view var) const;

    bool operator==(const ContractDef&) const = default;
};

struct SourceUnit
{
    std::vector<ContractDef> contracts;
    std::string source_name;

    const ContractDef* find_contract(std::string_view contract) const;

    bool operator==(const SourceUnit& other) const { return contracts == other.contracts; }
};

std::string_view to_string(VarKind kind);
std::string_view to_string(BinaryOp op);

}  // namespace mtsc::minisol
