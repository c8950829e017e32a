// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/minisol/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mtsc::minisol
{
ParseError::ParseError(int line, int column, std::string message)
  : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
    line_{line},
    column_{column},
    message_{std::move(message)}
{}

namespace
{
enum class Tok
{
    Ident,
    Int,
    Punct,
    End,
};

struct Token
{
    Tok kind = Tok::End;
    std::string text;
    SourceLoc loc;
};

// `value`, `gas`, `sender`, `balance`, `gasleft` and the ether units stay plain
// identifiers; the parser gives them meaning only in the positions where the
// grammar expects them.
bool is_keyword(std::string_view word)
{
    static constexpr std::string_view keywords[] = {"contract", "fn", "fallback", "payable",
        "uint", "bool", "addr", "map", "require", "revert", "if", "else", "let", "return", "emit",
        "lowcall", "dcall", "send", "transfer", "msg", "this", "true", "false"};
    for (const auto k : keywords)
        if (k == word)
            return true;
    return false;
}

class Lexer
{
public:
    explicit Lexer(std::string_view src) : src_{src} {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;)
        {
            skip_space();
            Token t;
            t.loc = {line_, col_};
            if (pos_ >= src_.size())
            {
                t.kind = Tok::End;
                out.push_back(std::move(t));
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            {
                t.kind = Tok::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    t.text.push_back(advance());
            }
            else if (std::isdigit(static_cast<unsigned char>(c)))
            {
                t.kind = Tok::Int;
                while (pos_ < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    t.text.push_back(advance());
            }
            else
            {
                t.kind = Tok::Punct;
                static constexpr std::string_view two[] = {"+=", "-=", "==", "!=", "<=", ">=", "&&", "||"};
                bool matched = false;
                for (const auto p : two)
                {
                    if (src_.substr(pos_, 2) == p)
                    {
                        t.text = std::string{p};
                        advance();
                        advance();
                        matched = true;
                        break;
                    }
                }
                if (!matched)
                {
                    static constexpr std::string_view one = "{}()[];,.:=<>!+-*";
                    if (one.find(c) == std::string_view::npos)
                        throw ParseError(line_, col_, std::string{"unexpected character '"} + c + "'");
                    t.text = std::string(1, advance());
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance()
    {
        const char c = src_[pos_++];
        if (c == '\n')
        {
            ++line_;
            col_ = 1;
        }
        else
            ++col_;
        return c;
    }

    void skip_space()
    {
        while (pos_ < src_.size())
        {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)))
                advance();
            else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')
            {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            }
            else
                return;
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser
{
public:
    explicit Parser(std::vector<Token> toks) : toks_{std::move(toks)} {}

    SourceUnit unit(std::string source_name)
    {
        SourceUnit u;
        u.source_name = std::move(source_name);
        if (at_end())
            fail(peek(), "expected 'contract'");
        while (!at_end())
            u.contracts.push_back(contract());
        return u;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        const auto i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }

    bool at_end() const { return peek().kind == Tok::End; }

    bool is_punct(std::string_view p, std::size_t ahead = 0) const
    {
        const auto& t = peek(ahead);
        return t.kind == Tok::Punct && t.text == p;
    }

    bool is_word(std::string_view w, std::size_t ahead = 0) const
    {
        const auto& t = peek(ahead);
        return t.kind == Tok::Ident && t.text == w;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& msg)
    {
        const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.loc.line, t.loc.column, msg + ", found " + found);
    }

    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect_punct(std::string_view p)
    {
        if (!is_punct(p))
            fail(peek(), "expected '" + std::string{p} + "'");
        take();
    }

    void expect_word(std::string_view w)
    {
        if (!is_word(w))
            fail(peek(), "expected '" + std::string{w} + "'");
        take();
    }

    bool accept_punct(std::string_view p)
    {
        if (!is_punct(p))
            return false;
        take();
        return true;
    }

    bool accept_word(std::string_view w)
    {
        if (!is_word(w))
            return false;
        take();
        return true;
    }

    std::string ident(const char* what)
    {
        const auto& t = peek();
        if (t.kind != Tok::Ident || is_keyword(t.text))
            fail(t, std::string{"expected "} + what);
        return take().text;
    }

    ContractDef contract()
    {
        ContractDef c;
        c.loc = peek().loc;
        expect_word("contract");
        c.name = ident("contract name");
        expect_punct("{");
        while (!is_punct("}"))
        {
            if (at_end())
                fail(peek(), "expected '}'");
            if (is_word("uint") || is_word("bool") || is_word("addr") || is_word("map"))
            {
                StateVar v;
                v.loc = peek().loc;
                v.kind = var_kind(take().text);
                v.name = ident("state variable name");
                expect_punct(";");
                c.state_vars.push_back(std::move(v));
            }
            else if (is_word("fn"))
                c.functions.push_back(function());
            else if (is_word("fallback"))
            {
                FallbackDef f;
                f.loc = take().loc;
                f.payable = accept_word("payable");
                f.body = block();
                if (c.fallback)
                    ++c.extra_fallbacks;
                else
                    c.fallback = std::move(f);
            }
            else
                fail(peek(), "expected state variable, 'fn' or 'fallback'");
        }
        take();
        return c;
    }

    static VarKind var_kind(std::string_view w)
    {
        if (w == "uint")
            return VarKind::Uint;
        if (w == "bool")
            return VarKind::Bool;
        if (w == "addr")
            return VarKind::Addr;
        return VarKind::Map;
    }

    FunctionDef function()
    {
        FunctionDef f;
        f.loc = take().loc;
        f.name = ident("function name");
        expect_punct("(");
        if (!is_punct(")"))
        {
            do
            {
                Param p;
                p.name = ident("parameter name");
                expect_punct(":");
                if (!(is_word("uint") || is_word("bool") || is_word("addr")))
                    fail(peek(), "expected parameter type 'uint', 'bool' or 'addr'");
                p.kind = var_kind(take().text);
                f.params.push_back(std::move(p));
            } while (accept_punct(","));
        }
        expect_punct(")");
        f.payable = accept_word("payable");
        f.body = block();
        return f;
    }

    std::vector<Stmt> block()
    {
        expect_punct("{");
        std::vector<Stmt> body;
        while (!is_punct("}"))
        {
            if (at_end())
                fail(peek(), "expected '}'");
            body.push_back(statement());
        }
        take();
        return body;
    }

    Stmt statement()
    {
        Stmt s;
        s.loc = peek().loc;
        if (accept_word("require"))
        {
            s.kind = StmtKind::Require;
            expect_punct("(");
            s.expr = expr();
            expect_punct(")");
            expect_punct(";");
        }
        else if (accept_word("revert"))
        {
            s.kind = StmtKind::Revert;
            expect_punct("(");
            expect_punct(")");
            expect_punct(";");
        }
        else if (accept_word("if"))
        {
            s.kind = StmtKind::If;
            expect_punct("(");
            s.expr = expr();
            expect_punct(")");
            s.body = block();
            if (accept_word("else"))
            {
                if (is_word("if"))
                    s.else_body.push_back(statement());
                else
                    s.else_body = block();
            }
        }
        else if (accept_word("let"))
        {
            s.kind = StmtKind::Let;
            s.name = ident("local name");
            expect_punct("=");
            s.expr = expr();
            expect_punct(";");
        }
        else if (accept_word("return"))
        {
            s.kind = StmtKind::Return;
            if (!is_punct(";"))
            {
                s.expr = expr();
                s.has_expr = true;
            }
            expect_punct(";");
        }
        else if (accept_word("emit"))
        {
            s.kind = StmtKind::Emit;
            s.name = ident("event name");
            s.args = call_args();
            expect_punct(";");
        }
        else
        {
            auto e = expr();
            AssignOp op = AssignOp::Set;
            bool assign = true;
            if (is_punct("="))
                op = AssignOp::Set;
            else if (is_punct("+="))
                op = AssignOp::AddAssign;
            else if (is_punct("-="))
                op = AssignOp::SubAssign;
            else
                assign = false;
            if (assign)
            {
                if (e.kind != ExprKind::Name && e.kind != ExprKind::Index)
                    fail(peek(), "left-hand side is not assignable");
                take();
                s.kind = StmtKind::Assign;
                s.target = std::move(e);
                s.assign_op = op;
                s.expr = expr();
            }
            else
            {
                s.kind = StmtKind::ExprStmt;
                s.expr = std::move(e);
            }
            expect_punct(";");
        }
        return s;
    }

    std::vector<Expr> call_args()
    {
        expect_punct("(");
        std::vector<Expr> args;
        if (!is_punct(")"))
        {
            do
                args.push_back(expr());
            while (accept_punct(","));
        }
        expect_punct(")");
        return args;
    }

    Expr expr() { return logical_or(); }

    Expr binary(BinaryOp op, Expr lhs, Expr rhs, SourceLoc loc)
    {
        Expr e;
        e.kind = ExprKind::Binary;
        e.op = op;
        e.loc = loc;
        e.operands.push_back(std::move(lhs));
        e.operands.push_back(std::move(rhs));
        return e;
    }

    Expr logical_or()
    {
        auto lhs = logical_and();
        while (is_punct("||"))
        {
            const auto loc = take().loc;
            lhs = binary(BinaryOp::Or, std::move(lhs), logical_and(), loc);
        }
        return lhs;
    }

    Expr logical_and()
    {
        auto lhs = comparison();
        while (is_punct("&&"))
        {
            const auto loc = take().loc;
            lhs = binary(BinaryOp::And, std::move(lhs), comparison(), loc);
        }
        return lhs;
    }

    Expr comparison()
    {
        auto lhs = additive();
        static constexpr std::pair<std::string_view, BinaryOp> ops[] = {{"==", BinaryOp::Eq},
            {"!=", BinaryOp::Ne}, {"<=", BinaryOp::Le}, {">=", BinaryOp::Ge}, {"<", BinaryOp::Lt},
            {">", BinaryOp::Gt}};
        for (const auto& [text, op] : ops)
        {
            if (is_punct(text))
            {
                const auto loc = take().loc;
                return binary(op, std::move(lhs), additive(), loc);
            }
        }
        return lhs;
    }

    Expr additive()
    {
        auto lhs = multiplicative();
        while (is_punct("+") || is_punct("-"))
        {
            const auto t = take();
            lhs = binary(t.text == "+" ? BinaryOp::Add : BinaryOp::Sub, std::move(lhs),
                multiplicative(), t.loc);
        }
        return lhs;
    }

    Expr multiplicative()
    {
        auto lhs = unary();
        while (is_punct("*"))
        {
            const auto loc = take().loc;
            lhs = binary(BinaryOp::Mul, std::move(lhs), unary(), loc);
        }
        return lhs;
    }

    Expr unary()
    {
        if (is_punct("!"))
        {
            Expr e;
            e.kind = ExprKind::Not;
            e.loc = take().loc;
            e.operands.push_back(unary());
            return e;
        }
        return primary();
    }

    Expr primary()
    {
        const auto& t = peek();
        Expr e;
        e.loc = t.loc;
        if (t.kind == Tok::Int)
        {
            e.kind = ExprKind::Literal;
            try
            {
                e.value = parse_u128(take().text);
                if (is_word("ether") || is_word("gwei") || is_word("wei"))
                {
                    const Wei scale = is_word("ether") ? kEther : is_word("gwei") ? kGwei : 1;
                    take();
                    if (!checked_mul(e.value, scale, e.value))
                        throw std::out_of_range("literal overflow");
                }
            }
            catch (const std::out_of_range&)
            {
                throw ParseError(e.loc.line, e.loc.column, "integer literal exceeds 128 bits");
            }
            return e;
        }
        if (is_word("true") || is_word("false"))
        {
            e.kind = ExprKind::Literal;
            e.is_bool = true;
            e.value = take().text == "true" ? 1 : 0;
            return e;
        }
        if (accept_punct("("))
        {
            e = expr();
            expect_punct(")");
            return e;
        }
        if (accept_word("msg"))
        {
            expect_punct(".");
            if (accept_word("sender"))
                e.kind = ExprKind::MsgSender;
            else if (accept_word("value"))
                e.kind = ExprKind::MsgValue;
            else
                fail(peek(), "expected 'sender' or 'value' after 'msg.'");
            return e;
        }
        if (accept_word("this"))
        {
            e.kind = ExprKind::This;
            return e;
        }
        if (is_word("gasleft") && is_punct("(", 1))
        {
            take();
            take();
            expect_punct(")");
            e.kind = ExprKind::GasLeft;
            return e;
        }
        if (is_word("balance") && is_punct("(", 1))
        {
            take();
            take();
            e.kind = ExprKind::BalanceOf;
            e.operands.push_back(expr());
            expect_punct(")");
            return e;
        }
        if (accept_word("lowcall"))
        {
            e.kind = ExprKind::LowCall;
            e.operands.push_back(primary());
            if (is_punct(".") && peek(1).kind == Tok::Ident && is_punct("(", 2))
            {
                take();
                e.has_function = true;
                e.name = take().text;
                e.args = call_args();
            }
            if (accept_word("value"))
            {
                e.has_value = true;
                e.operands.push_back(additive());
            }
            if (accept_word("gas"))
            {
                e.has_gas = true;
                e.operands.push_back(additive());
            }
            return e;
        }
        if (accept_word("dcall"))
        {
            e.kind = ExprKind::DirectCall;
            e.operands.push_back(primary());
            expect_punct(".");
            e.has_function = true;
            e.name = ident("function name");
            e.args = call_args();
            if (accept_word("value"))
            {
                e.has_value = true;
                e.operands.push_back(additive());
            }
            return e;
        }
        if (is_word("send") || is_word("transfer"))
        {
            e.kind = take().text == "send" ? ExprKind::Send : ExprKind::Transfer;
            e.operands.push_back(primary());
            expect_word("value");
            e.has_value = true;
            e.operands.push_back(additive());
            return e;
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text))
        {
            e.name = take().text;
            if (accept_punct("["))
            {
                e.kind = ExprKind::Index;
                e.operands.push_back(expr());
                expect_punct("]");
            }
            else
                e.kind = ExprKind::Name;
            return e;
        }
        fail(t, "expected expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

SourceUnit parse(std::string_view source, std::string source_name)
{
    Parser p{Lexer{source}.run()};
    return p.unit(std::move(source_name));
}

SourceUnit parse_file(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

}  // namespace mtsc::minisol
