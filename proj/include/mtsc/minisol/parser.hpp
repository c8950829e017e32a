// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/minisol/ast.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtsc::minisol
{
class ParseError : public std::runtime_error
{
public:
    ParseError(int line, int column, std::string message);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

/// Parses a MiniSol source text. Throws ParseError on the first syntax violation.
SourceUnit parse(std::string_view source, std::string source_name = "<input>");

/// Reads and parses a `.msol` file. Throws std::runtime_error if unreadable.
SourceUnit parse_file(const std::string& path);

/// Renders a unit back to MiniSol. parse(print(u)) == u for every valid unit.
std::string print(const SourceUnit& unit);
std::string print(const ContractDef& contract);

enum class SemanticErrorKind
{
    DuplicateContract,
    DuplicateFunction,
    DuplicateStateVar,
    DuplicateParam,
    DuplicateFallback,
    UndeclaredName,
    TypeMismatch,
    AssignToParam,
};

struct SemanticError
{
    SemanticErrorKind kind;
    SourceLoc loc;
    std::string message;
};

std::string_view to_string(SemanticErrorKind kind);

/// Checks naming and kind invariants. Returns an empty list iff the unit is well formed.
std::vector<SemanticError> validate(const SourceUnit& unit);
std::vector<SemanticError> validate(const ContractDef& contract);

}  // namespace mtsc::minisol
