// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/mr_engine/engine.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtsc::detector
{
using mr_engine::ViolationRecord;

enum class Category
{
    Reentrancy,
    GaslessSend,
    ExceptionDisorder,
};

inline constexpr Category kAllCategories[] = {
    Category::Reentrancy, Category::GaslessSend, Category::ExceptionDisorder};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view text);

struct Verdict
{
    std::string scenario;
    std::vector<ViolationRecord> violations;
    std::set<Category> categories;
    bool vulnerable = false;
    std::vector<std::string> diagnostics;
};

/// Categories implied by one violation.
std::set<Category> classify(const ViolationRecord& violation);
std::set<Category> classify(const std::vector<ViolationRecord>& violations);

Verdict make_verdict(std::string scenario, mr_engine::RunResult result);

struct Counts
{
    int tp = 0;
    int fp = 0;
    int fn = 0;

    /// TP / (TP + FN); empty when nothing was labelled.
    std::optional<double> tpr() const;
    /// FP / (TP + FP); 0 when nothing was flagged.
    double fdr() const;
    bool fdr_degenerate() const { return tp + fp == 0; }
};

struct MetricsReport
{
    std::map<Category, Counts> per_category;
    Counts total;
};

class UnknownScenario : public std::runtime_error
{
public:
    explicit UnknownScenario(const std::string& id);
};

class LabelError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Labels = std::map<std::string, std::set<Category>>;

Labels parse_labels(std::string_view json_text);
Labels load_labels(const std::filesystem::path& path);

MetricsReport compute_metrics(const std::vector<Verdict>& verdicts, const Labels& labels);

/// "78.95%" or "n/a".
std::string format_percent(std::optional<double> ratio);

enum class Format
{
    Text,
    Json,
};

std::string emit_report(const std::vector<Verdict>& verdicts, const std::optional<MetricsReport>& metrics,
    Format format);

}  // namespace mtsc::detector
