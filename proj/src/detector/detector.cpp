// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/detector/detector.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mtsc::detector
{
using mtsc::to_string;
using agents::AgentKind;
using mr_engine::MrId;
using nlohmann::ordered_json;
using vm::CallForm;
using vm::TraceEvent;

std::string_view to_string(Category c)
{
    switch (c)
    {
    case Category::Reentrancy:
        return "Reentrancy";
    case Category::GaslessSend:
        return "GaslessSend";
    case Category::ExceptionDisorder:
        return "ExceptionDisorder";
    }
    return "?";
}

std::optional<Category> parse_category(std::string_view text)
{
    for (const auto c : kAllCategories)
        if (to_string(c) == text)
            return c;
    return std::nullopt;
}

std::set<Category> classify(const ViolationRecord& v)
{
    switch (v.mr)
    {
    case MrId::MR2_2:
        return {Category::Reentrancy};
    case MrId::MR1_1:
        if (v.pair.follow_up.actor == AgentKind::CAR)
            return {Category::Reentrancy};
        return {};
    case MrId::MR1_2:
    case MrId::MR2_3:
        return {Category::ExceptionDisorder};
    case MrId::MR2_1:
        break;
    }

    std::set<Category> out;
    if (!v.pair.follow_up_outcome)
        return out;
    for (const auto& e : v.pair.follow_up_outcome->trace)
    {
        if (e.kind != TraceEvent::Kind::CallEntered || e.callee != v.pair.follow_up_address || e.value == 0)
            continue;
        if (e.form == CallForm::Send || e.form == CallForm::Transfer)
            out.insert(Category::GaslessSend);
        else if (e.form == CallForm::LowCall)
            out.insert(Category::ExceptionDisorder);
    }
    return out;
}

std::set<Category> classify(const std::vector<ViolationRecord>& violations)
{
    std::set<Category> out;
    for (const auto& v : violations)
    {
        const auto c = classify(v);
        out.insert(c.begin(), c.end());
    }
    return out;
}

Verdict make_verdict(std::string scenario, mr_engine::RunResult result)
{
    Verdict v;
    v.scenario = std::move(scenario);
    v.categories = classify(result.violations);
    v.vulnerable = !v.categories.empty();
    v.violations = std::move(result.violations);
    v.diagnostics = std::move(result.diagnostics);
    return v;
}

std::optional<double> Counts::tpr() const
{
    if (tp + fn == 0)
        return std::nullopt;
    return static_cast<double>(tp) / (tp + fn);
}

double Counts::fdr() const
{
    return fdr_degenerate() ? 0.0 : static_cast<double>(fp) / (tp + fp);
}

UnknownScenario::UnknownScenario(const std::string& id)
  : std::runtime_error("no label for scenario '" + id + "'")
{}

Labels parse_labels(std::string_view json_text)
{
    ordered_json doc;
    try
    {
        doc = ordered_json::parse(json_text);
    }
    catch (const ordered_json::parse_error& e)
    {
        throw LabelError(std::string{"malformed labels JSON: "} + e.what());
    }
    if (!doc.is_object())
        throw LabelError("labels must be a JSON object");
    Labels labels;
    for (const auto& [id, cats] : doc.items())
    {
        if (!cats.is_array())
            throw LabelError("labels." + id + ": expected an array");
        auto& set = labels[id];
        for (const auto& c : cats)
        {
            const auto parsed = c.is_string() ? parse_category(c.get<std::string>()) : std::nullopt;
            if (!parsed)
                throw LabelError("labels." + id + ": unknown category " + c.dump());
            set.insert(*parsed);
        }
    }
    return labels;
}

Labels load_labels(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw LabelError("cannot read labels " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_labels(buf.str());
}

MetricsReport compute_metrics(const std::vector<Verdict>& verdicts, const Labels& labels)
{
    MetricsReport m;
    for (const auto c : kAllCategories)
        m.per_category[c] = {};
    for (const auto& v : verdicts)
    {
        const auto it = labels.find(v.scenario);
        if (it == labels.end())
            throw UnknownScenario(v.scenario);
        for (const auto c : kAllCategories)
        {
            const bool flagged = v.categories.count(c) > 0;
            const bool labelled = it->second.count(c) > 0;
            auto& counts = m.per_category[c];
            counts.tp += flagged && labelled;
            counts.fp += flagged && !labelled;
            counts.fn += !flagged && labelled;
        }
    }
    for (const auto& [_, c] : m.per_category)
    {
        m.total.tp += c.tp;
        m.total.fp += c.fp;
        m.total.fn += c.fn;
    }
    return m;
}

std::string format_percent(std::optional<double> ratio)
{
    if (!ratio)
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", *ratio * 100.0);
    return buf;
}

namespace
{
constexpr std::size_t kExcerptLines = 12;

std::vector<std::string> excerpt(const vm::Outcome& out)
{
    std::vector<std::string> lines;
    std::size_t calls = 0;
    for (const auto& e : out.trace)
    {
        if (e.kind == TraceEvent::Kind::OpExecuted)
            continue;
        if (lines.size() < kExcerptLines)
            lines.push_back(vm::to_string(e));
        ++calls;
    }
    if (calls > lines.size())
        lines.push_back("... " + std::to_string(calls - lines.size()) + " more");
    return lines;
}

ordered_json side_json(const mr_engine::Input& in, const vm::Outcome& out)
{
    ordered_json j;
    j["actor"] = std::string{agents::to_string(in.actor)};
    j["gas_limit"] = in.gas_limit;
    j["status"] = vm::to_string(out.status);
    j["gas"] = out.gas_consumed;
    j["balance_delta"] = to_string(out.balance_delta);
    return j;
}

ordered_json counts_json(const Counts& c)
{
    ordered_json j;
    j["tp"] = c.tp;
    j["fp"] = c.fp;
    j["fn"] = c.fn;
    j["tpr"] = format_percent(c.tpr());
    j["fdr"] = format_percent(c.fdr());
    if (c.fdr_degenerate())
        j["note"] = "nothing flagged; FDR taken as 0";
    return j;
}

std::string categories_text(const std::set<Category>& cats)
{
    std::string out;
    for (const auto c : cats)
        out += (out.empty() ? "" : ", ") + std::string{to_string(c)};
    return out;
}

std::string side_text(const mr_engine::Input& in, const vm::Outcome& out)
{
    return std::string{agents::to_string(in.actor)} + " gas_limit=" + std::to_string(in.gas_limit) + " " +
           vm::to_string(out.status) + " gas=" + std::to_string(out.gas_consumed) +
           " mu=" + to_string(out.balance_delta);
}

std::string pad(std::string s, std::size_t width, bool left = true)
{
    if (s.size() >= width)
        return s;
    const std::string fill(width - s.size(), ' ');
    return left ? s + fill : fill + s;
}

std::string json_report(const std::vector<Verdict>& verdicts, const std::optional<MetricsReport>& metrics)
{
    ordered_json doc;
    doc["schema"] = "report-v1";
    doc["verdicts"] = ordered_json::array();
    for (const auto& v : verdicts)
    {
        ordered_json jv;
        jv["scenario"] = v.scenario;
        jv["vulnerable"] = v.vulnerable;
        jv["categories"] = ordered_json::array();
        for (const auto c : v.categories)
            jv["categories"].push_back(std::string{to_string(c)});
        jv["violations"] = ordered_json::array();
        for (const auto& r : v.violations)
        {
            ordered_json jr;
            jr["mr"] = std::string{mr_engine::to_string(r.mr)};
            jr["clause"] = std::string{mr_engine::to_string(r.clause)};
            jr["source"] = side_json(r.pair.source, *r.pair.source_outcome);
            jr["follow_up"] = side_json(r.pair.follow_up, *r.pair.follow_up_outcome);
            jr["gas_threshold"] = r.gas_threshold ? ordered_json(*r.gas_threshold) : ordered_json(nullptr);
            jr["trace_excerpt"] = excerpt(*r.pair.follow_up_outcome);
            jv["violations"].push_back(std::move(jr));
        }
        jv["diagnostics"] = v.diagnostics;
        doc["verdicts"].push_back(std::move(jv));
    }
    if (metrics)
    {
        ordered_json jm;
        for (const auto& [c, counts] : metrics->per_category)
            jm[std::string{to_string(c)}] = counts_json(counts);
        jm["total"] = counts_json(metrics->total);
        doc["metrics"] = std::move(jm);
    }
    return doc.dump(2) + "\n";
}

std::string text_report(const std::vector<Verdict>& verdicts, const std::optional<MetricsReport>& metrics)
{
    std::ostringstream out;
    for (const auto& v : verdicts)
    {
        out << v.scenario << ": ";
        if (v.vulnerable)
            out << "vulnerable [" << categories_text(v.categories) << "]";
        else
            out << (v.violations.empty() ? "clean" : "no category");
        out << '\n';
        for (const auto& r : v.violations)
        {
            out << "  " << mr_engine::to_string(r.mr) << " violated (" << mr_engine::to_string(r.clause) << ")";
            const auto cats = classify(r);
            if (!cats.empty())
                out << " -> " << categories_text(cats);
            out << '\n';
            out << "    source     " << side_text(r.pair.source, *r.pair.source_outcome) << '\n';
            out << "    follow-up  " << side_text(r.pair.follow_up, *r.pair.follow_up_outcome) << '\n';
            if (r.gas_threshold)
                out << "    gas threshold " << *r.gas_threshold << '\n';
        }
        for (const auto& d : v.diagnostics)
            out << "  note: " << d << '\n';
    }
    if (metrics)
    {
        out << '\n'
            << pad("category", 20) << pad("TP", 5, false) << pad("FP", 5, false) << pad("FN", 5, false)
            << pad("TPR", 10, false) << pad("FDR", 10, false) << '\n';
        const auto row = [&](const std::string& name, const Counts& c) {
            out << pad(name, 20) << pad(std::to_string(c.tp), 5, false) << pad(std::to_string(c.fp), 5, false)
                << pad(std::to_string(c.fn), 5, false) << pad(format_percent(c.tpr()), 10, false)
                << pad(format_percent(c.fdr()), 10, false) << (c.fdr_degenerate() ? "  (nothing flagged)" : "")
                << '\n';
        };
        for (const auto& [c, counts] : metrics->per_category)
            row(std::string{to_string(c)}, counts);
        row("total", metrics->total);
    }
    return out.str();
}
}  // namespace

std::string emit_report(const std::vector<Verdict>& verdicts, const std::optional<MetricsReport>& metrics,
    Format format)
{
    return format == Format::Json ? json_report(verdicts, metrics) : text_report(verdicts, metrics);
}

}  // namespace mtsc::detector
