// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/cli/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace mtsc::cli
{
namespace fs = std::filesystem;
using agents::AgentKind;
using mr_engine::MrId;

int default_jobs()
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void finalize(Config& config)
{
    if (config.schedule_path)
        config.engine.schedule = vm::load_schedule(config.schedule_path->string());
    vm::check(config.engine.schedule);
    mr_engine::check(config.engine);
    if (config.jobs < 1)
        throw std::invalid_argument("--jobs must be at least 1");
}

void deliver(const Config& config, const std::string& document, std::ostream& out)
{
    if (!config.out)
    {
        out << document;
        return;
    }
    std::ofstream file{*config.out, std::ios::binary};
    if (!file)
        throw std::runtime_error("cannot write " + config.out->string());
    file << document;
}

int cmd_check(const fs::path& scenario, const Config& config, std::ostream& out, std::ostream& err)
{
    try
    {
        const auto s = mr_engine::load_scenario(scenario);
        const auto verdict = detector::make_verdict(s.id, mr_engine::run_all(s, config.engine));
        deliver(config, detector::emit_report({verdict}, std::nullopt, config.format), out);
        return verdict.vulnerable ? kVulnerable : kClean;
    }
    catch (const std::exception& e)
    {
        err << "mtsc check: " << e.what() << '\n';
        return kError;
    }
}

std::vector<fs::path> list_scenarios(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir.string());
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
    {
        const auto name = entry.path().filename().string();
        constexpr std::string_view suffix = ".scenario.json";
        if (entry.is_regular_file() && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<detector::Verdict> run_scenarios(const std::vector<fs::path>& scenarios,
    const mr_engine::EngineConfig& config, int jobs)
{
    std::vector<detector::Verdict> verdicts(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (auto i = next++; i < scenarios.size(); i = next++)
        {
            try
            {
                const auto s = mr_engine::load_scenario(scenarios[i]);
                verdicts[i] = detector::make_verdict(s.id, mr_engine::run_all(s, config));
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto workers = std::min<std::size_t>(std::max(1, jobs), scenarios.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < workers; ++i)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return verdicts;
}

int cmd_bench(const fs::path& dir, const std::optional<fs::path>& labels_path, const Config& config,
    std::ostream& out, std::ostream& err)
{
    try
    {
        const auto labels = detector::load_labels(labels_path ? *labels_path : dir / "labels.json");
        const auto verdicts = run_scenarios(list_scenarios(dir), config.engine, config.jobs);
        const auto metrics = detector::compute_metrics(verdicts, labels);
        deliver(config, detector::emit_report(verdicts, metrics, config.format), out);
        return kClean;
    }
    catch (const std::exception& e)
    {
        err << "mtsc bench: " << e.what() << '\n';
        return kError;
    }
}

int cmd_estimate(const fs::path& scenario, const Config& config, std::ostream& out, std::ostream& err)
{
    try
    {
        const auto s = mr_engine::load_scenario(scenario);
        auto ctx = mr_engine::build_context(s, config.engine);
        const auto& kinds = config.engine.mr1_actors ? *config.engine.mr1_actors : s.mr1_actors;

        nlohmann::ordered_json doc;
        doc["schema"] = "estimate-v1";
        doc["scenario"] = s.id;
        doc["estimates"] = nlohmann::ordered_json::array();
        std::ostringstream text;
        bool all = true;
        for (const auto kind : kinds)
        {
            const auto name = std::string{agents::to_string(kind)};
            nlohmann::ordered_json row;
            row["actor"] = name;
            ctx.reset();
            try
            {
                const auto gc = gas_oracle::estimate_intrinsic_gas(ctx.state,
                    ctx.target_tx(kind, config.engine.schedule.block_gas_limit), ctx.schedule,
                    gas_oracle::default_initial_estimator, config.engine.growth);
                row["value"] = gc.value;
                row["trials"] = gc.trials;
                row["converged"] = gc.converged;
                text << s.id << ' ' << name << " value=" << gc.value << " trials=" << gc.trials
                     << " converged=" << (gc.converged ? "yes" : "no") << '\n';
            }
            catch (const gas_oracle::NeverSucceeds& e)
            {
                all = false;
                const auto reason = std::string{vm::to_string(e.reason())};
                row["error"] = "NeverSucceeds";
                row["reason"] = reason;
                text << s.id << ' ' << name << " NeverSucceeds (" << reason << ")\n";
            }
            doc["estimates"].push_back(std::move(row));
        }
        ctx.reset();
        deliver(config, config.format == detector::Format::Json ? doc.dump(2) + "\n" : text.str(), out);
        return all ? kClean : kVulnerable;
    }
    catch (const std::exception& e)
    {
        err << "mtsc estimate: " << e.what() << '\n';
        return kError;
    }
}

namespace
{
struct Flags
{
    std::string schedule;
    int n = 1000;
    int inc_count = 5;
    double growth = 1.5;
    Gas car_gas_guard = 50'000;
    int cah_iterations = 1;
    std::vector<std::string> mrs;
    std::vector<std::string> mr1_actors;
    std::string format = "text";
    std::string out;
    int jobs = default_jobs();
};

void add_flags(CLI::App& app, Flags& f)
{
    app.add_option("--schedule", f.schedule, "Gas schedule file (key = value lines)")->check(CLI::ExistingFile);
    app.add_option("--n", f.n, "Subdivisions of the reducing gas sweep")->capture_default_str();
    app.add_option("--inc-count", f.inc_count, "Number of increasing gas limits")->capture_default_str();
    app.add_option("--growth", f.growth, "Estimator growth factor")->capture_default_str();
    app.add_option("--car-gas-guard", f.car_gas_guard, "Gas kept in reserve by the recursive agent")
        ->capture_default_str();
    app.add_option("--cah-iterations", f.cah_iterations, "Storage writes in the heavy agent's fallback")
        ->capture_default_str();
    app.add_option("--mr", f.mrs, "Relations to check (e.g. MR1.1,MR2.2)")->delimiter(',');
    app.add_option("--mr1-actors", f.mr1_actors, "Actor kinds for gas relations (e.g. EOA,CAR)")->delimiter(',');
    app.add_option("--format", f.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", f.out, "Write the report here instead of stdout");
    app.add_option("--jobs", f.jobs, "Scenario worker threads")->capture_default_str();
}

Config to_config(const Flags& f)
{
    Config c;
    if (!f.schedule.empty())
        c.schedule_path = f.schedule;
    c.engine.n = f.n;
    c.engine.inc_count = f.inc_count;
    c.engine.growth = f.growth;
    c.engine.car_gas_guard = f.car_gas_guard;
    c.engine.cah_iterations = f.cah_iterations;
    if (!f.mrs.empty())
    {
        std::vector<MrId> mrs;
        for (const auto& m : f.mrs)
        {
            const auto id = mr_engine::parse_mr(m);
            if (!id)
                throw std::invalid_argument("unknown relation '" + m + "'");
            mrs.push_back(*id);
        }
        c.engine.mrs = mrs;
    }
    if (!f.mr1_actors.empty())
    {
        std::vector<AgentKind> kinds;
        for (const auto& k : f.mr1_actors)
        {
            const auto kind = agents::parse_agent_kind(k);
            if (!kind)
                throw std::invalid_argument("unknown actor kind '" + k + "'");
            kinds.push_back(*kind);
        }
        c.engine.mr1_actors = kinds;
    }
    c.format = f.format == "json" ? detector::Format::Json : detector::Format::Text;
    if (!f.out.empty())
        c.out = f.out;
    c.jobs = f.jobs;
    finalize(c);
    return c;
}
}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Metamorphic testing of smart contracts", "mtsc"};
    app.require_subcommand(1);

    Flags flags;
    std::string check_path;
    auto* check = app.add_subcommand("check", "Check one scenario; exit 1 if it is vulnerable");
    check->add_option("scenario", check_path, "Scenario file")->required();
    add_flags(*check, flags);

    std::string bench_dir;
    std::string labels;
    auto* bench = app.add_subcommand("bench", "Check every scenario in a directory against labels");
    bench->add_option("dir", bench_dir, "Directory of *.scenario.json files")->required();
    bench->add_option("--labels", labels, "Labels file (default DIR/labels.json)");
    add_flags(*bench, flags);

    std::string estimate_path;
    auto* estimate = app.add_subcommand("estimate", "Print the intrinsic gas of a scenario's target per actor kind");
    estimate->add_option("scenario", estimate_path, "Scenario file")->required();
    add_flags(*estimate, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        return kError;
    }

    Config config;
    try
    {
        config = to_config(flags);
    }
    catch (const std::exception& e)
    {
        err << "mtsc: " << e.what() << '\n';
        return kError;
    }

    if (check->parsed())
        return cmd_check(check_path, config, out, err);
    if (bench->parsed())
        return cmd_bench(bench_dir, labels.empty() ? std::nullopt : std::optional<fs::path>{labels}, config, out, err);
    return cmd_estimate(estimate_path, config, out, err);
}

}  // namespace mtsc::cli
