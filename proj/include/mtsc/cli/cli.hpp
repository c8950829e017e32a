// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mtsc/detector/detector.hpp"
#include "mtsc/mr_engine/engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mtsc::cli
{
enum ExitCode : int
{
    kClean = 0,
    kVulnerable = 1,
    kError = 2,
};

struct Config
{
    std::optional<std::filesystem::path> schedule_path;
    mr_engine::EngineConfig engine;
    detector::Format format = detector::Format::Text;
    std::optional<std::filesystem::path> out;
    int jobs = 1;
};

int default_jobs();

/// Loads the schedule (if any) into `config.engine` and validates every
/// setting. Throws std::invalid_argument or vm::ScheduleError.
void finalize(Config& config);

/// Writes the document to `config.out` if set, otherwise to `out`.
void deliver(const Config& config, const std::string& document, std::ostream& out);

int cmd_check(const std::filesystem::path& scenario, const Config& config, std::ostream& out, std::ostream& err);

/// Every `*.scenario.json` directly inside `dir`, by name.
std::vector<std::filesystem::path> list_scenarios(const std::filesystem::path& dir);

/// Runs `run_all` on each scenario with up to `jobs` workers; results keep the input order.
std::vector<detector::Verdict> run_scenarios(const std::vector<std::filesystem::path>& scenarios,
    const mr_engine::EngineConfig& config, int jobs);

int cmd_bench(const std::filesystem::path& dir, const std::optional<std::filesystem::path>& labels,
    const Config& config, std::ostream& out, std::ostream& err);

int cmd_estimate(const std::filesystem::path& scenario, const Config& config, std::ostream& out, std::ostream& err);

/// Full command line, as the `mtsc` binary sees it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtsc::cli
