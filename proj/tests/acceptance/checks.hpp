// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mtsc::checks
{
struct Result
{
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void fail(std::string why)
    {
        pass = false;
        if (failures.size() < 10)
            failures.push_back(std::move(why));
    }
};

Result corpus_detection(const std::filesystem::path& corpus, int n);
Result metrics_arithmetic();
Result gas_laws(const std::filesystem::path& corpus, std::uint64_t seed, int combinations);
Result gas_limit_independence(const std::filesystem::path& corpus, std::uint64_t seed, int samples);
Result estimator_soundness(const std::filesystem::path& corpus);
Result cao_matches_eoa(const std::filesystem::path& corpus);
Result mechanism_link(const std::filesystem::path& corpus, int n);

}  // namespace mtsc::checks
