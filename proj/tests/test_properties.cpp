// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acceptance/checks.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace mtsc::checks
{
namespace
{
void expect_pass(const Result& r)
{
    EXPECT_TRUE(r.pass) << r.detail;
    for (const auto& f : r.failures)
        ADD_FAILURE() << f;
}

class GasLaws : public ::testing::TestWithParam<std::uint64_t>
{};

TEST_P(GasLaws, HoldUnderRandomSchedules)
{
    expect_pass(gas_laws(test::kCorpus, GetParam(), 300));
}

INSTANTIATE_TEST_SUITE_P(Seeds, GasLaws, ::testing::Values(1u, 7u, 99u));

TEST(Properties, GasLimitIndependence)
{
    expect_pass(gas_limit_independence(test::kCorpus, 5, 4));
}

TEST(Properties, EstimatorSoundness)
{
    expect_pass(estimator_soundness(test::kCorpus));
}

TEST(Properties, ContractWithoutCodeInFallbackActsLikeEoa)
{
    expect_pass(cao_matches_eoa(test::kCorpus));
}

TEST(Properties, MechanismLink)
{
    expect_pass(mechanism_link(test::kCorpus, 50));
}

}  // namespace
}  // namespace mtsc::checks
