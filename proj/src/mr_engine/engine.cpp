// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/mr_engine/engine.hpp"

#include "mtsc/minisol/parser.hpp"

#include <algorithm>
#include <set>

namespace mtsc::mr_engine
{
using agents::PayloadArg;

std::string_view to_string(Clause clause)
{
    switch (clause)
    {
    case Clause::Status:
        return "status";
    case Clause::Gas:
        return "gas";
    case Clause::Balance:
        return "balance";
    }
    return "?";
}

void check(const EngineConfig& c)
{
    vm::check(c.schedule);
    if (c.n < 1)
        throw std::invalid_argument("n must be at least 1");
    if (c.inc_count < 1)
        throw std::invalid_argument("increasing count must be at least 1");
    if (!(c.growth > 1.0))
        throw std::invalid_argument("growth factor must exceed 1");
    if (c.car_gas_guard <= c.schedule.stipend)
        throw std::invalid_argument("car_gas_guard must exceed the stipend");
    if (c.cah_iterations < 1)
        throw std::invalid_argument("cah_iterations must be at least 1");
}

u128 resolve_value(const std::string& text, const std::map<std::string, Address>& roles,
    std::optional<Address> actor)
{
    if (text == kActorPlaceholder)
    {
        if (!actor)
            throw ScenarioError("$ACTOR is not available here");
        return actor->value;
    }
    if (text == "true")
        return 1;
    if (text == "false")
        return 0;
    if (const auto it = roles.find(text); it != roles.end())
        return it->second.value;
    try
    {
        return parse_amount(text);
    }
    catch (const std::exception&)
    {
        throw ScenarioError("cannot resolve value '" + text + "'");
    }
}

namespace
{
Address resolve_address(const std::string& text, const std::map<std::string, Address>& roles,
    std::optional<Address> actor)
{
    const auto v = resolve_value(text, roles, actor);
    if (v > std::numeric_limits<std::uint64_t>::max())
        throw ScenarioError("'" + text + "' is not an address");
    return Address{static_cast<std::uint64_t>(v)};
}

vm::Transaction instantiate(const TxTemplate& t, const std::map<std::string, Address>& roles,
    std::optional<Address> actor, Address sender, Gas gas_limit)
{
    vm::Transaction tx;
    tx.actor = sender;
    tx.callee = resolve_address(t.callee, roles, actor);
    tx.function = t.function;
    for (const auto& a : t.args)
        tx.args.push_back(resolve_value(a, roles, actor));
    tx.value = resolve_value(t.value, roles, actor);
    tx.gas_limit = gas_limit;
    return tx;
}
}  // namespace

vm::Transaction Context::target_tx(AgentKind kind, Gas gas_limit) const
{
    if (kind == AgentKind::EOA)
    {
        const auto eoa = actor(AgentKind::EOA);
        return instantiate(target_template, roles, eoa, eoa, gas_limit);
    }
    return agents::interaction_tx(actor(kind), driver, gas_limit);
}

void Context::reset()
{
    state.restore(snapshot);
    snapshot = state.snapshot();
}

vm::Outcome Context::run(AgentKind kind, Gas gas_limit)
{
    reset();
    auto out = vm::execute(state, target_tx(kind, gas_limit), schedule, actor(kind));
    reset();
    return out;
}

Context build_context(const Scenario& scenario, const EngineConfig& config)
{
    Context ctx;
    ctx.schedule = config.schedule;
    ctx.target_template = scenario.target;

    minisol::SourceUnit all;
    for (const auto& src : scenario.sources)
    {
        const auto path = (scenario.base_dir / src).string();
        minisol::SourceUnit unit;
        try
        {
            unit = minisol::parse_file(path);
        }
        catch (const minisol::ParseError& e)
        {
            throw ScenarioError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                                e.message());
        }
        catch (const std::runtime_error& e)
        {
            throw ScenarioError(e.what());
        }
        const auto errors = minisol::validate(unit);
        if (!errors.empty())
        {
            const auto& e = errors.front();
            throw ScenarioError(path + ":" + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) + ": " +
                                e.message);
        }
        for (auto& c : unit.contracts)
            all.contracts.push_back(std::move(c));
    }
    if (!minisol::validate(all).empty())
        throw ScenarioError("contract names must be unique across sources");

    const auto amount = [&](const std::string& role) -> Wei {
        const auto it = scenario.balances.find(role);
        if (it == scenario.balances.end())
            return 0;
        try
        {
            return parse_amount(it->second);
        }
        catch (const std::exception&)
        {
            throw ScenarioError("balances." + role + ": bad amount '" + it->second + "'");
        }
    };

    for (const auto& c : all.contracts)
        ctx.roles[c.name] = vm::deploy(ctx.state, c, amount(c.name));
    for (const auto& [role, _] : scenario.balances)
        if (role != "actor" && !ctx.roles.count(role))
            ctx.roles[role] = ctx.state.create_eoa(amount(role));

    const auto callee = ctx.roles.find(scenario.target.callee);
    if (callee == ctx.roles.end() || !all.find_contract(scenario.target.callee))
        throw ScenarioError("target callee '" + scenario.target.callee + "' is not a deployed contract");
    ctx.target = callee->second;
    if (!all.find_contract(scenario.target.callee)->find_function(*scenario.target.function))
        throw ScenarioError("target function '" + *scenario.target.function + "' is not declared in " +
                            scenario.target.callee);

    agents::AgentSpec spec;
    spec.target = ctx.target;
    spec.function = *scenario.target.function;
    for (const auto& a : scenario.target.args)
        spec.args.push_back(a == kActorPlaceholder ? PayloadArg{0, true}
                                                   : PayloadArg{resolve_value(a, ctx.roles, std::nullopt), false});
    spec.value = resolve_value(scenario.target.value, ctx.roles, std::nullopt);
    spec.car_gas_guard = config.car_gas_guard;
    spec.cah_iterations = config.cah_iterations;
    spec.initial_balance = amount("actor");
    for (const auto kind : agents::kAllKinds)
    {
        spec.kind = kind;
        ctx.actors[kind] = agents::make_agent(ctx.state, spec);
    }
    ctx.driver = ctx.state.create_eoa(0);

    const Gas block = config.schedule.block_gas_limit;
    for (std::size_t i = 0; i < scenario.setup.size(); ++i)
    {
        const auto& t = scenario.setup[i];
        const auto step = [&](std::optional<Address> actor, Address sender, std::string_view who) {
            const auto out = vm::execute(ctx.state, instantiate(t, ctx.roles, actor, sender, block), ctx.schedule);
            if (!out.status.success)
                throw ScenarioError("setup[" + std::to_string(i) + "] failed for " + std::string{who} + ": " +
                                    vm::to_string(out.status));
        };
        if (t.actor == kActorPlaceholder)
        {
            for (const auto kind : agents::kAllKinds)
                step(ctx.actors[kind], ctx.actors[kind], agents::to_string(kind));
        }
        else
        {
            const auto it = ctx.roles.find(t.actor);
            if (it == ctx.roles.end())
                throw ScenarioError("setup[" + std::to_string(i) + "]: unknown actor '" + t.actor + "'");
            step(std::nullopt, it->second, t.actor);
        }
    }
    ctx.snapshot = ctx.state.snapshot();
    return ctx;
}

std::map<AgentKind, gas_oracle::IntrinsicGas> estimate_actors(Context& ctx, const std::vector<AgentKind>& kinds,
    const EngineConfig& config, std::vector<std::string>& diagnostics)
{
    std::map<AgentKind, gas_oracle::IntrinsicGas> out;
    for (const auto kind : kinds)
    {
        ctx.reset();
        try
        {
            out[kind] = gas_oracle::estimate_intrinsic_gas(ctx.state,
                ctx.target_tx(kind, config.schedule.block_gas_limit), ctx.schedule,
                gas_oracle::default_initial_estimator, config.growth);
        }
        catch (const gas_oracle::NeverSucceeds& e)
        {
            diagnostics.push_back(std::string{agents::to_string(kind)} + ": EstimateUnavailable (" +
                                  std::string{vm::to_string(e.reason())} + ")");
        }
    }
    ctx.reset();
    return out;
}

PairPlan build_pairs(const Scenario& scenario, const std::map<AgentKind, gas_oracle::IntrinsicGas>& estimates,
    const EngineConfig& config)
{
    const auto& mrs = config.mrs ? *config.mrs : scenario.mrs;
    const auto& mr1 = config.mr1_actors ? *config.mr1_actors : scenario.mr1_actors;
    const Gas block = config.schedule.block_gas_limit;
    const auto selected = [&](MrId id) { return std::find(mrs.begin(), mrs.end(), id) != mrs.end(); };

    PairPlan plan;
    const auto add = [&](MrId mr, Input s, Input f) {
        TestPair p;
        p.mr = mr;
        p.source = s;
        p.follow_up = f;
        plan.pairs.push_back(p);
    };

    for (const auto mr : {MrId::MR1_1, MrId::MR1_2})
    {
        if (!selected(mr))
            continue;
        for (const auto kind : mr1)
        {
            const auto it = estimates.find(kind);
            if (it == estimates.end())
            {
                plan.diagnostics.push_back(std::string{to_string(mr)} + " skipped for " +
                                           std::string{agents::to_string(kind)} + ": EstimateUnavailable");
                continue;
            }
            const Gas gc = std::max<Gas>(1, it->second.value);
            const auto limits = mr == MrId::MR1_1 ? gas_oracle::allocate_increasing(gc, config.inc_count, block)
                                                  : gas_oracle::allocate_reducing(gc, config.n);
            if (limits.warning)
                plan.diagnostics.push_back(std::string{to_string(mr)} + " for " +
                                           std::string{agents::to_string(kind)} +
                                           ": no increasing limits fit under the block gas limit");
            for (const auto g : limits.limits)
                add(mr, {kind, gc}, {kind, g});
        }
    }
    if (selected(MrId::MR2_1))
        add(MrId::MR2_1, {AgentKind::EOA, block}, {AgentKind::CAH, block});
    if (selected(MrId::MR2_2))
        add(MrId::MR2_2, {AgentKind::EOA, block}, {AgentKind::CAR, block});
    if (selected(MrId::MR2_3))
        add(MrId::MR2_3, {AgentKind::EOA, block}, {AgentKind::CAE, block});
    return plan;
}

TestPair run_pair(Context& ctx, TestPair pair)
{
    ctx.reset();
    pair.source_context = ctx.state.hash();
    pair.source_outcome = ctx.run(pair.source.actor, pair.source.gas_limit);
    pair.follow_up_context = ctx.state.hash();
    pair.follow_up_outcome = ctx.run(pair.follow_up.actor, pair.follow_up.gas_limit);
    pair.follow_up_address = ctx.actor(pair.follow_up.actor);
    return pair;
}

namespace
{
bool fallback_entered(const vm::Outcome& out, Address agent)
{
    return std::any_of(out.trace.begin(), out.trace.end(), [agent](const vm::TraceEvent& e) {
        return e.kind == vm::TraceEvent::Kind::CallEntered && e.callee == agent && e.callee_has_code &&
               e.entry.empty();
    });
}
}  // namespace

std::optional<ViolationRecord> check(const TestPair& pair)
{
    if (!pair.source_outcome || !pair.follow_up_outcome)
        throw std::invalid_argument("pair has not been executed");
    const auto& s = *pair.source_outcome;
    const auto& f = *pair.follow_up_outcome;

    std::optional<Clause> failed;
    switch (pair.mr)
    {
    case MrId::MR1_1:
        if (s.status.success != f.status.success)
            failed = Clause::Status;
        else if (s.gas_consumed != f.gas_consumed)
            failed = Clause::Gas;
        break;
    case MrId::MR1_2:
        if (s.status.success == f.status.success)
            failed = Clause::Status;
        break;
    case MrId::MR2_1:
    case MrId::MR2_2:
        // A follow-up that fails cleanly has rolled everything back; only a
        // follow-up that succeeds can disagree with the source.
        if (!f.status.success)
            break;
        if (!s.status.success)
            failed = Clause::Status;
        else if (s.balance_delta != f.balance_delta)
            failed = Clause::Balance;
        break;
    case MrId::MR2_3:
        // Without the throwing fallback having run there is nothing to compare.
        if (fallback_entered(f, pair.follow_up_address) && f.status.success)
            failed = Clause::Status;
        break;
    }
    if (!failed)
        return std::nullopt;
    ViolationRecord v;
    v.mr = pair.mr;
    v.pair = pair;
    v.clause = *failed;
    return v;
}

RunResult run_all(const Scenario& scenario, const EngineConfig& config)
{
    check(config);
    RunResult result;
    const auto& mrs = config.mrs ? *config.mrs : scenario.mrs;
    if (mrs.empty())
        return result;

    auto ctx = build_context(scenario, config);
    const bool wants_mr1 = std::any_of(mrs.begin(), mrs.end(), [](MrId m) {
        return m == MrId::MR1_1 || m == MrId::MR1_2;
    });
    if (wants_mr1)
        result.estimates = estimate_actors(
            ctx, config.mr1_actors ? *config.mr1_actors : scenario.mr1_actors, config, result.diagnostics);

    auto plan = build_pairs(scenario, result.estimates, config);
    result.diagnostics.insert(result.diagnostics.end(), plan.diagnostics.begin(), plan.diagnostics.end());

    // A sweep is one (relation, actor) series of follow-ups.
    std::set<std::pair<MrId, AgentKind>> closed;
    std::map<std::pair<MrId, AgentKind>, std::size_t> threshold_for;
    for (auto& pair : plan.pairs)
    {
        const auto sweep = std::make_pair(pair.mr, pair.follow_up.actor);
        const bool scanning = threshold_for.count(sweep) > 0;
        if (closed.count(sweep) && !scanning)
            continue;
        try
        {
            auto done = run_pair(ctx, pair);
            if (scanning)
            {
                if (done.follow_up_outcome->status.success)
                    result.violations[threshold_for[sweep]].gas_threshold = done.follow_up.gas_limit;
                continue;
            }
            result.executed.push_back(done);
            if (auto v = check(done))
            {
                if (pair.mr == MrId::MR1_1 || pair.mr == MrId::MR1_2)
                    closed.insert(sweep);
                if (pair.mr == MrId::MR1_2)
                {
                    v->gas_threshold = done.follow_up.gas_limit;
                    threshold_for[sweep] = result.violations.size();
                }
                result.violations.push_back(std::move(*v));
            }
        }
        catch (const std::exception& e)
        {
            result.diagnostics.push_back(std::string{to_string(pair.mr)} + " " +
                                         std::string{agents::to_string(pair.follow_up.actor)} + "@" +
                                         std::to_string(pair.follow_up.gas_limit) + ": " + e.what());
        }
    }
    return result;
}

}  // namespace mtsc::mr_engine
