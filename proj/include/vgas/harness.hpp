// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "abi.hpp"
#include "evm.hpp"

namespace vgas {

class DeployError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

/// Account that deploys the contract and, unless the sender is randomized,
/// sends every fuzzed transaction (so owner-guarded functions are reachable).
inline const Address kDeployer = word_from_be(from_hex("d3ab7e5c1b2c4b0f9e7a6d5c4b3a29180716f5e4"));

struct HarnessOptions
{
    Gas gas_limit = kDefaultGasLimit;
    Word caller_balance = Word{1} << 128;
    Word contract_balance = Word{1} << 128;
    bool randomize_sender = false;
    bool call_stub_succeeds = true;
};

struct ContractInstance
{
    std::shared_ptr<const Program> runtime;
    WorldState world;      ///< state right after construction
    Gas deploy_gas = 0;    ///< gas the creation transaction used
};

struct Runner
{
    FunctionSpec spec;
    Selector selector{};
};

inline std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Reads a .bin / .bin-runtime file (ASCII hex, optional 0x, optional newline).
inline Bytes read_code_file(const std::filesystem::path& path)
{
    try
    {
        return from_hex(read_text_file(path));
    }
    catch (const HexError& e)
    {
        throw InputError(path.string() + ": " + e.what());
    }
}

inline bool is_runtime_artifact(const std::filesystem::path& path)
{
    return path.extension() == ".bin-runtime";
}

inline ExecutionEnv env_from_gene(const Gene& gene, const GeneMap& map, const HarnessOptions& options)
{
    auto word_of = [&](std::string_view key) {
        const auto& e = map.entries.at(map.index_of(key));
        return word_from_be(ByteView{gene.bytes}.subspan(e.start, e.size()));
    };
    ExecutionEnv env;
    env.coinbase = word_of("env|coinbase");
    env.difficulty = word_of("env|difficulty");
    env.block_number = word_of("env|block_number");
    env.timestamp = word_of("env|timestamp");
    env.sender = options.randomize_sender ? word_of("env|sender") : kDeployer;
    env.origin = word_of("env|origin");
    env.gas_limit = options.gas_limit;
    return env;
}

/// Runs the init code (constructor arguments appended) and keeps the returned
/// runtime code plus post-construction storage.
inline ContractInstance deploy(ByteView init_code, const FunctionSpec* constructor, const Gene* gene,
                               const GeneMap* map, const HarnessOptions& options)
{
    Bytes code{init_code.begin(), init_code.end()};
    if (constructor && !constructor->inputs.empty())
    {
        if (!gene || !map)
            throw DeployError("constructor takes arguments but no genome was supplied");
        const auto args = encode_args(*constructor, *gene, *map);
        code.insert(code.end(), args.begin(), args.end());
    }

    WorldState world;
    world.caller_balance = options.caller_balance;
    world.contract_balance = options.contract_balance;

    ExecutionEnv env;
    if (gene && map)
        env = env_from_gene(*gene, *map, HarnessOptions{options.gas_limit, options.caller_balance,
                                                         options.contract_balance, false, options.call_stub_succeeds});
    env.sender = kDeployer;
    env.origin = kDeployer;
    env.gas_limit = options.gas_limit;

    ExecutionOptions exec;
    exec.is_create = true;
    exec.call_stub_succeeds = options.call_stub_succeeds;
    const Program init{std::move(code)};
    auto result = execute(init, {}, env, world, exec);
    if (result.status != ExecutionStatus::success)
        throw DeployError(std::string{"contract construction failed: "} + to_string(result.status));

    const Gas deposit = kCodeDepositGas * static_cast<Gas>(result.return_data.size());
    if (result.gas_used_raw + deposit > options.gas_limit)
        throw DeployError("contract construction failed: OUT_OF_GAS (code deposit)");

    ContractInstance instance;
    instance.deploy_gas = result.gas_used + deposit;
    instance.runtime = std::make_shared<const Program>(std::move(result.return_data));
    instance.world = std::move(world);
    return instance;
}

/// Wraps already-deployed runtime code (a .bin-runtime artifact).
inline ContractInstance from_runtime(ByteView runtime_code, const HarnessOptions& options)
{
    ContractInstance instance;
    instance.runtime = std::make_shared<const Program>(Bytes{runtime_code.begin(), runtime_code.end()});
    instance.world.caller_balance = options.caller_balance;
    instance.world.contract_balance = options.contract_balance;
    return instance;
}

/// Finds the target by bare name, or by full signature when names collide.
inline Runner make_runner(std::span<const FunctionSpec> specs, std::string_view name_or_signature)
{
    const FunctionSpec* match = nullptr;
    std::size_t by_name = 0;
    for (const auto& s : specs)
    {
        if (s.is_constructor)
            continue;
        if (s.signature() == name_or_signature)
            return Runner{s, selector(s)};
        if (s.name == name_or_signature)
        {
            match = &s;
            ++by_name;
        }
    }
    if (by_name == 0)
        throw AbiError("function '" + std::string{name_or_signature} + "' is not in the ABI");
    if (by_name > 1)
        throw AbiError("function name '" + std::string{name_or_signature}
                       + "' is overloaded; pass the full signature");
    return Runner{*match, selector(*match)};
}

inline const FunctionSpec* find_constructor(std::span<const FunctionSpec> specs)
{
    for (const auto& s : specs)
        if (s.is_constructor)
            return &s;
    return nullptr;
}

/// Executes one transaction calling the runner's function with arguments and
/// environment read from the gene, against `world` (committed on success).
inline ExecutionResult run_function(const ContractInstance& instance, const Runner& runner, const Gene& gene,
                                    const GeneMap& map, WorldState& world, const HarnessOptions& options,
                                    ExecutionOptions exec = {})
{
    const auto calldata = encode_args(runner.spec, gene, map);
    const auto env = env_from_gene(gene, map, options);
    exec.call_stub_succeeds = options.call_stub_succeeds;
    return execute(*instance.runtime, calldata, env, world, exec);
}

/// Same, on a private copy of the post-construction world.
inline ExecutionResult run_function(const ContractInstance& instance, const Runner& runner, const Gene& gene,
                                    const GeneMap& map, const HarnessOptions& options, ExecutionOptions exec = {})
{
    WorldState world = instance.world;
    return run_function(instance, runner, gene, map, world, options, std::move(exec));
}

}  // namespace vgas
