// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.

#include <csignal>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include <vgas/fuzzer.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVulnerable = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;
constexpr int kExitInternal = 70;

std::atomic<bool> g_stop{false};

extern "C" void on_interrupt(int) { g_stop = true; }

class UsageError : public vgas::Error {
public:
    using vgas::Error::Error;
};

struct CodeArgs
{
    std::string bin;
    bool init = false;
    std::uint64_t rng_seed = 0;
};

struct FuzzArgs
{
    std::string bin;
    std::string abi;
    std::string function;
    std::string strategy = "vgas";
    std::optional<double> time;
    std::optional<std::uint64_t> iterations;
    std::uint64_t rng_seed = 0;
    std::string out;
    std::string csv;
    bool persist_storage = false;
    bool randomize_sender = false;
    std::size_t max_array_len = vgas::kDefaultMaxArrayLen;
    double temperature = 500.0;
    bool no_probabilistic = false;
    bool stop_on_oog = false;
    double random_accept = 0.5;
    vgas::Gas gas_limit = vgas::kDefaultGasLimit;
    unsigned jobs = 1;
    std::string clock = "auto";
};

void add_campaign_options(CLI::App& cmd, FuzzArgs& a)
{
    cmd.add_option("--bin", a.bin, "contract code (.bin deploys, .bin-runtime is used as is)")
        ->required()
        ->envname("VGAS_BIN");
    cmd.add_option("--abi", a.abi, "ABI JSON (default: <stem>.abi next to --bin)")->envname("VGAS_ABI");
    cmd.add_option("--function", a.function, "target function name or full signature")
        ->required()
        ->envname("VGAS_FUNCTION");
    cmd.add_option("--time", a.time, "time budget in seconds")->check(CLI::NonNegativeNumber)->envname("VGAS_TIME");
    cmd.add_option("--iterations", a.iterations, "iteration budget")->envname("VGAS_ITERATIONS");
    cmd.add_option("--rng-seed", a.rng_seed, "RNG seed")->capture_default_str()->envname("VGAS_RNG_SEED");
    cmd.add_flag("--persist-storage", a.persist_storage, "keep storage across executions")
        ->envname("VGAS_PERSIST_STORAGE");
    cmd.add_flag("--randomize-sender", a.randomize_sender, "take msg.sender from the genome")
        ->envname("VGAS_RANDOMIZE_SENDER");
    cmd.add_option("--max-array-len", a.max_array_len, "array mutator cap")
        ->capture_default_str()
        ->envname("VGAS_MAX_ARRAY_LEN");
    cmd.add_option("--temperature", a.temperature, "acceptance temperature in gas units")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber)
        ->envname("VGAS_TEMPERATURE");
    cmd.add_flag("--no-probabilistic", a.no_probabilistic, "keep only strictly improving seeds (vgas)")
        ->envname("VGAS_NO_PROBABILISTIC");
    cmd.add_flag("--stop-on-oog", a.stop_on_oog, "end the campaign at the first OUT_OF_GAS execution")
        ->envname("VGAS_STOP_ON_OOG");
    cmd.add_option("--random-accept", a.random_accept, "acceptance probability of the random strategy")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0))
        ->envname("VGAS_RANDOM_ACCEPT");
    cmd.add_option("--gas-limit", a.gas_limit, "transaction gas limit")
        ->capture_default_str()
        ->check(CLI::PositiveNumber)
        ->envname("VGAS_GAS_LIMIT");
    cmd.add_option("--jobs", a.jobs, "parallel executions per mutant batch")
        ->capture_default_str()
        ->check(CLI::Range(1u, 256u))
        ->envname("VGAS_JOBS");
    cmd.add_option("--clock", a.clock, "time base for the series: auto, wall or virtual")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "wall", "virtual"}))
        ->envname("VGAS_CLOCK");
}

vgas::CampaignConfig make_config(const FuzzArgs& a)
{
    if (!a.time && !a.iterations)
        throw UsageError("give --time and/or --iterations");
    vgas::CampaignConfig c;
    c.time_budget_s = a.time;
    c.iteration_budget = a.iterations;
    c.rng_seed = a.rng_seed;
    c.acceptance.temperature = a.temperature;
    c.acceptance.probabilistic_acceptance = !a.no_probabilistic;
    c.acceptance.random_accept = a.random_accept;
    c.max_array_len = a.max_array_len;
    c.persist_storage = a.persist_storage;
    c.stop_on_out_of_gas = a.stop_on_oog;
    c.harness.gas_limit = a.gas_limit;
    c.harness.randomize_sender = a.randomize_sender;
    c.jobs = a.jobs;
    c.clock = a.clock == "wall" ? vgas::ClockKind::wall
              : a.clock == "virtual" ? vgas::ClockKind::virtual_steps
                                     : vgas::ClockKind::automatic;
    c.stop = &g_stop;
    return c;
}

std::filesystem::path abi_path(const FuzzArgs& a)
{
    return a.abi.empty() ? vgas::default_abi_path(a.bin) : std::filesystem::path{a.abi};
}

void print_summary(const vgas::CampaignReport& r)
{
    std::cerr << r.strategy << ": best gas " << r.best_gas << " (" << r.best_status << ") after " << r.iterations
              << " iterations, time to best " << vgas::format_double(r.time_to_best) << " s";
    if (r.flags.out_of_gas_observed)
        std::cerr << ", OUT_OF_GAS observed";
    if (r.flags.hit_array_cap)
        std::cerr << ", best input at the array cap";
    std::cerr << '\n';
}

int cmd_fuzz(const FuzzArgs& a)
{
    const auto strategy = vgas::parse_strategy(a.strategy);
    if (!strategy)
        throw UsageError("unknown strategy '" + a.strategy + "'");
    auto config = make_config(a);
    config.strategy = *strategy;
    const auto target = vgas::load_target(a.bin, abi_path(a), a.function, a.rng_seed, config.harness);
    const auto report = vgas::run_campaign(target, config);
    if (a.out.empty())
        std::cout << vgas::report_text(report);
    else
        vgas::write_report(report, a.out);
    if (!a.csv.empty())
        vgas::write_series_csv(report, a.csv);
    print_summary(report);
    return report.flags.out_of_gas_observed ? kExitVulnerable : kExitOk;
}

int cmd_compare(const FuzzArgs& a, const std::string& out_dir)
{
    const auto base = make_config(a);
    const auto target = vgas::load_target(a.bin, abi_path(a), a.function, a.rng_seed, base.harness);
    std::filesystem::create_directories(out_dir);

    std::vector<vgas::CampaignReport> reports;
    for (const auto s : vgas::kAllStrategies)
    {
        auto config = base;
        config.strategy = s;
        reports.push_back(vgas::run_campaign(target, config));
        const std::filesystem::path stem = std::filesystem::path{out_dir} / vgas::to_string(s);
        vgas::write_report(reports.back(), stem.string() + ".json");
        vgas::write_series_csv(reports.back(), stem.string() + ".csv");
        print_summary(reports.back());
    }
    const auto summary = vgas::comparison_summary(reports);
    vgas::write_text(std::filesystem::path{out_dir} / "summary.json", summary.dump(2) + "\n");

    std::printf("%-10s %14s %14s %16s\n", "strategy", "best_gas", "time_to_best", "gas_rate");
    bool vulnerable = false;
    for (const auto& r : reports)
    {
        std::printf("%-10s %14lld %14.6f %16.1f\n", r.strategy.c_str(), static_cast<long long>(r.best_gas),
                    r.time_to_best, r.gas_rate);
        vulnerable = vulnerable || r.flags.out_of_gas_observed;
    }
    return vulnerable ? kExitVulnerable : kExitOk;
}

/// Code the static tools look at: the file as is for .bin-runtime or --init,
/// otherwise the runtime the constructor returns.
vgas::Bytes analysed_code(const CodeArgs& a)
{
    auto code = vgas::read_code_file(a.bin);
    if (a.init || vgas::is_runtime_artifact(a.bin))
        return code;
    const auto abi = vgas::default_abi_path(a.bin);
    std::vector<vgas::FunctionSpec> specs;
    if (std::filesystem::exists(abi))
        specs = vgas::parse_abi(vgas::read_text_file(abi));
    const auto* ctor = vgas::find_constructor(specs);
    vgas::HarnessOptions options;
    if (ctor && !ctor->inputs.empty())
    {
        vgas::Rng rng{a.rng_seed};
        const std::array<vgas::FunctionSpec, 1> ctor_specs{*ctor};
        const auto [gene, map] = vgas::random_gene(ctor_specs, rng);
        return vgas::deploy(code, ctor, &gene, &map, options).runtime->code;
    }
    return vgas::deploy(code, ctor, nullptr, nullptr, options).runtime->code;
}

void add_code_options(CLI::App& cmd, CodeArgs& a)
{
    cmd.add_option("--bin", a.bin, "contract code")->required()->envname("VGAS_BIN");
    cmd.add_flag("--init", a.init, "analyse the file as is instead of the deployed runtime");
    cmd.add_option("--rng-seed", a.rng_seed, "seed for constructor arguments")->envname("VGAS_RNG_SEED");
}

void write_or_print(const std::string& path, const std::string& text)
{
    if (path.empty())
        std::cout << text;
    else
        vgas::write_text(path, text);
}

int cmd_trace(const FuzzArgs& a, const std::string& calldata_hex)
{
    vgas::HarnessOptions options;
    options.gas_limit = a.gas_limit;
    options.randomize_sender = a.randomize_sender;
    const auto target = vgas::load_target(a.bin, abi_path(a), a.function, a.rng_seed, options);

    vgas::Rng rng{a.rng_seed};
    const std::array<vgas::FunctionSpec, 1> specs{target.runner.spec};
    const auto [gene, map] = vgas::random_gene(specs, rng);

    vgas::ExecutionOptions exec;
    exec.call_stub_succeeds = options.call_stub_succeeds;
    exec.trace = [](const vgas::TraceStep& s) { std::cout << vgas::trace_line(s) << '\n'; };

    vgas::ExecutionResult result;
    if (calldata_hex.empty())
        result = vgas::run_function(target.instance, target.runner, gene, map, options, exec);
    else
    {
        auto world = target.instance.world;
        result = vgas::execute(*target.instance.runtime, vgas::from_hex(calldata_hex),
                               vgas::env_from_gene(gene, map, options), world, exec);
    }
    const nlohmann::json summary{{"output", vgas::to_hex(result.return_data, false)},
                                 {"gasUsed", "0x" + [&] {
                                      std::ostringstream os;
                                      os << std::hex << result.gas_used;
                                      return os.str();
                                  }()},
                                 {"status", vgas::to_string(result.status)}};
    std::cout << summary.dump() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    std::signal(SIGINT, on_interrupt);

    CLI::App app{"vgas: gas-guided fuzzing for EVM smart contracts"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file mirroring the command-line flags");

    FuzzArgs fuzz;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "run one campaign and write its report");
    add_campaign_options(*fuzz_cmd, fuzz);
    fuzz_cmd->add_option("--strategy", fuzz.strategy, "vgas, random, slowfuzz or perffuzz")
        ->capture_default_str()
        ->check(CLI::IsMember({"vgas", "random", "slowfuzz", "perffuzz"}))
        ->envname("VGAS_STRATEGY");
    fuzz_cmd->add_option("--out", fuzz.out, "report JSON path (default: stdout)")->envname("VGAS_OUT");
    fuzz_cmd->add_option("--csv", fuzz.csv, "best-gas series CSV path")->envname("VGAS_CSV");

    FuzzArgs compare;
    std::string out_dir = ".";
    auto* compare_cmd = app.add_subcommand("compare", "run all four strategies with one budget and seed");
    add_campaign_options(*compare_cmd, compare);
    compare_cmd->add_option("--out-dir", out_dir, "directory for reports, CSVs and summary.json")
        ->capture_default_str()
        ->envname("VGAS_OUT_DIR");

    CodeArgs disasm;
    auto* disasm_cmd = app.add_subcommand("disasm", "print the instruction stream");
    add_code_options(*disasm_cmd, disasm);

    CodeArgs cfg;
    std::string cfg_format = "dot";
    std::string cfg_out;
    auto* cfg_cmd = app.add_subcommand("cfg", "write the weighted control-flow graph");
    add_code_options(*cfg_cmd, cfg);
    cfg_cmd->add_option("--format", cfg_format, "dot or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"dot", "json"}));
    cfg_cmd->add_option("--out", cfg_out, "output path (default: stdout)");

    CodeArgs estimate;
    auto* estimate_cmd = app.add_subcommand("estimate", "print the static gas estimate");
    add_code_options(*estimate_cmd, estimate);

    FuzzArgs trace;
    std::string calldata;
    auto* trace_cmd = app.add_subcommand("trace", "run one execution and print a JSON line per step");
    trace_cmd->add_option("--bin", trace.bin, "contract code")->required()->envname("VGAS_BIN");
    trace_cmd->add_option("--abi", trace.abi, "ABI JSON")->envname("VGAS_ABI");
    trace_cmd->add_option("--function", trace.function, "target function")->required()->envname("VGAS_FUNCTION");
    trace_cmd->add_option("--rng-seed", trace.rng_seed, "seed for the input genome")->envname("VGAS_RNG_SEED");
    trace_cmd->add_option("--calldata", calldata, "raw calldata hex instead of a generated input");
    trace_cmd->add_option("--gas-limit", trace.gas_limit, "transaction gas limit")->envname("VGAS_GAS_LIMIT");
    trace_cmd->add_flag("--randomize-sender", trace.randomize_sender, "take msg.sender from the genome");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (*fuzz_cmd)
            return cmd_fuzz(fuzz);
        if (*compare_cmd)
            return cmd_compare(compare, out_dir);
        if (*disasm_cmd)
        {
            for (const auto& ins : vgas::disassemble(analysed_code(disasm)))
                std::cout << vgas::format_instruction(ins) << '\n';
            return kExitOk;
        }
        if (*cfg_cmd)
        {
            const auto g = vgas::build_wcfg(vgas::ByteView{analysed_code(cfg)});
            write_or_print(cfg_out, cfg_format == "dot" ? vgas::to_dot(g) : vgas::to_json(g).dump(2) + "\n");
            return kExitOk;
        }
        if (*estimate_cmd)
        {
            const auto code = analysed_code(estimate);
            std::cout << vgas::static_estimate(vgas::build_wcfg(vgas::ByteView{code})).to_string() << '\n';
            return kExitOk;
        }
        if (*trace_cmd)
            return cmd_trace(trace, calldata);
    }
    catch (const UsageError& e)
    {
        std::cerr << "vgas: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const vgas::HexError& e)
    {
        std::cerr << "vgas: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const vgas::InputError& e)
    {
        std::cerr << "vgas: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const vgas::DeployError& e)
    {
        std::cerr << "vgas: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const vgas::AbiError& e)
    {
        std::cerr << "vgas: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const std::exception& e)
    {
        std::cerr << "vgas: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
