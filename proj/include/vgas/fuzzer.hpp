// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abi.hpp"
#include "evm.hpp"
#include "harness.hpp"
#include "report.hpp"
#include "wcfg.hpp"

namespace vgas {

enum class Strategy { vgas, random, slowfuzz, perffuzz };

inline constexpr std::array<Strategy, 4> kAllStrategies = {Strategy::vgas, Strategy::random, Strategy::slowfuzz,
                                                          Strategy::perffuzz};

inline const char* to_string(Strategy s) noexcept
{
    switch (s)
    {
    case Strategy::vgas: return "vgas";
    case Strategy::random: return "random";
    case Strategy::slowfuzz: return "slowfuzz";
    case Strategy::perffuzz: return "perffuzz";
    }
    return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view s)
{
    for (const auto k : kAllStrategies)
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Mutation

enum class Mutator { bit_flip, byte_flip, arith, interesting, array_resize, env_regen };

inline constexpr std::array<Mutator, 6> kAllMutators = {Mutator::bit_flip,    Mutator::byte_flip,
                                                       Mutator::arith,       Mutator::interesting,
                                                       Mutator::array_resize, Mutator::env_regen};

inline const char* to_string(Mutator m) noexcept
{
    switch (m)
    {
    case Mutator::bit_flip: return "bit_flip";
    case Mutator::byte_flip: return "byte_flip";
    case Mutator::arith: return "arith";
    case Mutator::interesting: return "interesting";
    case Mutator::array_resize: return "array_resize";
    case Mutator::env_regen: return "env_regen";
    }
    return "?";
}

inline constexpr int kArithMax = 35;

struct MutationResult
{
    Gene gene;
    GeneMap map;
    Mutator applied = Mutator::bit_flip;
};

namespace detail {

inline bool is_env(const GeneEntry& e) { return e.key.starts_with("env|"); }

inline std::size_t entry_of_byte(const GeneMap& map, std::size_t byte)
{
    const auto it = std::upper_bound(map.entries.begin(), map.entries.end(), byte,
                                     [](std::size_t b, const GeneEntry& e) { return b < e.start; });
    return static_cast<std::size_t>(std::distance(map.entries.begin(), it)) - 1;
}

inline void clamp_bool(Gene& gene, const GeneMap& map, std::size_t byte)
{
    if (map.entries[entry_of_byte(map, byte)].type.kind == ScalarKind::boolean)
        gene.bytes[byte] = gene.bytes[byte] != 0 ? 1 : 0;
}

/// Entries matching `pred`; argument entries are preferred, the environment is
/// used only when no argument qualifies.
template <typename Pred>
std::vector<std::size_t> candidates(const GeneMap& map, Pred pred)
{
    std::vector<std::size_t> args, env;
    for (std::size_t i = 0; i < map.entries.size(); ++i)
        if (pred(map.entries[i]))
            (is_env(map.entries[i]) ? env : args).push_back(i);
    return args.empty() ? env : args;
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng)
{
    return v[std::uniform_int_distribution<std::size_t>{0, v.size() - 1}(rng)];
}

/// Adds (or subtracts) `delta` to the big-endian integer in `bytes`, wrapping.
inline void add_be(std::span<std::uint8_t> bytes, std::uint32_t delta, bool subtract)
{
    int carry = static_cast<int>(delta);
    for (auto i = bytes.size(); i-- > 0 && carry != 0;)
    {
        const int v = subtract ? bytes[i] - (carry & 0xff) : bytes[i] + (carry & 0xff);
        carry >>= 8;
        if (v < 0)
        {
            bytes[i] = static_cast<std::uint8_t>(v + 256);
            carry += 1;
        }
        else if (v > 255)
        {
            bytes[i] = static_cast<std::uint8_t>(v - 256);
            carry += 1;
        }
        else
            bytes[i] = static_cast<std::uint8_t>(v);
    }
}

}  // namespace detail

/// Applies mutator `m` once. A mutator with nothing to act on (no integer
/// argument, no resizable argument, empty gene) falls back to a bit flip.
inline MutationResult mutate_with(Mutator m, const Gene& gene, const GeneMap& map, Rng& rng,
                                  std::size_t max_array_len = kDefaultMaxArrayLen)
{
    MutationResult out{gene, map, m};
    auto& g = out.gene;

    auto integers = [&] {
        return detail::candidates(map, [](const GeneEntry& e) { return e.type.is_integer() && e.length > 0; });
    };
    auto element_span = [&](std::size_t index) {
        const auto& e = out.map.entries[index];
        const auto w = e.type.element_width();
        const auto k = std::uniform_int_distribution<std::size_t>{0, e.length - 1}(rng);
        return std::span{g.bytes}.subspan(e.start + k * w, w);
    };

    if (m == Mutator::arith || m == Mutator::interesting)
    {
        const auto ints = integers();
        if (ints.empty())
            m = Mutator::bit_flip;
        else
        {
            const auto index = detail::pick(ints, rng);
            const auto span = element_span(index);
            if (m == Mutator::arith)
            {
                const auto delta = std::uniform_int_distribution<std::uint32_t>{1, kArithMax}(rng);
                detail::add_be(span, delta, std::bernoulli_distribution{0.5}(rng));
            }
            else
            {
                const bool use_max = std::bernoulli_distribution{0.5}(rng);
                std::fill(span.begin(), span.end(), use_max ? 0xff : 0x00);
                if (use_max && out.map.entries[index].type.kind == ScalarKind::int_)
                    span[0] = 0x7f;
            }
        }
    }
    else if (m == Mutator::array_resize)
    {
        const auto resizable = detail::candidates(map, [](const GeneEntry& e) { return is_resizable(e.type); });
        if (resizable.empty())
            m = Mutator::bit_flip;
        else
        {
            const auto index = detail::pick(resizable, rng);
            const auto len = std::uniform_int_distribution<std::size_t>{0, max_array_len}(rng);
            resize_entry(g, out.map, index, len, rng);
        }
    }
    else if (m == Mutator::env_regen)
    {
        std::vector<std::size_t> env;
        for (std::size_t i = 0; i < map.entries.size(); ++i)
            if (detail::is_env(map.entries[i]))
                env.push_back(i);
        if (env.empty())
            m = Mutator::bit_flip;
        else
        {
            const auto& e = out.map.entries[detail::pick(env, rng)];
            fill_random(e.type, std::span{g.bytes}.subspan(e.start, e.size()), rng);
        }
    }

    if ((m == Mutator::bit_flip || m == Mutator::byte_flip) && !g.bytes.empty())
    {
        if (m == Mutator::bit_flip)
        {
            const auto bit = std::uniform_int_distribution<std::size_t>{0, g.bytes.size() * 8 - 1}(rng);
            g.bytes[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
            detail::clamp_bool(g, out.map, bit / 8);
        }
        else
        {
            const auto byte = std::uniform_int_distribution<std::size_t>{0, g.bytes.size() - 1}(rng);
            g.bytes[byte] ^= 0xff;
            detail::clamp_bool(g, out.map, byte);
        }
    }
    out.applied = m;
    return out;
}

/// One mutator chosen uniformly.
inline MutationResult mutate(const Gene& gene, const GeneMap& map, Rng& rng,
                             std::size_t max_array_len = kDefaultMaxArrayLen)
{
    const auto m = kAllMutators[std::uniform_int_distribution<std::size_t>{0, kAllMutators.size() - 1}(rng)];
    return mutate_with(m, gene, map, rng, max_array_len);
}

// ---------------------------------------------------------------------------
// Seed pool

struct Seed
{
    Gene gene;
    GeneMap map;
    Feedback feedback;
    Gas priority = 0;
    std::uint64_t birth_iteration = 0;
    std::uint64_t id = 0;
};

class EmptyPoolError : public Error {
public:
    using Error::Error;
};

/// Bounded max-priority pool plus the campaign-wide bests the acceptance
/// predicates compare against.
class SeedPool {
public:
    explicit SeedPool(std::size_t capacity = 256) : capacity_(capacity) {}

    void push(Seed seed)
    {
        seed.priority = seed.feedback.total_gas;
        seed.id = next_id_++;
        seeds_.push_back(std::move(seed));
        if (seeds_.size() > capacity_)
        {
            // Evict the lowest priority, oldest first among ties.
            auto victim = std::min_element(seeds_.begin(), seeds_.end(), [](const Seed& a, const Seed& b) {
                return a.priority != b.priority ? a.priority < b.priority : a.id < b.id;
            });
            seeds_.erase(victim);
        }
    }

    [[nodiscard]] const Seed& top() const
    {
        if (seeds_.empty())
            throw EmptyPoolError("seed pool is empty");
        return *std::min_element(seeds_.begin(), seeds_.end(), [](const Seed& a, const Seed& b) {
            return a.priority != b.priority ? a.priority > b.priority : a.id < b.id;
        });
    }

    /// Folds an execution into the bests (total, per-edge gas, path length,
    /// per-edge hits).
    void update_bests(const Feedback& fb)
    {
        total_cur_ = std::max(total_cur_, fb.total_gas);
        best_path_length_ = std::max(best_path_length_, fb.path_length());
        for (const auto& s : fb.edges)
        {
            auto& c = cost_cur_[s.edge];
            c = std::max(c, s.gas);
            auto& h = best_hits_[s.edge];
            h = std::max(h, s.hits);
        }
        has_bests_ = true;
    }

    [[nodiscard]] const std::vector<Seed>& seeds() const noexcept { return seeds_; }
    [[nodiscard]] std::size_t size() const noexcept { return seeds_.size(); }
    [[nodiscard]] bool empty() const noexcept { return seeds_.empty(); }
    [[nodiscard]] Gas total_cur() const noexcept { return total_cur_; }
    [[nodiscard]] const std::map<Edge, Gas>& cost_cur() const noexcept { return cost_cur_; }
    [[nodiscard]] std::uint64_t best_path_length() const noexcept { return best_path_length_; }
    [[nodiscard]] const std::map<Edge, std::uint64_t>& best_hits() const noexcept { return best_hits_; }
    [[nodiscard]] bool has_bests() const noexcept { return has_bests_; }

    [[nodiscard]] Gas cost_cur(Edge e) const
    {
        const auto it = cost_cur_.find(e);
        return it == cost_cur_.end() ? 0 : it->second;
    }

    /// total(s) > totalcur, or some edge's gas beats costcur(e).
    [[nodiscard]] bool improves_gas(const Feedback& fb) const
    {
        if (!has_bests_ || fb.total_gas > total_cur_)
            return true;
        for (const auto& s : fb.edges)
        {
            const auto it = cost_cur_.find(s.edge);
            if (it == cost_cur_.end() ? s.gas > 0 : s.gas > it->second)
                return true;
        }
        return false;
    }

private:
    std::size_t capacity_;
    std::vector<Seed> seeds_;
    std::uint64_t next_id_ = 0;
    bool has_bests_ = false;
    Gas total_cur_ = 0;
    std::map<Edge, Gas> cost_cur_;
    std::uint64_t best_path_length_ = 0;
    std::map<Edge, std::uint64_t> best_hits_;
};

struct AcceptanceConfig
{
    double temperature = 500.0;           ///< gas units; scales the MCMC-style acceptance
    bool probabilistic_acceptance = true;  ///< VGAS keeps some non-improving seeds
    double random_accept = 0.5;           ///< RANDOM keeps a seed with this probability
};

/// Probability that VGAS keeps a seed that improved nothing. Equal gas is
/// treated as one unit worse so that an unchanged seed is not kept for sure.
inline double acceptance_probability(Gas total_gas, Gas total_cur, double temperature)
{
    if (temperature <= 0)
        return 0.0;
    const auto delta = total_gas - total_cur;
    const double exponent = static_cast<double>(delta == 0 ? -1 : delta) / temperature;
    return std::min(1.0, std::exp(exponent));
}

inline bool is_interesting(const Feedback& fb, const SeedPool& pool, Strategy strategy, Rng& rng,
                           const AcceptanceConfig& cfg = {})
{
    switch (strategy)
    {
    case Strategy::vgas: {
        if (pool.improves_gas(fb))
            return true;
        if (!cfg.probabilistic_acceptance)
            return false;
        const auto p = acceptance_probability(fb.total_gas, pool.total_cur(), cfg.temperature);
        return std::uniform_real_distribution<double>{0.0, 1.0}(rng) < p;
    }
    case Strategy::slowfuzz:
        return !pool.has_bests() || fb.path_length() > pool.best_path_length();
    case Strategy::perffuzz: {
        if (!pool.has_bests())
            return true;
        for (const auto& s : fb.edges)
        {
            const auto it = pool.best_hits().find(s.edge);
            if (it == pool.best_hits().end() ? s.hits > 0 : s.hits > it->second)
                return true;
        }
        return false;
    }
    case Strategy::random:
        return std::bernoulli_distribution{cfg.random_accept}(rng);
    }
    return false;
}

inline constexpr double kExploitProbability = 0.9;

/// Max-priority seed with probability 0.9, otherwise a uniform pick.
inline const Seed& select_seed(const SeedPool& pool, Rng& rng)
{
    if (pool.empty())
        throw EmptyPoolError("cannot select from an empty seed pool");
    if (std::bernoulli_distribution{kExploitProbability}(rng))
        return pool.top();
    return detail::pick(pool.seeds(), rng);
}

// ---------------------------------------------------------------------------
// Campaign

/// Best gas over the time it took to find it.
inline double gas_rate(Gas best_gas, double time_to_best_s, double resolution_s = 1e-6)
{
    return static_cast<double>(best_gas) / std::max(time_to_best_s, resolution_s);
}

enum class ClockKind {
    automatic,  ///< wall clock with a time budget, virtual otherwise
    wall,
    virtual_steps,
};

/// Interpreter steps per virtual second.
inline constexpr double kVirtualStepsPerSecond = 1e7;

struct CampaignConfig
{
    Strategy strategy = Strategy::vgas;
    std::optional<double> time_budget_s;
    std::optional<std::uint64_t> iteration_budget;
    std::uint64_t rng_seed = 0;
    AcceptanceConfig acceptance;
    std::size_t max_array_len = kDefaultMaxArrayLen;
    std::size_t initial_max_len = kInitialMaxArrayLen;
    std::size_t pool_capacity = 256;
    bool persist_storage = false;
    HarnessOptions harness;
    unsigned jobs = 1;
    ClockKind clock = ClockKind::automatic;
    bool check_selection_soundness = false;  ///< count insertions that improved nothing
    bool stop_on_out_of_gas = false;
    const std::atomic<bool>* stop = nullptr;
};

class CampaignError : public Error {
public:
    using Error::Error;
};

/// Everything a campaign needs about its target.
struct CampaignTarget
{
    std::string contract_id;
    ContractInstance instance;
    Runner runner;
};

/// Loads a .bin (deployed here, constructor arguments drawn from `rng_seed`)
/// or a .bin-runtime artifact plus its ABI, and resolves the target function.
/// Construction runs under the block gas limit; `options.gas_limit` only
/// bounds the fuzzed calls.
inline CampaignTarget load_target(const std::filesystem::path& bin, const std::filesystem::path& abi,
                                  std::string_view function, std::uint64_t rng_seed, HarnessOptions options)
{
    options.gas_limit = std::max(options.gas_limit, kDefaultGasLimit);
    const auto specs = parse_abi(read_text_file(abi));
    auto runner = make_runner(specs, function);
    const auto code = read_code_file(bin);
    auto stem = bin.filename().string();
    stem = stem.substr(0, stem.find('.'));
    if (is_runtime_artifact(bin))
        return CampaignTarget{stem, from_runtime(code, options), std::move(runner)};

    const auto* ctor = find_constructor(specs);
    if (ctor && !ctor->inputs.empty())
    {
        Rng rng{rng_seed};
        const std::array<FunctionSpec, 1> ctor_specs{*ctor};
        const auto [gene, map] = random_gene(ctor_specs, rng, kInitialMaxArrayLen);
        return CampaignTarget{stem, deploy(code, ctor, &gene, &map, options), std::move(runner)};
    }
    return CampaignTarget{stem, deploy(code, ctor, nullptr, nullptr, options), std::move(runner)};
}

/// `<dir>/<stem>.abi` next to a .bin or .bin-runtime file.
inline std::filesystem::path default_abi_path(const std::filesystem::path& bin)
{
    auto name = bin.filename().string();
    return bin.parent_path() / (name.substr(0, name.find('.')) + ".abi");
}

namespace detail {

class Campaign {
public:
    Campaign(const CampaignTarget& target, const CampaignConfig& config)
        : target_(target), config_(config), rng_(config.rng_seed), pool_(config.pool_capacity)
    {
        if (!config.time_budget_s && !config.iteration_budget)
            throw CampaignError("a campaign needs a time budget or an iteration budget");
        use_wall_clock_ = config.clock == ClockKind::wall
                          || (config.clock == ClockKind::automatic && config.time_budget_s.has_value());
        world_ = target.instance.world;
    }

    CampaignReport run()
    {
        start_ = std::chrono::steady_clock::now();

        const std::array<FunctionSpec, 1> specs{target_.runner.spec};
        auto [gene, map] = random_gene(specs, rng_, config_.initial_max_len);
        auto result = execute_one(gene, map);
        record(gene, map, result.feedback);
        initial_gas_ = result.feedback.total_gas;
        pool_.push(Seed{std::move(gene), std::move(map), result.feedback, 0, 0, 0});
        pool_.update_bests(result.feedback);

        while (!budget_exhausted())
        {
            const Seed& parent = select_seed(pool_, rng_);
            std::vector<MutationResult> mutants;
            mutants.reserve(kAllMutators.size());
            for (const auto m : kAllMutators)
                mutants.push_back(mutate_with(m, parent.gene, parent.map, rng_, config_.max_array_len));

            const auto results = execute_batch(mutants);
            for (std::size_t i = 0; i < mutants.size(); ++i)
            {
                const auto& fb = results[i].feedback;
                record(mutants[i].gene, mutants[i].map, fb);
                const bool formula_holds = pool_.improves_gas(fb);
                if (is_interesting(fb, pool_, config_.strategy, rng_, config_.acceptance))
                {
                    ++insertions_;
                    if (config_.check_selection_soundness && !formula_holds)
                        ++violations_;
                    pool_.push(Seed{std::move(mutants[i].gene), std::move(mutants[i].map), fb, 0, iterations_ + 1, 0});
                }
                pool_.update_bests(fb);
            }
            ++iterations_;
        }
        return build_report();
    }

private:
    bool budget_exhausted() const
    {
        if (config_.stop && config_.stop->load())
            return true;
        if (config_.stop_on_out_of_gas && out_of_gas_observed_)
            return true;
        if (config_.iteration_budget && iterations_ >= *config_.iteration_budget)
            return true;
        if (config_.time_budget_s && wall_elapsed() >= *config_.time_budget_s)
            return true;
        return false;
    }

    double wall_elapsed() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    double elapsed() const
    {
        return use_wall_clock_ ? wall_elapsed() : static_cast<double>(steps_) / kVirtualStepsPerSecond;
    }

    double resolution() const { return use_wall_clock_ ? 1e-6 : 1.0 / kVirtualStepsPerSecond; }

    ExecutionResult execute_one(const Gene& gene, const GeneMap& map)
    {
        if (config_.persist_storage)
            return run_function(target_.instance, target_.runner, gene, map, world_, config_.harness);
        return run_function(target_.instance, target_.runner, gene, map, config_.harness);
    }

    std::vector<ExecutionResult> execute_batch(const std::vector<MutationResult>& mutants)
    {
        std::vector<ExecutionResult> results(mutants.size());
        if (config_.jobs <= 1 || config_.persist_storage)
        {
            for (std::size_t i = 0; i < mutants.size(); ++i)
                results[i] = execute_one(mutants[i].gene, mutants[i].map);
            return results;
        }
        // Workers share nothing mutable; results are merged in mutator order.
        std::vector<std::future<void>> workers;
        std::atomic<std::size_t> next{0};
        const auto n = std::min<std::size_t>(config_.jobs, mutants.size());
        for (std::size_t w = 0; w < n; ++w)
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < mutants.size(); i = next++)
                    results[i] = run_function(target_.instance, target_.runner, mutants[i].gene, mutants[i].map,
                                              config_.harness);
            }));
        for (auto& w : workers)
            w.get();
        return results;
    }

    void record(const Gene& gene, const GeneMap& map, const Feedback& fb)
    {
        ++executions_;
        steps_ += fb.steps;
        if (fb.status == ExecutionStatus::out_of_gas)
            out_of_gas_observed_ = true;
        for (const auto& s : fb.edges)
            profile_.record(target_.instance.runtime->wcfg, s.edge, s.gas, s.hits);

        if (executions_ == 1 || fb.total_gas > best_gas_)
        {
            best_gas_ = fb.total_gas;
            best_gene_ = gene;
            best_map_ = map;
            best_status_ = fb.status;
            time_to_best_ = elapsed();
            series_.push_back({time_to_best_, best_gas_});
        }
    }

    CampaignReport build_report() const
    {
        CampaignReport r;
        r.contract = target_.contract_id;
        r.function = target_.runner.spec.signature();
        r.strategy = to_string(config_.strategy);
        r.rng_seed = config_.rng_seed;
        r.time_budget_s = config_.time_budget_s;
        r.iteration_budget = config_.iteration_budget;
        r.clock = use_wall_clock_ ? "wall" : "virtual";
        r.gas_limit = config_.harness.gas_limit;
        r.max_array_len = config_.max_array_len;
        r.iterations = iterations_;
        r.executions = executions_;
        r.initial_gas = initial_gas_;
        r.best_gas = best_gas_;
        r.best_status = to_string(best_status_);
        r.time_to_best = time_to_best_;
        r.gas_rate = gas_rate(best_gas_, time_to_best_, resolution());
        r.static_estimate = static_estimate(target_.instance.runtime->wcfg);
        r.diff = compute_diff(r.static_estimate, best_gas_);

        auto params = nlohmann::json::array();
        auto env = nlohmann::json::object();
        for (const auto& e : best_map_.entries)
        {
            if (detail::is_env(e))
                env[e.key.substr(4)] = describe_entry(e, best_gene_);
            else
            {
                const auto first = e.key.find('|', e.key.find('|') + 1) + 1;
                const auto name = e.key.substr(first, e.key.find('|', first) - first);
                params.push_back({{"name", name}, {"type", e.type.canonical()}, {"value", describe_entry(e, best_gene_)}});
                if (is_resizable(e.type) && e.length >= config_.max_array_len)
                    r.flags.hit_array_cap = true;
            }
        }
        if (!config_.harness.randomize_sender)
            env["sender"] = address_hex(kDeployer);
        r.best_inputs = {{"arguments", std::move(params)}, {"environment", std::move(env)}};
        r.best_gene = to_hex(best_gene_.bytes);
        r.best_calldata = to_hex(encode_args(target_.runner.spec, best_gene_, best_map_));
        r.series = series_;
        for (const auto& [edge, slot] : profile_.slots())
            r.edge_profile.push_back({edge, slot.max_gas, slot.max_hits, slot.dynamic});
        r.flags.out_of_gas_observed = out_of_gas_observed_;
        r.pool_insertions = insertions_;
        r.selection_violations = violations_;
        return r;
    }

    const CampaignTarget& target_;
    const CampaignConfig& config_;
    Rng rng_;
    SeedPool pool_;
    WorldState world_;
    bool use_wall_clock_ = false;
    std::chrono::steady_clock::time_point start_;

    std::uint64_t iterations_ = 0;
    std::uint64_t executions_ = 0;
    std::uint64_t steps_ = 0;
    std::uint64_t insertions_ = 0;
    std::uint64_t violations_ = 0;
    Gas initial_gas_ = 0;
    Gas best_gas_ = 0;
    Gene best_gene_;
    GeneMap best_map_;
    ExecutionStatus best_status_ = ExecutionStatus::success;
    double time_to_best_ = 0;
    std::vector<SeriesPoint> series_;
    EdgeProfile profile_;
    bool out_of_gas_observed_ = false;
};

}  // namespace detail

/// Runs the feedback-directed search until the earliest of the time budget,
/// the iteration budget, or `config.stop`.
inline CampaignReport run_campaign(const CampaignTarget& target, const CampaignConfig& config)
{
    return detail::Campaign{target, config}.run();
}

}  // namespace vgas
