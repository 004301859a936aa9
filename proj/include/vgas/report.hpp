// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "wcfg.hpp"

namespace vgas {

/// Static estimate minus observed gas; the infinite case is kept distinct.
struct GasDiff
{
    bool infinite = false;
    Gas value = 0;

    friend bool operator==(const GasDiff&, const GasDiff&) = default;
};

inline GasDiff compute_diff(const GasEstimate& estimate, Gas observed)
{
    if (estimate.infinite)
        return {true, 0};
    return {false, estimate.value - observed};
}

/// Histogram convention: an infinite estimate is plotted as 0.
inline Gas histogram_value(const GasDiff& d) { return d.infinite ? 0 : d.value; }

inline nlohmann::json diff_to_json(const GasDiff& d)
{
    return d.infinite ? nlohmann::json("infinite") : nlohmann::json(d.value);
}

inline GasDiff diff_from_json(const nlohmann::json& j)
{
    if (j.is_string() && j.get<std::string>() == "infinite")
        return {true, 0};
    return {false, j.get<Gas>()};
}

inline nlohmann::json estimate_to_json(const GasEstimate& e)
{
    return e.infinite ? nlohmann::json("infinite") : nlohmann::json(e.value);
}

inline GasEstimate estimate_from_json(const nlohmann::json& j)
{
    if (j.is_string() && j.get<std::string>() == "infinite")
        return GasEstimate::unbounded();
    return GasEstimate::finite(j.get<Gas>());
}

struct SeriesPoint
{
    double elapsed_s = 0;
    Gas best_gas = 0;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct EdgeProfileEntry
{
    Edge edge;
    Gas max_gas = 0;
    std::uint64_t max_hits = 0;
    bool dynamic = false;

    friend bool operator==(const EdgeProfileEntry&, const EdgeProfileEntry&) = default;
};

struct ReportFlags
{
    bool hit_array_cap = false;
    bool out_of_gas_observed = false;

    friend bool operator==(const ReportFlags&, const ReportFlags&) = default;
};

struct CampaignReport
{
    std::string contract;
    std::string function;  ///< canonical signature
    std::string strategy;
    std::uint64_t rng_seed = 0;
    std::optional<double> time_budget_s;
    std::optional<std::uint64_t> iteration_budget;
    std::string clock;  ///< "wall" or "virtual"
    Gas gas_limit = 0;
    std::size_t max_array_len = 0;

    std::uint64_t iterations = 0;
    std::uint64_t executions = 0;
    Gas initial_gas = 0;
    Gas best_gas = 0;
    std::string best_status;
    double time_to_best = 0;
    double gas_rate = 0;
    GasEstimate static_estimate;
    GasDiff diff;

    nlohmann::json best_inputs = nlohmann::json::object();  ///< decoded arguments + environment
    std::string best_gene;                                  ///< hex
    std::string best_calldata;                              ///< hex
    std::vector<SeriesPoint> series;
    std::vector<EdgeProfileEntry> edge_profile;
    ReportFlags flags;

    std::uint64_t pool_insertions = 0;
    std::uint64_t selection_violations = 0;

    friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

inline nlohmann::json to_json(const CampaignReport& r)
{
    nlohmann::json j;
    j["contract"] = r.contract;
    j["function"] = r.function;
    j["strategy"] = r.strategy;
    j["rng_seed"] = r.rng_seed;
    j["budget"] = {{"time_s", r.time_budget_s ? nlohmann::json(*r.time_budget_s) : nlohmann::json(nullptr)},
                   {"iterations", r.iteration_budget ? nlohmann::json(*r.iteration_budget) : nlohmann::json(nullptr)}};
    j["clock"] = r.clock;
    j["gas_limit"] = r.gas_limit;
    j["max_array_len"] = r.max_array_len;
    j["iterations"] = r.iterations;
    j["executions"] = r.executions;
    j["initial_gas"] = r.initial_gas;
    j["best_gas"] = r.best_gas;
    j["best_status"] = r.best_status;
    j["time_to_best"] = r.time_to_best;
    j["gas_rate"] = r.gas_rate;
    j["static_estimate"] = estimate_to_json(r.static_estimate);
    j["diff"] = diff_to_json(r.diff);
    j["best_inputs"] = r.best_inputs;
    j["best_gene"] = r.best_gene;
    j["best_calldata"] = r.best_calldata;

    auto series = nlohmann::json::array();
    for (const auto& p : r.series)
        series.push_back({p.elapsed_s, p.best_gas});
    j["series"] = std::move(series);

    auto edges = nlohmann::json::array();
    for (const auto& e : r.edge_profile)
        edges.push_back({{"src", e.edge.src},
                         {"dst", e.edge.dst},
                         {"max_gas", e.max_gas},
                         {"max_hits", e.max_hits},
                         {"dynamic", e.dynamic}});
    j["edge_profile"] = std::move(edges);
    j["flags"] = {{"hit_array_cap", r.flags.hit_array_cap}, {"out_of_gas_observed", r.flags.out_of_gas_observed}};
    j["pool"] = {{"insertions", r.pool_insertions}, {"selection_violations", r.selection_violations}};
    return j;
}

inline CampaignReport report_from_json(const nlohmann::json& j)
{
    CampaignReport r;
    r.contract = j.at("contract").get<std::string>();
    r.function = j.at("function").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    const auto& budget = j.at("budget");
    if (!budget.at("time_s").is_null())
        r.time_budget_s = budget.at("time_s").get<double>();
    if (!budget.at("iterations").is_null())
        r.iteration_budget = budget.at("iterations").get<std::uint64_t>();
    r.clock = j.at("clock").get<std::string>();
    r.gas_limit = j.at("gas_limit").get<Gas>();
    r.max_array_len = j.at("max_array_len").get<std::size_t>();
    r.iterations = j.at("iterations").get<std::uint64_t>();
    r.executions = j.at("executions").get<std::uint64_t>();
    r.initial_gas = j.at("initial_gas").get<Gas>();
    r.best_gas = j.at("best_gas").get<Gas>();
    r.best_status = j.at("best_status").get<std::string>();
    r.time_to_best = j.at("time_to_best").get<double>();
    r.gas_rate = j.at("gas_rate").get<double>();
    r.static_estimate = estimate_from_json(j.at("static_estimate"));
    r.diff = diff_from_json(j.at("diff"));
    r.best_inputs = j.at("best_inputs");
    r.best_gene = j.at("best_gene").get<std::string>();
    r.best_calldata = j.at("best_calldata").get<std::string>();
    for (const auto& p : j.at("series"))
        r.series.push_back({p.at(0).get<double>(), p.at(1).get<Gas>()});
    for (const auto& e : j.at("edge_profile"))
        r.edge_profile.push_back({Edge{e.at("src").get<BlockId>(), e.at("dst").get<BlockId>()},
                                  e.at("max_gas").get<Gas>(), e.at("max_hits").get<std::uint64_t>(),
                                  e.at("dynamic").get<bool>()});
    r.flags.hit_array_cap = j.at("flags").at("hit_array_cap").get<bool>();
    r.flags.out_of_gas_observed = j.at("flags").at("out_of_gas_observed").get<bool>();
    r.pool_insertions = j.at("pool").at("insertions").get<std::uint64_t>();
    r.selection_violations = j.at("pool").at("selection_violations").get<std::uint64_t>();
    return r;
}

inline std::string report_text(const CampaignReport& r)
{
    return to_json(r).dump(2) + "\n";
}

/// Shortest decimal that round-trips.
inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string series_csv(const CampaignReport& r)
{
    std::string out = "elapsed_s,best_gas\n";
    for (const auto& p : r.series)
        out += format_double(p.elapsed_s) + "," + std::to_string(p.best_gas) + "\n";
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw Error("failed writing " + path.string());
}

inline void write_report(const CampaignReport& r, const std::filesystem::path& path)
{
    write_text(path, report_text(r));
}

inline void write_series_csv(const CampaignReport& r, const std::filesystem::path& path)
{
    write_text(path, series_csv(r));
}

inline CampaignReport read_report(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw Error("cannot read " + path.string());
    return report_from_json(nlohmann::json::parse(in));
}

/// Side-by-side strategy table for one contract/function.
inline nlohmann::json comparison_summary(const std::vector<CampaignReport>& reports)
{
    nlohmann::json j;
    if (!reports.empty())
    {
        j["contract"] = reports.front().contract;
        j["function"] = reports.front().function;
        j["rng_seed"] = reports.front().rng_seed;
        j["static_estimate"] = estimate_to_json(reports.front().static_estimate);
    }
    auto rows = nlohmann::json::array();
    for (const auto& r : reports)
        rows.push_back({{"strategy", r.strategy},
                        {"best_gas", r.best_gas},
                        {"time_to_best", r.time_to_best},
                        {"gas_rate", r.gas_rate},
                        {"diff", diff_to_json(r.diff)},
                        {"out_of_gas_observed", r.flags.out_of_gas_observed}});
    j["strategies"] = std::move(rows);
    return j;
}

}  // namespace vgas
