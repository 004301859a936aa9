// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace vgas::test {

inline std::filesystem::path source_path(const std::string& rel)
{
    return std::filesystem::path{VGAS_SOURCE_DIR} / rel;
}

inline nlohmann::json load_json(const std::string& rel)
{
    std::ifstream in{source_path(rel)};
    return nlohmann::json::parse(in);
}

inline std::filesystem::path temp_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("vgas-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace vgas::test
