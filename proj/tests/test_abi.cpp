// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <vgas/abi.hpp>
#include <vgas/harness.hpp>

#include "abi_decode.hpp"
#include "test_util.hpp"

using namespace vgas;

using namespace vgas::test;

TEST(abi, pinned_selectors_match_keccak_oracle)
{
    const auto oracle = test::load_json("tests/data/selectors.json");
    ASSERT_GE(oracle["selectors"].size(), 5u);
    for (const auto& [sig, hex] : oracle["selectors"].items())
    {
        const auto sel = selector(sig);
        EXPECT_EQ(to_hex(ByteView{sel}), hex.get<std::string>()) << sig;
    }
    EXPECT_EQ(to_hex(ByteView{selector("transfer(address,uint256)")}), "a9059cbb");
}

TEST(abi, keccak_digests_match_oracle)
{
    const auto oracle = test::load_json("tests/data/selectors.json");
    for (const auto& [text, hex] : oracle["digests"].items())
        EXPECT_EQ(to_hex(ByteView{keccak256(std::string_view{text})}), hex.get<std::string>()) << text;
    const Bytes long_input(oracle["long_input"]["length"].get<std::size_t>(), 0x61);
    EXPECT_EQ(to_hex(ByteView{keccak256(ByteView{long_input})}), oracle["long_input"]["digest"].get<std::string>());
}

TEST(abi, selector_properties)
{
    EXPECT_EQ(selector("f()"), selector("f()"));
    EXPECT_NE(selector("f(uint256)"), selector("f(uint8)"));
}

TEST(abi, corpus_selectors_match_solc_identifiers)
{
    // solc's method identifiers, read from the compiled runtime's dispatcher.
    const auto runtime = to_hex(read_code_file(test::source_path("corpus/Token.bin-runtime")));
    for (const auto* sig : {"transfer(address,uint256)", "approve(address,uint256)",
                            "transferFrom(address,address,uint256)", "burn(uint256)"})
        EXPECT_NE(runtime.find("63" + to_hex(ByteView{selector(sig)})), std::string::npos) << sig;
}

TEST(abi, parse_erc20_transfer)
{
    const auto specs = parse_abi(R"([{"constant":false,"inputs":[{"name":"_to","type":"address"},
        {"name":"_value","type":"uint256"}],"name":"transfer","outputs":[],"payable":false,"type":"function"},
        {"anonymous":false,"inputs":[],"name":"E","type":"event"},{"payable":true,"type":"fallback"}])");
    ASSERT_EQ(specs.size(), 1u);
    EXPECT_EQ(specs[0].name, "transfer");
    ASSERT_EQ(specs[0].inputs.size(), 2u);
    EXPECT_EQ(specs[0].inputs[0].name, "_to");
    EXPECT_EQ(specs[0].inputs[0].type.kind, ScalarKind::address);
    EXPECT_EQ(specs[0].inputs[1].type.canonical(), "uint256");
    EXPECT_EQ(specs[0].signature(), "transfer(address,uint256)");
}

TEST(abi, parse_errors)
{
    EXPECT_TRUE(parse_abi("[]").empty());
    EXPECT_THROW(parse_abi("{"), AbiError);
    EXPECT_THROW(parse_abi("{}"), AbiError);
    try
    {
        parse_abi(R"([{"type":"function","name":"g","inputs":[{"name":"x","type":"uint7"}]}])");
        FAIL() << "uint7 accepted";
    }
    catch (const AbiError& e)
    {
        EXPECT_NE(std::string{e.what()}.find("(g)"), std::string::npos) << e.what();
        EXPECT_NE(std::string{e.what()}.find("uint7"), std::string::npos) << e.what();
    }
}

TEST(abi, type_grammar)
{
    EXPECT_EQ(parse_type("uint").canonical(), "uint256");
    EXPECT_EQ(parse_type("int").canonical(), "int256");
    EXPECT_EQ(parse_type("byte").canonical(), "bytes1");
    EXPECT_EQ(parse_type("address[3]").canonical(), "address[3]");
    EXPECT_EQ(parse_type("uint8[]").canonical(), "uint8[]");
    for (const auto* bad : {"uint7", "uint264", "int0", "bytes0", "bytes33", "uint8[][]", "string[]", "bytes[2]",
                            "tuple", "function", "uint8[0]", "fixed128x18"})
        EXPECT_THROW(parse_type(bad), AbiError) << bad;
}

TEST(abi, corpus_abis_parse)
{
    for (const auto* name : {"DistributeTokens", "Token", "AccessoryData"})
        EXPECT_NO_THROW(parse_abi(read_text_file(test::source_path(std::string{"corpus/"} + name + ".abi")))) << name;
}

TEST(abi, random_gene_shapes)
{
    Rng rng{1};
    const auto [env_gene, env_map] = random_gene({}, rng);
    ASSERT_EQ(env_map.entries.size(), 6u);
    EXPECT_EQ(env_gene.bytes.size(), 20u + 32 + 8 + 8 + 20 + 20);
    EXPECT_TRUE(gene_is_valid(env_gene, env_map));

    FunctionSpec spec{"f", {{"b", parse_type("bool")}, {"a", parse_type("address")}, {"xs", parse_type("uint8[]")}}};
    const std::array<FunctionSpec, 1> specs{spec};
    for (int t = 0; t < 200; ++t)
    {
        const auto [gene, map] = random_gene(specs, rng);
        ASSERT_TRUE(gene_is_valid(gene, map));
        const auto& b = map.entries[0];
        EXPECT_EQ(b.key, "f|3|b|bool");
        EXPECT_LE(gene.bytes[b.start], 1);
        EXPECT_EQ(map.entries[1].size(), 20u);
        EXPECT_LE(map.entries[2].length, kInitialMaxArrayLen);
    }
}

TEST(abi, random_gene_is_reproducible)
{
    FunctionSpec spec{"f", {{"xs", parse_type("uint256[]")}, {"s", parse_type("string")}}};
    const std::array<FunctionSpec, 1> specs{spec};
    Rng a{42}, b{42};
    EXPECT_EQ(random_gene(specs, a), random_gene(specs, b));
}

TEST(abi, encode_transfer)
{
    FunctionSpec spec{"transfer", {{"_to", parse_type("address")}, {"_value", parse_type("uint256")}}};
    const std::array<FunctionSpec, 1> specs{spec};
    Rng rng{0};
    auto [gene, map] = random_gene(specs, rng);
    const auto& to = map.entries[0];
    const auto& value = map.entries[1];
    const auto addr = from_hex("00112233445566778899aabbccddeeff00112233");
    std::copy(addr.begin(), addr.end(), gene.bytes.begin() + static_cast<std::ptrdiff_t>(to.start));
    std::fill_n(gene.bytes.begin() + static_cast<std::ptrdiff_t>(value.start), 32, 0);
    gene.bytes[value.end - 1] = 5;

    const auto data = encode_args(spec, gene, map);
    ASSERT_EQ(data.size(), 68u);
    EXPECT_EQ(to_hex(data), "a9059cbb" + std::string(24, '0') + "00112233445566778899aabbccddeeff00112233"
                                + std::string(62, '0') + "05");
}

TEST(abi, encode_empty_dynamic_array)
{
    FunctionSpec spec{"f", {{"xs", parse_type("uint256[]")}}};
    const std::array<FunctionSpec, 1> specs{spec};
    Rng rng{0};
    auto [gene, map] = random_gene(specs, rng);
    resize_entry(gene, map, 0, 0, rng);
    const auto data = encode_args(spec, gene, map);
    ASSERT_EQ(data.size(), 68u);
    EXPECT_EQ(to_hex(ByteView{data}.subspan(4)), std::string(62, '0') + "20" + std::string(64, '0'));
}

TEST(abi, constructor_args_have_no_selector)
{
    FunctionSpec ctor{"constructor", {{"initialSupply", parse_type("uint256")}}, true};
    const std::array<FunctionSpec, 1> specs{ctor};
    Rng rng{0};
    const auto [gene, map] = random_gene(specs, rng);
    EXPECT_EQ(encode_args(ctor, gene, map).size(), 32u);
}

TEST(abi, mismatched_gene_is_an_error)
{
    FunctionSpec spec{"f", {{"x", parse_type("uint256")}}};
    FunctionSpec other{"g", {{"x", parse_type("uint256")}}};
    const std::array<FunctionSpec, 1> specs{other};
    Rng rng{0};
    const auto [gene, map] = random_gene(specs, rng);
    EXPECT_THROW(encode_args(spec, gene, map), AbiError);
}

TEST(abi, static_calldata_length)
{
    Rng rng{9};
    for (int t = 0; t < 200; ++t)
    {
        FunctionSpec spec{"f", {}};
        const auto n = rng() % 6;
        for (std::size_t i = 0; i < n; ++i)
            spec.inputs.push_back({"p" + std::to_string(i), parse_type(rng() % 2 ? "uint32" : "address")});
        const std::array<FunctionSpec, 1> specs{spec};
        const auto [gene, map] = random_gene(specs, rng);
        EXPECT_EQ(encode_args(spec, gene, map).size(), 4 + 32 * n);
    }
}

TEST(abi, resize_retiles_later_entries)
{
    FunctionSpec spec{"distributeFixed", {{"_addrs", parse_type("address[]")}, {"_amoutToEach", parse_type("uint256")}}};
    const std::array<FunctionSpec, 1> specs{spec};
    Rng rng{4};
    auto [gene, map] = random_gene(specs, rng);
    resize_entry(gene, map, 0, 81, rng);
    const auto before = gene;
    const auto before_map = map;
    resize_entry(gene, map, 0, 100, rng);
    ASSERT_TRUE(gene_is_valid(gene, map));
    EXPECT_EQ(map.entries[0].length, 100u);
    EXPECT_EQ(map.entries[0].size(), 2000u);
    for (std::size_t i = 1; i < map.entries.size(); ++i)
    {
        const auto& now = map.entries[i];
        const auto& was = before_map.entries[i];
        EXPECT_EQ(now.start, was.start + 19 * 20);
        EXPECT_TRUE(std::equal(gene.bytes.begin() + static_cast<std::ptrdiff_t>(now.start),
                               gene.bytes.begin() + static_cast<std::ptrdiff_t>(now.end),
                               before.bytes.begin() + static_cast<std::ptrdiff_t>(was.start)));
    }
}

TEST(abi, describe_entry_values)
{
    FunctionSpec spec{"f", {{"i", parse_type("int8")}, {"b", parse_type("bool")}, {"xs", parse_type("uint16[2]")}}};
    const std::array<FunctionSpec, 1> specs{spec};
    Rng rng{0};
    auto [gene, map] = random_gene(specs, rng);
    gene.bytes[map.entries[0].start] = 0xfe;
    gene.bytes[map.entries[1].start] = 1;
    const auto xs = map.entries[2].start;
    gene.bytes[xs] = 0x01;
    gene.bytes[xs + 1] = 0x00;
    gene.bytes[xs + 2] = 0x00;
    gene.bytes[xs + 3] = 0x07;
    EXPECT_EQ(describe_entry(map.entries[0], gene), "-2");
    EXPECT_EQ(describe_entry(map.entries[1], gene), true);
    EXPECT_EQ(describe_entry(map.entries[2], gene), (nlohmann::json{"256", "7"}));
}

TEST(abi, encode_decode_round_trip)
{
    Rng rng{2026};
    for (int s = 0; s < 1000; ++s)
    {
        const auto spec = random_spec(rng, s);
        const std::array<FunctionSpec, 1> specs{spec};
        for (int g = 0; g < 3; ++g)
        {
            auto [gene, map] = random_gene(specs, rng);
            if (g == 2)
                for (std::size_t i = 0; i < spec.inputs.size(); ++i)
                    if (is_resizable(spec.inputs[i].type))
                        resize_entry(gene, map, i, rng() % 70, rng);
            ASSERT_TRUE(gene_is_valid(gene, map));
            const auto data = encode_args(spec, gene, map);
            std::vector<Decoded> decoded;
            ASSERT_NO_THROW(decoded = decode(spec, data)) << spec.signature();
            ASSERT_EQ(decoded.size(), spec.inputs.size());
            for (std::size_t i = 0; i < spec.inputs.size(); ++i)
            {
                const auto& e = map.entries[i];
                ASSERT_EQ(decoded[i].length, e.length) << spec.signature() << " param " << i;
                ASSERT_EQ(decoded[i].raw, Bytes(gene.bytes.begin() + static_cast<std::ptrdiff_t>(e.start),
                                                gene.bytes.begin() + static_cast<std::ptrdiff_t>(e.end)))
                    << spec.signature() << " param " << i;
            }
        }
    }
}
