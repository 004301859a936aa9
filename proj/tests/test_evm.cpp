// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.

#include <random>

#include <gtest/gtest.h>

#include <vgas/evm.hpp>

#include "test_util.hpp"

using namespace vgas;

namespace {

const Address kSender = 0xcafe;

struct Run
{
    ExecutionResult result;
    WorldState world;
};

ExecutionEnv test_env(Gas gas_limit = 1'000'000)
{
    ExecutionEnv env;
    env.sender = kSender;
    env.gas_limit = gas_limit;
    return env;
}

WorldState test_world()
{
    WorldState w;
    w.contract_balance = Word{1'000'000'000'000'000'000ull};
    w.caller_balance = Word{1'000'000'000'000'000'000ull};
    return w;
}

Run run(const Bytes& code, const Bytes& calldata = {}, Gas gas_limit = 1'000'000, WorldState world = test_world(),
        ExecutionOptions options = {})
{
    options.check_gas_conservation = true;
    const Program program{code};
    auto result = execute(program, calldata, test_env(gas_limit), world, options);
    return {std::move(result), std::move(world)};
}

Run run(std::string_view asm_text, const Bytes& calldata = {}, Gas gas_limit = 1'000'000)
{
    return run(assemble(asm_text), calldata, gas_limit);
}

/// Evaluates `asm_text` and returns the word it leaves on top of the stack.
Word eval(std::string_view asm_text)
{
    const auto r = run(std::string{asm_text} + " PUSH1 00 MSTORE PUSH1 20 PUSH1 00 RETURN");
    EXPECT_EQ(r.result.status, ExecutionStatus::success) << asm_text;
    return word_from_be(r.result.return_data);
}

void expect_identity(const ExecutionResult& r)
{
    const auto& fb = r.feedback;
    Gas sum = 0;
    for (const auto& e : fb.edges)
    {
        EXPECT_GE(e.gas, 0);
        EXPECT_GT(e.hits, 0u);
        sum += e.gas;
    }
    EXPECT_EQ(sum + fb.terminal_gas + fb.intrinsic_gas - fb.refund, fb.total_gas);
    EXPECT_EQ(fb.total_gas, r.gas_used);
    EXPECT_EQ(r.gas_used, r.gas_used_raw - r.refund);
    EXPECT_GE(r.gas_used, r.gas_used_raw - r.gas_used_raw / 2);
}

}  // namespace

TEST(evm, intrinsic_gas)
{
    EXPECT_EQ(intrinsic_gas({}, false), 21000);
    EXPECT_EQ(intrinsic_gas({}, true), 53000);
    EXPECT_EQ(intrinsic_gas(from_hex("0001"), false), 21000 + 4 + 68);
}

TEST(evm, memory_expansion_cost)
{
    EXPECT_EQ(memory_expansion_cost(0, 0), 0);
    EXPECT_EQ(memory_expansion_cost(0, 1), 3);
    EXPECT_EQ(memory_expansion_cost(0, 32), 98);
    EXPECT_EQ(memory_expansion_cost(32, 32), 0);
    EXPECT_EQ(memory_expansion_cost(1, 32), 95);
    EXPECT_EQ(memory_cost(1024), 3 * 1024 + 1024 * 1024 / 512);
}

TEST(evm, sstore_cost)
{
    EXPECT_EQ(sstore_cost(0, 7).gas, 20000);
    EXPECT_EQ(sstore_cost(0, 7).refund, 0);
    EXPECT_EQ(sstore_cost(7, 0).gas, 5000);
    EXPECT_EQ(sstore_cost(7, 0).refund, 15000);
    EXPECT_EQ(sstore_cost(7, 9).gas, 5000);
    EXPECT_EQ(sstore_cost(7, 9).refund, 0);
    EXPECT_EQ(sstore_cost(0, 0).gas, 5000);
}

TEST(evm, call_cost)
{
    EXPECT_EQ(call_cost(0, true), 700);
    EXPECT_EQ(call_cost(0, false), 700);
    EXPECT_EQ(call_cost(1, true), 9700);
    EXPECT_EQ(call_cost(1, false), 34700);
}

TEST(evm, push_push_add_stop)
{
    const auto r = run("PUSH1 01 PUSH1 02 ADD STOP");
    EXPECT_EQ(r.result.status, ExecutionStatus::success);
    EXPECT_EQ(r.result.gas_used, 21009);
    expect_identity(r.result);
}

TEST(evm, oracle_table)
{
    const auto table = test::load_json("tests/data/gas_snippets.json");
    ASSERT_GE(table.size(), 40u);
    for (const auto& row : table)
    {
        SCOPED_TRACE(row["name"].get<std::string>());
        ExecutionOptions options;
        options.is_create = row["is_create"].get<bool>();
        const auto r = run(from_hex(row["code"].get<std::string>()), from_hex(row["calldata"].get<std::string>()),
                           row["gas_limit"].get<Gas>(), test_world(), options);
        EXPECT_EQ(r.result.gas_used, row["gas_used"].get<Gas>());
        EXPECT_EQ(to_string(r.result.status), row["status"].get<std::string>());
        expect_identity(r.result);
    }
}

TEST(evm, value_call_to_fresh_account_prices_every_component)
{
    const auto fresh = "PUSH20 00000000000000000000000000000000000beef1";
    const auto call = [&](const char* value, const std::string& to) {
        return run("PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 " + std::string{value} + " " + to + " PUSH2 ffff CALL POP")
            .result.gas_used;
    };
    const Gas pushes = 7 * 3;
    const Gas pop = 2;
    EXPECT_EQ(call("00", fresh), 21000 + pushes + 700 + pop);
    EXPECT_EQ(call("01", fresh), 21000 + pushes + 700 + 9000 + 25000 + pop);
    // The sender exists; so does any precompile.
    EXPECT_EQ(call("01", "PUSH20 000000000000000000000000000000000000cafe"), 21000 + pushes + 700 + 9000 + pop);
    EXPECT_EQ(call("01", "PUSH1 04"), 21000 + pushes + 700 + 9000 + pop);
}

TEST(evm, value_transfer_creates_the_account)
{
    const auto r = run("PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 05 PUSH20 00000000000000000000000000000000000beef1 "
                       "PUSH2 ffff CALL STOP");
    ASSERT_EQ(r.result.status, ExecutionStatus::success);
    EXPECT_TRUE(r.world.exists(0xbeef1, kSender));
    EXPECT_EQ(r.world.external_balances.at(0xbeef1), 5);
}

TEST(evm, call_with_insufficient_balance_pushes_zero_and_still_charges)
{
    auto world = test_world();
    world.contract_balance = 0;
    const auto r = run(assemble("PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 01 PUSH20 "
                                "00000000000000000000000000000000000beef1 PUSH2 ffff CALL "
                                "PUSH1 00 MSTORE PUSH1 20 PUSH1 00 RETURN"),
                       {}, 1'000'000, world);
    EXPECT_EQ(word_from_be(r.result.return_data), 0);
    EXPECT_EQ(r.result.gas_used, 21000 + 21 + 34700 + 3 + 6 + 3 + 3);
}

TEST(evm, sstore_clear_refund_example)
{
    // Clearing a live slot with 43,517 gas used before refunds.
    WorldState world = test_world();
    world.storage[0] = 1;
    std::string text = "PUSH1 00 PUSH1 00 SSTORE";
    for (int i = 0; i < 11; ++i)
        text += " PUSH1 01";
    text += " PC STOP";
    const Bytes calldata(257, 0xab);
    const auto r = run(assemble(text), calldata, 1'000'000, world);
    ASSERT_EQ(r.result.status, ExecutionStatus::success);
    EXPECT_EQ(r.result.gas_used_raw, 43517);
    EXPECT_EQ(r.result.refund, 15000);
    EXPECT_EQ(r.result.gas_used, 28517);
    EXPECT_EQ(r.world.load(0), 0);
    expect_identity(r.result);
}

TEST(evm, refund_capped_at_half_of_gas_used)
{
    WorldState world = test_world();
    world.storage[0] = 1;
    world.storage[1] = 1;
    const auto r = run(assemble("PUSH1 00 PUSH1 00 SSTORE PUSH1 00 PUSH1 01 SSTORE"), {}, 1'000'000, world);
    EXPECT_EQ(r.result.gas_used_raw, 21000 + 2 * 5006);
    EXPECT_EQ(r.result.refund, (21000 + 2 * 5006) / 2);
    expect_identity(r.result);
}

TEST(evm, revert_discards_state_and_refund)
{
    WorldState world = test_world();
    world.storage[0] = 1;
    const auto r = run(assemble("PUSH1 00 PUSH1 00 SSTORE PUSH1 07 PUSH1 01 SSTORE PUSH1 00 PUSH1 00 REVERT"), {},
                       1'000'000, world);
    EXPECT_EQ(r.result.status, ExecutionStatus::revert);
    EXPECT_EQ(r.result.refund, 0);
    EXPECT_EQ(r.world.load(0), 1);
    EXPECT_EQ(r.world.load(1), 0);
    expect_identity(r.result);
}

TEST(evm, success_commits_storage)
{
    const auto r = run("PUSH1 07 PUSH1 01 SSTORE STOP");
    EXPECT_EQ(r.world.load(1), 7);
}

TEST(evm, exceptional_halts_consume_all_gas)
{
    for (const auto* text : {"PUSH1 01 INVALID", "ADD", "PUSH1 03 JUMP STOP", "PUSH1 01 PUSH1 00 SSTORE"})
    {
        const auto r = run(text, {}, 30000);
        EXPECT_EQ(r.result.gas_used, 30000) << text;
        EXPECT_NE(r.result.status, ExecutionStatus::success) << text;
        expect_identity(r.result);
    }
    EXPECT_EQ(run("ADD", {}, 30000).result.status, ExecutionStatus::stack_error);
    EXPECT_EQ(run("PUSH1 03 JUMP STOP", {}, 30000).result.status, ExecutionStatus::bad_jump);
    EXPECT_EQ(run("PUSH1 01 PUSH1 00 SSTORE", {}, 30000).result.status, ExecutionStatus::out_of_gas);
}

TEST(evm, unsupported_call_family_ends_invalid)
{
    for (const auto* text : {"PUSH1 00 PUSH1 00 PUSH1 00 CREATE", "PUSH1 00 SELFDESTRUCT",
                             "PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 DELEGATECALL",
                             "PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 PUSH1 00 STATICCALL"})
        EXPECT_EQ(run(text, {}, 100000).result.status, ExecutionStatus::invalid_op) << text;
}

TEST(evm, stack_overflow)
{
    std::string text = "JUMPDEST PUSH1 01 PUSH1 00 JUMP";
    const auto r = run(text, {}, 10'000'000);
    EXPECT_EQ(r.result.status, ExecutionStatus::stack_error);
}

TEST(evm, arithmetic_semantics)
{
    const Word max = kWordMax;
    EXPECT_EQ(eval("PUSH1 00 PUSH1 05 DIV"), 0);
    EXPECT_EQ(eval("PUSH1 00 PUSH1 05 MOD"), 0);
    EXPECT_EQ(eval("PUSH1 01 PUSH1 00 SUB"), max);
    EXPECT_EQ(eval("PUSH1 02 PUSH32 ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff ADD"), 1);
    // -8 / 3 = -2, -8 % 3 = -2
    const auto minus8 = "PUSH32 fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff8";
    EXPECT_EQ(eval(std::string{"PUSH1 03 "} + minus8 + " SDIV"), negate(2));
    EXPECT_EQ(eval(std::string{"PUSH1 03 "} + minus8 + " SMOD"), negate(2));
    // INT_MIN / -1 overflows to INT_MIN
    EXPECT_EQ(eval("PUSH32 ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff "
                   "PUSH32 8000000000000000000000000000000000000000000000000000000000000000 SDIV"),
              kSignBit);
    EXPECT_EQ(eval("PUSH1 08 PUSH1 0a PUSH1 0a ADDMOD"), 4);
    EXPECT_EQ(eval("PUSH1 08 PUSH1 0a PUSH1 0a MULMOD"), 4);
    EXPECT_EQ(eval("PUSH1 00 PUSH1 0a PUSH1 0a MULMOD"), 0);
    EXPECT_EQ(eval("PUSH1 0a PUSH1 02 EXP"), 1024);
    EXPECT_EQ(eval("PUSH2 0100 PUSH1 02 EXP"), 0);
    EXPECT_EQ(eval("PUSH1 ff PUSH1 00 SIGNEXTEND"), max);
    EXPECT_EQ(eval("PUSH1 7f PUSH1 00 SIGNEXTEND"), 0x7f);
    EXPECT_EQ(eval("PUSH2 1234 PUSH1 1e BYTE"), 0x12);
    EXPECT_EQ(eval("PUSH2 1234 PUSH1 20 BYTE"), 0);
    EXPECT_EQ(eval("PUSH1 01 PUSH1 08 SHL"), 0x100);
    EXPECT_EQ(eval("PUSH2 0100 PUSH1 08 SHR"), 1);
    EXPECT_EQ(eval("PUSH32 8000000000000000000000000000000000000000000000000000000000000000 PUSH1 ff SAR"), max);
    EXPECT_EQ(eval("PUSH1 01 PUSH1 02 SLT"), 0);
    EXPECT_EQ(eval(std::string{"PUSH1 01 "} + minus8 + " SLT"), 1);
    EXPECT_EQ(eval("PUSH1 00 NOT"), max);
}

TEST(evm, sha3_is_keccak)
{
    // keccak256("") left on the stack after hashing zero bytes.
    EXPECT_EQ(to_hex(eval("PUSH1 00 PUSH1 00 SHA3")),
              "0xc5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
}

TEST(evm, environment_opcodes)
{
    EXPECT_EQ(eval("CALLER"), kSender);
    EXPECT_EQ(eval("ADDRESS"), WorldState{}.contract_address);
    EXPECT_EQ(eval("GASLIMIT"), 1'000'000);
    EXPECT_EQ(eval("CALLDATASIZE"), 0);
    EXPECT_EQ(eval("CALLER BALANCE"), Word{1'000'000'000'000'000'000ull});
    EXPECT_EQ(eval("PUSH1 05 MSIZE"), 0);
}

TEST(evm, calldata_and_code_copies_zero_fill)
{
    const auto r = run(assemble("PUSH1 40 PUSH1 02 PUSH1 00 CALLDATACOPY PUSH1 40 PUSH1 00 RETURN"), from_hex("aabbccdd"));
    ASSERT_EQ(r.result.return_data.size(), 64u);
    EXPECT_EQ(r.result.return_data[0], 0xcc);
    EXPECT_EQ(r.result.return_data[1], 0xdd);
    EXPECT_EQ(r.result.return_data[2], 0x00);
}

TEST(evm, feedback_edges_on_counted_loop)
{
    // Block 0: PUSH1 05; block 1 (loop body, JUMPDEST at 2); block 2: POP.
    const auto r = run("PUSH1 05 JUMPDEST PUSH1 01 SWAP1 SUB DUP1 PUSH1 02 JUMPI POP");
    const auto& fb = r.result.feedback;
    EXPECT_EQ(fb.edge_hits({0, 1}), 1u);
    EXPECT_EQ(fb.edge_hits({1, 1}), 4u);
    EXPECT_EQ(fb.edge_hits({1, 2}), 1u);
    // Body: JUMPDEST 1 + PUSH1 3 + SWAP1 3 + SUB 3 + DUP1 3 + PUSH1 3 + JUMPI 10 = 26.
    EXPECT_EQ(fb.edge_gas({1, 1}), 4 * 26);
    EXPECT_EQ(fb.edge_gas({0, 1}), 3);
    EXPECT_EQ(fb.terminal_gas, 2);
    EXPECT_EQ(fb.path_length(), 6u);
    expect_identity(r.result);
}

TEST(evm, determinism)
{
    const auto code = assemble("PUSH1 05 JUMPDEST PUSH1 01 SWAP1 SUB DUP1 PUSH1 02 JUMPI PUSH1 01 PUSH1 00 SSTORE");
    EXPECT_EQ(run(code).result, run(code).result);
}

TEST(evm, trace_lines)
{
    std::vector<std::string> lines;
    ExecutionOptions options;
    options.trace = [&](const TraceStep& s) { lines.push_back(trace_line(s)); };
    const auto r = run(assemble("PUSH1 01 PUSH1 00 SSTORE STOP"), {}, 100000, test_world(), options);
    ASSERT_EQ(lines.size(), 4u);
    const auto sstore = nlohmann::json::parse(lines[2]);
    EXPECT_EQ(sstore["pc"], 4);
    EXPECT_EQ(sstore["op"], 0x55);
    EXPECT_EQ(sstore["opName"], "SSTORE");
    EXPECT_EQ(sstore["gasCost"], "0x4e20");
    EXPECT_EQ(sstore["depth"], 0);
    EXPECT_EQ(sstore["stack"], (nlohmann::json{"0x1", "0x0"}));
    EXPECT_EQ(sstore["gas"], "0x" + [] {
        std::ostringstream os;
        os << std::hex << (100000 - 21000 - 6);
        return os.str();
    }());
}

TEST(evm, stack_discipline_follows_signatures)
{
    std::vector<TraceStep> steps;
    ExecutionOptions options;
    options.trace = [&](const TraceStep& s) { steps.push_back(s); };
    const auto table = test::load_json("tests/data/gas_snippets.json");
    for (const auto& row : table)
    {
        if (row["status"] != "SUCCESS" || row["is_create"].get<bool>())
            continue;
        steps.clear();
        run(from_hex(row["code"].get<std::string>()), from_hex(row["calldata"].get<std::string>()),
            row["gas_limit"].get<Gas>(), test_world(), options);
        for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        {
            const auto& e = schedule_entry(steps[i].opcode);
            EXPECT_EQ(steps[i + 1].stack.size(), steps[i].stack.size() - e.pops + e.pushes)
                << row["name"] << " at pc " << steps[i].pc;
        }
    }
}

TEST(evm, random_programs_keep_accounting_identity)
{
    std::mt19937_64 rng{5};
    const std::array<std::uint8_t, 12> hot = {op::JUMPDEST, op::JUMP, op::JUMPI, op::PUSH1, op::PUSH1, op::DUP1,
                                              op::SSTORE, op::MSTORE, op::SHA3, op::CALL, op::ADD, op::POP};
    for (int t = 0; t < 3000; ++t)
    {
        Bytes code(rng() % 64);
        for (auto& b : code)
            b = rng() % 3 ? hot[rng() % hot.size()] : static_cast<std::uint8_t>(rng() % 32);
        const auto r = run(code, {}, 200000);
        expect_identity(r.result);
        if (HasFailure())
        {
            ADD_FAILURE() << "code " << to_hex(code);
            return;
        }
    }
}

TEST(evm, memory_limit_is_out_of_gas)
{
    const auto r = run("PUSH1 01 PUSH5 0100000000 MSTORE", {}, 10'000'000);
    EXPECT_EQ(r.result.status, ExecutionStatus::out_of_gas);
}
