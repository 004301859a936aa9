// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace vgas {

namespace op {
// Opcodes referenced by name outside the table.
inline constexpr std::uint8_t STOP = 0x00;
inline constexpr std::uint8_t ADD = 0x01;
inline constexpr std::uint8_t EXP = 0x0a;
inline constexpr std::uint8_t EQ = 0x14;
inline constexpr std::uint8_t SHA3 = 0x20;
inline constexpr std::uint8_t CALLVALUE = 0x34;
inline constexpr std::uint8_t POP = 0x50;
inline constexpr std::uint8_t MSTORE = 0x52;
inline constexpr std::uint8_t SSTORE = 0x55;
inline constexpr std::uint8_t JUMP = 0x56;
inline constexpr std::uint8_t JUMPI = 0x57;
inline constexpr std::uint8_t JUMPDEST = 0x5b;
inline constexpr std::uint8_t PUSH1 = 0x60;
inline constexpr std::uint8_t PUSH2 = 0x61;
inline constexpr std::uint8_t PUSH4 = 0x63;
inline constexpr std::uint8_t PUSH32 = 0x7f;
inline constexpr std::uint8_t DUP1 = 0x80;
inline constexpr std::uint8_t SWAP1 = 0x90;
inline constexpr std::uint8_t LOG0 = 0xa0;
inline constexpr std::uint8_t CALL = 0xf1;
inline constexpr std::uint8_t RETURN = 0xf3;
inline constexpr std::uint8_t REVERT = 0xfd;
inline constexpr std::uint8_t INVALID = 0xfe;
inline constexpr std::uint8_t SELFDESTRUCT = 0xff;
}  // namespace op

/// One row of the fee schedule (Petersburg, i.e. the last pre-Istanbul fork).
struct GasScheduleEntry
{
    std::uint8_t opcode = op::INVALID;
    const char* name = "INVALID";
    Gas base_cost = kAllRemainingGas;
    bool dynamic = false;  ///< full cost depends on operands or state
    bool defined = false;
    std::uint8_t pops = 0;
    std::uint8_t pushes = 0;
};

namespace detail {

struct ScheduleTable
{
    std::array<GasScheduleEntry, 256> rows{};

    constexpr ScheduleTable()
    {
        for (int i = 0; i < 256; ++i)
            rows[static_cast<std::size_t>(i)].opcode = static_cast<std::uint8_t>(i);

        auto set = [this](std::uint8_t code, const char* name, Gas gas, std::uint8_t pops,
                          std::uint8_t pushes, bool dynamic = false) {
            rows[code] = GasScheduleEntry{code, name, gas, dynamic, true, pops, pushes};
        };

        set(0x00, "STOP", 0, 0, 0);
        set(0x01, "ADD", 3, 2, 1);
        set(0x02, "MUL", 5, 2, 1);
        set(0x03, "SUB", 3, 2, 1);
        set(0x04, "DIV", 5, 2, 1);
        set(0x05, "SDIV", 5, 2, 1);
        set(0x06, "MOD", 5, 2, 1);
        set(0x07, "SMOD", 5, 2, 1);
        set(0x08, "ADDMOD", 8, 3, 1);
        set(0x09, "MULMOD", 8, 3, 1);
        set(0x0a, "EXP", 10, 2, 1, true);
        set(0x0b, "SIGNEXTEND", 5, 2, 1);

        set(0x10, "LT", 3, 2, 1);
        set(0x11, "GT", 3, 2, 1);
        set(0x12, "SLT", 3, 2, 1);
        set(0x13, "SGT", 3, 2, 1);
        set(0x14, "EQ", 3, 2, 1);
        set(0x15, "ISZERO", 3, 1, 1);
        set(0x16, "AND", 3, 2, 1);
        set(0x17, "OR", 3, 2, 1);
        set(0x18, "XOR", 3, 2, 1);
        set(0x19, "NOT", 3, 1, 1);
        set(0x1a, "BYTE", 3, 2, 1);
        set(0x1b, "SHL", 3, 2, 1);
        set(0x1c, "SHR", 3, 2, 1);
        set(0x1d, "SAR", 3, 2, 1);

        set(0x20, "SHA3", 30, 2, 1, true);

        set(0x30, "ADDRESS", 2, 0, 1);
        set(0x31, "BALANCE", 400, 1, 1);
        set(0x32, "ORIGIN", 2, 0, 1);
        set(0x33, "CALLER", 2, 0, 1);
        set(0x34, "CALLVALUE", 2, 0, 1);
        set(0x35, "CALLDATALOAD", 3, 1, 1);
        set(0x36, "CALLDATASIZE", 2, 0, 1);
        set(0x37, "CALLDATACOPY", 3, 3, 0, true);
        set(0x38, "CODESIZE", 2, 0, 1);
        set(0x39, "CODECOPY", 3, 3, 0, true);
        set(0x3a, "GASPRICE", 2, 0, 1);
        set(0x3b, "EXTCODESIZE", 700, 1, 1);
        set(0x3c, "EXTCODECOPY", 700, 4, 0, true);
        set(0x3d, "RETURNDATASIZE", 2, 0, 1);
        set(0x3e, "RETURNDATACOPY", 3, 3, 0, true);
        set(0x3f, "EXTCODEHASH", 400, 1, 1);

        set(0x40, "BLOCKHASH", 20, 1, 1);
        set(0x41, "COINBASE", 2, 0, 1);
        set(0x42, "TIMESTAMP", 2, 0, 1);
        set(0x43, "NUMBER", 2, 0, 1);
        set(0x44, "DIFFICULTY", 2, 0, 1);
        set(0x45, "GASLIMIT", 2, 0, 1);

        set(0x50, "POP", 2, 1, 0);
        set(0x51, "MLOAD", 3, 1, 1, true);
        set(0x52, "MSTORE", 3, 2, 0, true);
        set(0x53, "MSTORE8", 3, 2, 0, true);
        set(0x54, "SLOAD", 200, 1, 1);
        set(0x55, "SSTORE", 0, 2, 0, true);
        set(0x56, "JUMP", 8, 1, 0);
        set(0x57, "JUMPI", 10, 2, 0);
        set(0x58, "PC", 2, 0, 1);
        set(0x59, "MSIZE", 2, 0, 1);
        set(0x5a, "GAS", 2, 0, 1);
        set(0x5b, "JUMPDEST", 1, 0, 0);

        constexpr const char* push_names[] = {
            "PUSH1", "PUSH2", "PUSH3", "PUSH4", "PUSH5", "PUSH6", "PUSH7", "PUSH8",
            "PUSH9", "PUSH10", "PUSH11", "PUSH12", "PUSH13", "PUSH14", "PUSH15", "PUSH16",
            "PUSH17", "PUSH18", "PUSH19", "PUSH20", "PUSH21", "PUSH22", "PUSH23", "PUSH24",
            "PUSH25", "PUSH26", "PUSH27", "PUSH28", "PUSH29", "PUSH30", "PUSH31", "PUSH32"};
        constexpr const char* dup_names[] = {
            "DUP1", "DUP2", "DUP3", "DUP4", "DUP5", "DUP6", "DUP7", "DUP8",
            "DUP9", "DUP10", "DUP11", "DUP12", "DUP13", "DUP14", "DUP15", "DUP16"};
        constexpr const char* swap_names[] = {
            "SWAP1", "SWAP2", "SWAP3", "SWAP4", "SWAP5", "SWAP6", "SWAP7", "SWAP8",
            "SWAP9", "SWAP10", "SWAP11", "SWAP12", "SWAP13", "SWAP14", "SWAP15", "SWAP16"};
        for (int i = 0; i < 32; ++i)
            set(static_cast<std::uint8_t>(0x60 + i), push_names[i], 3, 0, 1);
        for (int i = 0; i < 16; ++i)
        {
            const auto n = static_cast<std::uint8_t>(i + 1);
            set(static_cast<std::uint8_t>(0x80 + i), dup_names[i], 3, n, static_cast<std::uint8_t>(n + 1));
            set(static_cast<std::uint8_t>(0x90 + i), swap_names[i], 3, static_cast<std::uint8_t>(n + 1),
                static_cast<std::uint8_t>(n + 1));
        }

        constexpr const char* log_names[] = {"LOG0", "LOG1", "LOG2", "LOG3", "LOG4"};
        for (int n = 0; n <= 4; ++n)
            set(static_cast<std::uint8_t>(0xa0 + n), log_names[n], 375 + 375 * n,
                static_cast<std::uint8_t>(2 + n), 0, true);

        set(0xf0, "CREATE", 32000, 3, 1, true);
        set(0xf1, "CALL", 700, 7, 1, true);
        set(0xf2, "CALLCODE", 700, 7, 1, true);
        set(0xf3, "RETURN", 0, 2, 0, true);
        set(0xf4, "DELEGATECALL", 700, 6, 1, true);
        set(0xf5, "CREATE2", 32000, 4, 1, true);
        set(0xfa, "STATICCALL", 700, 6, 1, true);
        set(0xfd, "REVERT", 0, 2, 0, true);
        set(0xff, "SELFDESTRUCT", 5000, 1, 0, true);
    }
};

inline constexpr ScheduleTable schedule_table{};

}  // namespace detail

inline constexpr const GasScheduleEntry& schedule_entry(std::uint8_t opcode) noexcept
{
    return detail::schedule_table.rows[opcode];
}

/// Static (operand-independent) gas of an opcode; kAllRemainingGas for INVALID
/// and undefined opcodes.
inline constexpr Gas static_gas(std::uint8_t opcode) noexcept
{
    return schedule_entry(opcode).base_cost;
}

inline constexpr bool is_push(std::uint8_t opcode) noexcept
{
    return opcode >= op::PUSH1 && opcode <= op::PUSH32;
}

inline constexpr std::size_t push_width(std::uint8_t opcode) noexcept
{
    return is_push(opcode) ? static_cast<std::size_t>(opcode - op::PUSH1 + 1) : 0;
}

inline constexpr bool is_defined(std::uint8_t opcode) noexcept
{
    return schedule_entry(opcode).defined;
}

/// Ends a basic block: control cannot fall through past it unconditionally.
inline constexpr bool is_terminator(std::uint8_t opcode) noexcept
{
    switch (opcode)
    {
    case op::JUMP:
    case op::JUMPI:
    case op::STOP:
    case op::RETURN:
    case op::REVERT:
    case op::SELFDESTRUCT:
    case op::INVALID:
        return true;
    default:
        return !is_defined(opcode);
    }
}

/// Terminators after which there is no fall-through successor.
inline constexpr bool halts_or_jumps(std::uint8_t opcode) noexcept
{
    return is_terminator(opcode) && opcode != op::JUMPI;
}

inline std::string opcode_name(std::uint8_t opcode)
{
    if (is_defined(opcode))
        return schedule_entry(opcode).name;
    if (opcode == op::INVALID)
        return "INVALID";
    std::ostringstream os;
    os << "INVALID_0x" << std::hex << static_cast<int>(opcode);
    return os.str();
}

struct Instruction
{
    std::size_t offset = 0;
    std::uint8_t opcode = op::STOP;
    Bytes immediate;         ///< PUSH payload, zero-padded when the code ends early
    bool truncated = false;  ///< PUSH payload ran past the end of the code

    [[nodiscard]] std::size_t size() const noexcept { return 1 + immediate.size(); }
    [[nodiscard]] std::size_t next_offset() const noexcept { return offset + size(); }
    [[nodiscard]] std::string name() const { return opcode_name(opcode); }

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

inline std::vector<Instruction> disassemble(ByteView code)
{
    std::vector<Instruction> out;
    std::size_t pc = 0;
    while (pc < code.size())
    {
        Instruction ins;
        ins.offset = pc;
        ins.opcode = code[pc];
        const auto width = push_width(ins.opcode);
        if (width > 0)
        {
            const auto available = std::min(width, code.size() - pc - 1);
            ins.immediate.assign(code.begin() + static_cast<std::ptrdiff_t>(pc + 1),
                                 code.begin() + static_cast<std::ptrdiff_t>(pc + 1 + available));
            if (available < width)
            {
                ins.immediate.resize(width, 0);
                ins.truncated = true;
            }
        }
        pc += 1 + width;
        out.push_back(std::move(ins));
    }
    return out;
}

/// Inverse of disassemble for code without a truncated trailing PUSH.
inline Bytes reassemble(std::span<const Instruction> instructions)
{
    Bytes out;
    for (const auto& ins : instructions)
    {
        out.push_back(ins.opcode);
        out.insert(out.end(), ins.immediate.begin(), ins.immediate.end());
    }
    return out;
}

/// Offsets of every JUMPDEST reachable as an instruction start (i.e. not
/// hidden inside PUSH data). Indexed by byte offset.
inline std::vector<bool> jumpdest_map(ByteView code)
{
    std::vector<bool> valid(code.size(), false);
    for (std::size_t pc = 0; pc < code.size(); pc += 1 + push_width(code[pc]))
        if (code[pc] == op::JUMPDEST)
            valid[pc] = true;
    return valid;
}

class AssemblyError : public Error {
public:
    using Error::Error;
};

/// Assembles whitespace-separated mnemonics. A PUSHn mnemonic takes the next
/// token as a hex immediate (left-padded to n bytes); a bare hex token after
/// `PUSH` picks the smallest width. Intended for tests and small snippets.
inline Bytes assemble(std::string_view source)
{
    static const auto by_name = [] {
        std::vector<std::pair<std::string, std::uint8_t>> names;
        for (int i = 0; i < 256; ++i)
            if (is_defined(static_cast<std::uint8_t>(i)))
                names.emplace_back(schedule_entry(static_cast<std::uint8_t>(i)).name, static_cast<std::uint8_t>(i));
        names.emplace_back("INVALID", op::INVALID);
        return names;
    }();

    std::istringstream in{std::string{source}};
    Bytes out;
    std::string token;
    while (in >> token)
    {
        for (auto& c : token)
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

        auto immediate = [&in, &token]() {
            std::string arg;
            if (!(in >> arg))
                throw AssemblyError(token + " without an immediate");
            if (arg.starts_with("0x") || arg.starts_with("0X"))
                arg = arg.substr(2);
            if (arg.size() % 2)
                arg = "0" + arg;
            auto value = from_hex(arg);
            if (value.empty())
                value.push_back(0);
            if (value.size() > 32)
                throw AssemblyError("immediate wider than 32 bytes: " + arg);
            return value;
        };

        if (token == "PUSH")
        {
            const auto value = immediate();
            out.push_back(static_cast<std::uint8_t>(op::PUSH1 + value.size() - 1));
            out.insert(out.end(), value.begin(), value.end());
            continue;
        }

        auto it = std::find_if(by_name.begin(), by_name.end(), [&](const auto& p) { return p.first == token; });
        if (it == by_name.end())
            throw AssemblyError("unknown mnemonic: " + token);
        out.push_back(it->second);

        if (const auto width = push_width(it->second); width > 0)
        {
            const auto value = immediate();
            if (value.size() > width)
                throw AssemblyError(token + " immediate too wide");
            out.insert(out.end(), width - value.size(), 0);
            out.insert(out.end(), value.begin(), value.end());
        }
    }
    return out;
}

inline std::string format_instruction(const Instruction& ins)
{
    std::ostringstream os;
    os << std::hex;
    os.width(4);
    os.fill('0');
    os << ins.offset << ": " << ins.name();
    if (!ins.immediate.empty())
        os << " 0x" << to_hex(ins.immediate);
    if (ins.truncated)
        os << " (truncated)";
    return os.str();
}

}  // namespace vgas
