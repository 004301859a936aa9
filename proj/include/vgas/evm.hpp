// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bytecode.hpp"
#include "keccak.hpp"
#include "wcfg.hpp"
#include "word.hpp"

namespace vgas {

// Transaction-level fees.
inline constexpr Gas kTxBaseGas = 21000;
inline constexpr Gas kTxCreateGas = 32000;
inline constexpr Gas kTxDataZeroGas = 4;
inline constexpr Gas kTxDataNonZeroGas = 68;

// Storage.
inline constexpr Gas kSstoreSetGas = 20000;
inline constexpr Gas kSstoreResetGas = 5000;
inline constexpr Gas kSstoreClearRefund = 15000;

// Message calls.
inline constexpr Gas kCallGas = 700;
inline constexpr Gas kCallValueTransferGas = 9000;
inline constexpr Gas kCallNewAccountGas = 25000;
inline constexpr Gas kCallStipend = 2300;

// Operand-dependent surcharges.
inline constexpr Gas kMemoryGas = 3;
inline constexpr Gas kQuadCoeffDiv = 512;
inline constexpr Gas kCopyGas = 3;
inline constexpr Gas kSha3WordGas = 6;
inline constexpr Gas kExpByteGas = 50;
inline constexpr Gas kLogDataGas = 8;
inline constexpr Gas kCodeDepositGas = 200;

inline constexpr std::size_t kMaxStackDepth = 1024;

inline Gas intrinsic_gas(ByteView data, bool is_create) noexcept
{
    Gas g = kTxBaseGas + (is_create ? kTxCreateGas : 0);
    for (const auto b : data)
        g += b == 0 ? kTxDataZeroGas : kTxDataNonZeroGas;
    return g;
}

inline constexpr Gas memory_cost(std::uint64_t words) noexcept
{
    const auto w = static_cast<Gas>(words);
    return kMemoryGas * w + w * w / kQuadCoeffDiv;
}

/// Gas to grow active memory from `old_words` to `new_words` 32-byte words.
inline constexpr Gas memory_expansion_cost(std::uint64_t old_words, std::uint64_t new_words) noexcept
{
    return new_words <= old_words ? 0 : memory_cost(new_words) - memory_cost(old_words);
}

struct SstoreCost
{
    Gas gas = 0;
    Gas refund = 0;

    friend bool operator==(const SstoreCost&, const SstoreCost&) = default;
};

/// Pre-Istanbul (Petersburg) rule: set 20000, reset 5000, 15000 refund per clear.
inline SstoreCost sstore_cost(const Word& current, const Word& next)
{
    if (current == 0 && next != 0)
        return {kSstoreSetGas, 0};
    if (current != 0 && next == 0)
        return {kSstoreResetGas, kSstoreClearRefund};
    return {kSstoreResetGas, 0};
}

/// Caller-side CALL price excluding memory expansion. The 2300 stipend handed to
/// a value-bearing callee is not charged to the caller.
inline Gas call_cost(const Word& value, bool dest_exists) noexcept
{
    Gas g = kCallGas;
    if (value != 0)
    {
        g += kCallValueTransferGas;
        if (!dest_exists)
            g += kCallNewAccountGas;
    }
    return g;
}

/// Block and transaction context visible to the contract.
struct ExecutionEnv
{
    Address coinbase = 0;
    Word difficulty = 0;
    Word block_number = 0;
    Word timestamp = 0;
    Address sender = 0;
    Address origin = 0;
    Word call_value = 0;
    Word gas_price = 0;
    Gas gas_limit = kDefaultGasLimit;
};

/// The contract under test plus the accounts it can observe.
struct WorldState
{
    Address contract_address = word_from_be(from_hex("0f572e5295c57f15886f9b263e2f6d2d6c7b5ec6"));
    std::map<Word, Word> storage;
    Word contract_balance = 0;
    Word caller_balance = 0;
    std::map<Address, Word> external_balances;
    std::set<Address> existing;  ///< external accounts that already exist

    [[nodiscard]] Word load(const Word& key) const
    {
        const auto it = storage.find(key);
        return it == storage.end() ? Word{0} : it->second;
    }

    [[nodiscard]] bool exists(const Address& a, const Address& sender) const
    {
        if (a == contract_address || a == sender)
            return true;
        if (a >= 1 && a <= 8)  // precompiles
            return true;
        return existing.contains(a);
    }
};

enum class ExecutionStatus { success, revert, out_of_gas, invalid_op, stack_error, bad_jump };

inline const char* to_string(ExecutionStatus s) noexcept
{
    switch (s)
    {
    case ExecutionStatus::success: return "SUCCESS";
    case ExecutionStatus::revert: return "REVERT";
    case ExecutionStatus::out_of_gas: return "OUT_OF_GAS";
    case ExecutionStatus::invalid_op: return "INVALID_OP";
    case ExecutionStatus::stack_error: return "STACK_ERROR";
    case ExecutionStatus::bad_jump: return "BAD_JUMP";
    }
    return "UNKNOWN";
}

struct EdgeStat
{
    Edge edge;
    Gas gas = 0;
    std::uint64_t hits = 0;

    friend bool operator==(const EdgeStat&, const EdgeStat&) = default;
};

/// Per-execution measurements. Accounting identity:
///   sum(edge gas) + terminal_gas + intrinsic_gas - refund == total_gas
struct Feedback
{
    Gas total_gas = 0;
    Gas intrinsic_gas = 0;
    Gas terminal_gas = 0;  ///< gas charged in the block where execution halted
    Gas refund = 0;        ///< refund actually applied
    ExecutionStatus status = ExecutionStatus::success;
    std::vector<EdgeStat> edges;  ///< sorted by edge
    std::uint64_t steps = 0;

    [[nodiscard]] const EdgeStat* find(Edge e) const noexcept
    {
        const auto it = std::lower_bound(edges.begin(), edges.end(), e,
                                         [](const EdgeStat& s, const Edge& k) { return s.edge < k; });
        return it != edges.end() && it->edge == e ? &*it : nullptr;
    }
    [[nodiscard]] Gas edge_gas(Edge e) const noexcept
    {
        const auto* s = find(e);
        return s ? s->gas : 0;
    }
    [[nodiscard]] std::uint64_t edge_hits(Edge e) const noexcept
    {
        const auto* s = find(e);
        return s ? s->hits : 0;
    }
    [[nodiscard]] std::uint64_t path_length() const noexcept
    {
        std::uint64_t n = 0;
        for (const auto& s : edges)
            n += s.hits;
        return n;
    }

    friend bool operator==(const Feedback&, const Feedback&) = default;
};

struct ExecutionResult
{
    ExecutionStatus status = ExecutionStatus::success;
    Gas gas_used = 0;
    Gas gas_used_raw = 0;
    Gas refund = 0;
    Bytes return_data;
    Feedback feedback;

    friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

/// Code plus everything derived from it once, shared by many executions.
struct Program
{
    Bytes code;
    Wcfg wcfg;
    std::vector<bool> jumpdests;
    std::vector<Word> immediates;  ///< PUSH value by offset, zero-padded past the end of code

    Program() = default;
    explicit Program(Bytes c) : code(std::move(c)), wcfg(build_wcfg(code)), jumpdests(jumpdest_map(code))
    {
        immediates.resize(code.size());
        for (const auto& ins : wcfg.instructions())
            if (is_push(ins.opcode))
                immediates[ins.offset] = word_from_be(ins.immediate);
    }
};

struct TraceStep
{
    std::size_t pc = 0;
    std::uint8_t opcode = 0;
    Gas gas = 0;       ///< execution gas left before the step
    Gas gas_cost = 0;  ///< charged by the step
    std::vector<Word> stack;  ///< bottom first, before the step
    int depth = 0;
    BlockId block = 0;
};

/// One JSON object per step: pc, op, gas, gasCost, stack, depth, opName.
inline std::string trace_line(const TraceStep& s)
{
    auto hex = [](auto v) {
        std::ostringstream os;
        os << "0x" << std::hex << v;
        return os.str();
    };
    std::string out = "{\"pc\":" + std::to_string(s.pc) + ",\"op\":" + std::to_string(s.opcode)
                      + ",\"gas\":\"" + hex(s.gas) + "\",\"gasCost\":\"" + hex(s.gas_cost)
                      + "\",\"stack\":[";
    for (std::size_t i = 0; i < s.stack.size(); ++i)
    {
        if (i)
            out += ',';
        out += "\"" + hex(s.stack[i]) + "\"";
    }
    out += "],\"depth\":" + std::to_string(s.depth) + ",\"opName\":\"" + opcode_name(s.opcode) + "\"}";
    return out;
}

struct ExecutionOptions
{
    bool is_create = false;
    bool call_stub_succeeds = true;
    bool check_gas_conservation = false;  ///< verify charges against the gas counter every step
    std::function<void(const TraceStep&)> trace;
};

class GasAccountingError : public Error {
public:
    using Error::Error;
};

namespace detail {

class Interpreter {
public:
    Interpreter(const Program& program, ByteView calldata, const ExecutionEnv& env, WorldState& world,
                const ExecutionOptions& options)
        : program_(program), code_(program.code), calldata_(calldata), env_(env), world_(world), options_(options)
    {
        stack_.reserve(kMaxStackDepth);
    }

    ExecutionResult run()
    {
        ExecutionResult result;
        const auto intrinsic = intrinsic_gas(tx_data(), options_.is_create);
        auto& fb = result.feedback;

        if (intrinsic > env_.gas_limit)
        {
            fb.intrinsic_gas = env_.gas_limit;
            result.status = ExecutionStatus::out_of_gas;
            result.gas_used = result.gas_used_raw = env_.gas_limit;
            fb.status = result.status;
            fb.total_gas = result.gas_used;
            return result;
        }

        fb.intrinsic_gas = intrinsic;
        const Gas exec_limit = env_.gas_limit - intrinsic;
        gas_left_ = exec_limit;

        const auto status = execute();

        if (status == ExecutionStatus::out_of_gas || status == ExecutionStatus::invalid_op
            || status == ExecutionStatus::stack_error || status == ExecutionStatus::bad_jump)
        {
            charge_block(gas_left_);
            gas_left_ = 0;
        }

        const Gas exec_used = exec_limit - gas_left_;
        if (options_.check_gas_conservation && exec_used != charged_total_)
            throw GasAccountingError("gas counter disagrees with summed charges");

        result.status = status;
        result.gas_used_raw = intrinsic + exec_used;
        if (status == ExecutionStatus::success)
        {
            result.refund = std::min(refund_, result.gas_used_raw / 2);
            world_ = std::move(working_);
        }
        result.gas_used = result.gas_used_raw - result.refund;
        result.return_data = std::move(output_);

        fb.status = status;
        fb.total_gas = result.gas_used;
        fb.refund = result.refund;
        fb.terminal_gas = block_gas_;
        fb.steps = steps_;
        fb.edges.reserve(edge_stats_.size());
        for (const auto& [key, stat] : edge_stats_)
            fb.edges.push_back({Edge{static_cast<BlockId>(key >> 32), static_cast<BlockId>(key & 0xffffffffu)},
                                stat.first, stat.second});
        std::sort(fb.edges.begin(), fb.edges.end(),
                  [](const EdgeStat& a, const EdgeStat& b) { return a.edge < b.edge; });
        return result;
    }

private:
    bool charge(Gas amount)
    {
        if (amount > gas_left_)
            return false;
        gas_left_ -= amount;
        charge_block(amount);
        return true;
    }

    void charge_block(Gas amount)
    {
        block_gas_ += amount;
        charged_total_ += amount;
        step_cost_ += amount;
    }

    void enter_block(BlockId next)
    {
        auto& stat = edge_stats_[static_cast<std::uint64_t>(block_) << 32 | next];
        stat.first += block_gas_;
        stat.second += 1;
        block_ = next;
        block_gas_ = 0;
    }

    Word pop()
    {
        Word w = std::move(stack_.back());
        stack_.pop_back();
        return w;
    }

    void push(Word w) { stack_.push_back(std::move(w)); }

    static std::uint64_t words_for(std::uint64_t bytes) noexcept { return (bytes + 31) / 32; }

    /// Charges expansion for [offset, offset+size); false on out-of-gas.
    bool touch_memory(const Word& offset, const Word& size)
    {
        if (size == 0)
            return true;
        constexpr std::uint64_t limit = std::uint64_t{1} << 32;
        if (offset >= limit || size >= limit)
            return false;
        const auto end = static_cast<std::uint64_t>(offset) + static_cast<std::uint64_t>(size);
        const auto new_words = words_for(end);
        if (new_words > memory_words_)
        {
            if (!charge(memory_expansion_cost(memory_words_, new_words)))
                return false;
            memory_words_ = new_words;
            memory_.resize(static_cast<std::size_t>(new_words * 32), 0);
        }
        return true;
    }

    static std::size_t as_size(const Word& w) { return static_cast<std::size_t>(w); }

    /// Copies `size` bytes from `src` starting at `src_offset` (zero-filled
    /// past its end) into memory at `mem_offset`. Memory must already be touched.
    void copy_to_memory(std::size_t mem_offset, ByteView src, const Word& src_offset, std::size_t size)
    {
        auto* dst = memory_.data() + mem_offset;
        std::size_t avail = 0;
        if (src_offset < src.size())
        {
            const auto start = as_size(src_offset);
            avail = std::min(size, src.size() - start);
            std::copy_n(src.data() + start, avail, dst);
        }
        std::fill(dst + avail, dst + size, std::uint8_t{0});
    }

    static Word signed_div(const Word& a, const Word& b)
    {
        if (b == 0)
            return 0;
        const bool na = is_negative(a), nb = is_negative(b);
        const Word q = (na ? negate(a) : a) / (nb ? negate(b) : b);
        return na != nb ? negate(q) : q;
    }

    static Word signed_mod(const Word& a, const Word& b)
    {
        if (b == 0)
            return 0;
        const bool na = is_negative(a);
        const Word r = (na ? negate(a) : a) % (is_negative(b) ? negate(b) : b);
        return na ? negate(r) : r;
    }

    static Word exp(Word base, Word exponent)
    {
        Word result = 1;
        while (exponent != 0)
        {
            if ((exponent & 1) != 0)
                result *= base;
            base *= base;
            exponent >>= 1;
        }
        return result;
    }

    ExecutionStatus execute()
    {
        working_ = world_;
        if (code_.empty())
            return ExecutionStatus::success;

        std::size_t pc = 0;
        block_ = program_.wcfg.block_at_unchecked(0);
        const auto& wcfg = program_.wcfg;

        while (true)
        {
            if (pc >= code_.size())
                return ExecutionStatus::success;

            const auto opcode = code_[pc];
            const auto& entry = schedule_entry(opcode);
            ++steps_;
            step_cost_ = 0;

            std::optional<TraceStep> trace;
            if (options_.trace)
                trace = TraceStep{pc, opcode, gas_left_, 0, stack_, 0, block_};
            auto emit = [&] {
                if (trace)
                {
                    trace->gas_cost = step_cost_;
                    options_.trace(*trace);
                }
            };

            if (!entry.defined)
            {
                emit();
                return ExecutionStatus::invalid_op;
            }
            if (stack_.size() < entry.pops)
            {
                emit();
                return ExecutionStatus::stack_error;
            }
            if (stack_.size() - entry.pops + entry.pushes > kMaxStackDepth)
            {
                emit();
                return ExecutionStatus::stack_error;
            }
            if (!charge(entry.base_cost))
            {
                emit();
                return ExecutionStatus::out_of_gas;
            }

            std::size_t next_pc = pc + 1;
            bool jumped = false;
            std::optional<ExecutionStatus> halt;

            switch (opcode)
            {
            case 0x00:  // STOP
                halt = ExecutionStatus::success;
                break;
            case 0x01: { auto a = pop(); auto b = pop(); push(a + b); break; }
            case 0x02: { auto a = pop(); auto b = pop(); push(a * b); break; }
            case 0x03: { auto a = pop(); auto b = pop(); push(a - b); break; }
            case 0x04: { auto a = pop(); auto b = pop(); push(b == 0 ? Word{0} : a / b); break; }
            case 0x05: { auto a = pop(); auto b = pop(); push(signed_div(a, b)); break; }
            case 0x06: { auto a = pop(); auto b = pop(); push(b == 0 ? Word{0} : a % b); break; }
            case 0x07: { auto a = pop(); auto b = pop(); push(signed_mod(a, b)); break; }
            case 0x08:
            case 0x09: {
                const Word512 a{pop()};
                const Word512 b{pop()};
                const Word512 m{pop()};
                if (m == 0)
                    push(0);
                else
                    push(static_cast<Word>(opcode == 0x08 ? (a + b) % m : (a * b) % m));
                break;
            }
            case 0x0a: {  // EXP
                auto base = pop();
                auto exponent = pop();
                if (!charge(kExpByteGas * byte_length(exponent)))
                    halt = ExecutionStatus::out_of_gas;
                else
                    push(exp(base, exponent));
                break;
            }
            case 0x0b: {  // SIGNEXTEND
                auto b = pop();
                auto x = pop();
                if (b < 31)
                {
                    const unsigned bit = static_cast<unsigned>(b) * 8 + 7;
                    const Word mask = (Word{1} << bit) - 1;
                    x = bit_test(x, bit) ? (x | ~mask) : (x & mask);
                }
                push(x);
                break;
            }
            case 0x10: { auto a = pop(); auto b = pop(); push(a < b ? 1 : 0); break; }
            case 0x11: { auto a = pop(); auto b = pop(); push(a > b ? 1 : 0); break; }
            case 0x12: { auto a = pop() ^ kSignBit; auto b = pop() ^ kSignBit; push(a < b ? 1 : 0); break; }
            case 0x13: { auto a = pop() ^ kSignBit; auto b = pop() ^ kSignBit; push(a > b ? 1 : 0); break; }
            case 0x14: { auto a = pop(); auto b = pop(); push(a == b ? 1 : 0); break; }
            case 0x15: { auto a = pop(); push(a == 0 ? 1 : 0); break; }
            case 0x16: { auto a = pop(); auto b = pop(); push(a & b); break; }
            case 0x17: { auto a = pop(); auto b = pop(); push(a | b); break; }
            case 0x18: { auto a = pop(); auto b = pop(); push(a ^ b); break; }
            case 0x19: { auto a = pop(); push(~a); break; }
            case 0x1a: {  // BYTE
                auto i = pop();
                auto x = pop();
                push(i < 32 ? (x >> (8 * (31 - static_cast<unsigned>(i)))) & 0xff : Word{0});
                break;
            }
            case 0x1b: { auto s = pop(); auto v = pop(); push(s < 256 ? v << static_cast<unsigned>(s) : Word{0}); break; }
            case 0x1c: { auto s = pop(); auto v = pop(); push(s < 256 ? v >> static_cast<unsigned>(s) : Word{0}); break; }
            case 0x1d: {  // SAR
                auto s = pop();
                auto v = pop();
                const bool neg = is_negative(v);
                if (s >= 256)
                    push(neg ? kWordMax : Word{0});
                else
                {
                    const auto n = static_cast<unsigned>(s);
                    Word r = v >> n;
                    if (neg && n > 0)
                        r |= ~(kWordMax >> n);
                    push(r);
                }
                break;
            }
            case 0x20: {  // SHA3
                auto offset = pop();
                auto size = pop();
                if (size >= (std::uint64_t{1} << 32)
                    || !charge(kSha3WordGas * static_cast<Gas>(words_for(static_cast<std::uint64_t>(size))))
                    || !touch_memory(offset, size))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                const auto n = as_size(size);
                const auto h = n == 0 ? keccak256(ByteView{}) : keccak256(ByteView{memory_}.subspan(as_size(offset), n));
                push(word_from_be(h));
                break;
            }
            case 0x30: push(working_.contract_address); break;
            case 0x31: {  // BALANCE
                auto a = pop() & kAddressMask;
                if (a == working_.contract_address)
                    push(working_.contract_balance);
                else if (a == env_.sender)
                    push(working_.caller_balance);
                else
                {
                    const auto it = working_.external_balances.find(a);
                    push(it == working_.external_balances.end() ? Word{0} : it->second);
                }
                break;
            }
            case 0x32: push(env_.origin); break;
            case 0x33: push(env_.sender); break;
            case 0x34: push(env_.call_value); break;
            case 0x35: {  // CALLDATALOAD
                auto offset = pop();
                std::array<std::uint8_t, 32> buf{};
                if (offset < calldata_.size())
                {
                    const auto o = as_size(offset);
                    for (std::size_t i = 0; i < 32 && o + i < calldata_.size(); ++i)
                        buf[i] = calldata_[o + i];
                }
                push(word_from_be(buf));
                break;
            }
            case 0x36: push(calldata_.size()); break;
            case 0x37:    // CALLDATACOPY
            case 0x39:    // CODECOPY
            case 0x3e: {  // RETURNDATACOPY
                auto mem_offset = pop();
                auto src_offset = pop();
                auto size = pop();
                if (size >= (std::uint64_t{1} << 32)
                    || !charge(kCopyGas * static_cast<Gas>(words_for(static_cast<std::uint64_t>(size))))
                    || !touch_memory(mem_offset, size))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                const ByteView src = opcode == 0x37 ? calldata_ : opcode == 0x39 ? ByteView{code_} : ByteView{return_buffer_};
                if (opcode == 0x3e && (src_offset > return_buffer_.size() || size > return_buffer_.size() - src_offset))
                {
                    halt = ExecutionStatus::invalid_op;
                    break;
                }
                if (size != 0)
                    copy_to_memory(as_size(mem_offset), src, src_offset, as_size(size));
                break;
            }
            case 0x38: push(code_.size()); break;
            case 0x3a: push(env_.gas_price); break;
            case 0x3b: {  // EXTCODESIZE: external accounts carry no code
                auto a = pop() & kAddressMask;
                push(a == working_.contract_address ? Word{code_.size()} : Word{0});
                break;
            }
            case 0x3c: {  // EXTCODECOPY
                auto a = pop() & kAddressMask;
                auto mem_offset = pop();
                auto src_offset = pop();
                auto size = pop();
                if (size >= (std::uint64_t{1} << 32)
                    || !charge(kCopyGas * static_cast<Gas>(words_for(static_cast<std::uint64_t>(size))))
                    || !touch_memory(mem_offset, size))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                const ByteView src = a == working_.contract_address ? ByteView{code_} : ByteView{};
                if (size != 0)
                    copy_to_memory(as_size(mem_offset), src, src_offset, as_size(size));
                break;
            }
            case 0x3d: push(return_buffer_.size()); break;
            case 0x3f: {  // EXTCODEHASH
                auto a = pop() & kAddressMask;
                if (a == working_.contract_address)
                    push(word_from_be(keccak256(ByteView{code_})));
                else
                    push(working_.exists(a, env_.sender) ? word_from_be(keccak256(ByteView{})) : Word{0});
                break;
            }
            case 0x40: pop(); push(0); break;  // BLOCKHASH: no history
            case 0x41: push(env_.coinbase); break;
            case 0x42: push(env_.timestamp); break;
            case 0x43: push(env_.block_number); break;
            case 0x44: push(env_.difficulty); break;
            case 0x45: push(env_.gas_limit); break;
            case 0x50: pop(); break;
            case 0x51: {  // MLOAD
                auto offset = pop();
                if (!touch_memory(offset, 32))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                push(word_from_be(ByteView{memory_}.subspan(as_size(offset), 32)));
                break;
            }
            case 0x52: {  // MSTORE
                auto offset = pop();
                auto value = pop();
                if (!touch_memory(offset, 32))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                const auto be = word_to_be(value);
                std::copy(be.begin(), be.end(), memory_.begin() + static_cast<std::ptrdiff_t>(as_size(offset)));
                break;
            }
            case 0x53: {  // MSTORE8
                auto offset = pop();
                auto value = pop();
                if (!touch_memory(offset, 1))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                memory_[as_size(offset)] = static_cast<std::uint8_t>(value & 0xff);
                break;
            }
            case 0x54: push(working_.load(pop())); break;
            case 0x55: {  // SSTORE
                auto key = pop();
                auto value = pop();
                const auto cost = sstore_cost(working_.load(key), value);
                if (!charge(cost.gas))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                refund_ += cost.refund;
                if (value == 0)
                    working_.storage.erase(key);
                else
                    working_.storage[key] = value;
                break;
            }
            case 0x56:    // JUMP
            case 0x57: {  // JUMPI
                auto dest = pop();
                const bool take = opcode == 0x56 || pop() != 0;
                if (take)
                {
                    if (dest >= code_.size() || !program_.jumpdests[as_size(dest)])
                    {
                        halt = ExecutionStatus::bad_jump;
                        break;
                    }
                    next_pc = as_size(dest);
                    jumped = true;
                }
                break;
            }
            case 0x58: push(pc); break;
            case 0x59: push(memory_words_ * 32); break;
            case 0x5a: push(static_cast<std::uint64_t>(gas_left_)); break;
            case 0x5b: break;  // JUMPDEST
            case 0xa0:
            case 0xa1:
            case 0xa2:
            case 0xa3:
            case 0xa4: {  // LOGn
                auto offset = pop();
                auto size = pop();
                for (int i = 0; i < opcode - 0xa0; ++i)
                    pop();
                if (size >= (std::uint64_t{1} << 32)
                    || !charge(kLogDataGas * static_cast<Gas>(static_cast<std::uint64_t>(size)))
                    || !touch_memory(offset, size))
                    halt = ExecutionStatus::out_of_gas;
                break;
            }
            case 0xf1:
                halt = call();
                break;
            case 0xf3:    // RETURN
            case 0xfd: {  // REVERT
                auto offset = pop();
                auto size = pop();
                if (!touch_memory(offset, size))
                {
                    halt = ExecutionStatus::out_of_gas;
                    break;
                }
                if (size != 0)
                    output_.assign(memory_.begin() + static_cast<std::ptrdiff_t>(as_size(offset)),
                                   memory_.begin() + static_cast<std::ptrdiff_t>(as_size(offset) + as_size(size)));
                halt = opcode == 0xf3 ? ExecutionStatus::success : ExecutionStatus::revert;
                break;
            }
            default:
                if (is_push(opcode))
                {
                    push(program_.immediates[pc]);
                    next_pc = pc + 1 + push_width(opcode);
                }
                else if (opcode >= 0x80 && opcode <= 0x8f)
                {
                    push(Word{stack_[stack_.size() - (opcode - 0x80 + 1)]});
                }
                else if (opcode >= 0x90 && opcode <= 0x9f)
                {
                    std::swap(stack_.back(), stack_[stack_.size() - 1 - (opcode - 0x90 + 1)]);
                }
                else
                {
                    // CREATE, CREATE2, CALLCODE, DELEGATECALL, STATICCALL, SELFDESTRUCT
                    halt = ExecutionStatus::invalid_op;
                }
                break;
            }

            emit();

            if (options_.check_gas_conservation && charged_total_ != program_gas_limit() - gas_left_)
                throw GasAccountingError("per-step gas conservation violated at pc " + std::to_string(pc));

            if (halt)
                return *halt;

            if (next_pc >= code_.size())
                return ExecutionStatus::success;

            if (jumped || next_pc >= wcfg.blocks()[block_].end_offset)
                enter_block(wcfg.block_at_unchecked(next_pc));
            pc = next_pc;
        }
    }

    /// Creation transactions pay data gas for the init code, calls for the calldata.
    ByteView tx_data() const { return options_.is_create ? code_ : calldata_; }

    Gas program_gas_limit() const { return env_.gas_limit - intrinsic_gas(tx_data(), options_.is_create); }

    std::optional<ExecutionStatus> call()
    {
        auto gas = pop();
        auto to = pop() & kAddressMask;
        auto value = pop();
        auto in_offset = pop();
        auto in_size = pop();
        auto out_offset = pop();
        auto out_size = pop();
        (void)gas;

        if (!charge(call_cost(value, working_.exists(to, env_.sender)) - kCallGas))
            return ExecutionStatus::out_of_gas;
        if (!touch_memory(in_offset, in_size) || !touch_memory(out_offset, out_size))
            return ExecutionStatus::out_of_gas;

        // The callee is a stub: it runs no code, so forwarded gas and the
        // stipend come back untouched.
        return_buffer_.clear();
        if (value > working_.contract_balance || !options_.call_stub_succeeds)
        {
            push(0);
            return std::nullopt;
        }
        if (value != 0)
        {
            working_.contract_balance -= value;
            if (to == env_.sender)
                working_.caller_balance += value;
            else if (to != working_.contract_address)
            {
                working_.external_balances[to] += value;
                working_.existing.insert(to);
            }
        }
        push(1);
        return std::nullopt;
    }

    const Program& program_;
    ByteView code_;
    ByteView calldata_;
    const ExecutionEnv& env_;
    WorldState& world_;
    WorldState working_;
    const ExecutionOptions& options_;

    std::vector<Word> stack_;
    Bytes memory_;
    std::uint64_t memory_words_ = 0;
    Bytes return_buffer_;
    Bytes output_;

    Gas gas_left_ = 0;
    Gas charged_total_ = 0;
    Gas step_cost_ = 0;
    Gas refund_ = 0;
    std::uint64_t steps_ = 0;

    BlockId block_ = 0;
    Gas block_gas_ = 0;
    std::unordered_map<std::uint64_t, std::pair<Gas, std::uint64_t>> edge_stats_;
};

}  // namespace detail

/// Runs `program` as a message call (or contract creation when
/// options.is_create) and reports gas and edge feedback. `world` is updated
/// only when execution succeeds.
inline ExecutionResult execute(const Program& program, ByteView calldata, const ExecutionEnv& env, WorldState& world,
                               const ExecutionOptions& options = {})
{
    return detail::Interpreter{program, calldata, env, world, options}.run();
}

}  // namespace vgas
