// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bytecode.hpp"

namespace vgas {

using BlockId = std::uint32_t;

/// Maximal straight-line run of instructions. Weight is the static gas of its
/// opcodes; operand-dependent parts (and INVALID's all-gas charge) are excluded,
/// so the weight is a lower bound on what one complete pass through the block
/// is charged.
struct BasicBlock
{
    BlockId id = 0;
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;  ///< one past the last byte of the block
    std::size_t first_instruction = 0;
    std::size_t instruction_count = 0;
    Gas weight = 0;
    std::uint8_t last_opcode = op::STOP;
};

struct Edge
{
    BlockId src = 0;
    BlockId dst = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Wcfg {
public:
    Wcfg() = default;

    explicit Wcfg(std::vector<Instruction> instructions) : instructions_(std::move(instructions))
    {
        build();
    }

    [[nodiscard]] const std::vector<BasicBlock>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
    [[nodiscard]] bool empty() const noexcept { return blocks_.empty(); }
    [[nodiscard]] static constexpr BlockId entry() noexcept { return 0; }

    [[nodiscard]] std::span<const Instruction> instructions_of(const BasicBlock& block) const
    {
        return std::span<const Instruction>{instructions_}.subspan(block.first_instruction,
                                                                   block.instruction_count);
    }

    [[nodiscard]] std::span<const BlockId> successors(BlockId id) const
    {
        return successors_.at(id);
    }

    /// Block containing the instruction that starts at `offset`; nullopt for
    /// offsets inside PUSH data or past the end.
    [[nodiscard]] std::optional<BlockId> block_at(std::size_t offset) const noexcept
    {
        if (offset >= block_of_offset_.size() || block_of_offset_[offset] == kNoBlock)
            return std::nullopt;
        return block_of_offset_[offset];
    }

    /// Hot-path variant of block_at for offsets known to start an instruction.
    [[nodiscard]] BlockId block_at_unchecked(std::size_t offset) const noexcept
    {
        return block_of_offset_[offset];
    }

    [[nodiscard]] bool has_edge(Edge e) const noexcept
    {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

private:
    static constexpr BlockId kNoBlock = ~BlockId{0};

    void build()
    {
        if (instructions_.empty())
            return;

        const auto code_size = instructions_.back().next_offset();
        block_of_offset_.assign(code_size, kNoBlock);

        BasicBlock current;
        auto close = [this, &current](std::size_t last) {
            const auto& ins = instructions_[last];
            current.end_offset = ins.next_offset();
            current.instruction_count = last - current.first_instruction + 1;
            current.last_opcode = ins.opcode;
            blocks_.push_back(current);
        };

        for (std::size_t i = 0; i < instructions_.size(); ++i)
        {
            const auto& ins = instructions_[i];
            const bool starts_new = i == 0 || ins.opcode == op::JUMPDEST
                                    || is_terminator(instructions_[i - 1].opcode);
            if (starts_new)
            {
                if (i != 0)
                    close(i - 1);
                current = BasicBlock{};
                current.id = static_cast<BlockId>(blocks_.size());
                current.start_offset = ins.offset;
                current.first_instruction = i;
            }
            const auto gas = static_gas(ins.opcode);
            if (gas != kAllRemainingGas)
                current.weight += gas;
            block_of_offset_[ins.offset] = current.id;
        }
        close(instructions_.size() - 1);

        // Static edges: fall-through, plus PUSH-ed jump destinations.
        for (const auto& block : blocks_)
        {
            const auto body = instructions_of(block);
            const auto& last = body.back();

            if (!halts_or_jumps(last.opcode) && block.id + 1 < blocks_.size())
                edges_.push_back({block.id, block.id + 1});

            if ((last.opcode == op::JUMP || last.opcode == op::JUMPI) && body.size() >= 2)
            {
                const auto& prev = body[body.size() - 2];
                if (is_push(prev.opcode) && !prev.truncated)
                {
                    std::size_t target = 0;
                    bool fits = true;
                    for (const auto b : prev.immediate)
                    {
                        if (target > (std::size_t{1} << 48))
                            fits = false;
                        target = target << 8 | b;
                    }
                    if (fits)
                        if (const auto dst = block_at(target);
                            dst && instructions_[blocks_[*dst].first_instruction].opcode == op::JUMPDEST
                            && blocks_[*dst].start_offset == target)
                            edges_.push_back({block.id, *dst});
                }
            }
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

        successors_.assign(blocks_.size(), {});
        for (const auto& e : edges_)
            successors_[e.src].push_back(e.dst);
    }

    std::vector<Instruction> instructions_;
    std::vector<BasicBlock> blocks_;
    std::vector<Edge> edges_;
    std::vector<std::vector<BlockId>> successors_;
    std::vector<BlockId> block_of_offset_;
};

inline Wcfg build_wcfg(std::vector<Instruction> instructions)
{
    return Wcfg{std::move(instructions)};
}

inline Wcfg build_wcfg(ByteView code)
{
    return Wcfg{disassemble(code)};
}

/// Static gas estimate in the style of a compiler's per-function estimator:
/// the heaviest entry path over the static graph, or infinite when a cycle is
/// reachable.
struct GasEstimate
{
    bool infinite = false;
    Gas value = 0;

    static GasEstimate finite(Gas g) { return {false, g}; }
    static GasEstimate unbounded() { return {true, 0}; }

    [[nodiscard]] std::string to_string() const { return infinite ? "infinite" : std::to_string(value); }

    friend bool operator==(const GasEstimate&, const GasEstimate&) = default;
};

inline GasEstimate static_estimate(const Wcfg& g)
{
    if (g.empty())
        return GasEstimate::finite(0);

    enum class Mark : std::uint8_t { unvisited, active, done };
    const auto n = g.blocks().size();
    std::vector<Mark> mark(n, Mark::unvisited);
    std::vector<Gas> best(n, 0);

    // Iterative DFS; a successor found on the active stack closes a cycle.
    struct Frame
    {
        BlockId id;
        std::size_t next;
    };
    std::vector<Frame> stack{{Wcfg::entry(), 0}};
    mark[Wcfg::entry()] = Mark::active;
    while (!stack.empty())
    {
        auto& top = stack.back();
        const auto succ = g.successors(top.id);
        if (top.next < succ.size())
        {
            const auto s = succ[top.next++];
            if (mark[s] == Mark::active)
                return GasEstimate::unbounded();
            if (mark[s] == Mark::unvisited)
            {
                mark[s] = Mark::active;
                stack.push_back({s, 0});
            }
            continue;
        }
        Gas tail = 0;
        for (const auto s : succ)
            tail = std::max(tail, best[s]);
        best[top.id] = g.blocks()[top.id].weight + tail;
        mark[top.id] = Mark::done;
        stack.pop_back();
    }
    return GasEstimate::finite(best[Wcfg::entry()]);
}

inline std::string to_dot(const Wcfg& g)
{
    std::ostringstream os;
    os << "digraph wcfg {\n";
    for (const auto& b : g.blocks())
        os << "  b" << b.id << " [shape=box,label=\"" << b.id << "\\n" << b.weight << "\"];\n";
    for (const auto& e : g.edges())
        os << "  b" << e.src << " -> b" << e.dst << ";\n";
    os << "}\n";
    return os.str();
}

/// JSON view of the graph; schema documented in docs/formats.md.
inline nlohmann::json to_json(const Wcfg& g)
{
    auto blocks = nlohmann::json::array();
    for (const auto& b : g.blocks())
        blocks.push_back({{"id", b.id},
                          {"start", b.start_offset},
                          {"end", b.end_offset},
                          {"instructions", b.instruction_count},
                          {"weight", b.weight},
                          {"terminator", opcode_name(b.last_opcode)}});
    auto edges = nlohmann::json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"src", e.src}, {"dst", e.dst}});
    return {{"entry", 0}, {"blocks", std::move(blocks)}, {"edges", std::move(edges)}};
}

/// Campaign-wide per-edge maxima. Edges missing from the static graph were
/// discovered at runtime (computed jump targets) and are flagged dynamic.
struct EdgeFeedbackSlot
{
    Gas max_gas = 0;
    std::uint64_t max_hits = 0;
    bool dynamic = false;
};

class EdgeProfile {
public:
    /// Raises the slot for `e`; returns true when either maximum grew.
    bool record(const Wcfg& g, Edge e, Gas gas, std::uint64_t hits)
    {
        auto [it, inserted] = slots_.try_emplace(e);
        if (inserted)
            it->second.dynamic = !g.has_edge(e);
        bool grew = false;
        if (gas > it->second.max_gas)
        {
            it->second.max_gas = gas;
            grew = true;
        }
        if (hits > it->second.max_hits)
        {
            it->second.max_hits = hits;
            grew = true;
        }
        return grew || inserted;
    }

    [[nodiscard]] const std::map<Edge, EdgeFeedbackSlot>& slots() const noexcept { return slots_; }

private:
    std::map<Edge, EdgeFeedbackSlot> slots_;
};

}  // namespace vgas
