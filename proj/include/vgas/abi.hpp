// vgas: gas-guided fuzzing for EVM smart contracts
// Copyright 2026 The vgas Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "keccak.hpp"
#include "word.hpp"

namespace vgas {

using Rng = std::mt19937_64;

class AbiError : public Error {
public:
    using Error::Error;
};

/// Arrays start no longer than this in a fresh genome.
inline constexpr std::size_t kInitialMaxArrayLen = 8;
/// Upper bound the array mutator may grow to unless configured otherwise.
inline constexpr std::size_t kDefaultMaxArrayLen = 1024;

enum class ScalarKind { uint, int_, address, boolean, fixed_bytes, bytes, string };

struct AbiType
{
    enum class Shape { scalar, dynamic_array, fixed_array };

    ScalarKind kind = ScalarKind::uint;
    unsigned width = 256;  ///< bits for uint/int, byte count for bytesN
    Shape shape = Shape::scalar;
    std::size_t fixed_length = 0;

    /// bytes/string payloads or T[] — anything encoded as offset + tail.
    [[nodiscard]] bool is_dynamic() const noexcept
    {
        return shape == Shape::dynamic_array
               || (shape == Shape::scalar && (kind == ScalarKind::bytes || kind == ScalarKind::string));
    }
    [[nodiscard]] bool is_integer() const noexcept { return kind == ScalarKind::uint || kind == ScalarKind::int_; }

    /// Bytes one element occupies inside a gene.
    [[nodiscard]] std::size_t element_width() const noexcept
    {
        switch (kind)
        {
        case ScalarKind::uint:
        case ScalarKind::int_: return width / 8;
        case ScalarKind::address: return 20;
        case ScalarKind::boolean: return 1;
        case ScalarKind::fixed_bytes: return width;
        case ScalarKind::bytes:
        case ScalarKind::string: return 1;
        }
        return 1;
    }

    [[nodiscard]] std::string scalar_name() const
    {
        switch (kind)
        {
        case ScalarKind::uint: return "uint" + std::to_string(width);
        case ScalarKind::int_: return "int" + std::to_string(width);
        case ScalarKind::address: return "address";
        case ScalarKind::boolean: return "bool";
        case ScalarKind::fixed_bytes: return "bytes" + std::to_string(width);
        case ScalarKind::bytes: return "bytes";
        case ScalarKind::string: return "string";
        }
        return {};
    }

    [[nodiscard]] std::string canonical() const
    {
        switch (shape)
        {
        case Shape::scalar: return scalar_name();
        case Shape::dynamic_array: return scalar_name() + "[]";
        case Shape::fixed_array: return scalar_name() + "[" + std::to_string(fixed_length) + "]";
        }
        return {};
    }

    friend bool operator==(const AbiType&, const AbiType&) = default;
};

inline AbiType parse_type(std::string_view text)
{
    AbiType t;
    auto fail = [&text] { return AbiError("unsupported ABI type '" + std::string{text} + "'"); };

    std::string_view base = text;
    if (base.ends_with("]"))
    {
        const auto open = base.rfind('[');
        if (open == std::string_view::npos)
            throw fail();
        const auto inner = base.substr(open + 1, base.size() - open - 2);
        base = base.substr(0, open);
        if (base.ends_with("]"))
            throw fail();  // nested arrays
        if (inner.empty())
            t.shape = AbiType::Shape::dynamic_array;
        else
        {
            std::size_t n = 0;
            for (const char c : inner)
            {
                if (c < '0' || c > '9' || n > 1'000'000)
                    throw fail();
                n = n * 10 + static_cast<std::size_t>(c - '0');
            }
            if (n == 0)
                throw fail();
            t.shape = AbiType::Shape::fixed_array;
            t.fixed_length = n;
        }
    }

    auto parse_width = [&](std::string_view digits, unsigned fallback) -> unsigned {
        if (digits.empty())
            return fallback;
        unsigned n = 0;
        for (const char c : digits)
        {
            if (c < '0' || c > '9' || n > 1000)
                throw fail();
            n = n * 10 + static_cast<unsigned>(c - '0');
        }
        return n;
    };

    if (base == "address")
        t.kind = ScalarKind::address;
    else if (base == "bool")
        t.kind = ScalarKind::boolean;
    else if (base == "string")
        t.kind = ScalarKind::string;
    else if (base == "bytes")
        t.kind = ScalarKind::bytes;
    else if (base == "byte")
    {
        t.kind = ScalarKind::fixed_bytes;
        t.width = 1;
    }
    else if (base.starts_with("uint") || base.starts_with("int"))
    {
        const bool is_unsigned = base.starts_with("uint");
        t.kind = is_unsigned ? ScalarKind::uint : ScalarKind::int_;
        t.width = parse_width(base.substr(is_unsigned ? 4 : 3), 256);
        if (t.width == 0 || t.width > 256 || t.width % 8 != 0)
            throw fail();
    }
    else if (base.starts_with("bytes"))
    {
        t.kind = ScalarKind::fixed_bytes;
        t.width = parse_width(base.substr(5), 0);
        if (t.width == 0 || t.width > 32)
            throw fail();
    }
    else
        throw fail();

    if (t.shape != AbiType::Shape::scalar && (t.kind == ScalarKind::bytes || t.kind == ScalarKind::string))
        throw fail();  // arrays of dynamic elements
    return t;
}

struct AbiParam
{
    std::string name;
    AbiType type;

    friend bool operator==(const AbiParam&, const AbiParam&) = default;
};

struct FunctionSpec
{
    std::string name;
    std::vector<AbiParam> inputs;
    bool is_constructor = false;
    bool is_payable = false;

    /// Canonical signature, e.g. "transfer(address,uint256)".
    [[nodiscard]] std::string signature() const
    {
        std::string s = is_constructor ? "constructor(" : name + "(";
        for (std::size_t i = 0; i < inputs.size(); ++i)
        {
            if (i)
                s += ',';
            s += inputs[i].type.canonical();
        }
        return s + ")";
    }

    friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

using Selector = std::array<std::uint8_t, 4>;

inline Selector selector(std::string_view signature)
{
    const auto h = keccak256(signature);
    return {h[0], h[1], h[2], h[3]};
}

inline Selector selector(const FunctionSpec& spec)
{
    return selector(spec.signature());
}

/// Functions and the constructor from a solc ABI JSON array; events and the
/// fallback are skipped.
inline std::vector<FunctionSpec> parse_abi(std::string_view json_text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw AbiError(std::string{"malformed ABI JSON: "} + e.what());
    }
    if (!doc.is_array())
        throw AbiError("ABI JSON must be an array");

    std::vector<FunctionSpec> out;
    for (std::size_t i = 0; i < doc.size(); ++i)
    {
        const auto& entry = doc[i];
        if (!entry.is_object())
            throw AbiError("ABI entry #" + std::to_string(i) + " is not an object");
        const auto kind = entry.value("type", std::string{"function"});
        if (kind != "function" && kind != "constructor")
            continue;

        FunctionSpec spec;
        spec.is_constructor = kind == "constructor";
        spec.name = spec.is_constructor ? "constructor" : entry.value("name", std::string{});
        spec.is_payable = entry.value("payable", false) || entry.value("stateMutability", std::string{}) == "payable";
        const auto label = "ABI entry #" + std::to_string(i) + " (" + spec.name + ")";
        if (!spec.is_constructor && spec.name.empty())
            throw AbiError(label + ": function without a name");

        if (entry.contains("inputs"))
        {
            if (!entry["inputs"].is_array())
                throw AbiError(label + ": inputs is not an array");
            for (const auto& in : entry["inputs"])
            {
                if (!in.is_object() || !in.contains("type") || !in["type"].is_string())
                    throw AbiError(label + ": input without a type");
                try
                {
                    spec.inputs.push_back({in.value("name", std::string{}), parse_type(in["type"].get<std::string>())});
                }
                catch (const AbiError& e)
                {
                    throw AbiError(label + ": " + e.what());
                }
            }
        }
        out.push_back(std::move(spec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gene chain

/// One parameter's (or environment variable's) slice of the gene.
struct GeneEntry
{
    std::string key;
    AbiType type;
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t length = 1;  ///< element count for arrays, byte count for bytes/string

    [[nodiscard]] std::size_t size() const noexcept { return end - start; }

    friend bool operator==(const GeneEntry&, const GeneEntry&) = default;
};

struct Gene
{
    Bytes bytes;

    friend bool operator==(const Gene&, const Gene&) = default;
};

struct GeneMap
{
    std::vector<GeneEntry> entries;  ///< sorted by start; ranges tile the gene

    [[nodiscard]] const GeneEntry* find(std::string_view key) const noexcept
    {
        for (const auto& e : entries)
            if (e.key == key)
                return &e;
        return nullptr;
    }

    [[nodiscard]] std::size_t index_of(std::string_view key) const
    {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].key == key)
                return i;
        throw AbiError("gene map has no entry '" + std::string{key} + "'");
    }

    friend bool operator==(const GeneMap&, const GeneMap&) = default;
};

inline std::string param_key(const FunctionSpec& spec, std::size_t index)
{
    const auto& p = spec.inputs[index];
    const auto name = p.name.empty() ? "arg" + std::to_string(index) : p.name;
    return spec.name + "|" + std::to_string(spec.inputs.size()) + "|" + name + "|" + p.type.canonical();
}

/// Environment genome: block and transaction context mutated like arguments.
struct EnvField
{
    const char* key;
    AbiType type;
};

inline const std::array<EnvField, 6>& env_fields()
{
    static const std::array<EnvField, 6> fields = {{
        {"env|coinbase", parse_type("address")},
        {"env|difficulty", parse_type("uint256")},
        {"env|block_number", parse_type("uint64")},
        {"env|timestamp", parse_type("uint64")},
        {"env|sender", parse_type("address")},
        {"env|origin", parse_type("address")},
    }};
    return fields;
}

/// Element count a range of this type holds when first generated or resized.
inline std::size_t gene_width(const AbiType& t, std::size_t length)
{
    return t.element_width() * length;
}

inline bool is_resizable(const AbiType& t) noexcept
{
    return t.is_dynamic();
}

/// Type-valid random bytes for one element of `t`.
inline void fill_random_element(const AbiType& t, std::span<std::uint8_t> out, Rng& rng)
{
    if (t.kind == ScalarKind::boolean)
    {
        out[0] = static_cast<std::uint8_t>(rng() & 1);
        return;
    }
    for (auto& b : out)
        b = static_cast<std::uint8_t>(rng());
}

inline void fill_random(const AbiType& t, std::span<std::uint8_t> out, Rng& rng)
{
    const auto w = t.element_width();
    for (std::size_t i = 0; i + w <= out.size(); i += w)
        fill_random_element(t, out.subspan(i, w), rng);
}

inline std::size_t initial_length(const AbiType& t, Rng& rng, std::size_t max_len)
{
    switch (t.shape)
    {
    case AbiType::Shape::fixed_array: return t.fixed_length;
    case AbiType::Shape::dynamic_array: return std::uniform_int_distribution<std::size_t>{0, max_len}(rng);
    case AbiType::Shape::scalar:
        return t.is_dynamic() ? std::uniform_int_distribution<std::size_t>{0, max_len}(rng) : 1;
    }
    return 1;
}

/// Random genome covering every parameter of `specs` plus the six environment
/// variables. Fully determined by the RNG state.
inline std::pair<Gene, GeneMap> random_gene(std::span<const FunctionSpec> specs, Rng& rng,
                                            std::size_t initial_max_len = kInitialMaxArrayLen)
{
    Gene gene;
    GeneMap map;
    auto append = [&](std::string key, const AbiType& type, std::size_t length) {
        GeneEntry e{std::move(key), type, gene.bytes.size(), 0, length};
        gene.bytes.resize(gene.bytes.size() + gene_width(type, length));
        e.end = gene.bytes.size();
        fill_random(type, std::span{gene.bytes}.subspan(e.start, e.size()), rng);
        map.entries.push_back(std::move(e));
    };

    for (const auto& spec : specs)
        for (std::size_t i = 0; i < spec.inputs.size(); ++i)
            append(param_key(spec, i), spec.inputs[i].type, initial_length(spec.inputs[i].type, rng, initial_max_len));
    for (const auto& f : env_fields())
        append(f.key, f.type, 1);
    return {std::move(gene), std::move(map)};
}

/// Replaces entry `index` with `new_length` fresh random elements and shifts
/// every later range. Other entries keep their bytes.
inline void resize_entry(Gene& gene, GeneMap& map, std::size_t index, std::size_t new_length, Rng& rng)
{
    auto& e = map.entries.at(index);
    const auto old_size = e.size();
    const auto new_size = gene_width(e.type, new_length);
    Bytes fresh(new_size);
    fill_random(e.type, fresh, rng);

    auto first = gene.bytes.begin() + static_cast<std::ptrdiff_t>(e.start);
    gene.bytes.erase(first, first + static_cast<std::ptrdiff_t>(old_size));
    gene.bytes.insert(gene.bytes.begin() + static_cast<std::ptrdiff_t>(e.start), fresh.begin(), fresh.end());

    e.end = e.start + new_size;
    e.length = new_length;
    for (std::size_t i = index + 1; i < map.entries.size(); ++i)
    {
        auto& later = map.entries[i];
        later.start = later.start - old_size + new_size;
        later.end = later.end - old_size + new_size;
    }
}

/// Checks that ranges are sorted, disjoint, tile the gene, and that every
/// byte is type-valid.
inline bool gene_is_valid(const Gene& gene, const GeneMap& map)
{
    std::size_t cursor = 0;
    for (const auto& e : map.entries)
    {
        if (e.start != cursor || e.end < e.start || e.size() != gene_width(e.type, e.length))
            return false;
        if (e.type.shape == AbiType::Shape::fixed_array && e.length != e.type.fixed_length)
            return false;
        if (!e.type.is_dynamic() && e.type.shape == AbiType::Shape::scalar && e.length != 1)
            return false;
        if (e.type.kind == ScalarKind::boolean)
            for (std::size_t i = e.start; i < e.end; ++i)
                if (gene.bytes[i] > 1)
                    return false;
        cursor = e.end;
    }
    return cursor == gene.bytes.size();
}

/// One 32-byte ABI word for a single element stored in gene bytes.
inline std::array<std::uint8_t, 32> encode_element(const AbiType& t, ByteView raw)
{
    std::array<std::uint8_t, 32> word{};
    if (t.kind == ScalarKind::fixed_bytes)
    {
        std::copy(raw.begin(), raw.end(), word.begin());
        return word;
    }
    const auto pad = 32 - raw.size();
    if (t.kind == ScalarKind::int_ && !raw.empty() && (raw[0] & 0x80))
        std::fill(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pad), 0xff);
    std::copy(raw.begin(), raw.end(), word.begin() + static_cast<std::ptrdiff_t>(pad));
    return word;
}

namespace detail {

inline void append_word(Bytes& out, const std::array<std::uint8_t, 32>& w)
{
    out.insert(out.end(), w.begin(), w.end());
}

inline void append_uint(Bytes& out, std::uint64_t v)
{
    append_word(out, word_to_be(Word{v}));
}

}  // namespace detail

/// ABI-encodes the arguments of `spec` read from the gene. Constructors get no
/// selector (their encoding is appended to the init code).
inline Bytes encode_args(const FunctionSpec& spec, const Gene& gene, const GeneMap& map)
{
    std::vector<const GeneEntry*> params;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i)
    {
        const auto* e = map.find(param_key(spec, i));
        if (!e)
            throw AbiError("gene has no value for " + param_key(spec, i));
        if (e->type != spec.inputs[i].type || e->end > gene.bytes.size()
            || e->size() != gene_width(e->type, e->length))
            throw AbiError("gene map entry does not match parameter " + param_key(spec, i));
        params.push_back(e);
    }

    std::size_t head_size = 0;
    for (const auto* e : params)
        head_size += e->type.shape == AbiType::Shape::fixed_array ? 32 * e->type.fixed_length : 32;

    Bytes head;
    Bytes tail;
    const ByteView bytes{gene.bytes};
    for (const auto* e : params)
    {
        const auto& t = e->type;
        const auto raw = bytes.subspan(e->start, e->size());
        const auto w = t.element_width();
        if (!t.is_dynamic())
        {
            for (std::size_t i = 0; i < e->length; ++i)
                detail::append_word(head, encode_element(t, raw.subspan(i * w, w)));
            continue;
        }
        detail::append_uint(head, head_size + tail.size());
        detail::append_uint(tail, e->length);
        if (t.shape == AbiType::Shape::dynamic_array)
        {
            for (std::size_t i = 0; i < e->length; ++i)
                detail::append_word(tail, encode_element(t, raw.subspan(i * w, w)));
        }
        else
        {
            tail.insert(tail.end(), raw.begin(), raw.end());
            tail.resize(tail.size() + (32 - raw.size() % 32) % 32, 0);
        }
    }

    Bytes out;
    if (!spec.is_constructor)
    {
        const auto sel = selector(spec);
        out.assign(sel.begin(), sel.end());
    }
    out.insert(out.end(), head.begin(), head.end());
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

/// Human-readable value of one gene entry: decimal integers, 0x-hex addresses
/// and byte strings, JSON arrays for array types.
inline nlohmann::json describe_entry(const GeneEntry& e, const Gene& gene)
{
    const ByteView raw = ByteView{gene.bytes}.subspan(e.start, e.size());
    const auto& t = e.type;
    auto element = [&t](ByteView b) -> nlohmann::json {
        switch (t.kind)
        {
        case ScalarKind::uint: return word_from_be(b).str();
        case ScalarKind::int_: {
            const auto w = word_from_be(encode_element(t, b));
            return is_negative(w) ? "-" + negate(w).str() : w.str();
        }
        case ScalarKind::boolean: return b[0] != 0;
        case ScalarKind::address:
        case ScalarKind::fixed_bytes:
        case ScalarKind::bytes:
        case ScalarKind::string: return to_hex(b, true);
        }
        return nullptr;
    };

    if (t.shape == AbiType::Shape::scalar)
        return element(raw);
    auto arr = nlohmann::json::array();
    const auto w = t.element_width();
    for (std::size_t i = 0; i < e.length; ++i)
        arr.push_back(element(raw.subspan(i * w, w)));
    return arr;
}

}  // namespace vgas
