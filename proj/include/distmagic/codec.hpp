#ifndef DISTMAGIC_CODEC_HPP
#define DISTMAGIC_CODEC_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"

#include "distmagic/graph.hpp"

namespace distmagic {

// Decode failure; `offset` is the byte position of the offending input.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class GraphFormat { graph6, dot, json };

inline std::optional<GraphFormat> parse_format(std::string_view name) {
    if (name == "g6" || name == "graph6") return GraphFormat::graph6;
    if (name == "dot") return GraphFormat::dot;
    if (name == "json") return GraphFormat::json;
    return std::nullopt;
}

// graph6: N(n) header, then the upper-triangle bits (column-major, pairs
// (i,j) grouped by j) packed 6 per byte, big-endian within the byte, each
// byte offset by 63. Zero-padded to a byte boundary.
inline std::string to_graph6(const Graph& g) {
    const long long n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>((n >> 12 & 63) + 63));
        out.push_back(static_cast<char>((n >> 6 & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    } else {
        throw capacity_error("to_graph6: order above 258047 not supported");
    }
    const auto bits = g.upper_triangle_bits();
    for (std::size_t base = 0; base < bits.size(); base += 6) {
        int value = 0;
        for (std::size_t b = 0; b < 6; ++b)
            if (base + b < bits.size() && bits[base + b]) value |= 32 >> b;
        out.push_back(static_cast<char>(value + 63));
    }
    return out;
}

inline Graph from_graph6(std::string_view text) {
    if (text.empty()) throw parse_error("graph6: empty input", 0);
    std::size_t pos = 0;
    auto data_byte = [&](std::size_t at) {
        const unsigned char c = static_cast<unsigned char>(text[at]);
        if (c < 63 || c > 126) throw parse_error("graph6: byte out of printable range", at);
        return static_cast<int>(c - 63);
    };
    long long n;
    if (static_cast<unsigned char>(text[0]) == 126) {
        if (text.size() >= 2 && static_cast<unsigned char>(text[1]) == 126)
            throw parse_error("graph6: 8-byte order header not supported", 1);
        if (text.size() < 4) throw parse_error("graph6: truncated order header", text.size());
        n = static_cast<long long>(data_byte(1)) << 12 | data_byte(2) << 6 | data_byte(3);
        if (n <= 62) throw parse_error("graph6: non-minimal order header", 0);
        pos = 4;
    } else {
        n = data_byte(0);
        pos = 1;
    }
    const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (text.size() < pos + nbytes)
        throw parse_error("graph6: body too short", text.size());
    if (text.size() > pos + nbytes)
        throw parse_error("graph6: trailing bytes after body", pos + nbytes);
    Graph g(static_cast<int>(n));
    std::size_t bit = 0;
    for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i, ++bit)
            if (data_byte(pos + bit / 6) & (32 >> bit % 6)) g.add_edge(i, j);
    // padding bits beyond the triangle must be zero
    for (; bit < nbytes * 6; ++bit)
        if (data_byte(pos + bit / 6) & (32 >> bit % 6))
            throw parse_error("graph6: nonzero padding bit", pos + bit / 6);
    return g;
}

// DOT is emit-only.
inline std::string to_dot(const Graph& g) {
    std::string out = "graph G {\n";
    for (int v = 1; v <= g.order(); ++v) out += "  " + std::to_string(v) + ";\n";
    for (int v = 1; v <= g.order(); ++v)
        for (int u : g.neighbors(v))
            if (u > v) out += "  " + std::to_string(v) + " -- " + std::to_string(u) + ";\n";
    out += "}\n";
    return out;
}

inline std::string to_adjacency_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.order();
    auto& adj = j["adj"] = nlohmann::json::array();
    for (int v = 1; v <= g.order(); ++v) adj.push_back(g.neighbors(v));
    return j.dump();
}

inline Graph from_adjacency_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("adjacency-json: ") + e.what(),
                          e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("adj") ||
        !j["n"].is_number_integer() || !j["adj"].is_array())
        throw parse_error("adjacency-json: expected {\"n\": int, \"adj\": [[...]]}", 0);
    const long long n = j["n"].get<long long>();
    if (n < 0 || j["adj"].size() != static_cast<std::size_t>(n))
        throw parse_error("adjacency-json: adj length does not match n", 0);
    Graph g(static_cast<int>(n));
    for (long long v = 1; v <= n; ++v) {
        const auto& row = j["adj"][v - 1];
        if (!row.is_array()) throw parse_error("adjacency-json: adj rows must be arrays", 0);
        for (const auto& u : row) {
            if (!u.is_number_integer())
                throw parse_error("adjacency-json: neighbor ids must be integers", 0);
            const long long uu = u.get<long long>();
            if (uu < 1 || uu > n || uu == v)
                throw parse_error("adjacency-json: bad neighbor id " + std::to_string(uu), 0);
            g.add_edge(static_cast<int>(v), static_cast<int>(uu));
        }
    }
    // every listed arc must have its mirror
    for (long long v = 1; v <= n; ++v) {
        std::vector<int> row = j["adj"][v - 1].get<std::vector<int>>();
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        if (row != g.neighbors(static_cast<int>(v)))
            throw parse_error("adjacency-json: asymmetric adjacency at vertex " +
                                  std::to_string(v),
                              0);
    }
    return g;
}

inline std::string encode(const Graph& g, GraphFormat fmt) {
    switch (fmt) {
        case GraphFormat::graph6: return to_graph6(g);
        case GraphFormat::dot: return to_dot(g);
        case GraphFormat::json: return to_adjacency_json(g);
    }
    throw std::invalid_argument("encode: unknown format");
}

inline Graph decode(std::string_view text, GraphFormat fmt) {
    switch (fmt) {
        case GraphFormat::graph6: return from_graph6(text);
        case GraphFormat::json: return from_adjacency_json(text);
        case GraphFormat::dot: throw std::invalid_argument("decode: DOT is emit-only");
    }
    throw std::invalid_argument("decode: unknown format");
}

}  // namespace distmagic

#endif  // DISTMAGIC_CODEC_HPP
