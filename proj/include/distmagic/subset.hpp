#ifndef DISTMAGIC_SUBSET_HPP
#define DISTMAGIC_SUBSET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "distmagic/graph.hpp"

namespace distmagic {

// A subset of {1..n} whose elements sum to k, stored both as a strictly
// decreasing element list and as a bitmask (bit v = element v) for O(1)
// membership tests in the search inner loops.
struct KSumSubset {
    std::vector<int> elements;
    std::uint64_t mask = 0;

    bool contains(int v) const { return mask >> v & 1; }
    int size() const { return static_cast<int>(elements.size()); }
    bool operator==(const KSumSubset&) const = default;
};

namespace detail {

inline void gen_subsets(int m, long long remaining, std::uint64_t acc,
                        std::vector<KSumSubset>& out) {
    if (remaining == 0) {
        KSumSubset s;
        s.mask = acc;
        for (int v = 63; v >= 1; --v)
            if (acc >> v & 1) s.elements.push_back(v);
        out.push_back(std::move(s));
        return;
    }
    // barren subtree: even taking all of {1..m} cannot reach the target
    if (remaining > static_cast<long long>(m) * (m + 1) / 2) return;
    if (m <= remaining) gen_subsets(m - 1, remaining - m, acc | 1ull << m, out);
    gen_subsets(m - 1, remaining, acc, out);
}

}  // namespace detail

// All subsets of {1..n} with element sum k, each exactly once, in the
// deterministic include-first / descending recursion order (the branch that
// takes n precedes the branch that skips it).
inline std::vector<KSumSubset> k_sum_subsets(int n, long long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("k_sum_subsets: need n >= 1 and k >= 1");
    if (n > 63) throw capacity_error("k_sum_subsets: order above 63 not supported");
    std::vector<KSumSubset> out;
    detail::gen_subsets(n, k, 0, out);
    return out;
}

// Per-vertex candidate neighborhoods: ns[i] indexes every subset in
// `subsets` that does not contain i, in generation order.
struct CandidateTable {
    int n = 0;
    long long k = 0;
    std::vector<KSumSubset> subsets;
    std::vector<std::vector<std::uint32_t>> ns;  // index 0 unused

    const KSumSubset& subset(std::uint32_t idx) const { return subsets[idx]; }

    std::vector<KSumSubset> neighborhoods_of(int i) const {
        std::vector<KSumSubset> out;
        out.reserve(ns[i].size());
        for (auto idx : ns[i]) out.push_back(subsets[idx]);
        return out;
    }

    std::string to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["k"] = k;
        auto& subs = j["subsets"] = nlohmann::json::array();
        for (const auto& s : subsets) subs.push_back(s.elements);
        auto& lists = j["ns"] = nlohmann::json::array();
        for (int i = 1; i <= n; ++i) lists.push_back(ns[i]);
        return j.dump();
    }
};

inline CandidateTable candidate_table(int n, long long k) {
    CandidateTable t;
    t.n = n;
    t.k = k;
    t.subsets = k_sum_subsets(n, k);
    t.ns.resize(n + 1);
    for (std::uint32_t idx = 0; idx < t.subsets.size(); ++idx)
        for (int i = 1; i <= n; ++i)
            if (!t.subsets[idx].contains(i)) t.ns[i].push_back(idx);
    return t;
}

}  // namespace distmagic

#endif  // DISTMAGIC_SUBSET_HPP
