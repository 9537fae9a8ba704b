#ifndef DISTMAGIC_CANONICAL_HPP
#define DISTMAGIC_CANONICAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "distmagic/codec.hpp"
#include "distmagic/graph.hpp"
#include "distmagic/search.hpp"

namespace distmagic {

// Order-invariant fingerprint: the lexicographically least upper-triangle
// bit sequence reachable through color refinement with individualization.
// Equal forms <=> isomorphic graphs.
struct CanonicalForm {
    int n = 0;
    std::vector<std::uint8_t> bits;  // graph6 bit order under the canonical vertex order
    std::uint64_t digest = 0;        // degree sequence + refined color histogram

    bool operator==(const CanonicalForm& o) const { return n == o.n && bits == o.bits; }
};

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& f) const {
        std::uint64_t h = 1469598103934665603ull ^ f.digest;
        for (std::uint8_t b : f.bits) h = (h ^ b) * 1099511628211ull;
        return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(f.n) << 32);
    }
};

namespace detail {

// 1-dimensional color refinement. Colors are contiguous ranks; each round
// re-ranks vertices by (color, sorted neighbor-color multiset), which is a
// vertex-order-free criterion, so the resulting partition is invariant.
inline int refine_colors(const Graph& g, std::vector<int>& color) {
    const int n = g.order();
    if (n == 0) return 0;
    int ncolors;
    {
        std::vector<int> distinct(color.begin() + 1, color.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        ncolors = static_cast<int>(distinct.size());
    }
    while (true) {
        std::vector<std::vector<int>> sig_of(n + 1);
        for (int v = 1; v <= n; ++v) {
            std::vector<int>& sig = sig_of[v];
            sig.reserve(g.degree(v) + 1);
            sig.push_back(color[v]);
            for (int u : g.neighbors(v)) sig.push_back(color[u]);
            std::sort(sig.begin() + 1, sig.end());
        }
        std::vector<std::vector<int>> keys(sig_of.begin() + 1, sig_of.end());
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (int v = 1; v <= n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(keys.begin(), keys.end(), sig_of[v]) - keys.begin());
        // equal counts mean every old cell mapped to one new cell: stable
        if (static_cast<int>(keys.size()) == ncolors) return ncolors;
        ncolors = static_cast<int>(keys.size());
    }
}

struct CanonSearch {
    const Graph& g;
    int n;
    std::vector<std::uint8_t> best;
    std::vector<int> best_color;
    bool have_best = false;

    explicit CanonSearch(const Graph& graph) : g(graph), n(graph.order()) {}

    // cells in color order; the target is the first cell of minimum size > 1
    static int pick_target(const std::vector<int>& color, int ncolors, int n) {
        std::vector<int> size(ncolors, 0);
        for (int v = 1; v <= n; ++v) ++size[color[v]];
        int target = -1;
        for (int c = 0; c < ncolors; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
        return target;
    }

    void leaf(const std::vector<int>& color) {
        std::vector<int> vertex_at(n + 1);
        for (int v = 1; v <= n; ++v) vertex_at[color[v] + 1] = v;
        std::vector<std::uint8_t> bits;
        bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (int j = 2; j <= n; ++j)
            for (int i = 1; i < j; ++i)
                bits.push_back(g.has_edge(vertex_at[i], vertex_at[j]) ? 1 : 0);
        if (!have_best || bits < best) {
            best = std::move(bits);
            best_color = color;
            have_best = true;
        }
    }

    void explore(std::vector<int> color) {
        const int ncolors = refine_colors(g, color);
        if (ncolors == n) {
            leaf(color);
            return;
        }
        const int target = pick_target(color, ncolors, n);
        for (int v = 1; v <= n; ++v) {
            if (color[v] != target) continue;
            std::vector<int> child(color.size());
            for (int u = 1; u <= n; ++u)
                child[u] = 2 * color[u] + (color[u] == target && u != v ? 1 : 0);
            explore(std::move(child));
        }
    }
};

}  // namespace detail

// Canonical form plus the vertex order achieving it: new_id[v] is v's
// 1-based position in the canonical order.
inline std::pair<CanonicalForm, std::vector<int>> canonical_form_with_order(const Graph& g) {
    const int n = g.order();
    if (n > 64) throw capacity_error("canonical_form: order above 64 not supported");
    CanonicalForm form;
    form.n = n;
    std::vector<int> order(n + 1, 0);
    std::vector<int> color(n + 1, 0);
    if (n > 0) {
        const int ncolors = detail::refine_colors(g, color);
        // digest from vertex-order-free data only
        std::vector<int> degrees, histogram(ncolors, 0);
        for (int v = 1; v <= n; ++v) {
            degrees.push_back(g.degree(v));
            ++histogram[color[v]];
        }
        std::sort(degrees.begin(), degrees.end());
        std::sort(histogram.begin(), histogram.end());
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t x) { h = (h ^ x) * 1099511628211ull; };
        mix(static_cast<std::uint64_t>(n));
        for (int d : degrees) mix(static_cast<std::uint64_t>(d) + 1);
        for (int c : histogram) mix(static_cast<std::uint64_t>(c) + 1);
        form.digest = h;

        detail::CanonSearch search(g);
        search.explore(color);
        form.bits = std::move(search.best);
        for (int v = 1; v <= n; ++v) order[v] = search.best_color[v] + 1;
    }
    return {std::move(form), std::move(order)};
}

inline CanonicalForm canonical_form(const Graph& g) {
    return canonical_form_with_order(g).first;
}

inline bool are_isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
    const CanonicalForm fg = canonical_form(g);
    const CanonicalForm fh = canonical_form(h);
    if (fg.digest != fh.digest) return false;
    return fg == fh;
}

// graph6 of the canonically relabeled graph; equal strings <=> isomorphic,
// so output archives diff cleanly across runs.
inline std::string canonical_graph6(const Graph& g) {
    auto [form, order] = canonical_form_with_order(g);
    return to_graph6(g.permuted(order));
}

struct ClassCounts {
    int n = 0;
    std::size_t total_classes = 0;
    std::map<long long, std::size_t> per_k;
    std::vector<std::string> canonical_g6;   // sorted, one line per class
    std::vector<Graph> representatives;      // canonically relabeled, aligned with canonical_g6
};

// Runs the labeled enumeration over every feasible k and folds the
// witnesses through canonical deduplication. Independent of worker count:
// the per-k searches are deterministic and the dedup set is order-free.
inline ClassCounts count_distance_magic(int n, const SearchOptions& opt = {},
                                        long long kmin = -1, long long kmax = -1) {
    if (n < 3) throw std::invalid_argument("count_distance_magic: order must be at least 3");
    ClassCounts result;
    result.n = n;
    long long lo = std::max<long long>(n, kmin < 0 ? n : kmin);
    long long hi = std::min<long long>(max_magic_constant(n), kmax < 0 ? max_magic_constant(n) : kmax);
    std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
    std::vector<std::pair<std::string, Graph>> classes;
    for (long long k = lo; k <= hi; ++k) {
        std::size_t classes_at_k = 0;
        const std::function<void(const Graph&)> sink = [&](const Graph& g) {
            auto [form, order] = canonical_form_with_order(g);
            if (seen.insert(std::move(form)).second) {
                ++classes_at_k;
                Graph canon = g.permuted(order);
                classes.emplace_back(to_graph6(canon), std::move(canon));
            }
        };
        SearchOutcome out = enumerate_labeled(n, k, sink, opt);
        if (out.status == SearchStatus::budget_exhausted)
            throw budget_exhausted_error("count_distance_magic: enumeration budget exhausted at k=" +
                                         std::to_string(k));
        if (classes_at_k > 0) result.per_k[k] = classes_at_k;
    }
    result.total_classes = seen.size();
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [g6, graph] : classes) {
        result.canonical_g6.push_back(std::move(g6));
        result.representatives.push_back(std::move(graph));
    }
    return result;
}

}  // namespace distmagic

#endif  // DISTMAGIC_CANONICAL_HPP
