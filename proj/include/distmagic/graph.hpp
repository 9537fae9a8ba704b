#ifndef DISTMAGIC_GRAPH_HPP
#define DISTMAGIC_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace distmagic {

// Thrown when an input exceeds a hard implementation limit (brute-force
// labeling cap, canonical-form word budget, search mask width).
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices {1..n}. Vertex i carries label i, so
// the identity labeling is implicit in the vertex ids; all verification and
// search code works under that labeling.
//
// Adjacency is kept as per-vertex sorted neighbor lists. Invariants:
// symmetric (j in N(i) iff i in N(j)), irreflexive, ids in {1..n}.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        n_ = n;
        adj_.resize(static_cast<std::size_t>(n) + 1);
    }

    static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    // Builds a graph from per-vertex neighbor bitmasks (bit v = vertex v,
    // index 0 of `mask_of` unused). Throws if the masks are not symmetric.
    static Graph from_neighbor_masks(int n, const std::vector<std::uint64_t>& mask_of) {
        if (n < 0 || n > 63 || mask_of.size() != static_cast<std::size_t>(n) + 1)
            throw std::invalid_argument("from_neighbor_masks: bad mask table");
        Graph g(n);
        for (int v = 1; v <= n; ++v) {
            std::uint64_t m = mask_of[v];
            if (m >> (n + 1) != 0 || (m & 1) != 0 || (m >> v & 1) != 0)
                throw std::invalid_argument("from_neighbor_masks: neighbor id out of range");
            for (int u = 1; u <= n; ++u)
                if (m >> u & 1) {
                    if (!(mask_of[u] >> v & 1))
                        throw std::invalid_argument("from_neighbor_masks: asymmetric adjacency");
                    g.adj_[v].push_back(u);
                }
        }
        return g;
    }

    int order() const { return n_; }

    std::size_t edge_count() const {
        std::size_t deg_sum = 0;
        for (int v = 1; v <= n_; ++v) deg_sum += adj_[v].size();
        return deg_sum / 2;
    }

    void check_vertex(int v) const {
        if (v < 1 || v > n_)
            throw std::out_of_range("vertex id " + std::to_string(v) + " not in {1.." +
                                    std::to_string(n_) + "}");
    }

    // Idempotent; keeps both neighbor lists sorted.
    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("add_edge: self-loop");
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    // Upper-triangle adjacency bits in graph6 order: pairs (i,j) with
    // i < j, grouped by j ascending, i ascending within each group.
    std::vector<std::uint8_t> upper_triangle_bits() const {
        std::vector<std::uint8_t> bits;
        bits.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
        for (int j = 2; j <= n_; ++j)
            for (int i = 1; i < j; ++i)
                bits.push_back(has_edge(i, j) ? 1 : 0);
        return bits;
    }

    // Relabels vertices: old id v becomes new_id[v] (1-indexed bijection).
    Graph permuted(const std::vector<int>& new_id) const {
        if (new_id.size() != static_cast<std::size_t>(n_) + 1)
            throw std::invalid_argument("permuted: mapping size mismatch");
        std::vector<bool> seen(n_ + 1, false);
        for (int v = 1; v <= n_; ++v) {
            if (new_id[v] < 1 || new_id[v] > n_ || seen[new_id[v]])
                throw std::invalid_argument("permuted: mapping is not a bijection");
            seen[new_id[v]] = true;
        }
        Graph g(n_);
        for (int v = 1; v <= n_; ++v)
            for (int u : adj_[v])
                if (u > v) g.add_edge(new_id[u], new_id[v]);
        return g;
    }

    // Other's vertices are shifted up by this graph's order.
    Graph disjoint_union(const Graph& other) const {
        Graph g(n_ + other.n_);
        for (int v = 1; v <= n_; ++v)
            for (int u : adj_[v])
                if (u > v) g.add_edge(v, u);
        for (int v = 1; v <= other.n_; ++v)
            for (int u : other.adj_[v])
                if (u > v) g.add_edge(v + n_, u + n_);
        return g;
    }

    // Full well-formedness check: symmetry, no self-loops, ids in range.
    void check_valid() const {
        for (int v = 1; v <= n_; ++v) {
            int prev = 0;
            for (int u : adj_[v]) {
                if (u < 1 || u > n_) throw std::logic_error("neighbor id out of range");
                if (u == v) throw std::logic_error("self-loop");
                if (u <= prev) throw std::logic_error("neighbor list not strictly sorted");
                if (!has_edge(u, v)) throw std::logic_error("asymmetric adjacency");
                prev = u;
            }
        }
    }

    bool operator==(const Graph& other) const = default;

private:
    static void insert_sorted(std::vector<int>& list, int v) {
        auto it = std::lower_bound(list.begin(), list.end(), v);
        if (it == list.end() || *it != v) list.insert(it, v);
    }

    int n_ = 0;
    std::vector<std::vector<int>> adj_;  // index 0 unused
};

// Bijection {1..n} -> {1..n}; map[v] is the label of vertex v (map[0] unused).
struct Labeling {
    int n = 0;
    std::vector<int> map;

    static Labeling identity(int n) {
        Labeling f;
        f.n = n;
        f.map.resize(n + 1);
        std::iota(f.map.begin(), f.map.end(), 0);
        return f;
    }

    bool is_bijection() const {
        if (map.size() != static_cast<std::size_t>(n) + 1) return false;
        std::vector<bool> seen(n + 1, false);
        for (int v = 1; v <= n; ++v) {
            if (map[v] < 1 || map[v] > n || seen[map[v]]) return false;
            seen[map[v]] = true;
        }
        return true;
    }

    int operator()(int v) const { return map[v]; }
};

// Weight of v under f: sum of the labels of v's neighbors.
inline long long vertex_weight(const Graph& g, const Labeling& f, int v) {
    g.check_vertex(v);
    if (f.n != g.order()) throw std::invalid_argument("vertex_weight: labeling order mismatch");
    long long w = 0;
    for (int u : g.neighbors(v)) w += f(u);
    return w;
}

inline std::vector<long long> weight_vector(const Graph& g, const Labeling& f) {
    std::vector<long long> w(g.order() + 1, 0);
    for (int v = 1; v <= g.order(); ++v) w[v] = vertex_weight(g, f, v);
    return w;
}

// The common neighborhood sum under the identity labeling, or nullopt if the
// weights are not all equal (or the graph is empty). For an edgeless graph
// this returns 0, which no search or classification treats as magic.
inline std::optional<long long> verify_identity_magic(const Graph& g) {
    const int n = g.order();
    if (n == 0) return std::nullopt;
    const Labeling id = Labeling::identity(n);
    const long long k = vertex_weight(g, id, 1);
    for (int v = 2; v <= n; ++v)
        if (vertex_weight(g, id, v) != k) return std::nullopt;
    return k;
}

// Counting identity sum(deg(v) * f(v)) == n*k, a necessary condition for f
// to be a distance magic labeling with constant k.
inline bool degree_label_identity_check(const Graph& g, const Labeling& f, long long k) {
    if (f.n != g.order()) throw std::invalid_argument("labeling order mismatch");
    long long lhs = 0;
    for (int v = 1; v <= g.order(); ++v)
        lhs += static_cast<long long>(g.degree(v)) * f(v);
    return lhs == static_cast<long long>(g.order()) * k;
}

// Brute force over all n! labelings; first hit wins (lexicographic order of
// the label vector). The cap keeps the factorial explicit rather than silent.
inline std::optional<std::pair<Labeling, long long>> find_magic_labeling(const Graph& g,
                                                                         int cap = 9) {
    const int n = g.order();
    if (n > cap)
        throw capacity_error("find_magic_labeling: order " + std::to_string(n) +
                             " exceeds brute-force cap " + std::to_string(cap));
    if (n == 0) return std::nullopt;
    Labeling f = Labeling::identity(n);
    do {
        const long long k = vertex_weight(g, f, 1);
        bool ok = true;
        for (int v = 2; v <= n && ok; ++v) ok = vertex_weight(g, f, v) == k;
        if (ok) return std::make_pair(f, k);
    } while (std::next_permutation(f.map.begin() + 1, f.map.end()));
    return std::nullopt;
}

}  // namespace distmagic

#endif  // DISTMAGIC_GRAPH_HPP
