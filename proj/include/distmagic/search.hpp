#ifndef DISTMAGIC_SEARCH_HPP
#define DISTMAGIC_SEARCH_HPP

#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "distmagic/graph.hpp"
#include "distmagic/subset.hpp"

namespace distmagic {

// A node budget ran out before the question could be answered either way.
class budget_exhausted_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t prunes_symmetry = 0;  // candidates rejected by the parent-membership condition
    std::uint64_t prunes_weight = 0;    // candidates rejected by the accumulated-weight cap
    std::uint64_t witnesses = 0;

    SearchStats& operator+=(const SearchStats& o) {
        nodes += o.nodes;
        prunes_symmetry += o.prunes_symmetry;
        prunes_weight += o.prunes_weight;
        witnesses += o.witnesses;
        return *this;
    }
};

enum class SearchMode { first, all, exists_only };
enum class SearchStatus { exhausted, found, budget_exhausted };

struct SearchOptions {
    int jobs = 1;
    std::optional<std::uint64_t> node_budget;  // unset = run to exhaustion
    bool prune_symmetry = true;
    bool prune_weight = true;
    int regular_degree = 0;  // > 0 restricts candidates to neighborhoods of that size
};

struct SearchOutcome {
    SearchMode mode = SearchMode::first;
    SearchStatus status = SearchStatus::exhausted;
    std::vector<Graph> witnesses;
    SearchStats stats;
};

// Smallest order whose label sum can reach k, paired with the largest order
// worth trying (k itself, since k >= n on any witness).
struct OrderRange {
    long long lo = 0;
    long long hi = 0;
};

inline OrderRange feasible_orders(long long k) {
    if (k < 1) throw std::invalid_argument("feasible_orders: k must be positive");
    long long a = 1;
    while (a * (a + 1) / 2 < k) ++a;
    return {a, k};
}

// Largest magic constant an order-n graph can carry: sum(deg(v)*v) = n*k
// with every degree at most n-1 gives k <= (n^2-1)/2.
inline long long max_magic_constant(int n) {
    return (static_cast<long long>(n) * n - 1) / 2;
}

namespace detail {

inline std::uint64_t bits_through(int i) {  // bits 0..i
    return i >= 63 ? ~0ull : (1ull << (i + 1)) - 1;
}

}  // namespace detail

// Partial assignment of neighborhoods, built from vertex n down. Vertices
// depth()..n carry a chosen candidate; weight_acc(v) is the sum of assigned
// labels i with v in N(i), and required(v) is the set of those labels.
class SearchState {
public:
    SearchState(int n, long long k)
        : n_(n), k_(k), depth_(n + 1), weight_acc_(n + 1, 0), req_(n + 1, 0), chosen_(n + 1, 0) {}

    int order() const { return n_; }
    long long magic() const { return k_; }
    int depth() const { return depth_; }
    int next_vertex() const { return depth_ - 1; }
    bool complete() const { return depth_ == 1; }

    long long weight_acc(int v) const { return weight_acc_[v]; }
    std::uint64_t required(int v) const { return req_[v]; }
    std::uint64_t assigned_mask(int v) const { return chosen_[v]; }

    void assign(int vertex, const KSumSubset& cand) {
        if (vertex != depth_ - 1 || vertex < 1)
            throw std::logic_error("SearchState::assign: vertices must be assigned n down to 1");
        if (cand.contains(vertex))
            throw std::logic_error("SearchState::assign: candidate contains the vertex itself");
        chosen_[vertex] = cand.mask;
        for (int v : cand.elements) {
            weight_acc_[v] += vertex;
            req_[v] |= 1ull << vertex;
        }
        --depth_;
    }

    void unassign() {
        if (depth_ > n_) throw std::logic_error("SearchState::unassign: nothing assigned");
        const int vertex = depth_;
        std::uint64_t m = chosen_[vertex];
        while (m) {
            const int v = std::countr_zero(m);
            m &= m - 1;
            weight_acc_[v] -= vertex;
            req_[v] &= ~(1ull << vertex);
        }
        chosen_[vertex] = 0;
        ++depth_;
    }

    // All assigned neighborhood pairs mutually consistent and every
    // accumulator settled at k: the completed branch is a graph.
    bool complete_assignment_valid() const {
        if (!complete()) return false;
        for (int u = 1; u <= n_; ++u) {
            if (weight_acc_[u] != k_) return false;
            std::uint64_t m = chosen_[u];
            while (m) {
                const int w = std::countr_zero(m);
                m &= m - 1;
                if (!(chosen_[w] >> u & 1)) return false;
            }
        }
        return true;
    }

    Graph to_graph() const {
        if (!complete()) throw std::logic_error("SearchState::to_graph: assignment incomplete");
        return Graph::from_neighbor_masks(n_, chosen_);
    }

private:
    int n_;
    long long k_;
    int depth_;
    std::vector<long long> weight_acc_;
    std::vector<std::uint64_t> req_;
    std::vector<std::uint64_t> chosen_;
};

// Condition (1): an assigned vertex j chose i as a neighbor exactly when the
// candidate for i contains j. At the last vertex this extends to a full
// symmetry check of the completed assignment.
inline bool symmetry_admissible(const SearchState& s, const KSumSubset& cand, int i) {
    if (i != s.next_vertex())
        throw std::invalid_argument("symmetry_admissible: vertices i+1..n must be assigned");
    const std::uint64_t above =
        detail::bits_through(s.order()) & ~detail::bits_through(i);
    if ((cand.mask & above) != s.required(i)) return false;
    if (i == 1) {
        const int n = s.order();
        for (int u = 2; u <= n; ++u) {
            std::uint64_t m = s.assigned_mask(u);
            while (m) {
                const int w = std::countr_zero(m);
                m &= m - 1;
                const bool mirrored = w == 1 ? cand.contains(u) : (s.assigned_mask(w) >> u & 1) != 0;
                if (!mirrored) return false;
            }
        }
        for (int c : cand.elements)
            if (!(s.assigned_mask(c) >> 1 & 1)) return false;
    }
    return true;
}

// Condition (2): taking this candidate adds label i to each member's
// accumulated weight, which must stay within k.
inline bool weight_admissible(const SearchState& s, const KSumSubset& cand, int i) {
    if (i != s.next_vertex())
        throw std::invalid_argument("weight_admissible: vertices i+1..n must be assigned");
    for (int v : cand.elements)
        if (s.weight_acc(v) + i > s.magic()) return false;
    return true;
}

namespace detail {

class Explorer {
public:
    Explorer(const CandidateTable& table, SearchMode mode, const SearchOptions& opt)
        : table_(table), n_(table.n), k_(table.k), mode_(mode), opt_(opt) {
        levels_.resize(n_ + 1);
        for (int i = 1; i <= n_; ++i) {
            Level& lv = levels_[i];
            for (std::uint32_t idx : table_.ns[i]) {
                if (opt_.regular_degree > 0 &&
                    table_.subsets[idx].size() != opt_.regular_degree)
                    continue;
                lv.cands.push_back(idx);
                lv.by_high[table_.subsets[idx].mask & above_mask(i)].push_back(idx);
            }
        }
    }

    SearchOutcome run(const std::function<void(const Graph&)>* sink) {
        SearchOutcome out;
        out.mode = mode_;
        const auto& roots = levels_[n_].cands;
        const int jobs = std::max(1, opt_.jobs);
        if (jobs == 1 || roots.size() <= 1) {
            Worker w(n_, k_);
            w.sink = sink;
            for (std::uint32_t pos = 0; pos < roots.size(); ++pos)
                if (explore_root(w, pos)) break;
            out.stats = w.stats;
            if (w.first_witness) out.witnesses.push_back(std::move(*w.first_witness));
        } else {
            run_parallel(out, jobs, sink);
        }
        if (mode_ != SearchMode::all && !out.witnesses.empty())
            out.status = SearchStatus::found;
        else if (budget_hit_)
            out.status = SearchStatus::budget_exhausted;
        else
            out.status = SearchStatus::exhausted;
        return out;
    }

private:
    struct Level {
        std::vector<std::uint32_t> cands;
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_high;
    };

    struct Worker {
        Worker(int n, long long k) : state(n, k) {}
        SearchState state;
        SearchStats stats;
        const std::function<void(const Graph&)>* sink = nullptr;
        std::vector<Graph>* bucket = nullptr;  // per-root output in parallel runs
        std::optional<Graph> first_witness;
    };

    std::uint64_t above_mask(int i) const {
        return bits_through(n_) & ~bits_through(i);
    }

    void run_parallel(SearchOutcome& out, int jobs, const std::function<void(const Graph&)>* sink) {
        const auto& roots = levels_[n_].cands;
        std::vector<std::vector<Graph>> buckets(roots.size());
        std::vector<SearchStats> stats(jobs);
        std::atomic<std::uint32_t> next_root{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&, t] {
                Worker w(n_, k_);
                while (!stop_.load(std::memory_order_relaxed)) {
                    const std::uint32_t pos = next_root.fetch_add(1, std::memory_order_relaxed);
                    if (pos >= roots.size()) break;
                    w.bucket = &buckets[pos];
                    if (explore_root(w, pos)) break;
                }
                stats[t] = w.stats;
                if (w.first_witness) {
                    std::lock_guard<std::mutex> lock(witness_mutex_);
                    if (!shared_witness_) shared_witness_ = std::move(w.first_witness);
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& s : stats) out.stats += s;
        if (mode_ == SearchMode::all) {
            // merge in root order so enumeration is independent of the worker count
            for (auto& b : buckets)
                for (auto& g : b) {
                    if (sink)
                        (*sink)(g);
                    else
                        out.witnesses.push_back(std::move(g));
                }
        } else if (shared_witness_) {
            out.witnesses.push_back(std::move(*shared_witness_));
        }
    }

    bool explore_root(Worker& w, std::uint32_t pos) {
        const KSumSubset& cand = table_.subsets[levels_[n_].cands[pos]];
        // condition (1) is vacuous at the root
        if (opt_.prune_weight && !weight_ok(w, cand, n_, /*low_only=*/opt_.prune_symmetry)) {
            ++w.stats.prunes_weight;
            return false;
        }
        if (!count_node(w)) return true;
        w.state.assign(n_, cand);
        const bool stop = dfs(w, n_ - 1);
        w.state.unassign();
        return stop;
    }

    bool dfs(Worker& w, int i) {
        if (i == 0) return emit(w);
        if (stop_.load(std::memory_order_relaxed)) return true;
        const Level& lv = levels_[i];
        if (opt_.prune_symmetry) {
            const auto it = lv.by_high.find(w.state.required(i));
            const std::size_t admissible = it == lv.by_high.end() ? 0 : it->second.size();
            w.stats.prunes_symmetry += lv.cands.size() - admissible;
            if (admissible == 0) return false;
            for (const std::uint32_t idx : it->second) {
                const KSumSubset& cand = table_.subsets[idx];
                if (opt_.prune_weight && !weight_ok(w, cand, i, /*low_only=*/true)) {
                    ++w.stats.prunes_weight;
                    continue;
                }
                if (descend(w, i, cand)) return true;
            }
        } else {
            for (const std::uint32_t idx : lv.cands) {
                const KSumSubset& cand = table_.subsets[idx];
                if (opt_.prune_weight && !weight_ok(w, cand, i, /*low_only=*/false)) {
                    ++w.stats.prunes_weight;
                    continue;
                }
                if (descend(w, i, cand)) return true;
            }
        }
        return false;
    }

    bool descend(Worker& w, int i, const KSumSubset& cand) {
        if (!count_node(w)) return true;
        w.state.assign(i, cand);
        const bool stop = dfs(w, i - 1);
        w.state.unassign();
        return stop;
    }

    // With the symmetry condition enforced at every level, members above i
    // already account for label i inside their own k-sum, so only members
    // below i need the cap test.
    bool weight_ok(Worker& w, const KSumSubset& cand, int i, bool low_only) const {
        std::uint64_t m = low_only ? cand.mask & bits_through(i - 1) : cand.mask;
        while (m) {
            const int v = std::countr_zero(m);
            m &= m - 1;
            if (w.state.weight_acc(v) + i > k_) return false;
        }
        return true;
    }

    bool emit(Worker& w) {
        if (!opt_.prune_symmetry && !w.state.complete_assignment_valid()) return false;
        Graph g = w.state.to_graph();
        ++w.stats.witnesses;
        if (mode_ == SearchMode::all) {
            if (w.bucket)
                w.bucket->push_back(std::move(g));
            else if (w.sink)
                (*w.sink)(g);
            else
                w.first_witness = std::move(g);  // unreachable; collecting overload passes a sink
            return false;
        }
        w.first_witness = std::move(g);
        stop_.store(true, std::memory_order_relaxed);
        return true;
    }

    bool count_node(Worker& w) {
        ++w.stats.nodes;
        if (opt_.node_budget) {
            if (budget_used_.fetch_add(1, std::memory_order_relaxed) + 1 > *opt_.node_budget) {
                budget_hit_ = true;
                stop_.store(true, std::memory_order_relaxed);
                return false;
            }
        }
        return true;
    }

    const CandidateTable& table_;
    int n_;
    long long k_;
    SearchMode mode_;
    SearchOptions opt_;
    std::vector<Level> levels_;
    std::atomic<bool> stop_{false};
    std::atomic<std::uint64_t> budget_used_{0};
    std::atomic<bool> budget_hit_{false};
    std::mutex witness_mutex_;
    std::optional<Graph> shared_witness_;
};

inline void check_search_args(int n, long long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("search: need n >= 1 and k >= 1");
    if (n > 63) throw capacity_error("search: order above 63 not supported");
}

// Any witness has k between n and (n^2-1)/2; outside that the search space
// is empty without building a table.
inline bool bounds_reject(int n, long long k) { return k < n || k > max_magic_constant(n); }

inline SearchOutcome empty_outcome(SearchMode mode) {
    SearchOutcome out;
    out.mode = mode;
    out.status = SearchStatus::exhausted;
    return out;
}

}  // namespace detail

// Depth-first over roots in NS(n) order, children in NS(i) order; the first
// completed branch wins. Exhausting the forest proves no witness exists.
inline SearchOutcome find_first(int n, long long k, const SearchOptions& opt = {}) {
    detail::check_search_args(n, k);
    if (detail::bounds_reject(n, k)) return detail::empty_outcome(SearchMode::first);
    const CandidateTable table = candidate_table(n, k);
    detail::Explorer ex(table, SearchMode::first, opt);
    return ex.run(nullptr);
}

// Streams every identity-labeled witness exactly once, in deterministic
// order. With jobs > 1 the sink still sees graphs in root order (per-root
// results are buffered and merged after the workers finish).
inline SearchOutcome enumerate_labeled(int n, long long k,
                                       const std::function<void(const Graph&)>& sink,
                                       const SearchOptions& opt = {}) {
    detail::check_search_args(n, k);
    if (detail::bounds_reject(n, k)) return detail::empty_outcome(SearchMode::all);
    const CandidateTable table = candidate_table(n, k);
    detail::Explorer ex(table, SearchMode::all, opt);
    return ex.run(&sink);
}

inline SearchOutcome enumerate_labeled(int n, long long k, const SearchOptions& opt = {}) {
    std::vector<Graph> collected;
    const std::function<void(const Graph&)> sink = [&](const Graph& g) {
        collected.push_back(g);
    };
    SearchOutcome out = enumerate_labeled(n, k, sink, opt);
    out.witnesses = std::move(collected);
    return out;
}

inline bool exists(int n, long long k, const SearchOptions& opt = {}) {
    SearchOutcome out = find_first(n, k, opt);
    if (out.status == SearchStatus::budget_exhausted)
        throw budget_exhausted_error("exists(" + std::to_string(n) + ", " + std::to_string(k) +
                                     "): node budget exhausted before an answer");
    return out.status == SearchStatus::found;
}

// Same explorer restricted to size-r candidates. An r-regular witness forces
// k = r(n+1)/2, so any other k is rejected up front.
inline SearchOutcome search_regular(int n, long long k, int r, const SearchOptions& opt = {}) {
    detail::check_search_args(n, k);
    if (r < 1 || r >= n) throw std::invalid_argument("search_regular: need 1 <= r < n");
    if (static_cast<long long>(r) * (n + 1) != 2 * k || detail::bounds_reject(n, k))
        return detail::empty_outcome(SearchMode::first);
    SearchOptions o = opt;
    o.regular_degree = r;
    const CandidateTable table = candidate_table(n, k);
    detail::Explorer ex(table, SearchMode::first, o);
    return ex.run(nullptr);
}

}  // namespace distmagic

#endif  // DISTMAGIC_SEARCH_HPP
