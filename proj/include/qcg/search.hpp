#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <istream>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include "qcg/alpha.hpp"
#include "qcg/canonical.hpp"
#include "qcg/graph.hpp"
#include "qcg/theta.hpp"

namespace qcg {

namespace detail {

// McKay-style canonical augmentation. A child (parent plus one new vertex
// wired to a neighbor subset) is kept iff the new vertex lies in the
// automorphism orbit of the vertex that the canonical labeling puts last.
// Children isomorphic via an automorphism of the parent are removed with a
// per-parent set of canonical encodings, so each isomorphism class is
// visited exactly once and memory stays bounded by one parent's children.
template <typename Visitor>
void augment(const Graph& g, int target, Visitor& visit) {
    visit(g);
    if (g.n == target) return;

    std::set<Encoding> seen;
    const int v_new = g.n;
    for (std::uint32_t subset = 0; subset < (1u << g.n); ++subset) {
        Graph child = g;
        child.n = g.n + 1;
        child.adj[v_new] = subset;
        std::uint32_t rest = subset;
        while (rest) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            child.adj[u] |= 1u << v_new;
        }

        auto canon = canonicalize(child);

        // the accept test must run before dedup: two isomorphic children of
        // one parent can place v_new in different orbits, and only the wiring
        // that puts v_new in the canonical-last orbit may represent the class
        bool accept;
        if (canon.perm[v_new] == child.n - 1) {
            accept = true;
        } else {
            int last = 0;
            while (canon.perm[last] != child.n - 1) ++last;
            accept = canon.root_colors[v_new] == canon.root_colors[last] &&
                     same_orbit(child, v_new, last);
        }
        if (accept && seen.insert(canon.enc).second) augment(child, target, visit);
    }
}

}  // namespace detail

// Visits exactly one representative per isomorphism class of n-vertex graphs
// (connected and disconnected), in a deterministic order.
inline long long enumerate_graphs(int n, const std::function<void(const Graph&)>& visitor) {
    if (n < 1 || n > 10) throw std::invalid_argument("enumerate_graphs: n must be in 1..10");
    long long count = 0;
    auto visit = [&](const Graph& g) {
        if (g.n == n) {
            ++count;
            visitor(g);
        }
    };
    detail::augment(Graph(1), n, visit);
    return count;
}

inline long long enumerate_connected(int n, const std::function<void(const Graph&)>& visitor) {
    if (n < 1 || n > 10) throw std::invalid_argument("enumerate_connected: n must be in 1..10");
    long long count = 0;
    auto visit = [&](const Graph& g) {
        if (g.n == n && is_connected(g)) {
            ++count;
            visitor(g);
        }
    };
    detail::augment(Graph(1), n, visit);
    return count;
}

struct ArgmaxEntry {
    Graph graph;
    CanonicalForm canon;
    int alpha = 0;
    ThetaResult theta;
};

struct SearchResult {
    int n = 0;
    double best_ratio_lower = 0.0;
    double best_ratio_upper = 0.0;
    std::vector<ArgmaxEntry> argmax_graphs;
    long long graphs_scanned = 0;
    long long sdp_solves = 0;
    double wall_seconds = 0.0;
    bool all_converged = true;
};

namespace detail {

struct RatioWorker {
    double gap_tol;
    bool prune;
    std::atomic<long long>* solves;
    std::atomic<bool>* all_converged;

    // shared monotone best certified lower ratio, used only for sound pruning
    std::mutex* best_mutex;
    double* best_lower;

    std::vector<ArgmaxEntry> candidates;

    void process(const Graph& g) {
        const int alpha = independence_number_value(g);

        double snapshot;
        {
            std::lock_guard lk(*best_mutex);
            snapshot = *best_lower;
        }
        if (prune) {
            // clique-cover number bounds theta from above, so this skip is sound
            int bound = clique_cover_bound(g, g.vertex_mask());
            if (static_cast<double>(bound) / alpha <= snapshot - 1e-9) return;
        }

        solves->fetch_add(1, std::memory_order_relaxed);
        ThetaResult th = lovasz_theta(g, gap_tol);
        if (!th.converged) {
            // retry cautiously with shorter steps before giving up
            th = lovasz_theta(g, gap_tol, 0.8, 2000);
            if (!th.converged) all_converged->store(false, std::memory_order_relaxed);
        }

        const double lo = th.lower / alpha;
        const double up = th.upper / alpha;
        {
            std::lock_guard lk(*best_mutex);
            if (lo > *best_lower) *best_lower = lo;
            snapshot = *best_lower;
        }
        if (up >= snapshot) {
            ArgmaxEntry e;
            e.graph = g;
            e.canon = canonical_form(g);
            e.alpha = alpha;
            e.theta = th;
            candidates.push_back(std::move(e));
            if (candidates.size() > 4096)
                std::erase_if(candidates, [&](const ArgmaxEntry& c) {
                    return c.theta.upper / c.alpha < snapshot;
                });
        }
    }
};

inline SearchResult run_ratio_search(int n, double gap_tol, bool prune, int threads,
                                     const std::function<long long(const std::function<void(const Graph&)>&)>& producer) {
    const auto t0 = std::chrono::steady_clock::now();

    std::atomic<long long> solves{0};
    std::atomic<bool> all_converged{true};
    std::mutex best_mutex;
    double best_lower = 0.0;

    std::vector<RatioWorker> workers(std::max(threads, 1));
    for (auto& w : workers)
        w = RatioWorker{gap_tol, prune, &solves, &all_converged, &best_mutex, &best_lower, {}};

    long long scanned = 0;
    if (threads <= 1) {
        scanned = producer([&](const Graph& g) { workers[0].process(g); });
    } else {
        std::mutex qmutex;
        std::condition_variable cv_pop, cv_push;
        std::vector<Graph> queue;
        bool done = false;
        constexpr std::size_t kQueueCap = 4096;

        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (;;) {
                    Graph g;
                    {
                        std::unique_lock lk(qmutex);
                        cv_pop.wait(lk, [&] { return done || !queue.empty(); });
                        if (queue.empty()) return;
                        g = queue.back();
                        queue.pop_back();
                    }
                    cv_push.notify_one();
                    workers[t].process(g);
                }
            });
        }
        scanned = producer([&](const Graph& g) {
            std::unique_lock lk(qmutex);
            cv_push.wait(lk, [&] { return queue.size() < kQueueCap; });
            queue.push_back(g);
            lk.unlock();
            cv_pop.notify_one();
        });
        {
            std::lock_guard lk(qmutex);
            done = true;
        }
        cv_pop.notify_all();
        for (auto& th : pool) th.join();
    }

    SearchResult res;
    res.n = n;
    res.graphs_scanned = scanned;
    res.sdp_solves = solves.load();
    res.all_converged = all_converged.load();

    std::vector<ArgmaxEntry> merged;
    for (auto& w : workers)
        for (auto& e : w.candidates) merged.push_back(std::move(e));

    // final filter with the settled best lower bound; thread timing cannot
    // change this because pruning only ever discards graphs strictly below it
    res.best_ratio_lower = best_lower;
    std::erase_if(merged, [&](const ArgmaxEntry& e) {
        return e.theta.upper / e.alpha < res.best_ratio_lower;
    });
    std::sort(merged.begin(), merged.end(),
              [](const ArgmaxEntry& a, const ArgmaxEntry& b) { return a.canon.canon < b.canon.canon; });
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const ArgmaxEntry& a, const ArgmaxEntry& b) {
                                 return a.canon.canon == b.canon.canon;
                             }),
                 merged.end());

    res.best_ratio_upper = res.best_ratio_lower;
    for (const auto& e : merged)
        res.best_ratio_upper = std::max(res.best_ratio_upper, e.theta.upper / e.alpha);
    res.argmax_graphs = std::move(merged);

    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace detail

// Exhaustive maximization of theta/alpha over connected n-vertex graphs.
// Connectedness loses nothing: theta and alpha are both additive over
// disjoint unions and the mediant inequality bounds the union's ratio by the
// best component's. Ratio comparisons use the certified theta interval, so
// the argmax list is sound against floating-point error.
inline SearchResult max_ratio_search(int n, double gap_tol = 1e-8, bool prune = true,
                                     int threads = 1) {
    if (n < 3 || n > 10) throw std::invalid_argument("max_ratio_search: n must be in 3..10");
    return detail::run_ratio_search(n, gap_tol, prune, threads,
                                    [n](const std::function<void(const Graph&)>& v) {
                                        return enumerate_connected(n, v);
                                    });
}

// Streaming variant: graphs come from graph6 lines (e.g. an external
// generator) instead of internal enumeration. Duplicate isomorphism classes
// in the input are collapsed in the argmax list.
inline SearchResult max_ratio_search_stream(std::istream& in, double gap_tol = 1e-8,
                                            bool prune = true, int threads = 1) {
    int n = 0;
    auto producer = [&](const std::function<void(const Graph&)>& visit) {
        long long count = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Graph g = parse_graph6(line);
            n = std::max(n, g.n);
            ++count;
            visit(g);
        }
        return count;
    };
    SearchResult res = detail::run_ratio_search(0, gap_tol, prune, threads, producer);
    res.n = n;
    return res;
}

}  // namespace qcg
