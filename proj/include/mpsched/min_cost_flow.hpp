#pragma once

#include <vector>

#include "rational.hpp"

namespace mpsched {

// Successive-shortest-path min cost flow with exact rational costs, sized for
// small bipartite assignment networks (Bellman-Ford per augmentation).
class MinCostFlow {
  public:
    explicit MinCostFlow(int nodes) : head_(nodes, -1) {}

    int add_edge(int from, int to, long long cap, const Rational& cost) {
        int id = static_cast<int>(edges_.size());
        edges_.push_back({to, head_[from], cap, cost});
        head_[from] = id;
        edges_.push_back({from, head_[to], 0, -cost});
        head_[to] = id + 1;
        return id;
    }

    long long flow_on(int edge_id) const { return edges_[edge_id ^ 1].cap; }

    // Sends up to `want` units; returns (sent, total cost).
    std::pair<long long, Rational> run(int s, int t, long long want) {
        long long sent = 0;
        Rational cost(0);
        while (sent < want) {
            int n = static_cast<int>(head_.size());
            std::vector<Rational> dist(n, Rational(0));
            std::vector<char> reached(n, 0), inq(n, 0);
            std::vector<int> prev_edge(n, -1);
            std::vector<int> queue;
            reached[s] = 1;
            queue.push_back(s);
            inq[s] = 1;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                int u = queue[qi];
                inq[u] = 0;
                for (int e = head_[u]; e >= 0; e = edges_[e].next) {
                    if (edges_[e].cap <= 0) continue;
                    int v = edges_[e].to;
                    Rational nd = dist[u] + edges_[e].cost;
                    if (!reached[v] || nd < dist[v]) {
                        reached[v] = 1;
                        dist[v] = nd;
                        prev_edge[v] = e;
                        if (!inq[v]) {
                            queue.push_back(v);
                            inq[v] = 1;
                        }
                    }
                }
            }
            if (!reached[t]) break;
            long long push = want - sent;
            for (int v = t; v != s;) {
                int e = prev_edge[v];
                push = std::min(push, edges_[e].cap);
                v = edges_[e ^ 1].to;
            }
            for (int v = t; v != s;) {
                int e = prev_edge[v];
                edges_[e].cap -= push;
                edges_[e ^ 1].cap += push;
                v = edges_[e ^ 1].to;
            }
            sent += push;
            cost += dist[t] * rat(push);
        }
        return {sent, cost};
    }

  private:
    struct Edge {
        int to;
        int next;
        long long cap;
        Rational cost;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

// One machine slot set for an assignment of jobs to (machine, layer) pairs,
// where layer l counts positions from the end of the machine's load and a job
// at layer l on machine of speed s contributes l*p/s.
struct AssignmentSlots {
    std::vector<Rational> machine_speeds;
    int max_layer = 0;  // layers 1..max_layer per machine
};

struct AssignmentResult {
    // per job: (machine, layer)
    std::vector<std::pair<int, int>> placement;
    Rational cost;
};

// Integral min-cost assignment of all jobs; throws NoFeasibleFlow when the
// slots cannot hold them. Occupied layers per machine form a prefix 1..t,
// which min-cost solutions satisfy because cost grows with the layer.
inline AssignmentResult min_cost_assignment(const std::vector<long long>& processing,
                                            const AssignmentSlots& slots) {
    int n = static_cast<int>(processing.size());
    int m = static_cast<int>(slots.machine_speeds.size());
    int L = slots.max_layer;
    int source = 0, sink = 1;
    auto job_node = [&](int j) { return 2 + j; };
    auto slot_node = [&](int mi, int l) { return 2 + n + mi * L + (l - 1); };
    MinCostFlow net(2 + n + m * L);
    std::vector<std::vector<int>> edge_ids(n);
    for (int j = 0; j < n; ++j) {
        net.add_edge(source, job_node(j), 1, Rational(0));
        for (int mi = 0; mi < m; ++mi)
            for (int l = 1; l <= L; ++l)
                edge_ids[j].push_back(net.add_edge(
                    job_node(j), slot_node(mi, l), 1,
                    Rational(l) * rat(processing[j]) / slots.machine_speeds[mi]));
    }
    for (int mi = 0; mi < m; ++mi)
        for (int l = 1; l <= L; ++l) net.add_edge(slot_node(mi, l), sink, 1, Rational(0));

    auto [sent, cost] = net.run(source, sink, n);
    if (sent < n) throw NoFeasibleFlow("slots cannot hold all jobs");

    AssignmentResult res;
    res.cost = cost;
    res.placement.assign(n, {-1, -1});
    for (int j = 0; j < n; ++j) {
        int idx = 0;
        for (int mi = 0; mi < m; ++mi)
            for (int l = 1; l <= L; ++l, ++idx)
                if (net.flow_on(edge_ids[j][idx]) > 0) res.placement[j] = {mi, l};
        MPSCHED_ASSERT(res.placement[j].first >= 0, "job left unplaced by a full flow");
    }
    // layer-prefix check
    std::vector<std::vector<char>> used(m, std::vector<char>(L + 1, 0));
    for (auto [mi, l] : res.placement) used[mi][l] = 1;
    for (int mi = 0; mi < m; ++mi)
        for (int l = 2; l <= L; ++l)
            MPSCHED_ASSERT(!used[mi][l] || used[mi][l - 1],
                           "occupied layers do not form a prefix");
    return res;
}

}  // namespace mpsched
