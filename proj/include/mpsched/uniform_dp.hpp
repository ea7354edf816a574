#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "instance.hpp"

namespace mpsched {

namespace detail {

inline std::vector<int> machines_by_speed_desc(const Instance& ins) {
    std::vector<int> order(ins.num_machines());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ins.machine_speeds[a] > ins.machine_speeds[b];
    });
    return order;
}

}  // namespace detail

// Exact minimal unit-job makespan for a fixed number of partitions.
// Guess T from the candidate set {n'/s(m)} by binary search; feasibility of a
// guess is a tuple DP over remaining job counts per partition, each machine
// taking up to floor(s*T) jobs of a single partition.
inline std::pair<Rational, Schedule> dp_cmax_unit(const Instance& ins) {
    if (!ins.unit_jobs) throw DomainMismatch("dp_cmax_unit requires unit jobs");
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");

    std::vector<int> order = detail::machines_by_speed_desc(ins);
    std::vector<int> sizes(k);
    for (int p = 0; p < k; ++p) sizes[p] = static_cast<int>(ins.partitions[p].size());

    using State = std::vector<int>;
    struct Decision {
        int partition;
        int count;
    };
    // layers[l]: states reachable after the first l machines, with the move
    // that produced them (parent = state with the taken jobs restored).
    std::vector<std::map<State, Decision>> layers;

    auto run = [&](const Rational& T, bool keep_layers) -> bool {
        CapacityFn caps = capacities_for_deadline(ins.machine_speeds, T);
        layers.assign(keep_layers ? m + 1 : 2, {});
        layers[0].emplace(sizes, Decision{-1, 0});
        for (int l = 0; l < m; ++l) {
            auto& prev = layers[keep_layers ? l : l % 2];
            auto& next = layers[keep_layers ? l + 1 : (l + 1) % 2];
            next.clear();
            long long cap = caps[order[l]];
            for (const auto& [state, _] : prev) {
                next.try_emplace(state, Decision{-1, 0});  // machine unused
                for (int p = 0; p < k; ++p) {
                    State t = state;
                    for (int take = 1; take <= std::min<long long>(state[p], cap); ++take) {
                        --t[p];
                        next.try_emplace(t, Decision{p, take});
                    }
                }
            }
        }
        State zero(k, 0);
        return layers[keep_layers ? m : m % 2].count(zero) > 0;
    };

    std::vector<Rational> cand = candidate_makespans(ins);
    int lo = 0, hi = static_cast<int>(cand.size()) - 1;
    MPSCHED_ASSERT(run(cand[hi], false), "largest candidate makespan must be feasible");
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (run(cand[mid], false))
            hi = mid;
        else
            lo = mid + 1;
    }
    // feasibility is monotone in T over the candidate set; verify the boundary
    MPSCHED_ASSERT(run(cand[lo], false), "binary search returned an infeasible T");
    MPSCHED_ASSERT(lo == 0 || !run(cand[lo - 1], false),
                   "binary search predecessor unexpectedly feasible");

    run(cand[lo], true);
    Schedule sched;
    sched.machines.resize(m);
    State state(k, 0);
    std::vector<int> next_index(k);
    for (int p = 0; p < k; ++p) next_index[p] = sizes[p];
    for (int l = m; l >= 1; --l) {
        Decision d = layers[l].at(state);
        if (d.partition >= 0) {
            MachineAssignment ma;
            ma.partition = d.partition;
            // hand out indices from the tail of the partition
            for (int t = 0; t < d.count; ++t)
                ma.jobs.push_back({d.partition, --next_index[d.partition]});
            std::reverse(ma.jobs.begin(), ma.jobs.end());
            sched.machines[order[l - 1]] = std::move(ma);
            state[d.partition] += d.count;
        }
    }
    MPSCHED_ASSERT(state == sizes, "cmax reconstruction did not consume all jobs");
    MPSCHED_ASSERT(evaluate_cmax(ins, sched) <= cand[lo], "reconstructed schedule exceeds T");
    return {cand[lo], sched};
}

// Exact minimal sum of completion times for a fixed number of partitions.
//
// Machines are processed in nonincreasing speed order; the DP state is the
// multiset of jobs still unassigned per partition, tracked as remaining counts
// per distinct processing value, with one minimum-cost entry kept per state.
// Tracking counts per value (rather than a plain total) is what makes the
// table exact: two histories leaving the same value multiset really are
// interchangeable, which is false for totals alone once processing times mix.
inline std::pair<Rational, Schedule> dp_sumcj(const Instance& ins) {
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");

    std::vector<int> order = detail::machines_by_speed_desc(ins);

    // per partition: distinct values desc, their counts, and job indices per value
    std::vector<std::vector<long long>> values(k);
    std::vector<std::vector<int>> counts(k);
    std::vector<std::vector<std::vector<int>>> index_pools(k);
    std::vector<int> offset(k + 1, 0);  // into the flattened state vector
    for (int p = 0; p < k; ++p) {
        std::vector<int> ord(ins.partitions[p].size());
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
            return ins.partitions[p][a].processing > ins.partitions[p][b].processing;
        });
        for (int idx : ord) {
            long long v = ins.partitions[p][idx].processing;
            if (values[p].empty() || values[p].back() != v) {
                values[p].push_back(v);
                counts[p].push_back(0);
                index_pools[p].emplace_back();
            }
            ++counts[p].back();
            index_pools[p].back().push_back(idx);
        }
        offset[p + 1] = offset[p] + static_cast<int>(values[p].size());
    }

    using State = std::vector<int>;
    State initial;
    for (int p = 0; p < k; ++p)
        initial.insert(initial.end(), counts[p].begin(), counts[p].end());

    struct Entry {
        Rational cost;
        int partition = -1;        // move that created this entry
        std::vector<int> taken;    // per value class of that partition
    };
    std::vector<std::map<State, Entry>> layers(m + 1);
    layers[0].emplace(initial, Entry{Rational(0), -1, {}});

    // cost of a taken multiset on one machine, scheduled shortest-first:
    // chosen jobs sorted nonincreasing get multipliers 1,2,... from the end
    auto take_cost = [&](int p, const std::vector<int>& take,
                         const Rational& speed) -> Rational {
        mpz_class sum = 0;
        long long mult = 0;
        for (std::size_t v = 0; v < take.size(); ++v)
            for (int c = 0; c < take[v]; ++c) sum += to_mpz(values[p][v]) * to_mpz(++mult);
        return Rational(sum) / speed;
    };

    for (int l = 0; l < m; ++l) {
        const Rational& speed = ins.machine_speeds[order[l]];
        auto& prev = layers[l];
        auto& next = layers[l + 1];
        for (const auto& [state, entry] : prev) {
            auto offer = [&](State&& st, Entry&& e) {
                auto it = next.find(st);
                if (it == next.end())
                    next.emplace(std::move(st), std::move(e));
                else if (e.cost < it->second.cost)
                    it->second = std::move(e);
            };
            offer(State(state), Entry{entry.cost, -1, {}});  // machine unused
            for (int p = 0; p < k; ++p) {
                int nv = static_cast<int>(values[p].size());
                std::vector<int> take(nv, 0);
                // enumerate all take vectors (componentwise 0..remaining)
                auto rec = [&](auto&& self, int v, bool any) -> void {
                    if (v == nv) {
                        if (!any) return;
                        State st = state;
                        for (int i = 0; i < nv; ++i) st[offset[p] + i] -= take[i];
                        offer(std::move(st),
                              Entry{entry.cost + take_cost(p, take, speed), p, take});
                        return;
                    }
                    for (int t = 0; t <= state[offset[p] + v]; ++t) {
                        take[v] = t;
                        self(self, v + 1, any || t > 0);
                    }
                    take[v] = 0;
                };
                rec(rec, 0, false);
            }
        }
    }

    State zero(offset[k], 0);
    auto final_it = layers[m].find(zero);
    MPSCHED_ASSERT(final_it != layers[m].end(), "all-zero state unreachable despite m >= k");
    Rational best = final_it->second.cost;

    // walk back, then replay forward handing out concrete job indices
    std::vector<std::pair<int, std::vector<int>>> moves(m, {-1, {}});
    State state = zero;
    for (int l = m; l >= 1; --l) {
        const Entry& e = layers[l].at(state);
        moves[l - 1] = {e.partition, e.taken};
        if (e.partition >= 0)
            for (std::size_t v = 0; v < e.taken.size(); ++v)
                state[offset[e.partition] + v] += e.taken[v];
    }
    MPSCHED_ASSERT(state == initial, "sumcj reconstruction did not consume all jobs");

    std::vector<std::vector<int>> pool_pos(k);
    for (int p = 0; p < k; ++p) pool_pos[p].assign(values[p].size(), 0);
    Schedule sched;
    sched.machines.resize(m);
    for (int l = 0; l < m; ++l) {
        auto& [p, take] = moves[l];
        if (p < 0) continue;
        MachineAssignment ma;
        ma.partition = p;
        // shortest-first: consume value classes from the smallest value up
        for (int v = static_cast<int>(take.size()) - 1; v >= 0; --v)
            for (int c = 0; c < take[v]; ++c)
                ma.jobs.push_back({p, index_pools[p][v][pool_pos[p][v]++]});
        if (ma.jobs.empty()) ma.partition = kUnused;
        sched.machines[order[l]] = std::move(ma);
    }
    MPSCHED_ASSERT(evaluate_sum_cj(ins, sched) == best, "dp schedule does not match its cost");
    return {best, sched};
}

}  // namespace mpsched
