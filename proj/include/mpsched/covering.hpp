#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "instance.hpp"

namespace mpsched {

// A partial machine -> part map plus the permutations that sorted the inputs.
struct GreedyCovering {
    bool ok = false;
    std::vector<int> part_of_machine;   // original machine index -> original part id, -1 unassigned
    std::vector<int> machine_order;     // machine indices sorted by nonincreasing capacity
    std::vector<int> part_order;        // part ids sorted by nonincreasing size
};

// Single left-to-right scan: machines accumulate onto the current part and we
// move on once the accumulated capacity strictly exceeds half the part size.
// If the result covers every part to at least half its size it is returned;
// otherwise NO, which certifies that no exact covering exists at all.
//
// The advance test is strictly greater than size/2: a machine landing exactly
// on half stays with its part until the next machine pushes it over.
inline GreedyCovering greedy_covering(const std::vector<long long>& part_sizes,
                                      const std::vector<long long>& capacities) {
    GreedyCovering out;
    int k = static_cast<int>(part_sizes.size()), m = static_cast<int>(capacities.size());
    out.part_of_machine.assign(m, -1);
    out.machine_order.resize(m);
    out.part_order.resize(k);
    std::iota(out.machine_order.begin(), out.machine_order.end(), 0);
    std::iota(out.part_order.begin(), out.part_order.end(), 0);
    std::stable_sort(out.machine_order.begin(), out.machine_order.end(),
                     [&](int a, int b) { return capacities[a] > capacities[b]; });
    std::stable_sort(out.part_order.begin(), out.part_order.end(),
                     [&](int a, int b) { return part_sizes[a] > part_sizes[b]; });

    std::vector<long long> covered(k, 0);
    int j = 0;
    for (int i = 0; i < m && j < k; ++i) {
        int mach = out.machine_order[i];
        int part = out.part_order[j];
        out.part_of_machine[mach] = part;
        covered[part] += capacities[mach];
        if (2 * covered[part] > part_sizes[part]) ++j;
    }
    out.ok = true;
    for (int p = 0; p < k; ++p)
        if (2 * covered[p] < part_sizes[p]) out.ok = false;
    if (!out.ok) out.part_of_machine.assign(m, -1);
    return out;
}

namespace detail {

// Keep only the n fastest machines (a unit-job schedule never needs more);
// returns their original indices sorted by nonincreasing speed.
inline std::vector<int> fastest_machines(const Instance& ins, int limit) {
    std::vector<int> order(ins.num_machines());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ins.machine_speeds[a] > ins.machine_speeds[b];
    });
    if (static_cast<int>(order.size()) > limit) order.resize(limit);
    return order;
}

}  // namespace detail

struct SearchOptions {
    bool linear_scan = false;  // fall back to scanning all candidate deadlines
};

// 2-approximate unit-job makespan: find the least candidate T whose capacities
// floor(s*T) admit a greedy half-covering, then give each covering machine up
// to twice its capacity.
inline std::pair<Schedule, Rational> two_approx_cmax_unit(const Instance& ins,
                                                          const SearchOptions& opts = {}) {
    if (!ins.unit_jobs) throw DomainMismatch("two_approx_cmax_unit requires unit jobs");
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");
    int n = ins.num_jobs();

    std::vector<int> kept = detail::fastest_machines(ins, n);
    std::vector<Rational> speeds;
    for (int i : kept) speeds.push_back(ins.machine_speeds[i]);

    std::vector<long long> sizes(k);
    for (int p = 0; p < k; ++p) sizes[p] = static_cast<long long>(ins.partitions[p].size());

    std::vector<Rational> cand;
    for (const Rational& s : speeds)
        for (int j = 1; j <= n; ++j) cand.push_back(Rational(j) / s);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    auto attempt = [&](const Rational& T) {
        CapacityFn caps = capacities_for_deadline(speeds, T);
        return greedy_covering(sizes, caps);
    };

    int found = -1;
    if (opts.linear_scan) {
        for (int i = 0; i < static_cast<int>(cand.size()); ++i)
            if (attempt(cand[i]).ok) {
                found = i;
                break;
            }
        MPSCHED_ASSERT(found >= 0, "no candidate deadline admits a half-covering");
    } else {
        int lo = 0, hi = static_cast<int>(cand.size()) - 1;
        MPSCHED_ASSERT(attempt(cand[hi]).ok, "largest candidate deadline must be accepted");
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (attempt(cand[mid]).ok)
                hi = mid;
            else
                lo = mid + 1;
        }
        found = lo;
        // acceptance is monotone over the candidate set; verify the boundary
        MPSCHED_ASSERT(attempt(cand[found]).ok, "binary search returned a rejected T");
        MPSCHED_ASSERT(found == 0 || !attempt(cand[found - 1]).ok,
                       "binary search predecessor unexpectedly accepted");
    }

    const Rational& T = cand[found];
    GreedyCovering cov = attempt(T);
    CapacityFn caps = capacities_for_deadline(speeds, T);
    Schedule sched;
    sched.machines.resize(m);
    std::vector<long long> remaining(sizes);
    std::vector<int> next_index(k, 0);
    for (int i = 0; i < static_cast<int>(kept.size()); ++i) {
        int p = cov.part_of_machine[i];
        if (p < 0) continue;
        long long take = std::min<long long>(remaining[p], 2 * caps[i]);
        if (take <= 0) continue;
        MachineAssignment ma;
        ma.partition = p;
        for (long long t = 0; t < take; ++t) ma.jobs.push_back({p, next_index[p]++});
        sched.machines[kept[i]] = std::move(ma);
        remaining[p] -= take;
    }
    for (int p = 0; p < k; ++p)
        MPSCHED_ASSERT(remaining[p] == 0, "half-covering left jobs unscheduled");
    return {sched, evaluate_cmax(ins, sched)};
}

// Optimal split of N unit jobs over a machine set for sum of completion
// times: the marginal cost of a machine's next job is (x+1)/s, so repeatedly
// feed the machine with the least marginal (ties -> lowest index).
struct UnitDistribution {
    std::vector<long long> counts;
    Rational cost;
};

inline UnitDistribution unit_sumcj_distribution(long long N, const std::vector<Rational>& speeds) {
    if (speeds.empty()) throw BadArgument("need at least one machine");
    UnitDistribution out;
    out.counts.assign(speeds.size(), 0);
    out.cost = 0;
    for (long long placed = 0; placed < N; ++placed) {
        int best = 0;
        Rational best_marginal = rat(out.counts[0] + 1) / speeds[0];
        for (int i = 1; i < static_cast<int>(speeds.size()); ++i) {
            Rational marginal = rat(out.counts[i] + 1) / speeds[i];
            if (marginal < best_marginal) {
                best = i;
                best_marginal = marginal;
            }
        }
        ++out.counts[best];
        out.cost += best_marginal;
    }
    return out;
}

// 4-approximate unit-job sum of completion times via ordered coverings: parts
// by nonincreasing size, machines by nonincreasing speed, and a DP over
// "first j parts consume the first i machines" blocks.
inline std::pair<Schedule, Rational> four_approx_sumcj_unit(const Instance& ins) {
    if (!ins.unit_jobs) throw DomainMismatch("four_approx_sumcj_unit requires unit jobs");
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");

    std::vector<int> part_order(k);
    std::iota(part_order.begin(), part_order.end(), 0);
    std::stable_sort(part_order.begin(), part_order.end(), [&](int a, int b) {
        return ins.partitions[a].size() > ins.partitions[b].size();
    });
    std::vector<int> mach_order = detail::fastest_machines(ins, m);

    constexpr int kNone = -1;
    std::vector<std::vector<Rational>> cost(k + 1, std::vector<Rational>(m + 1, Rational(0)));
    std::vector<std::vector<int>> from(k + 1, std::vector<int>(m + 1, kNone));
    from[0][0] = 0;
    for (int j = 1; j <= k; ++j) {
        long long size = static_cast<long long>(ins.partitions[part_order[j - 1]].size());
        for (int i = j; i <= m - (k - j); ++i) {
            for (int prev = j - 1; prev < i; ++prev) {
                if (from[j - 1][prev] == kNone) continue;
                std::vector<Rational> block;
                for (int t = prev; t < i; ++t) block.push_back(ins.machine_speeds[mach_order[t]]);
                Rational c = cost[j - 1][prev] + unit_sumcj_distribution(size, block).cost;
                if (from[j][i] == kNone || c < cost[j][i]) {
                    cost[j][i] = c;
                    from[j][i] = prev;
                }
            }
        }
    }
    int best_i = kNone;
    for (int i = k; i <= m; ++i)
        if (from[k][i] != kNone && (best_i == kNone || cost[k][i] < cost[k][best_i])) best_i = i;
    MPSCHED_ASSERT(best_i != kNone, "ordered covering DP found no complete covering");

    Schedule sched;
    sched.machines.resize(m);
    int i = best_i;
    for (int j = k; j >= 1; --j) {
        int prev = from[j][i];
        int part = part_order[j - 1];
        std::vector<Rational> block;
        for (int t = prev; t < i; ++t) block.push_back(ins.machine_speeds[mach_order[t]]);
        auto dist = unit_sumcj_distribution(ins.partitions[part].size(), block);
        int next_index = 0;
        for (int t = prev; t < i; ++t) {
            long long cnt = dist.counts[t - prev];
            if (cnt <= 0) continue;
            MachineAssignment ma;
            ma.partition = part;
            for (long long c = 0; c < cnt; ++c) ma.jobs.push_back({part, next_index++});
            sched.machines[mach_order[t]] = std::move(ma);
        }
        i = prev;
    }
    Rational value = evaluate_sum_cj(ins, sched);
    MPSCHED_ASSERT(value == cost[k][best_i], "ordered covering schedule does not match DP cost");
    return {sched, value};
}

}  // namespace mpsched
