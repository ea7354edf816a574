#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "instance.hpp"

namespace mpsched {
namespace oracle {

constexpr long long kEnumerationGuard = 1000000;

namespace detail {

inline void check_guard(int k, int m) {
    double states = 1;
    for (int i = 0; i < m; ++i) {
        states *= k + 1;
        if (states > static_cast<double>(kEnumerationGuard))
            throw TooLarge("(k+1)^m exceeds the enumeration guard");
    }
}

// Optimal sum of completion times for one job multiset on one machine set:
// generate position coefficients l/s per machine, take the n smallest, match
// the largest job to the smallest coefficient.
struct SingleSetPlan {
    Rational cost;
    // per machine of the subset: number of jobs it receives
    std::vector<int> counts;
};

inline SingleSetPlan single_set_sumcj(const std::vector<long long>& jobs_desc,
                                      const std::vector<Rational>& speeds) {
    int n = static_cast<int>(jobs_desc.size());
    std::vector<std::pair<Rational, int>> coeffs;  // (l/s, machine)
    for (int i = 0; i < static_cast<int>(speeds.size()); ++i)
        for (int l = 1; l <= n; ++l) coeffs.emplace_back(Rational(l) / speeds[i], i);
    std::stable_sort(coeffs.begin(), coeffs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    SingleSetPlan plan;
    plan.cost = 0;
    plan.counts.assign(speeds.size(), 0);
    for (int t = 0; t < n; ++t) {
        plan.cost += coeffs[t].first * rat(jobs_desc[t]);
        ++plan.counts[coeffs[t].second];
    }
    return plan;
}

// Minimal unit-job makespan for N jobs on a machine set: least T of the form
// n'/s with total capacity floor(s*T) summed over the set reaching N.
inline Rational single_set_cmax_unit(long long N, const std::vector<Rational>& speeds) {
    std::vector<Rational> cand;
    for (const auto& s : speeds)
        for (long long j = 1; j <= N; ++j) cand.push_back(rat(j) / s);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const auto& t : cand) {
        mpz_class total = 0;
        for (const auto& s : speeds) total += rat_floor(s * t);
        if (total >= to_mpz(N)) return t;
    }
    throw InternalError("no feasible unit makespan candidate");
}

template <typename Fn>
void for_each_assignment(int k, int m, std::vector<int>& assign, int pos, Fn&& fn) {
    if (pos == m) {
        fn(assign);
        return;
    }
    for (int choice = -1; choice < k; ++choice) {
        assign[pos] = choice;
        for_each_assignment(k, m, assign, pos + 1, fn);
    }
}

}  // namespace detail

// Exhaustive minimum of sum of completion times over all machine-to-partition
// assignments; per partition the exact single-set optimum is used. Subset
// results are memoized (machines of one partition form a speed subset).
inline std::pair<Rational, Schedule> brute_force_sumcj(const Instance& ins) {
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");
    detail::check_guard(k, m);

    std::vector<std::vector<long long>> jobs_desc(k);
    for (int p = 0; p < k; ++p) {
        for (const Job& j : ins.partitions[p]) jobs_desc[p].push_back(j.processing);
        std::sort(jobs_desc[p].rbegin(), jobs_desc[p].rend());
    }

    // memo: (partition, machine-subset bitmask) -> plan
    std::vector<std::map<unsigned, detail::SingleSetPlan>> memo(k);
    auto plan_for = [&](int p, unsigned mask) -> const detail::SingleSetPlan& {
        auto it = memo[p].find(mask);
        if (it != memo[p].end()) return it->second;
        std::vector<Rational> speeds;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) speeds.push_back(ins.machine_speeds[i]);
        return memo[p].emplace(mask, detail::single_set_sumcj(jobs_desc[p], speeds)).first->second;
    };

    bool found = false;
    Rational best(0);
    std::vector<int> best_assign;
    std::vector<int> assign(m, -1);
    detail::for_each_assignment(k, m, assign, 0, [&](const std::vector<int>& a) {
        std::vector<unsigned> masks(k, 0);
        for (int i = 0; i < m; ++i)
            if (a[i] >= 0) masks[a[i]] |= 1u << i;
        Rational total(0);
        for (int p = 0; p < k; ++p) {
            if (masks[p] == 0) return;  // a nonempty partition with no machine
            total += plan_for(p, masks[p]).cost;
        }
        if (!found || total < best) {
            found = true;
            best = total;
            best_assign = a;
        }
    });
    if (!found) throw Infeasible("no feasible machine-to-partition assignment");

    // realize the winning assignment as a schedule
    Schedule sched;
    sched.machines.resize(m);
    for (int p = 0; p < k; ++p) {
        std::vector<int> members;
        for (int i = 0; i < m; ++i)
            if (best_assign[i] == p) members.push_back(i);
        std::vector<Rational> speeds;
        for (int i : members) speeds.push_back(ins.machine_speeds[i]);

        // jobs sorted by nonincreasing processing, stable on index
        std::vector<int> order(ins.partitions[p].size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return ins.partitions[p][a].processing > ins.partitions[p][b].processing;
        });
        // rebuild the sorted-coefficient matching to know which rank goes where
        int n = static_cast<int>(order.size());
        std::vector<std::pair<Rational, int>> coeffs;
        for (std::size_t s = 0; s < speeds.size(); ++s)
            for (int l = 1; l <= n; ++l) coeffs.emplace_back(Rational(l) / speeds[s], static_cast<int>(s));
        std::stable_sort(coeffs.begin(), coeffs.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::vector<JobRef>> from_end(members.size());
        for (int t = 0; t < n; ++t)
            from_end[coeffs[t].second].push_back({p, order[t]});
        for (std::size_t s = 0; s < members.size(); ++s) {
            MachineAssignment ma;
            ma.partition = p;
            ma.jobs.assign(from_end[s].rbegin(), from_end[s].rend());
            if (ma.jobs.empty()) ma.partition = kUnused;
            sched.machines[members[s]] = std::move(ma);
        }
    }
    MPSCHED_ASSERT(evaluate_sum_cj(ins, sched) == best, "oracle schedule does not match its cost");
    return {best, sched};
}

inline std::pair<Rational, Schedule> brute_force_cmax_unit(const Instance& ins) {
    if (!ins.unit_jobs) throw DomainMismatch("cmax oracle requires unit jobs");
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");
    detail::check_guard(k, m);

    std::vector<long long> sizes(k);
    for (int p = 0; p < k; ++p) sizes[p] = static_cast<long long>(ins.partitions[p].size());

    std::vector<std::map<unsigned, Rational>> memo(k);
    auto cmax_for = [&](int p, unsigned mask) -> const Rational& {
        auto it = memo[p].find(mask);
        if (it != memo[p].end()) return it->second;
        std::vector<Rational> speeds;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) speeds.push_back(ins.machine_speeds[i]);
        return memo[p].emplace(mask, detail::single_set_cmax_unit(sizes[p], speeds)).first->second;
    };

    bool found = false;
    Rational best(0);
    std::vector<int> best_assign;
    std::vector<int> assign(m, -1);
    detail::for_each_assignment(k, m, assign, 0, [&](const std::vector<int>& a) {
        std::vector<unsigned> masks(k, 0);
        for (int i = 0; i < m; ++i)
            if (a[i] >= 0) masks[a[i]] |= 1u << i;
        Rational worst(0);
        for (int p = 0; p < k; ++p) {
            if (masks[p] == 0) return;
            const Rational& t = cmax_for(p, masks[p]);
            if (t > worst) worst = t;
        }
        if (!found || worst < best) {
            found = true;
            best = worst;
            best_assign = a;
        }
    });
    if (!found) throw Infeasible("no feasible machine-to-partition assignment");

    Schedule sched;
    sched.machines.resize(m);
    for (int p = 0; p < k; ++p) {
        long long remaining = sizes[p];
        int next_index = 0;
        for (int i = 0; i < m && remaining > 0; ++i) {
            if (best_assign[i] != p) continue;
            long long take = std::min<long long>(remaining, rat_floor_ll(ins.machine_speeds[i] * best));
            if (take <= 0) continue;
            MachineAssignment ma;
            ma.partition = p;
            for (long long t = 0; t < take; ++t) ma.jobs.push_back({p, next_index++});
            sched.machines[i] = std::move(ma);
            remaining -= take;
        }
        MPSCHED_ASSERT(remaining == 0, "cmax oracle failed to place all jobs");
    }
    MPSCHED_ASSERT(evaluate_cmax(ins, sched) <= best, "oracle schedule exceeds reported makespan");
    return {best, sched};
}

// True iff some partial machine-to-part map gives every part total capacity at
// least its size. Exhaustive search with capacity-shortfall pruning.
inline bool exact_covering_exists(const std::vector<long long>& part_sizes,
                                  const std::vector<long long>& capacities) {
    int k = static_cast<int>(part_sizes.size()), m = static_cast<int>(capacities.size());
    detail::check_guard(k, m);
    if (k == 0) return true;
    std::vector<long long> deficit(part_sizes);
    std::vector<long long> cap_suffix(m + 1, 0);
    for (int i = m - 1; i >= 0; --i) cap_suffix[i] = cap_suffix[i + 1] + capacities[i];

    auto rec = [&](auto&& self, int i) -> bool {
        long long need = 0;
        for (long long d : deficit) need += std::max<long long>(d, 0);
        if (need == 0) return true;
        if (i == m || cap_suffix[i] < need) return false;
        for (int p = 0; p < k; ++p) {
            if (deficit[p] <= 0) continue;
            deficit[p] -= capacities[i];
            if (self(self, i + 1)) return true;
            deficit[p] += capacities[i];
        }
        return self(self, i + 1);  // leave machine i unused
    };
    return rec(rec, 0);
}

}  // namespace oracle
}  // namespace mpsched
