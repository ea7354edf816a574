#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "instance.hpp"

namespace mpsched {

// Optimal sum of completion times for one job set on `i` identical unit-speed
// machines: rank jobs by nonincreasing processing; the job of rank r (0-based)
// runs as the (floor(r/i)+1)-th last job on its machine.
inline Rational single_set_sumcj_identical(std::vector<long long> jobs, int machines) {
    if (machines < 1) throw BadArgument("machine count must be positive");
    std::sort(jobs.rbegin(), jobs.rend());
    mpz_class total = 0;
    for (std::size_t r = 0; r < jobs.size(); ++r)
        total += to_mpz(jobs[r]) * to_mpz(static_cast<long long>(r) / machines + 1);
    return Rational(total);
}

// Delta_i = OPT(i machines) - OPT(i+1 machines), for i = 1..m-1.
// Nonincreasing in i: each added machine helps at most as much as the last.
inline std::vector<Rational> marginal_gains(const std::vector<long long>& jobs, int m) {
    std::vector<Rational> deltas;
    for (int i = 1; i < m; ++i)
        deltas.push_back(single_set_sumcj_identical(jobs, i) -
                         single_set_sumcj_identical(jobs, i + 1));
    return deltas;
}

// Greedy machine allocation for identical machines: every partition starts
// with one machine; the remaining m-k machines go one by one to the partition
// with the largest marginal decrease (ties -> lowest partition index).
inline std::pair<Schedule, Rational> solve_identical_sumcj(const Instance& ins) {
    int k = ins.num_partitions(), m = ins.num_machines();
    for (int i = 1; i < m; ++i)
        if (ins.machine_speeds[i] != ins.machine_speeds[0])
            throw NotIdentical("machine speeds differ");
    if (m < k) throw Infeasible("fewer machines than partitions");

    std::vector<std::vector<long long>> jobs(k);
    for (int p = 0; p < k; ++p) {
        for (const Job& j : ins.partitions[p]) jobs[p].push_back(j.processing);
        std::sort(jobs[p].rbegin(), jobs[p].rend());
    }

    std::vector<int> alloc(k, 1);
    auto gain = [&](int p) -> Rational {
        return single_set_sumcj_identical(jobs[p], alloc[p]) -
               single_set_sumcj_identical(jobs[p], alloc[p] + 1);
    };
    struct Entry {
        Rational gain;
        int part;
    };
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.part > b.part;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    for (int p = 0; p < k; ++p) heap.push({gain(p), p});
    for (int extra = m - k; extra > 0; --extra) {
        Entry e = heap.top();
        heap.pop();
        ++alloc[e.part];
        heap.push({gain(e.part), e.part});
    }

    // Build the schedule: rank r of partition p goes to the (r mod alloc)-th
    // of its machines as the (floor(r/alloc)+1)-th job from the end.
    const Rational& speed = ins.machine_speeds[0];
    Schedule sched;
    sched.machines.resize(m);
    Rational total(0);
    int next_machine = 0;
    for (int p = 0; p < k; ++p) {
        std::vector<int> order(ins.partitions[p].size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return ins.partitions[p][a].processing > ins.partitions[p][b].processing;
        });
        std::vector<std::vector<JobRef>> from_end(alloc[p]);
        for (std::size_t r = 0; r < order.size(); ++r)
            from_end[r % alloc[p]].push_back({p, order[r]});
        for (int s = 0; s < alloc[p]; ++s) {
            MachineAssignment ma;
            ma.partition = p;
            ma.jobs.assign(from_end[s].rbegin(), from_end[s].rend());
            if (ma.jobs.empty()) ma.partition = kUnused;
            sched.machines[next_machine++] = std::move(ma);
        }
        total += single_set_sumcj_identical(jobs[p], alloc[p]) / speed;
    }
    MPSCHED_ASSERT(evaluate_sum_cj(ins, sched) == total,
                   "greedy schedule does not match its computed cost");
    return {sched, total};
}

}  // namespace mpsched
