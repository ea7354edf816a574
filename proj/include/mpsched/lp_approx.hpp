#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "instance.hpp"
#include "min_cost_flow.hpp"
#include "simplex.hpp"

namespace mpsched {

// Machines sharing one rounded speed 2^z.
struct SpeedGroup {
    long exponent = 0;
    Rational rounded;           // 2^exponent
    std::vector<int> machines;  // original indices, fastest original speed first
};

// Round each speed up to the nearest power of two: 2^{z-1} < s <= 2^z.
// Groups come back sorted by increasing speed.
inline std::pair<std::vector<Rational>, std::vector<SpeedGroup>> round_speeds_pow2(
    const std::vector<Rational>& speeds) {
    auto pow2_exponent = [](const Rational& s) {
        MPSCHED_ASSERT(sgn(s) > 0, "speeds must be positive");
        long z = static_cast<long>(mpz_sizeinbase(s.get_num_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(s.get_den_mpz_t(), 2));
        while (pow2_rational(z) < s) ++z;
        while (z > LONG_MIN && pow2_rational(z - 1) >= s) --z;
        return z;
    };
    std::vector<Rational> rounded(speeds.size());
    std::vector<long> exps(speeds.size());
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        exps[i] = pow2_exponent(speeds[i]);
        rounded[i] = pow2_rational(exps[i]);
        MPSCHED_ASSERT(rounded[i] >= speeds[i] && rounded[i] < speeds[i] * 2,
                       "rounded speed must lie in [s, 2s)");
    }
    std::vector<long> distinct(exps);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<SpeedGroup> groups;
    for (long z : distinct) {
        SpeedGroup g;
        g.exponent = z;
        g.rounded = pow2_rational(z);
        for (std::size_t i = 0; i < speeds.size(); ++i)
            if (exps[i] == z) g.machines.push_back(static_cast<int>(i));
        std::stable_sort(g.machines.begin(), g.machines.end(),
                         [&](int a, int b) { return speeds[a] > speeds[b]; });
        groups.push_back(std::move(g));
    }
    return {rounded, groups};
}

// Interleave-merge a doubling chain of machines (x, x, 2x, 4x, ..., 2^t) into
// a single machine of speed 2^{t+1}: position j from the end of the first
// load maps to position 2j-1, of the second to 2j, and the chain is folded
// pairwise upward. The merged total completion time never exceeds the
// original's (asserted).
template <typename JobT>
struct ChainMergeResult {
    std::vector<JobT> execution_order;
    Rational merged_speed;
};

template <typename JobT, typename ProcFn>
ChainMergeResult<JobT> merge_virtual_chain(const std::vector<std::vector<JobT>>& loads,
                                           const std::vector<Rational>& speeds, ProcFn proc) {
    if (loads.size() != speeds.size()) throw BadChain("loads and speeds differ in length");
    if (loads.empty()) return {{}, Rational(0)};
    for (const Rational& s : speeds)
        if (!rat_is_pow2(s)) throw BadChain("chain speeds must be powers of two");
    if (loads.size() >= 2) {
        if (speeds[0] != speeds[1]) throw BadChain("chain must start with two equal speeds");
        for (std::size_t i = 2; i < speeds.size(); ++i)
            if (speeds[i] != speeds[i - 1] * 2) throw BadChain("chain speeds must double");
    }

    auto sum_cj = [&](const std::vector<JobT>& load, const Rational& speed) -> Rational {
        Rational total(0), prefix(0);
        for (const JobT& j : load) {
            prefix += rat(proc(j));
            total += prefix;
        }
        return total / speed;
    };
    Rational original(0);
    for (std::size_t i = 0; i < loads.size(); ++i) original += sum_cj(loads[i], speeds[i]);

    auto merge_two = [](const std::vector<JobT>& a, const std::vector<JobT>& b) {
        std::vector<JobT> from_end;
        std::size_t la = a.size(), lb = b.size();
        for (std::size_t j = 1; j <= std::max(la, lb); ++j) {
            if (j <= la) from_end.push_back(a[la - j]);
            if (j <= lb) from_end.push_back(b[lb - j]);
        }
        return std::vector<JobT>(from_end.rbegin(), from_end.rend());
    };

    std::vector<JobT> cur = loads[0];
    for (std::size_t i = 1; i < loads.size(); ++i) cur = merge_two(cur, loads[i]);
    Rational final_speed = loads.size() >= 2 ? Rational(speeds.back() * 2) : speeds[0];
    MPSCHED_ASSERT(sum_cj(cur, final_speed) <= original,
                   "chain merge increased total completion time");
    return {std::move(cur), final_speed};
}

struct LpApproxOptions {
    // collapse guesses that only permute partitions with identical job
    // multisets; off by default
    bool skip_symmetric_guesses = false;
};

namespace detail {

struct Guess {
    std::vector<int> group;  // per partition: index of its fastest speed group
    std::vector<int> count;  // per partition: machines of that group preassigned
};

}  // namespace detail

// 4-approximation for sum of completion times with k partitions on uniform
// machines: round speeds to powers of two, guess each partition's fastest
// group and its multiplicity, solve the layered LP relaxation, round machine
// counts up, assign each partition's jobs by min-cost flow over
// (machine, layer) slots, and fold the at-most-one-per-group virtual machines
// into the partition's fastest real machine. The best guess is returned,
// evaluated at the original speeds.
inline std::pair<Schedule, Rational> four_approx_sumcj_lp(const Instance& ins,
                                                          const LpApproxOptions& opts = {}) {
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");

    auto [rounded, groups] = round_speeds_pow2(ins.machine_speeds);
    int l = static_cast<int>(groups.size());

    // canonical per-partition signature for the symmetric-guess filter
    std::vector<std::vector<long long>> signature(k);
    for (int p = 0; p < k; ++p) {
        for (const Job& j : ins.partitions[p]) signature[p].push_back(j.processing);
        std::sort(signature[p].begin(), signature[p].end());
    }

    bool found = false;
    Rational best_value(0);
    Schedule best_schedule;

    std::vector<detail::Guess> guesses;
    {
        detail::Guess g;
        g.group.assign(k, 0);
        g.count.assign(k, 0);
        auto rec = [&](auto&& self, int p) -> void {
            if (p == k) {
                std::vector<long long> used(l, 0);
                for (int i = 0; i < k; ++i) used[g.group[i]] += g.count[i];
                for (int t = 0; t < l; ++t)
                    if (used[t] > static_cast<long long>(groups[t].machines.size())) return;
                guesses.push_back(g);
                return;
            }
            for (int t = 0; t < l; ++t) {
                for (int c = 1; c <= static_cast<int>(groups[t].machines.size()); ++c) {
                    if (opts.skip_symmetric_guesses && p > 0 && signature[p] == signature[p - 1] &&
                        std::pair(t, c) < std::pair(g.group[p - 1], g.count[p - 1]))
                        continue;
                    g.group[p] = t;
                    g.count[p] = c;
                    self(self, p + 1);
                }
            }
        };
        rec(rec, 0);
    }

    for (const detail::Guess& guess : guesses) {
        // ---- the LP relaxation -------------------------------------------
        LinearProgram lp;
        // n_{pr,tp} only for tp <= guessed fastest group (faster ones are 0)
        std::vector<std::vector<int>> nvar(k, std::vector<int>(l, -1));
        for (int p = 0; p < k; ++p)
            for (int t = 0; t <= guess.group[p]; ++t) nvar[p][t] = lp.add_variable(Rational(0));
        // x_{jb,lr,tp}: per job, layer up to its partition size, usable groups
        std::vector<std::vector<std::vector<std::vector<int>>>> xvar(k);
        for (int p = 0; p < k; ++p) {
            int np = static_cast<int>(ins.partitions[p].size());
            xvar[p].assign(np, std::vector<std::vector<int>>(np + 1, std::vector<int>(l, -1)));
            for (int j = 0; j < np; ++j)
                for (int lr = 1; lr <= np; ++lr)
                    for (int t = 0; t <= guess.group[p]; ++t)
                        xvar[p][j][lr][t] = lp.add_variable(
                            Rational(lr) * rat(ins.partitions[p][j].processing) /
                            groups[t].rounded);
        }
        bool group_coverable = true;
        for (int t = 0; t < l; ++t) {  // every machine assigned, fractionally at worst
            std::vector<std::pair<int, Rational>> row;
            for (int p = 0; p < k; ++p)
                if (nvar[p][t] >= 0) row.emplace_back(nvar[p][t], Rational(1));
            if (row.empty()) {
                group_coverable = false;
                break;
            }
            lp.add_constraint(row, Relation::Eq, rat(groups[t].machines.size()));
        }
        if (!group_coverable) continue;
        std::vector<long long> preassigned(l, 0);
        for (int p = 0; p < k; ++p) preassigned[guess.group[p]] += guess.count[p];
        for (int p = 0; p < k; ++p) {
            lp.add_constraint({{nvar[p][guess.group[p]], Rational(1)}}, Relation::Eq,
                              Rational(guess.count[p]));
            for (int t = 0; t < guess.group[p]; ++t)
                lp.add_constraint({{nvar[p][t], Rational(1)}}, Relation::LessEq,
                                  rat(static_cast<long long>(groups[t].machines.size()) -
                                        preassigned[t]));
        }
        for (int p = 0; p < k; ++p) {
            int np = static_cast<int>(ins.partitions[p].size());
            for (int j = 0; j < np; ++j) {  // each job fully assigned
                std::vector<std::pair<int, Rational>> row;
                for (int lr = 1; lr <= np; ++lr)
                    for (int t = 0; t <= guess.group[p]; ++t)
                        row.emplace_back(xvar[p][j][lr][t], Rational(1));
                lp.add_constraint(row, Relation::Eq, Rational(1));
            }
            for (int lr = 1; lr <= np; ++lr)  // layer occupancy vs machines
                for (int t = 0; t <= guess.group[p]; ++t) {
                    std::vector<std::pair<int, Rational>> row;
                    for (int j = 0; j < np; ++j) row.emplace_back(xvar[p][j][lr][t], Rational(1));
                    row.emplace_back(nvar[p][t], Rational(-1));
                    lp.add_constraint(row, Relation::LessEq, Rational(0));
                }
        }

        LpSolution sol;
        try {
            sol = solve_lp(lp);
        } catch (const LpInfeasible&) {
            continue;
        }

        // ---- rounding: real machines per (partition, group) --------------
        std::vector<std::vector<int>> real_take(k, std::vector<int>(l, 0));
        std::vector<std::vector<bool>> has_virtual(k, std::vector<bool>(l, false));
        for (int p = 0; p < k; ++p) {
            for (int t = 0; t <= guess.group[p]; ++t) {
                const Rational& nv = sol.values[nvar[p][t]];
                if (t == guess.group[p]) {
                    MPSCHED_ASSERT(nv == Rational(guess.count[p]), "preassigned count drifted");
                    real_take[p][t] = guess.count[p];
                } else {
                    real_take[p][t] = static_cast<int>(rat_floor_ll(nv));
                    has_virtual[p][t] = !rat_is_integer(nv);
                }
            }
        }
        std::vector<std::size_t> next_id(l, 0);
        std::vector<std::vector<std::vector<int>>> real_ids(k);  // [p][t] -> machine ids
        for (int p = 0; p < k; ++p) real_ids[p].assign(l, {});
        for (int t = 0; t < l; ++t) {
            for (int p = 0; p < k; ++p)
                if (guess.group[p] == t)
                    for (int c = 0; c < guess.count[p]; ++c)
                        real_ids[p][t].push_back(groups[t].machines[next_id[t]++]);
            for (int p = 0; p < k; ++p)
                if (t < guess.group[p])
                    for (int c = 0; c < real_take[p][t]; ++c) {
                        MPSCHED_ASSERT(next_id[t] < groups[t].machines.size(),
                                       "rounded allocation exceeds the group");
                        real_ids[p][t].push_back(groups[t].machines[next_id[t]++]);
                    }
        }

        // ---- per-partition min-cost assignment over slots -----------------
        Schedule sched;
        sched.machines.resize(m);
        for (int p = 0; p < k; ++p) {
            int np = static_cast<int>(ins.partitions[p].size());
            struct Slot {
                int machine_id;  // -1 for a virtual machine
                int group;
            };
            std::vector<Slot> slots;
            std::vector<Rational> slot_speeds;
            for (int t = 0; t <= guess.group[p]; ++t) {
                for (int id : real_ids[p][t]) {
                    slots.push_back({id, t});
                    slot_speeds.push_back(groups[t].rounded);
                }
                if (has_virtual[p][t]) {
                    slots.push_back({-1, t});
                    slot_speeds.push_back(groups[t].rounded);
                }
            }
            std::vector<long long> processing(np);
            for (int j = 0; j < np; ++j) processing[j] = ins.partitions[p][j].processing;
            auto assignment = min_cost_assignment(processing, {slot_speeds, np});

            Rational lp_contribution(0);
            for (int j = 0; j < np; ++j)
                for (int lr = 1; lr <= np; ++lr)
                    for (int t = 0; t <= guess.group[p]; ++t)
                        lp_contribution += sol.values[xvar[p][j][lr][t]] * Rational(lr) *
                                           rat(processing[j]) / groups[t].rounded;
            MPSCHED_ASSERT(assignment.cost <= lp_contribution,
                           "integral flow beat by its own fractional relaxation");

            // jobs per slot, execution order = decreasing layer
            std::vector<std::vector<std::pair<int, int>>> by_slot(slots.size());  // (layer, job)
            for (int j = 0; j < np; ++j) by_slot[assignment.placement[j].first].emplace_back(
                assignment.placement[j].second, j);
            std::vector<std::vector<JobRef>> virtual_loads;
            std::vector<Rational> virtual_speeds;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                auto& entries = by_slot[s];
                std::sort(entries.rbegin(), entries.rend());
                std::vector<JobRef> load;
                for (auto& [layer, j] : entries) load.push_back({p, j});
                if (slots[s].machine_id >= 0) {
                    if (!load.empty()) {
                        MachineAssignment ma;
                        ma.partition = p;
                        ma.jobs = std::move(load);
                        sched.machines[slots[s].machine_id] = std::move(ma);
                    }
                } else if (!load.empty()) {
                    virtual_loads.push_back(std::move(load));
                    virtual_speeds.push_back(groups[slots[s].group].rounded);
                }
            }

            if (!virtual_loads.empty()) {
                // fold virtuals into the partition's fastest real machine via a
                // doubling chain padded with empty slots
                int fastest = real_ids[p][guess.group[p]].front();
                long top_exp = groups[guess.group[p]].exponent;
                long low_exp = top_exp;
                for (std::size_t v = 0; v < virtual_speeds.size(); ++v)
                    while (pow2_rational(low_exp) > virtual_speeds[v]) --low_exp;
                std::vector<std::vector<JobRef>> chain;
                std::vector<Rational> chain_speeds;
                chain.emplace_back();  // duplicate head slot
                chain_speeds.push_back(pow2_rational(low_exp));
                for (long e = low_exp; e <= top_exp; ++e) {
                    std::vector<JobRef> load;
                    for (std::size_t v = 0; v < virtual_speeds.size(); ++v)
                        if (virtual_speeds[v] == pow2_rational(e)) load = virtual_loads[v];
                    if (e == top_exp)
                        load = sched.machines[fastest].jobs;  // current real load
                    chain.push_back(std::move(load));
                    chain_speeds.push_back(pow2_rational(e));
                }
                auto merged = merge_virtual_chain(chain, chain_speeds,
                                                  [&](JobRef j) { return ins.processing_of(j); });
                std::stable_sort(merged.execution_order.begin(), merged.execution_order.end(),
                                 [&](JobRef a, JobRef b) {
                                     return ins.processing_of(a) < ins.processing_of(b);
                                 });
                MachineAssignment ma;
                ma.partition = p;
                ma.jobs = std::move(merged.execution_order);
                sched.machines[fastest] = std::move(ma);
            }
        }

        Rational value = evaluate_sum_cj(ins, sched);
        if (!found || value < best_value) {
            found = true;
            best_value = value;
            best_schedule = std::move(sched);
        }
    }
    if (!found) throw Infeasible("no guess admits a feasible relaxation");
    return {best_schedule, best_value};
}

}  // namespace mpsched
