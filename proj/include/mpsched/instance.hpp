#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace mpsched {

// A job is identified by (partition, index within partition); both 0-based.
struct Job {
    int partition = 0;
    int index = 0;
    long long processing = 1;  // p >= 1

    friend bool operator==(const Job&, const Job&) = default;
};

struct JobRef {
    int partition = 0;
    int index = 0;

    friend bool operator==(const JobRef&, const JobRef&) = default;
    friend auto operator<=>(const JobRef&, const JobRef&) = default;
};

// Jobs split into partitions J_1..J_k of a complete multipartite
// incompatibility graph: a machine may only run jobs of a single partition.
struct Instance {
    std::vector<std::vector<Job>> partitions;
    std::vector<Rational> machine_speeds;
    bool unit_jobs = false;

    int num_partitions() const { return static_cast<int>(partitions.size()); }
    int num_machines() const { return static_cast<int>(machine_speeds.size()); }
    int num_jobs() const {
        int n = 0;
        for (const auto& p : partitions) n += static_cast<int>(p.size());
        return n;
    }
    long long processing_of(JobRef j) const {
        return partitions[j.partition][j.index].processing;
    }

    friend bool operator==(const Instance&, const Instance&) = default;
};

inline Instance make_instance(const std::vector<std::vector<long long>>& parts,
                              const std::vector<Rational>& speeds) {
    Instance ins;
    ins.machine_speeds = speeds;
    ins.unit_jobs = true;
    ins.partitions.resize(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts[i].size(); ++j) {
            ins.partitions[i].push_back(
                {static_cast<int>(i), static_cast<int>(j), parts[i][j]});
            if (parts[i][j] != 1) ins.unit_jobs = false;
        }
    }
    return ins;
}

// All unit jobs; parts given by their sizes.
inline Instance make_unit_instance(const std::vector<long long>& part_sizes,
                                   const std::vector<Rational>& speeds) {
    std::vector<std::vector<long long>> parts;
    for (long long s : part_sizes) parts.emplace_back(s, 1);
    return make_instance(parts, speeds);
}

constexpr int kUnused = -1;

struct MachineAssignment {
    int partition = kUnused;
    std::vector<JobRef> jobs;  // execution order

    bool used() const { return partition != kUnused; }
};

struct Schedule {
    std::vector<MachineAssignment> machines;
};

struct Violation {
    enum Kind { BadMachineIndex, BadJobRef, MixedPartitions, DuplicateJob, MissingJob };
    Kind kind;
    std::string message;
};

// Reports the first violation found, or nullopt when the schedule is valid.
// Partition indices are rendered 1-based (J_1..J_k) in messages.
inline std::optional<Violation> validate_schedule(const Instance& ins, const Schedule& s) {
    if (static_cast<int>(s.machines.size()) != ins.num_machines())
        return Violation{Violation::BadMachineIndex,
                         "schedule describes " + std::to_string(s.machines.size()) +
                             " machines, instance has " + std::to_string(ins.num_machines())};
    std::vector<std::vector<char>> seen(ins.num_partitions());
    for (int p = 0; p < ins.num_partitions(); ++p)
        seen[p].assign(ins.partitions[p].size(), 0);
    for (int m = 0; m < static_cast<int>(s.machines.size()); ++m) {
        const auto& ma = s.machines[m];
        if (!ma.used()) {
            if (!ma.jobs.empty())
                return Violation{Violation::BadMachineIndex,
                                 "machine " + std::to_string(m) + " is unused but lists jobs"};
            continue;
        }
        if (ma.partition < 0 || ma.partition >= ins.num_partitions())
            return Violation{Violation::BadMachineIndex,
                             "machine " + std::to_string(m) + " names partition J_" +
                                 std::to_string(ma.partition + 1) + " which does not exist"};
        for (const JobRef& j : ma.jobs) {
            if (j.partition < 0 || j.partition >= ins.num_partitions() || j.index < 0 ||
                j.index >= static_cast<int>(ins.partitions[j.partition].size()))
                return Violation{Violation::BadJobRef,
                                 "machine " + std::to_string(m) + " references unknown job " +
                                     std::to_string(j.partition) + "." + std::to_string(j.index)};
            if (j.partition != ma.partition)
                return Violation{Violation::MixedPartitions,
                                 "machine " + std::to_string(m) + " mixes partitions J_" +
                                     std::to_string(ma.partition + 1) + " and J_" +
                                     std::to_string(j.partition + 1)};
            if (seen[j.partition][j.index])
                return Violation{Violation::DuplicateJob,
                                 "job " + std::to_string(j.partition) + "." +
                                     std::to_string(j.index) + " appears more than once"};
            seen[j.partition][j.index] = 1;
        }
    }
    for (int p = 0; p < ins.num_partitions(); ++p)
        for (std::size_t i = 0; i < seen[p].size(); ++i)
            if (!seen[p][i])
                return Violation{Violation::MissingJob, "job " + std::to_string(p) + "." +
                                                            std::to_string(i) +
                                                            " is not scheduled anywhere"};
    return std::nullopt;
}

namespace detail {
inline void require_valid(const Instance& ins, const Schedule& s) {
    if (auto v = validate_schedule(ins, s)) throw InvalidSchedule(v->message);
}
}  // namespace detail

// Sum of completion times. The schedule is evaluated as given; with
// `spt_resort` each machine's load is re-sorted shortest-first beforehand.
inline Rational evaluate_sum_cj(const Instance& ins, const Schedule& s, bool spt_resort = false) {
    detail::require_valid(ins, s);
    Rational total(0);
    for (int m = 0; m < static_cast<int>(s.machines.size()); ++m) {
        auto jobs = s.machines[m].jobs;
        if (jobs.empty()) continue;
        if (spt_resort)
            std::stable_sort(jobs.begin(), jobs.end(), [&](JobRef a, JobRef b) {
                return ins.processing_of(a) < ins.processing_of(b);
            });
        mpz_class prefix = 0, coeff_sum = 0;
        for (const JobRef& j : jobs) {
            prefix += to_mpz(ins.processing_of(j));
            coeff_sum += prefix;
        }
        total += Rational(coeff_sum) / ins.machine_speeds[m];
    }
    return total;
}

inline Rational evaluate_cmax(const Instance& ins, const Schedule& s) {
    detail::require_valid(ins, s);
    Rational best(0);
    for (int m = 0; m < static_cast<int>(s.machines.size()); ++m) {
        if (s.machines[m].jobs.empty()) continue;
        mpz_class load = 0;
        for (const JobRef& j : s.machines[m].jobs) load += to_mpz(ins.processing_of(j));
        Rational t = Rational(load) / ins.machine_speeds[m];
        if (t > best) best = t;
    }
    return best;
}

// Per-machine nonnegative integer capacities (number of unit jobs a machine
// finishes by some deadline).
using CapacityFn = std::vector<long long>;

inline CapacityFn capacities_for_deadline(const std::vector<Rational>& speeds,
                                          const Rational& deadline) {
    CapacityFn c(speeds.size());
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        Rational st = speeds[i] * deadline;
        c[i] = sgn(st) <= 0 ? 0 : rat_floor_ll(st);
    }
    return c;
}

// All makespan values a unit-job schedule can attain: {n'/s(m)}.
inline std::vector<Rational> candidate_makespans(const Instance& ins) {
    std::vector<Rational> cand;
    int n = ins.num_jobs();
    for (const Rational& s : ins.machine_speeds)
        for (int jobs = 1; jobs <= n; ++jobs) cand.push_back(Rational(jobs) / s);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

}  // namespace mpsched
