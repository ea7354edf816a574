#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "covering.hpp"
#include "generators.hpp"
#include "identical_greedy.hpp"
#include "instance.hpp"
#include "lp_approx.hpp"
#include "oracle.hpp"
#include "ptas.hpp"
#include "uniform_dp.hpp"

namespace mpsched {

struct SolveResult {
    std::string objective;  // "Cmax" or "SumCj"
    Rational value;
    Schedule schedule;
};

// Shared algorithm dispatch for the CLI and the bench harness.
// `epsilon` is only consulted by ptas-cmax.
inline SolveResult run_algorithm(const std::string& algo, const Instance& ins,
                                 const std::optional<Rational>& epsilon = std::nullopt) {
    if (algo == "identical-greedy") {
        auto [s, v] = solve_identical_sumcj(ins);
        return {"SumCj", v, s};
    }
    if (algo == "dp-cmax") {
        auto [v, s] = dp_cmax_unit(ins);
        return {"Cmax", v, s};
    }
    if (algo == "dp-sumcj") {
        auto [v, s] = dp_sumcj(ins);
        return {"SumCj", v, s};
    }
    if (algo == "cover-2apx-cmax") {
        auto [s, v] = two_approx_cmax_unit(ins);
        return {"Cmax", v, s};
    }
    if (algo == "cover-4apx-sumcj") {
        auto [s, v] = four_approx_sumcj_unit(ins);
        return {"SumCj", v, s};
    }
    if (algo == "lp-4apx-sumcj") {
        auto [s, v] = four_approx_sumcj_lp(ins);
        return {"SumCj", v, s};
    }
    if (algo == "ptas-cmax") {
        if (!epsilon) throw BadArgument("ptas-cmax requires --epsilon");
        auto [s, v] = ptas_solve(ins, *epsilon);
        return {"Cmax", v, s};
    }
    if (algo == "oracle-cmax") {
        auto [v, s] = oracle::brute_force_cmax_unit(ins);
        return {"Cmax", v, s};
    }
    if (algo == "oracle-sumcj") {
        auto [v, s] = oracle::brute_force_sumcj(ins);
        return {"SumCj", v, s};
    }
    throw BadArgument("unknown algorithm '" + algo + "'");
}

inline const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names = {
        "identical-greedy", "dp-cmax",       "dp-sumcj",  "cover-2apx-cmax", "cover-4apx-sumcj",
        "lp-4apx-sumcj",    "ptas-cmax",     "oracle-cmax", "oracle-sumcj"};
    return names;
}

namespace bench {

struct BenchRecord {
    std::string instance_id;
    std::string algo;
    std::string objective;
    Rational value;
    std::optional<Rational> oracle;  // absent when the oracle guard tripped
    long long ms = 0;

    std::optional<Rational> ratio() const {
        if (!oracle || sgn(*oracle) == 0) return std::nullopt;
        return Rational(value / *oracle);
    }
};

inline std::string csv_header() { return "instance,algo,objective,value,oracle,ratio,ms"; }

// value and oracle in exact a/b form (authoritative); ratio rendered to six
// decimals for readability.
inline std::string csv_row(const BenchRecord& r) {
    std::ostringstream out;
    out << r.instance_id << "," << r.algo << "," << r.objective << "," << rat_str(r.value) << ",";
    if (r.oracle) out << rat_str(*r.oracle);
    out << ",";
    if (auto q = r.ratio()) out << rat_decimal(*q);
    out << "," << r.ms;
    return out.str();
}

struct BenchTask {
    std::string id;
    Instance instance;
    std::string algo;
    std::optional<Rational> epsilon;
    bool with_oracle = true;
};

inline BenchRecord run_task(const BenchTask& task) {
    BenchRecord rec;
    rec.instance_id = task.id;
    rec.algo = task.algo;
    auto t0 = std::chrono::steady_clock::now();
    SolveResult res = run_algorithm(task.algo, task.instance, task.epsilon);
    auto t1 = std::chrono::steady_clock::now();
    rec.objective = res.objective;
    rec.value = res.value;
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    if (task.with_oracle) {
        try {
            rec.oracle = res.objective == "Cmax" ? oracle::brute_force_cmax_unit(task.instance).first
                                                 : oracle::brute_force_sumcj(task.instance).first;
        } catch (const TooLarge&) {
            // ratio column stays blank
        }
    }
    if (rec.oracle) {
        // exact ratio bounds, checked before any decimal rendering
        const Rational& opt = *rec.oracle;
        MPSCHED_ASSERT(rec.value >= opt, "algorithm beat the oracle");
        if (task.algo == "cover-2apx-cmax")
            MPSCHED_ASSERT(rec.value <= 2 * opt, "2-approximation bound violated");
        if (task.algo == "cover-4apx-sumcj" || task.algo == "lp-4apx-sumcj")
            MPSCHED_ASSERT(rec.value <= 4 * opt, "4-approximation bound violated");
        if (task.algo == "ptas-cmax" && task.epsilon)
            MPSCHED_ASSERT(rec.value <= (1 + 7 * std::min(*task.epsilon, Rational(1, 2))) * opt,
                           "ptas bound violated");
    }
    return rec;
}

inline std::vector<BenchTask> suite_small(unsigned long long) {
    std::vector<BenchTask> tasks;
    auto unit32 = make_unit_instance({3, 2}, {make_rational(3), make_rational(2)});
    for (const char* algo : {"dp-cmax", "dp-sumcj", "cover-2apx-cmax", "cover-4apx-sumcj",
                             "lp-4apx-sumcj", "oracle-cmax", "oracle-sumcj"})
        tasks.push_back({"unit-3-2", unit32, algo, std::nullopt});
    tasks.push_back({"unit-3-2", unit32, "ptas-cmax", make_rational(1, 2)});
    auto ident = make_instance({{3, 3, 3}, {1}},
                               {make_rational(1), make_rational(1), make_rational(1)});
    for (const char* algo : {"identical-greedy", "dp-sumcj", "lp-4apx-sumcj", "oracle-sumcj"})
        tasks.push_back({"identical-333-1", ident, algo, std::nullopt});
    return tasks;
}

inline std::vector<BenchTask> suite_paper_examples(unsigned long long) {
    std::vector<BenchTask> tasks;
    // half-covering scan example: capacities (7,4,4,3,3,2) against parts
    // (10,8,5) and (7,6,4), realized as speeds at deadline 1
    std::vector<Rational> caps = {make_rational(7), make_rational(4), make_rational(4),
                                  make_rational(3), make_rational(3), make_rational(2)};
    tasks.push_back({"covering-10-8-5", make_unit_instance({10, 8, 5}, caps), "cover-2apx-cmax",
                     std::nullopt});
    tasks.push_back({"covering-10-8-5", make_unit_instance({10, 8, 5}, caps), "cover-4apx-sumcj",
                     std::nullopt});
    tasks.push_back({"covering-7-6-4", make_unit_instance({7, 6, 4}, caps), "cover-2apx-cmax",
                     std::nullopt});
    // capacity-class example: 39x3, 2x7, 4x11, 2x17, 1x25, 1x57 with parts
    // 3,20,25,26,36,37,50,51 (too large for the oracle guard; ratio stays blank)
    {
        std::vector<Rational> speeds;
        auto add = [&](int count, long long v) {
            for (int i = 0; i < count; ++i) speeds.push_back(make_rational(v));
        };
        add(39, 3);
        add(2, 7);
        add(4, 11);
        add(2, 17);
        add(1, 25);
        add(1, 57);
        auto ins = make_unit_instance({3, 20, 25, 26, 36, 37, 50, 51}, speeds);
        tasks.push_back({"capacity-classes", ins, "ptas-cmax", make_rational(1, 2)});
    }
    // 3-partition reduction for A=(4,4,4), b=12: optimum 15/2
    auto red = gen_3partition_instance({4, 4, 4}, 12);
    tasks.push_back({"reduction-444-12", red.instance, "dp-sumcj", std::nullopt});
    tasks.push_back({"reduction-444-12", red.instance, "oracle-sumcj", std::nullopt});
    return tasks;
}

inline std::vector<BenchTask> suite_ratio_sweep(unsigned long long seed) {
    std::vector<BenchTask> tasks;
    for (int i = 0; i < 20; ++i) {
        unsigned long long s = seed * 1000 + i;
        int k = 1 + static_cast<int>(s % 4), m = 1 + static_cast<int>((s / 4) % 5);
        auto ins = gen_random_instance(s, k, m, {k, 10}, {1, 1}, {1, 3}, true);
        if (ins.num_machines() < ins.num_partitions()) continue;
        std::string id = "unit-" + std::to_string(i);
        tasks.push_back({id, ins, "cover-2apx-cmax", std::nullopt});
        tasks.push_back({id, ins, "cover-4apx-sumcj", std::nullopt});
        tasks.push_back({id, ins, "ptas-cmax", make_rational(1, 2)});
    }
    for (int i = 0; i < 10; ++i) {
        unsigned long long s = seed * 2000 + i;
        int k = 1 + static_cast<int>(s % 2), m = 1 + static_cast<int>((s / 2) % 4);
        auto ins = gen_random_instance(s, k, m, {k, 6}, {1, 4}, {1, 3}, false);
        if (ins.num_machines() < ins.num_partitions()) continue;
        std::string id = "general-" + std::to_string(i);
        tasks.push_back({id, ins, "lp-4apx-sumcj", std::nullopt});
        tasks.push_back({id, ins, "dp-sumcj", std::nullopt});
    }
    return tasks;
}

// SCHED_THREADS caps parallelism (default 1); rows are sorted by
// (instance, algo) before emission either way.
inline std::vector<BenchRecord> run_suite(const std::string& suite, unsigned long long seed) {
    std::vector<BenchTask> tasks;
    if (suite == "small")
        tasks = suite_small(seed);
    else if (suite == "paper-examples")
        tasks = suite_paper_examples(seed);
    else if (suite == "ratio-sweep")
        tasks = suite_ratio_sweep(seed);
    else
        throw BadArgument("unknown suite '" + suite + "'");

    int threads = 1;
    if (const char* env = std::getenv("SCHED_THREADS")) {
        threads = std::max(1, std::atoi(env));
    }
    std::vector<BenchRecord> records(tasks.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) records[i] = run_task(tasks[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    records[i] = run_task(tasks[i]);
            });
        for (auto& th : pool) th.join();
    }
    std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.instance_id, a.algo) < std::tie(b.instance_id, b.algo);
    });
    return records;
}

}  // namespace bench
}  // namespace mpsched
