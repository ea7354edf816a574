#pragma once

#include <random>

#include "mpsched/instance.hpp"

namespace mpsched::test {

inline std::vector<Rational> speeds_of(std::initializer_list<long long> vals) {
    std::vector<Rational> out;
    for (long long v : vals) out.push_back(make_rational(v));
    return out;
}

// A random valid schedule: machines pick partitions, every partition keeps at
// least one machine, jobs spread uniformly over their partition's machines.
inline Schedule random_schedule(const Instance& ins, std::mt19937_64& rng) {
    int k = ins.num_partitions(), m = ins.num_machines();
    Schedule s;
    s.machines.resize(m);
    std::vector<std::vector<int>> owners(k);
    for (;;) {
        for (auto& o : owners) o.clear();
        std::uniform_int_distribution<int> pick(-1, k - 1);
        for (int i = 0; i < m; ++i) {
            int p = pick(rng);
            if (p >= 0) owners[p].push_back(i);
        }
        bool ok = true;
        for (int p = 0; p < k; ++p)
            if (owners[p].empty()) ok = false;
        if (ok) break;
    }
    for (int i = 0; i < m; ++i) s.machines[i] = {};
    for (int p = 0; p < k; ++p) {
        for (int j = 0; j < static_cast<int>(ins.partitions[p].size()); ++j) {
            int mi = owners[p][std::uniform_int_distribution<std::size_t>(
                0, owners[p].size() - 1)(rng)];
            if (!s.machines[mi].used()) s.machines[mi].partition = p;
            s.machines[mi].jobs.push_back({p, j});
        }
    }
    for (auto& ma : s.machines)
        if (ma.used() && ma.jobs.empty()) ma = {};
    return s;
}

}  // namespace mpsched::test
