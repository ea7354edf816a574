#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "instance.hpp"

namespace mpsched {

// Reduction from 3-Partition: for A = (a_1..a_{3m}) with b/4 < a < b/2 and
// sum(A) = m*b, build m partitions of b unit jobs and 3m machines of speeds
// a_i. A yes-instance admits a schedule with sum of completion times exactly
//   sum_i (a_i + 1)/2 = m(b+3)/2,
// attained by giving machine i exactly a_i jobs.
struct ReductionInstance {
    Instance instance;
    Rational yes_target;
};

inline ReductionInstance gen_3partition_instance(const std::vector<long long>& A, long long b) {
    if (A.empty() || A.size() % 3 != 0) throw BadReductionInput("|A| must be a positive multiple of 3");
    if (b < 1) throw BadReductionInput("b must be positive");
    long long m = static_cast<long long>(A.size()) / 3;
    long long sum = 0;
    for (long long a : A) {
        if (!(4 * a > b && 2 * a < b))
            throw BadReductionInput("element " + std::to_string(a) +
                                    " violates b/4 < a < b/2 for b = " + std::to_string(b));
        sum += a;
    }
    if (sum != m * b)
        throw BadReductionInput("sum(A) = " + std::to_string(sum) + " but m*b = " +
                                std::to_string(m * b));
    std::vector<long long> sizes(m, b);
    std::vector<Rational> speeds;
    for (long long a : A) speeds.emplace_back(make_rational(a));
    return {make_unit_instance(sizes, speeds), make_rational(m * (b + 3), 2)};
}

struct IntRange {
    long long lo = 1;
    long long hi = 1;
};

// Deterministic for a fixed seed. Total job count is drawn from n_range and
// floored at k so every partition stays nonempty.
inline Instance gen_random_instance(unsigned long long seed, int k, int m, IntRange n_range,
                                    IntRange p_range, IntRange speed_range, bool unit) {
    if (k < 1 || m < 1) throw BadArgument("k and m must be at least 1");
    if (n_range.lo > n_range.hi || p_range.lo > p_range.hi || speed_range.lo > speed_range.hi)
        throw BadArgument("empty range");
    std::mt19937_64 rng(seed);
    auto draw = [&](IntRange r) {
        return std::uniform_int_distribution<long long>(r.lo, r.hi)(rng);
    };
    long long n = std::max<long long>(k, draw(n_range));
    std::vector<long long> sizes(k, 1);
    std::uniform_int_distribution<int> part(0, k - 1);
    for (long long extra = n - k; extra > 0; --extra) ++sizes[part(rng)];

    std::vector<std::vector<long long>> parts(k);
    for (int i = 0; i < k; ++i)
        for (long long j = 0; j < sizes[i]; ++j) parts[i].push_back(unit ? 1 : draw(p_range));

    std::vector<Rational> speeds;
    for (int i = 0; i < m; ++i) speeds.emplace_back(make_rational(draw(speed_range)));
    return make_instance(parts, speeds);
}

}  // namespace mpsched
