#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"
#include "mpsched/generators.hpp"
#include "mpsched/oracle.hpp"

using namespace mpsched;
using mpsched::test::speeds_of;

TEST_CASE("exhaustive sum of completion times") {
    auto ins = make_instance({{3, 3, 3}, {1}}, speeds_of({1, 1, 1}));
    auto [v, s] = oracle::brute_force_sumcj(ins);
    CHECK(v == make_rational(13));
    CHECK_FALSE(validate_schedule(ins, s));
    CHECK(evaluate_sum_cj(ins, s) == v);

    auto single = make_instance({{5}}, speeds_of({2}));
    CHECK(oracle::brute_force_sumcj(single).first == make_rational(5, 2));

    auto infeasible = make_unit_instance({1, 1}, speeds_of({1}));
    CHECK_THROWS_AS(oracle::brute_force_sumcj(infeasible), Infeasible);
}

TEST_CASE("exhaustive unit-job makespan") {
    auto ins = make_unit_instance({3, 2}, speeds_of({3, 2}));
    auto [v, s] = oracle::brute_force_cmax_unit(ins);
    CHECK(v == make_rational(1));
    CHECK_FALSE(validate_schedule(ins, s));

    auto one = make_unit_instance({4}, speeds_of({2}));
    CHECK(oracle::brute_force_cmax_unit(one).first == make_rational(2));

    auto infeasible = make_unit_instance({1, 1, 1}, speeds_of({1, 1}));
    CHECK_THROWS_AS(oracle::brute_force_cmax_unit(infeasible), Infeasible);
}

TEST_CASE("exact covering existence") {
    CHECK(oracle::exact_covering_exists({10, 8, 5}, {7, 4, 4, 3, 3, 2}));
    CHECK_FALSE(oracle::exact_covering_exists({100}, {7, 4, 4, 3, 3, 2}));
    CHECK(oracle::exact_covering_exists({}, {1, 2}));
    CHECK(oracle::exact_covering_exists({5}, {5}));
    CHECK_FALSE(oracle::exact_covering_exists({5, 5}, {9, 1}));
}

TEST_CASE("oracle values are invariant under relabeling") {
    for (unsigned seed = 1; seed <= 25; ++seed) {
        auto ins = gen_random_instance(seed, 1 + seed % 3, 1 + seed % 3 + (seed % 3 == 0), {2, 6},
                                       {1, 4}, {1, 3}, false);
        if (ins.num_machines() < ins.num_partitions()) continue;
        auto base = oracle::brute_force_sumcj(ins).first;

        Instance relabeled = ins;
        std::reverse(relabeled.machine_speeds.begin(), relabeled.machine_speeds.end());
        std::reverse(relabeled.partitions.begin(), relabeled.partitions.end());
        for (int p = 0; p < relabeled.num_partitions(); ++p)
            for (auto& j : relabeled.partitions[p]) j.partition = p;
        CHECK(oracle::brute_force_sumcj(relabeled).first == base);
    }
}

TEST_CASE("oracle never beats a valid schedule") {
    std::mt19937_64 rng(11);
    for (unsigned seed = 1; seed <= 25; ++seed) {
        auto ins = gen_random_instance(seed + 500, 1 + seed % 2, 1 + seed % 3, {2, 6}, {1, 4},
                                       {1, 3}, false);
        if (ins.num_machines() < ins.num_partitions()) continue;
        auto opt = oracle::brute_force_sumcj(ins).first;
        Schedule s = test::random_schedule(ins, rng);
        CHECK(opt <= evaluate_sum_cj(ins, s));
    }
}

TEST_CASE("enumeration guard") {
    // (k+1)^m = 3^20 > 1e6
    auto big = make_unit_instance({1, 1}, std::vector<Rational>(20, make_rational(1)));
    big.partitions[0].assign(10, Job{0, 0, 1});
    for (int i = 0; i < 10; ++i) big.partitions[0][i] = {0, i, 1};
    CHECK_THROWS_AS(oracle::brute_force_sumcj(big), TooLarge);
    CHECK_THROWS_AS(oracle::exact_covering_exists({1, 1}, std::vector<long long>(20, 1)), TooLarge);
}
