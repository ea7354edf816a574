#include <catch2/catch_amalgamated.hpp>

#include "mpsched/generators.hpp"
#include "mpsched/io.hpp"
#include "mpsched/oracle.hpp"

using namespace mpsched;

TEST_CASE("3-partition reduction: A=(4,4,4), b=12") {
    auto red = gen_3partition_instance({4, 4, 4}, 12);
    REQUIRE(red.instance.num_partitions() == 1);
    CHECK(red.instance.partitions[0].size() == 12);
    CHECK(red.instance.unit_jobs);
    REQUIRE(red.instance.num_machines() == 3);
    for (const auto& s : red.instance.machine_speeds) CHECK(s == make_rational(4));
    // sum over machines of (a_i + 1)/2, computed independently
    Rational expected(0);
    for (long long a : {4, 4, 4}) expected += make_rational(a + 1, 2);
    CHECK(expected == make_rational(15, 2));
    CHECK(red.yes_target == expected);
}

TEST_CASE("3-partition reduction: two groups") {
    auto red = gen_3partition_instance({5, 7, 6, 5, 6, 7}, 18);
    CHECK(red.instance.num_partitions() == 2);
    CHECK(red.instance.partitions[0].size() == 18);
    CHECK(red.instance.partitions[1].size() == 18);
    CHECK(red.instance.num_machines() == 6);
    CHECK(red.yes_target == make_rational(21));  // 2*(18+3)/2
}

TEST_CASE("3-partition reduction rejects bad inputs") {
    CHECK_THROWS_AS(gen_3partition_instance({3, 3, 3, 5, 4, 6}, 12), BadReductionInput);
    CHECK_THROWS_AS(gen_3partition_instance({4, 4}, 12), BadReductionInput);
    CHECK_THROWS_AS(gen_3partition_instance({4, 4, 5}, 12), BadReductionInput);  // sum != m*b
    CHECK_THROWS_AS(gen_3partition_instance({6, 6, 6}, 12), BadReductionInput);  // a < b/2 fails
    CHECK_THROWS_AS(gen_3partition_instance({3, 4, 5}, 12), BadReductionInput);  // a > b/4 fails
}

TEST_CASE("yes-instances achieve exactly the reduction target") {
    // tiny yes-instances, optimum certified by the exhaustive solver
    for (auto& [A, b] : std::vector<std::pair<std::vector<long long>, long long>>{
             {{4, 4, 4}, 12}, {{3, 3, 4}, 10}}) {
        auto red = gen_3partition_instance(A, b);
        auto [opt, sched] = oracle::brute_force_sumcj(red.instance);
        CHECK(opt == red.yes_target);
    }
}

TEST_CASE("random generator is deterministic and honors its flags") {
    auto a = gen_random_instance(7, 3, 2, {3, 9}, {1, 5}, {1, 3}, true);
    auto b = gen_random_instance(7, 3, 2, {3, 9}, {1, 5}, {1, 3}, true);
    CHECK(a == b);
    CHECK(a.unit_jobs);
    for (const auto& part : a.partitions)
        for (const Job& j : part) CHECK(j.processing == 1);
    CHECK(a.num_partitions() == 3);
    CHECK(a.num_machines() == 2);  // feasibility is the solver's concern

    auto c = gen_random_instance(8, 3, 2, {3, 9}, {1, 5}, {1, 3}, true);
    CHECK(serialize_instance(a) != serialize_instance(c));

    long long n = gen_random_instance(9, 2, 2, {5, 8}, {2, 4}, {1, 3}, false).num_jobs();
    CHECK(n >= 5);
    CHECK(n <= 8);
}
