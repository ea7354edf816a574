#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mpsched/generators.hpp"
#include "mpsched/instance.hpp"

using namespace mpsched;
using mpsched::test::speeds_of;

namespace {
Schedule single_machine_schedule(const Instance& ins, const std::vector<JobRef>& order) {
    Schedule s;
    s.machines.resize(ins.num_machines());
    s.machines[0].partition = order.front().partition;
    s.machines[0].jobs = order;
    return s;
}
}  // namespace

TEST_CASE("sum of completion times on one machine") {
    auto ins = make_instance({{1, 3}}, speeds_of({1}));
    auto s = single_machine_schedule(ins, {{0, 0}, {0, 1}});
    CHECK(evaluate_sum_cj(ins, s) == make_rational(5));  // 1 + 4

    auto fast = make_unit_instance({3}, speeds_of({2}));
    auto s2 = single_machine_schedule(fast, {{0, 0}, {0, 1}, {0, 2}});
    CHECK(evaluate_sum_cj(fast, s2) == make_rational(3));  // 1/2 + 1 + 3/2
    CHECK(evaluate_cmax(fast, s2) == make_rational(3, 2));
}

TEST_CASE("empty machines contribute nothing") {
    auto ins = make_instance({{2}}, speeds_of({1, 1, 1}));
    Schedule s;
    s.machines.resize(3);
    s.machines[2].partition = 0;
    s.machines[2].jobs = {{0, 0}};
    CHECK(evaluate_sum_cj(ins, s) == make_rational(2));
    CHECK(evaluate_cmax(ins, s) == make_rational(2));
}

TEST_CASE("cmax over machines of different speeds") {
    auto ins = make_unit_instance({2, 3}, speeds_of({1, 3}));
    Schedule s;
    s.machines.resize(2);
    s.machines[0] = {0, {{0, 0}, {0, 1}}};
    s.machines[1] = {1, {{1, 0}, {1, 1}, {1, 2}}};
    CHECK(evaluate_cmax(ins, s) == make_rational(2));  // max(2, 1)
}

TEST_CASE("validation reports the first violation") {
    auto ins = make_unit_instance({2, 1}, speeds_of({1, 1}));
    Schedule s;
    s.machines.resize(2);

    SECTION("mixed partitions") {
        s.machines[0] = {0, {{0, 0}, {1, 0}}};
        s.machines[1] = {0, {{0, 1}}};
        auto v = validate_schedule(ins, s);
        REQUIRE(v);
        CHECK(v->kind == Violation::MixedPartitions);
    }
    SECTION("missing job") {
        s.machines[0] = {0, {{0, 0}, {0, 1}}};
        auto v = validate_schedule(ins, s);
        REQUIRE(v);
        CHECK(v->kind == Violation::MissingJob);
    }
    SECTION("duplicate job") {
        s.machines[0] = {0, {{0, 0}, {0, 0}, {0, 1}}};
        s.machines[1] = {1, {{1, 0}}};
        auto v = validate_schedule(ins, s);
        REQUIRE(v);
        CHECK(v->kind == Violation::DuplicateJob);
    }
    SECTION("valid schedule passes") {
        s.machines[0] = {0, {{0, 0}, {0, 1}}};
        s.machines[1] = {1, {{1, 0}}};
        CHECK_FALSE(validate_schedule(ins, s));
    }
    SECTION("evaluators throw on invalid schedules") {
        s.machines[0] = {0, {{0, 0}}};
        CHECK_THROWS_AS(evaluate_sum_cj(ins, s), InvalidSchedule);
        CHECK_THROWS_AS(evaluate_cmax(ins, s), InvalidSchedule);
    }
}

TEST_CASE("shortest-first resorting never increases the total completion time") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 60; ++iter) {
        auto ins = gen_random_instance(1000 + iter, 1 + iter % 3, 1 + iter % 4, {1, 8}, {1, 9},
                                       {1, 3}, false);
        if (ins.num_machines() < ins.num_partitions()) continue;
        Schedule s = test::random_schedule(ins, rng);
        REQUIRE_FALSE(validate_schedule(ins, s));
        CHECK(evaluate_sum_cj(ins, s, /*spt_resort=*/true) <= evaluate_sum_cj(ins, s));
    }
}

TEST_CASE("makespan dominates the average completion time") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        auto ins = gen_random_instance(2000 + iter, 1 + iter % 2, 1 + iter % 3, {1, 7}, {1, 5},
                                       {1, 3}, false);
        if (ins.num_machines() < ins.num_partitions()) continue;
        Schedule s = test::random_schedule(ins, rng);
        CHECK(evaluate_cmax(ins, s) >= evaluate_sum_cj(ins, s) / rat(ins.num_jobs()));
    }
}

TEST_CASE("capacities are floors of speed times deadline") {
    auto caps = capacities_for_deadline(speeds_of({3, 2}), make_rational(1));
    CHECK(caps == CapacityFn{3, 2});
    caps = capacities_for_deadline({make_rational(1, 3)}, make_rational(2));
    CHECK(caps == CapacityFn{0});
}
