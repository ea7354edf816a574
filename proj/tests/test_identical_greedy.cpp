#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "mpsched/generators.hpp"
#include "mpsched/identical_greedy.hpp"
#include "mpsched/oracle.hpp"

using namespace mpsched;
using mpsched::test::speeds_of;

namespace {
// independent check for one job set on i identical machines: all ways to
// split the set, shortest-first per machine
Rational split_brute_force(const std::vector<long long>& jobs, int machines) {
    int n = static_cast<int>(jobs.size());
    std::vector<int> assign(n, 0);
    Rational best(0);
    bool found = false;
    auto eval = [&] {
        Rational total(0);
        for (int m = 0; m < machines; ++m) {
            std::vector<long long> mine;
            for (int j = 0; j < n; ++j)
                if (assign[j] == m) mine.push_back(jobs[j]);
            std::sort(mine.begin(), mine.end());
            long long prefix = 0;
            for (long long p : mine) total += rat(prefix += p);
        }
        if (!found || total < best) {
            best = total;
            found = true;
        }
    };
    auto rec = [&](auto&& self, int j) -> void {
        if (j == n) {
            eval();
            return;
        }
        for (int m = 0; m < machines; ++m) {
            assign[j] = m;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return best;
}
}  // namespace

TEST_CASE("single-set optimum on identical machines") {
    CHECK(single_set_sumcj_identical({3, 3, 3}, 1) == make_rational(18));
    // value derived by brute force over all 2-machine splits
    CHECK(split_brute_force({3, 3, 3}, 2) == make_rational(12));
    CHECK(single_set_sumcj_identical({3, 3, 3}, 2) == make_rational(12));
    CHECK(single_set_sumcj_identical({}, 5) == make_rational(0));

    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 30; ++iter) {
        int n = 1 + static_cast<int>(rng() % 6);
        std::vector<long long> jobs;
        for (int j = 0; j < n; ++j) jobs.push_back(1 + rng() % 7);
        for (int m = 1; m <= 3; ++m)
            CHECK(single_set_sumcj_identical(jobs, m) == split_brute_force(jobs, m));
    }
}

TEST_CASE("marginal gains are nonincreasing") {
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 1 + static_cast<int>(rng() % 12);
        std::vector<long long> jobs;
        for (int j = 0; j < n; ++j) jobs.push_back(1 + rng() % 9);
        auto deltas = marginal_gains(jobs, 6);
        for (std::size_t i = 1; i < deltas.size(); ++i) CHECK(deltas[i - 1] >= deltas[i]);
        for (const auto& d : deltas) CHECK(d >= 0);
    }
}

TEST_CASE("greedy allocation examples") {
    auto forced = make_unit_instance({1, 1}, speeds_of({1, 1}));
    auto [s1, v1] = solve_identical_sumcj(forced);
    CHECK(v1 == make_rational(2));
    CHECK_FALSE(validate_schedule(forced, s1));

    auto ins = make_instance({{3, 3, 3}, {1}}, speeds_of({1, 1, 1}));
    CHECK(oracle::brute_force_sumcj(ins).first == make_rational(13));
    auto [s2, v2] = solve_identical_sumcj(ins);
    CHECK(v2 == make_rational(13));

    CHECK_THROWS_AS(solve_identical_sumcj(make_unit_instance({1, 1}, speeds_of({1}))), Infeasible);
    CHECK_THROWS_AS(solve_identical_sumcj(make_unit_instance({1, 1}, speeds_of({1, 2}))),
                    NotIdentical);
}

TEST_CASE("greedy equals the oracle on small identical instances") {
    for (unsigned seed = 1; seed <= 60; ++seed) {
        int k = 1 + seed % 3, m = k + static_cast<int>(seed % 3);
        auto ins = gen_random_instance(seed, k, m, {k, 8}, {1, 6}, {2, 2}, false);
        auto [s, v] = solve_identical_sumcj(ins);
        CHECK(v == oracle::brute_force_sumcj(ins).first);
    }
}

TEST_CASE("an extra machine never hurts") {
    for (unsigned seed = 1; seed <= 20; ++seed) {
        int k = 1 + seed % 2;
        auto base = gen_random_instance(seed + 77, k, k + 1, {k, 7}, {1, 5}, {1, 1}, false);
        auto more = base;
        more.machine_speeds.push_back(base.machine_speeds[0]);
        CHECK(solve_identical_sumcj(more).second <= solve_identical_sumcj(base).second);
    }
}
