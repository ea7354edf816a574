#include <catch2/catch_amalgamated.hpp>

#include "mpsched/generators.hpp"
#include "mpsched/io.hpp"

using namespace mpsched;

TEST_CASE("parse a small instance") {
    auto ins = parse_instance("machines 2\n1 3/2\npartitions 1\n2 1 1\n");
    REQUIRE(ins.num_machines() == 2);
    CHECK(ins.machine_speeds[0] == make_rational(1));
    CHECK(ins.machine_speeds[1] == make_rational(3, 2));
    REQUIRE(ins.num_partitions() == 1);
    REQUIRE(ins.partitions[0].size() == 2);
    CHECK(ins.unit_jobs);
}

TEST_CASE("comments and wrapped speed lines") {
    auto ins = parse_instance("# generated\nmachines 3\n1 2\n7/2\npartitions 2\n1 4\n2 1 2\n");
    CHECK(ins.num_machines() == 3);
    CHECK(ins.machine_speeds[2] == make_rational(7, 2));
    CHECK_FALSE(ins.unit_jobs);
}

TEST_CASE("parse errors carry line numbers") {
    SECTION("nonpositive speed") {
        try {
            parse_instance("machines 1\n0\npartitions 1\n1 1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SECTION("zero processing time is rejected") {
        try {
            parse_instance("machines 1\n1\npartitions 1\n2 1 0\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 4);
            CHECK(std::string(e.what()).find("J_1") != std::string::npos);
        }
    }
    SECTION("empty partition") {
        CHECK_THROWS_AS(parse_instance("machines 1\n1\npartitions 1\n0\n"), ParseError);
    }
    SECTION("malformed token") {
        CHECK_THROWS_AS(parse_instance("machines x\n"), ParseError);
        CHECK_THROWS_AS(parse_instance("machines 1\none\npartitions 1\n1 1\n"), ParseError);
    }
    SECTION("trailing garbage") {
        CHECK_THROWS_AS(parse_instance("machines 1\n1\npartitions 1\n1 1\nextra\n"), ParseError);
    }
}

TEST_CASE("serialize then parse is the identity") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        auto ins = gen_random_instance(seed, 1 + seed % 4, 1 + seed % 5, {1, 9}, {1, 6}, {1, 4},
                                       seed % 2 == 0);
        CHECK(parse_instance(serialize_instance(ins)) == ins);
    }
}

TEST_CASE("schedule files round-trip") {
    auto ins = parse_instance("machines 3\n1 2 1\npartitions 2\n2 1 1\n1 1\n");
    Schedule s;
    s.machines.resize(3);
    s.machines[0] = {0, {{0, 1}, {0, 0}}};
    s.machines[2] = {1, {{1, 0}}};
    std::string text = serialize_schedule(s);
    Schedule back = parse_schedule(text, ins);
    REQUIRE(back.machines.size() == 3);
    CHECK(back.machines[0].partition == 0);
    CHECK(back.machines[0].jobs == std::vector<JobRef>{{0, 1}, {0, 0}});
    CHECK_FALSE(back.machines[1].used());
    CHECK(back.machines[2].partition == 1);
    CHECK(serialize_schedule(back) == text);
}

TEST_CASE("schedule parse errors") {
    auto ins = parse_instance("machines 2\n1 1\npartitions 1\n2 1 1\n");
    CHECK_THROWS_AS(parse_schedule("0 0 0.0 0.1\n", ins), ParseError);           // machine 1 missing
    CHECK_THROWS_AS(parse_schedule("0 -\n0 -\n1 0 0.0 0.1\n", ins), ParseError); // duplicate line
    CHECK_THROWS_AS(parse_schedule("0 0 zz\n1 -\n", ins), ParseError);
    CHECK_THROWS_AS(parse_schedule("5 -\n", ins), ParseError);
}
