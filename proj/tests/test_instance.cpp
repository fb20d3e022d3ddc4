#include "clawlab/instance.hpp"
#include "clawlab/rng.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <map>
#include <set>
#include <sstream>

using namespace clawlab;

TEST_CASE("exact_claw on hand-built instances") {
    CHECK(exact_claw(ClawInstance(2, {1}, {1})));
    CHECK_FALSE(exact_claw(ClawInstance(3, {1, 2}, {3, 3})));
}

TEST_CASE("exact_claw agrees with the double loop on random instances") {
    Rng rng(2024);
    std::uniform_int_distribution<Value> v(1, 8);
    int positives = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<Value> x(64), y(64);
        // Restrict y to a random sub-range so both answers occur.
        const Value lo = std::uniform_int_distribution<Value>(1, 8)(rng);
        for (auto& a : x) a = v(rng);
        for (auto& b : y) b = std::uniform_int_distribution<Value>(lo, 8)(rng);
        const ClawInstance inst(8, x, y);
        const bool expected = oracle::claw_double_loop(x, y);
        positives += expected;
        REQUIRE(exact_claw(inst) == expected);
    }
    CHECK(positives > 0);
}

TEST_CASE("instance invariants are enforced") {
    CHECK_THROWS_AS(ClawInstance(1, {1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(ClawInstance(3, {1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(ClawInstance(3, {1, 4}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ClawInstance(3, {0, 1}, {1, 1}), std::invalid_argument);
    const ClawInstance inst(3, {1, 2}, {3, 3});
    CHECK(inst.at(Side::x, 2) == 2);
    CHECK_THROWS_AS(inst.at(Side::y, 3), std::out_of_range);
}

TEST_CASE("alphabet size follows k = max(2, floor(n^kappa))") {
    CHECK(alphabet_for(8, 2.0 / 3.0) == 4);
    CHECK(alphabet_for(1000, 1.0 / 3.0) == 10);
    CHECK(alphabet_for(1024, 0.0) == 2);
    CHECK(alphabet_for(1024, 0.5) == 32);
}

TEST_CASE("random-no-claw example") {
    const auto inst = generate({8, 2.0 / 3.0, Family::random_no_claw, 7});
    CHECK(inst.k() == 4);
    CHECK_FALSE(exact_claw(inst));
}

namespace {

struct Profile {
    std::map<Value, std::int64_t> x, y;
};

Profile profile(const ClawInstance& inst) {
    Profile p;
    for (auto v : inst.x()) ++p.x[v];
    for (auto v : inst.y()) ++p.y[v];
    return p;
}

} // namespace

TEST_CASE("hard-singleton shape at n = 1000") {
    const HardShape s = hard_shape(1000);
    CHECK(s.singletons == 50);
    CHECK(s.block == 10);
    CHECK(s.blocks == 95);

    for (bool yes : {true, false}) {
        CAPTURE(yes);
        const auto inst = generate({1000, 0.5, yes ? Family::hard_singleton_yes : Family::hard_singleton_no, 11});
        const Profile p = profile(inst);
        std::int64_t shared = 0, singletons_x = 0;
        for (auto [v, cx] : p.x) {
            auto it = p.y.find(v);
            if (it != p.y.end()) {
                ++shared;
                CHECK(cx == 1);
                CHECK(it->second == 1);
            } else if (cx == 1) {
                ++singletons_x;
            } else {
                // High-multiplicity values: one block, the last one padded.
                CHECK(cx >= s.block);
                CHECK(cx < 2 * s.block);
            }
        }
        CHECK(shared == (yes ? 1 : 0));
        CHECK(singletons_x + shared == s.singletons);
        CHECK(exact_claw(inst) == yes);
    }
}

TEST_CASE("family contracts hold across many seeds") {
    const Family families[] = {Family::random_no_claw, Family::random_planted_claw, Family::hard_singleton_yes,
                               Family::hard_singleton_no};
    for (Family f : families) {
        CAPTURE(family_name(f));
        for (std::uint64_t seed = 0; seed < 10000; ++seed) {
            const std::int64_t n = 24 + static_cast<std::int64_t>(seed % 41);
            const auto inst = generate({n, 0.5, f, seed});
            REQUIRE(exact_claw(inst) == *family_promise(f));
            for (Side s : {Side::x, Side::y})
                for (auto v : inst.side(s)) REQUIRE((v >= 1 && v <= inst.k()));
        }
    }
}

TEST_CASE("planted claw plants exactly the requested pairs") {
    for (std::int64_t mult : {1, 3}) {
        InstanceSpec spec{200, 0.5, Family::random_planted_claw, 5, mult};
        const auto inst = generate(spec);
        std::int64_t pairs = 0;
        for (auto a : inst.x())
            for (auto b : inst.y()) pairs += a == b;
        CHECK(pairs == mult * mult);
    }
}

TEST_CASE("generation is reproducible and seed-sensitive") {
    const InstanceSpec spec{512, 0.4, Family::uniform, 99};
    CHECK(generate(spec) == generate(spec));
    InstanceSpec other = spec;
    other.seed = 100;
    CHECK_FALSE(generate(spec) == generate(other));
}

TEST_CASE("unsatisfiable specs are rejected") {
    CHECK_THROWS_AS(generate({3, 0.5, Family::uniform, 1}), InvalidSpec);
    // k = 2 cannot host a single planted pair.
    CHECK_THROWS_AS(generate({16, 0.1, Family::random_planted_claw, 1}), InvalidSpec);
    CHECK_THROWS_AS(generate({5, 0.5, Family::hard_singleton_yes, 1}), InvalidSpec);
    CHECK_THROWS_AS(generate({64, 0.5, Family::random_planted_claw, 1, 65}), InvalidSpec);
    CHECK_THROWS_AS(generate({64, 1.5, Family::uniform, 1}), InvalidSpec);
    CHECK_THROWS_AS(parse_family("nope"), std::invalid_argument);
}

TEST_CASE("instance text format") {
    const ClawInstance inst(5, {1, 5, 2}, {3, 3, 4});
    std::ostringstream out;
    write_instance(out, inst);
    CHECK(out.str() == "3 5\n1 5 2\n3 3 4\n");

    std::istringstream in(out.str());
    CHECK(read_instance(in) == inst);

    SUBCASE("generated instances survive a write/read cycle byte for byte") {
        const auto g = generate({300, 0.5, Family::hard_singleton_no, 3});
        std::ostringstream a, b;
        write_instance(a, g);
        std::istringstream back(a.str());
        write_instance(b, read_instance(back));
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto fails_at = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_instance(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(fails_at("") == 1);
    CHECK(fails_at("2\n1 1\n1 1\n") == 1);
    CHECK(fails_at("2 3\n1 x\n1 1\n") == 2);
    CHECK(fails_at("2 3\n1 1\n1\n") == 3);
    CHECK(fails_at("2 3\n1 1\n1 4\n") == 3);
    CHECK(fails_at("2 3\n1 1\n") == 3);
    CHECK(fails_at("2 3\n1 1\n1 1\n5\n") == 4);
    CHECK(fails_at("2 3\n1 1\n1 1\n\n") == 0);
}
