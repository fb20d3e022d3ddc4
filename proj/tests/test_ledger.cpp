#include "clawlab/ledger.hpp"
#include "clawlab/rng.hpp"

#include "doctest.h"

#include <cmath>

using namespace clawlab;

TEST_CASE("reads return the entry and count once") {
    const ClawInstance inst(5, {5, 2}, {1, 1});
    QueryLedger ledger;
    const CostModel cost;
    CHECK(read_x(inst, 1, ledger, cost) == 5);
    CHECK(ledger.x_reads() == 1);
    CHECK(ledger.y_reads() == 0);
    CHECK(ledger.charged_cost() == 1.0);
    CHECK_THROWS_AS(read_x(inst, 3, ledger, cost), std::out_of_range);
    CHECK(ledger.x_reads() == 1);
}

TEST_CASE("ell distinct reads add exactly ell") {
    const auto inst = generate({500, 0.5, Family::uniform, 4});
    QueryLedger ledger;
    const CostModel cost;
    for (std::int64_t i = 1; i <= 137; ++i) read_y(inst, i, ledger, cost);
    CHECK(ledger.y_reads() == 137);
    CHECK(ledger.charged_cost() == 137.0);
}

TEST_CASE("read charge toggle") {
    const ClawInstance inst(5, {5, 2}, {1, 1});
    QueryLedger ledger;
    CostModel cost;
    cost.classical_read_charge = 0;
    CHECK(read_side(inst, Side::y, 2, ledger, cost) == 1);
    CHECK(ledger.y_reads() == 0);
    CHECK(ledger.charged_cost() == 0.0);
    REQUIRE(ledger.events().size() == 1);
    CHECK(ledger.events()[0].label == "read-y");
}

TEST_CASE("charge accumulates and logs") {
    QueryLedger ledger;
    ledger.charge("a", 3.0);
    ledger.charge("b", 2.0);
    CHECK(ledger.charged_cost() == 5.0);
    ledger.charge("z", 0.0);
    CHECK(ledger.charged_cost() == 5.0);
    CHECK(ledger.events().size() == 3);
    CHECK_THROWS_AS(ledger.charge("neg", -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ledger.charge("nan", std::nan("")), std::invalid_argument);
    CHECK(ledger.events().size() == 3);
}

TEST_CASE("totals replay from the event log") {
    Rng rng(17);
    std::uniform_int_distribution<int> label(0, 4), amount(0, 40);
    for (int round = 0; round < 50; ++round) {
        QueryLedger ledger;
        for (int e = 0; e < 200; ++e)
            ledger.charge("L" + std::to_string(label(rng)), amount(rng));
        double sum = 0;
        for (const auto& [_, v] : ledger.by_label()) sum += v;
        REQUIRE(sum == ledger.charged_cost());
        REQUIRE(ledger.replay_total() == ledger.charged_cost());
    }
}

TEST_CASE("oracle work stays out of the charged cost") {
    QueryLedger ledger;
    ledger.note_oracle_work(10);
    CHECK(ledger.charged_cost() == 0.0);
    CHECK(ledger.oracle_view_cost() == 10.0);
}

TEST_CASE("ceil_charge snaps floating noise") {
    CHECK(ceil_charge(1.0, std::pow(27.0, 2.0 / 3.0)) == 9.0);
    CHECK(ceil_charge(1.0, std::sqrt(100.0)) == 10.0);
    CHECK(ceil_charge(1.0, 3.2) == 4.0);
    CHECK(ceil_charge(2.5, 2.0) == 5.0);
}

TEST_CASE("cost model validation") {
    CostModel c;
    CHECK_NOTHROW(c.validate());
    c.c_grover = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.classical_read_charge = 2;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.grover_miss_prob = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("ledger json has exactly the documented fields") {
    const ClawInstance inst(3, {1, 2}, {3, 3});
    QueryLedger ledger;
    read_x(inst, 2, ledger, CostModel{});
    ledger.charge("grover-find", 4);
    const auto j = ledger.to_json();
    CHECK(j.size() == 4);
    CHECK(j.at("x_reads") == 1);
    CHECK(j.at("y_reads") == 0);
    CHECK(j.at("charged_cost").get<double>() == 5.0);
    REQUIRE(j.at("events").size() == 2);
    CHECK(j.at("events")[1].at("label") == "grover-find");
    CHECK(j.at("events")[1].at("amount").get<double>() == 4.0);
}
