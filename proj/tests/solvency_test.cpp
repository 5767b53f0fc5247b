#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sdc/error.hpp"
#include "sdc/solvency.hpp"

using namespace sdc;
using namespace sdc::solvency;
using sdc::test::dec;

namespace {

IssuerFeeModel per_gram(const char* fee, const char* rate) {
    return {MoneyAmount(Currency("USD"), dec(fee)), MoneyAmount(Currency("USD"), dec(rate)), RateUnit::gram,
            Weight::grams(Decimal{1})};
}

IssuerFeeModel per_ounce(const char* fee, const char* rate) {
    return {MoneyAmount(Currency("USD"), dec(fee)), MoneyAmount(Currency("USD"), dec(rate)), RateUnit::troy_ounce,
            Weight::grams(kTroyOunceGrams)};
}

}  // namespace

TEST_CASE("gross_profit") {
    std::vector<RedemptionRecord> none;
    CHECK(gross_profit(none, per_gram("0.2", "0")).amount() == 0);
    std::vector<RedemptionRecord> one{{"k", 100, 0, 10}};
    CHECK(gross_profit(one, per_gram("0.20", "0")).str() == "20.00");
    std::vector<RedemptionRecord> two{{"a", 3, 0, 1}, {"b", 7, 2, 9}};
    CHECK(gross_profit(two, per_gram("1", "0")).str() == "10.00");
}

TEST_CASE("warehouse_cost") {
    std::vector<RedemptionRecord> zero{{"k", 1, 5, 5}};
    CHECK(warehouse_cost(zero, per_gram("0", "0.0001")).amount() == 0);
    std::vector<RedemptionRecord> year{{"k", 100, 0, 365}};
    CHECK(warehouse_cost(year, per_gram("0", "0.0001")).str() == "3.65");
    std::vector<RedemptionRecord> a{{"a", 4, 0, 10}};
    std::vector<RedemptionRecord> b{{"b", 9, 3, 40}};
    std::vector<RedemptionRecord> ab{a[0], b[0]};
    const auto fees = per_gram("0.3", "0.0007");
    CHECK(warehouse_cost(ab, fees) == warehouse_cost(a, fees) + warehouse_cost(b, fees));
    CHECK(gross_profit(ab, fees) == gross_profit(a, fees) + gross_profit(b, fees));
    std::vector<RedemptionRecord> backwards{{"k", 1, 5, 4}};
    CHECK_THROWS_AS(warehouse_cost(backwards, fees), DomainError);
}

TEST_CASE("is_insolvent") {
    std::vector<RedemptionRecord> year{{"k", 100, 0, 365}};
    Verdict v = is_insolvent(year, per_gram("0.1", "0.0001"));
    CHECK_FALSE(v.insolvent);
    CHECK(v.margin.str() == "6.35");

    std::vector<RedemptionRecord> even{{"k", 1, 0, 200}};
    v = is_insolvent(even, per_gram("0.2", "0.001"));
    CHECK_FALSE(v.insolvent);
    CHECK(v.margin.amount() == 0);

    std::vector<RedemptionRecord> longer{{"k", 1, 0, 201}};
    CHECK(is_insolvent(longer, per_gram("0.2", "0.001")).insolvent);
}

TEST_CASE("breakeven_horizon") {
    CHECK(*breakeven_horizon(per_ounce("0.20", "0.001")) == 200);
    CHECK(*breakeven_horizon(per_gram("0", "0.001")) == 0);
    CHECK_FALSE(breakeven_horizon(per_gram("0.2", "0")));
    // grams-denominated rate applied to an ounce-sized token
    IssuerFeeModel mixed = per_gram("0.2", "0.001");
    mixed.grams_per_token = Weight::grams(kTroyOunceGrams);
    CHECK(*breakeven_horizon(mixed) == divide(dec("0.2"), dec("0.001") * kTroyOunceGrams));
}

TEST_CASE("simulate_issuer examples") {
    std::vector<TimelineEntry> single{{0, "us", Action::purchase, 1}};
    Simulation sim = simulate_issuer(single, per_ounce("0.2", "0.001"), Decimal{0}, 400);
    REQUIRE(sim.first_insolvency_day);
    CHECK(*sim.first_insolvency_day == 201);
    CHECK(sim.rows[200].margin.amount() == 0);
    CHECK(sim.rows.size() == 401);

    std::vector<TimelineEntry> empty;
    sim = simulate_issuer(empty, per_gram("0.2", "0.001"), Decimal{0}, 30);
    CHECK_FALSE(sim.first_insolvency_day);
    for (const auto& row : sim.rows) {
        CHECK(row.cumulative_cost.amount() == 0);
        CHECK(row.cumulative_profit.amount() == 0);
        CHECK(row.margin.amount() == 0);
    }

    sim = simulate_issuer(single, per_gram("0", "0.001"), dec("0.001"), 5000);
    CHECK_FALSE(sim.first_insolvency_day);
    for (const auto& row : sim.rows) {
        CHECK(row.margin.amount() == 0);
    }
}

TEST_CASE("simulate_issuer rejects bad timelines") {
    std::vector<TimelineEntry> unsorted{{5, "a", Action::purchase, 1}, {2, "b", Action::purchase, 1}};
    CHECK_THROWS_WITH_AS(simulate_issuer(unsorted, per_gram("1", "0.01"), Decimal{0}, 10),
                         doctest::Contains("not sorted"), DomainError);
    std::vector<TimelineEntry> overdraw{{1, "a", Action::purchase, 1}, {2, "a", Action::redemption, 2}};
    CHECK_THROWS_AS(simulate_issuer(overdraw, per_gram("1", "0.01"), Decimal{0}, 10), DomainError);
    std::vector<TimelineEntry> beyond{{11, "a", Action::purchase, 1}};
    CHECK_THROWS_AS(simulate_issuer(beyond, per_gram("1", "0.01"), Decimal{0}, 10), DomainError);
}

TEST_CASE("simulation totals equal the closed forms") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<TimelineEntry> timeline;
        std::vector<std::uint64_t> held(4, 0);
        std::int64_t day = 0;
        for (int i = 0; i < 30; ++i) {
            day += std::uniform_int_distribution<int>(0, 9)(rng);
            const std::size_t who = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
            if (held[who] > 0 && rng() % 3 == 0) {
                const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, held[who])(rng);
                timeline.push_back({day, "c" + std::to_string(who), Action::redemption, n});
                held[who] -= n;
            } else {
                const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 50)(rng);
                timeline.push_back({day, "c" + std::to_string(who), Action::purchase, n});
                held[who] += n;
            }
        }
        const auto fees = per_gram("0.05", "0.0003");
        const Simulation sim = simulate_issuer(timeline, fees, Decimal{0}, day + 20);
        CHECK(sim.rows.back().cumulative_profit == gross_profit(sim.records, fees));
        CHECK(sim.rows.back().cumulative_cost == warehouse_cost(sim.records, fees));
    }
}

TEST_CASE("single-record insolvency matches the breakeven horizon") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const Decimal beta = sdc::test::random_scaled(rng, 0, 100000, 4);
        const Decimal alpha = sdc::test::random_scaled(rng, 1, 10000, 5);
        const IssuerFeeModel fees{MoneyAmount(Currency("USD"), beta), MoneyAmount(Currency("USD"), alpha),
                                  RateUnit::gram, Weight::grams(Decimal{1})};
        const std::int64_t hold = std::uniform_int_distribution<std::int64_t>(0, 200000)(rng);
        const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 1000)(rng);
        std::vector<RedemptionRecord> record{{"k", n, 7, 7 + hold}};
        CHECK(is_insolvent(record, fees).insolvent == (Decimal(hold) > *breakeven_horizon(fees)));

        const Decimal k = sdc::test::random_scaled(rng, 1, 100000, 2);
        const IssuerFeeModel scaled{MoneyAmount(Currency("USD"), beta * k), MoneyAmount(Currency("USD"), alpha * k),
                                    RateUnit::gram, Weight::grams(Decimal{1})};
        CHECK(is_insolvent(record, scaled).insolvent == is_insolvent(record, fees).insolvent);
        CHECK(sdc::test::relative_error(*breakeven_horizon(scaled), *breakeven_horizon(fees)) < dec("1e-45"));
    }
}
