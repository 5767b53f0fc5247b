#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <string>

#include "sdc/error.hpp"
#include "sdc/scenario.hpp"

using namespace sdc;
using namespace sdc::cli;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string au999_text() { return read_file(std::string(SDC_SCENARIO_DIR) + "/sdc_au999.yaml"); }

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

const Diagnostic* find(const std::vector<Diagnostic>& diags, const std::string& path) {
    const auto it = std::find_if(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.path == path; });
    return it == diags.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("bundled scenarios validate cleanly") {
    for (const char* name : {"sdc_au999.yaml", "bretton_woods.yaml"}) {
        CAPTURE(name);
        const auto diags = validate(std::string(SDC_SCENARIO_DIR) + "/" + name);
        for (const auto& d : diags) {
            MESSAGE(d.str());
        }
        CHECK(diags.empty());
    }
}

TEST_CASE("bundled au999 scenario loads the worked example") {
    const auto r = parse_scenario(au999_text());
    REQUIRE(r.diagnostics.empty());
    const auto& cfg = r.config;
    CHECK(cfg.name == "sdc_au999");
    REQUIRE(cfg.series.size() == 1);
    CHECK(cfg.series[0].survival_coefficient == Decimal("0.99996"));
    CHECK(cfg.series[0].inspection_fee.tagged() == "USD:5");
    CHECK(cfg.markup == Decimal("0.01"));
    CHECK(cfg.issue_day(cfg.series[0]) == 0);
    CHECK(cfg.expiry_day(cfg.series[0]) == 18261);
    CHECK(cfg.events.size() == 6);
    CHECK(cfg.events[1].reference.at("total_price") == Decimal("96705.55"));
    REQUIRE(cfg.overdue);
    CHECK(cfg.overdue->look_back_days == 365);
}

TEST_CASE("price lookup is by exact day") {
    const auto cfg = parse_scenario(au999_text()).config;
    REQUIRE(cfg.price_on(183, "XAU"));
    CHECK(cfg.price_on(183, "XAU")->price_per_troy_ounce == Decimal(1500));
    CHECK(format_date(cfg.price_on(183, "XAU")->quote_date) == "2030-07-03");
    CHECK_FALSE(cfg.price_on(184, "XAU"));
    CHECK_FALSE(cfg.price_on(183, "XAG"));
}

TEST_CASE("survival coefficient above one is a range violation") {
    const auto r = parse_scenario(replace(au999_text(), "survival_coefficient: \"0.99996\"", "survival_coefficient: \"1.5\""));
    const auto* d = find(r.diagnostics, "series[0].survival_coefficient");
    REQUIRE(d != nullptr);
    CHECK(d->message.find("(0, 1]") != std::string::npos);
    CHECK(d->line == 16);
}

TEST_CASE("missing price day is a cross-reference violation") {
    const auto r = parse_scenario(replace(au999_text(), "{day: 365, metal: XAU", "{day: 364, metal: XAU"));
    REQUIRE(r.diagnostics.size() == 2);  // the redemption and the buy-back
    CHECK(r.diagnostics[0].path == "events[4].day");
    CHECK(r.diagnostics[1].path == "events[5].day");
    CHECK(r.diagnostics[0].message.find("no XAU price for day 365") != std::string::npos);
}

TEST_CASE("every violation is reported, not just the first") {
    std::string text = au999_text();
    text = replace(text, "purity: \"0.999\"", "purity: \"2\"");
    text = replace(text, "repo_fee_rate: \"0.002\"", "repo_fee_rate: \"-0.1\"");
    text = replace(text, "blend_alpha: \"0.25\"", "blend_alpha: \"0.75\"");
    text = replace(text, "series: SDC_AU999\n    party: bob", "series: NOPE\n    party: bob");
    const auto r = parse_scenario(text);
    CHECK(find(r.diagnostics, "series[0].purity"));
    CHECK(find(r.diagnostics, "series[0].repo_fee_rate"));
    CHECK(find(r.diagnostics, "overdue.blend_alpha"));
    CHECK(find(r.diagnostics, "events[2].series"));
    CHECK(r.diagnostics.size() == 4);
}

TEST_CASE("structural problems point at field and line") {
    SUBCASE("missing required field") {
        const auto r = parse_scenario(replace(au999_text(), "    metal: XAU\n", ""));
        const auto* d = find(r.diagnostics, "series[0].metal");
        REQUIRE(d != nullptr);
        CHECK(d->message == "required field missing");
        CHECK(d->line == 10);  // the enclosing series entry
    }
    SUBCASE("unknown field") {
        const auto r = parse_scenario(replace(au999_text(), "markup: \"0.01\"", "mark_up: \"0.01\""));
        REQUIRE(find(r.diagnostics, "mark_up"));
        CHECK(find(r.diagnostics, "mark_up")->line == 7);
    }
    SUBCASE("bad date") {
        const auto r = parse_scenario(replace(au999_text(), "expiry: 2079-12-31", "expiry: 2079-02-30"));
        CHECK(find(r.diagnostics, "series[0].expiry"));
    }
    SUBCASE("bad event type") {
        const auto r = parse_scenario(replace(au999_text(), "type: buyback", "type: sell"));
        REQUIRE(find(r.diagnostics, "events[5].type"));
    }
    SUBCASE("syntax error") {
        const auto r = parse_scenario("scenario: x\nseries: [\n  {id: a\n");
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].message.rfind("syntax error", 0) == 0);
        CHECK(r.diagnostics[0].line > 0);
    }
    SUBCASE("not a mapping") {
        CHECK(parse_scenario("- 1\n- 2\n").diagnostics.size() == 1);
    }
}

TEST_CASE("overdue look-back window has no default") {
    const auto r = parse_scenario(replace(au999_text(), "  look_back_days: 365\n", ""));
    REQUIRE(find(r.diagnostics, "overdue.look_back_days"));
}

TEST_CASE("events after expiry need an overdue section") {
    const std::string late = "  - {day: 18300, type: transfer, series: SDC_AU999, party: carol, to: dave, units: 1}\n\n"
                             "# Daily storage";
    std::string text = replace(au999_text(), "\n# Daily storage", late);
    CHECK(parse_scenario(text).diagnostics.empty());

    const auto cut = text.find("overdue:");
    const auto r = parse_scenario(text.substr(0, cut));
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].path == "events[6].day");
    CHECK(r.diagnostics[0].message.find("expires") != std::string::npos);
}

TEST_CASE("events before issue or out of order are flagged") {
    const std::string early = "events:\n  - {day: 400, type: transfer, series: SDC_AU999, party: a, to: b, units: 1}\n";
    const auto r = parse_scenario(replace(au999_text(), "events:\n", early));
    CHECK(find(r.diagnostics, "events[1].day"));
}

TEST_CASE("solvency section checks") {
    const std::string base = R"(scenario: s
epoch: 2000-01-01
currency: USD
solvency:
  processing_fee_per_token: "0.2"
  warehouse_rate: "0.001"
  rate_unit: troy_ounce
  grams_per_token: "31.1035"
  horizon_day: 10
  timeline:
    - {day: 5, customer: a, action: purchase, tokens: 1}
    - {day: 3, customer: a, action: redemption, tokens: 1}
    - {day: 11, customer: a, action: steal, tokens: 0}
)";
    const auto r = parse_scenario(base);
    CHECK(find(r.diagnostics, "solvency.timeline[1].day"));
    CHECK(find(r.diagnostics, "solvency.timeline[2].action"));
    CHECK(find(r.diagnostics, "solvency.timeline[2].tokens"));
    CHECK(find(r.diagnostics, "solvency.timeline[2].day"));

    const auto unit = parse_scenario(replace(base, "troy_ounce", "pound"));
    CHECK(find(unit.diagnostics, "solvency.rate_unit"));
}

TEST_CASE("price currency must match the scenario") {
    const auto r = parse_scenario(replace(au999_text(), "{day: 183, metal: XAU,", "{day: 183, currency: EUR, metal: XAU,"));
    CHECK(find(r.diagnostics, "prices[0].currency"));
}

TEST_CASE("unreadable config is an I/O error") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), IoError);
    CHECK_THROWS_AS(validate("/nonexistent/scenario.yaml"), IoError);
}
