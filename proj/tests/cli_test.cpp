#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sdc/ledger_log.hpp"
#include "sdc/overdue.hpp"
#include "sdc/runner.hpp"

using namespace sdc;
using namespace sdc::cli;
namespace fs = std::filesystem;

namespace {

const std::string kAu999 = std::string(SDC_SCENARIO_DIR) + "/sdc_au999.yaml";
const std::string kBrettonWoods = std::string(SDC_SCENARIO_DIR) + "/bretton_woods.yaml";

ScenarioConfig load_ok(const std::string& text) {
    auto r = parse_scenario(text);
    for (const auto& d : r.diagnostics) {
        MESSAGE(d.str());
    }
    REQUIRE(r.diagnostics.empty());
    return r.config;
}

ScenarioConfig load_file_ok(const std::string& path) {
    std::ifstream in(path);
    return load_ok({std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()});
}

Report report_for(const ScenarioConfig& cfg, const std::string& sub, std::optional<std::int64_t> day = {},
                  std::optional<std::uint64_t> units = {}) {
    RunOptions o;
    o.subcommand = sub;
    o.day = day;
    o.units = units;
    return build_report(cfg, o);
}

std::string cell(const Report& r, const std::string& subject, const std::string& quantity) {
    for (const auto& row : r.rows) {
        if (row.subject == subject && row.quantity == quantity) {
            return row.value;
        }
    }
    FAIL("no row " << subject << " / " << quantity);
    return {};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sdc_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int tool(const std::string& args) {
    const std::string cmd = std::string(SDC_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// A 30-day series that expires early, with a successor issued mid-life.
const char* kShortLived = R"(scenario: short
epoch: 2030-01-01
currency: USD
series:
  - {id: SHORT, issuer: LIN, issue_date: 2030-01-01, metal: XAU, unit_weight_g: "1", purity: "0.999",
     survival_coefficient: "0.999", expiry: 2030-01-31, delivery_fee_rate: "0.003", repo_fee_rate: "0.002",
     min_delivery_weight_g: "1", inspection_fee: "0", issue_count: 100000, top_up_below_min_lot: true}
  - {id: SHORT2, issuer: LIN, issue_date: 2030-01-15, metal: XAU, unit_weight_g: "1", purity: "0.999",
     survival_coefficient: "0.998", expiry: 2031-01-01, delivery_fee_rate: "0.003", repo_fee_rate: "0.002",
     min_delivery_weight_g: "1", inspection_fee: "0", issue_count: 100000}
prices:
  - {day: 10, metal: XAU, price_per_oz: "1500"}
  - {day: 40, metal: XAU, price_per_oz: "1600"}
events:
  - {day: 10, type: buy, series: SHORT, party: alice, units: 50}
  - {day: 30, type: reprice, series: SHORT}
  - {day: 40, type: redeem, series: SHORT, party: alice, units: 20}
  - {day: 40, type: buyback, series: SHORT, party: alice, units: 30}
overdue:
  series: SHORT
  look_back_days: 30
  blend_alpha: "0.1"
)";

}  // namespace

TEST_CASE("quote rows are the module outputs verbatim") {
    const auto cfg = load_file_ok(kAu999);
    const auto r = report_for(cfg, "quote");
    const SdcSeries s = test::au999_series();
    const auto q = test::gold_quote("1500");
    CHECK(cell(r, "events[0]", "unit_price") == "48.35");
    CHECK(cell(r, "events[0]", "residual_weight_per_unit") == "0.9927");
    CHECK(cell(r, "events[1]", "total_price") == purchase_price(s, 2000, {183}, q, test::dec("0.01")).str());
    CHECK(cell(r, "events[1]", "total_price_reference") == "96705.55");
    CHECK(cell(r, "events[1]", "total_price_reference_delta") == "0.64");
    CHECK(cell(r, "events[3]", "in_kind_metal_due") == "9.9271");
    CHECK(cell(r, "events[3]", "in_kind_fee") == "50.00");
}

TEST_CASE("quote for a single day from the command line") {
    const auto cfg = load_file_ok(kAu999);
    const auto r = report_for(cfg, "quote", 183, 2000);
    CHECK(cell(r, "day 183 x2000", "total_price") == "96706.19");
    // The matching scenario event's published figure is carried along.
    CHECK(cell(r, "day 183 x2000", "total_price_reference_delta") == "0.64");
    CHECK_THROWS_AS(report_for(cfg, "quote", 184), ValidationError);  // no price that day
}

TEST_CASE("redeem and buyback rows") {
    const auto cfg = load_file_ok(kAu999);
    const auto red = report_for(cfg, "redeem");
    CHECK(cell(red, "events[4]", "residual_weight") == "1971.0116");
    CHECK(cell(red, "events[4]", "redeemable_weight") == "1965.0985");
    CHECK(cell(red, "events[4]", "deliverable_weight") == "2000.0000");
    CHECK(cell(red, "events[4]", "top_up") == "1795.37");
    const auto bb = report_for(cfg, "buyback");
    CHECK(cell(bb, "events[5]", "chargeable_weight") == "1967.0695");
    CHECK(cell(bb, "events[5]", "payout") == "101188.33");
    CHECK_THROWS_WITH_AS(report_for(cfg, "redeem", 365, 500), doctest::Contains("below minimum lot"), DomainError);
}

TEST_CASE("calibrate and overdue reports") {
    const auto cfg = load_file_ok(kAu999);
    const auto cal = report_for(cfg, "calibrate");
    CHECK(cell(cal, "calibration", "mean_rate") == "0.00004");
    CHECK(cell(cal, "calibration", "survival_coefficient") == "0.99996");
    CHECK(cell(cal, "calibration", "first_uncovered_interval") == "2");
    const auto od = report_for(cfg, "overdue");
    CHECK(cell(od, "series SDC_AU999", "successor_coefficient") == "none");
    CHECK(cell(od, "series SDC_AU999", "peer_samples") == "2");
    CHECK(cell(od, "series SDC_AU999", "peer_mean") == "0.000055");
    CHECK(cell(od, "series SDC_AU999", "overdue_rate") == "0.00007");
}

TEST_CASE("post-expiry settlement uses the resolved overdue rate") {
    const auto cfg = load_ok(kShortLived);
    const SdcSeries& s = *cfg.find_series("SHORT");
    // The successor SHORT2 decays at 0.002 a day; 10 days run past expiry.
    const Weight expected = overdue::overdue_residual_weight(s, 20, {40}, test::dec("0.002"));
    const auto red = report_for(cfg, "redeem");
    CHECK(cell(red, "events[2]", "overdue_rate") == "0.002");
    CHECK(cell(red, "events[2]", "residual_weight") == expected.str());

    // The ledger, repriced at expiry, settles the same claim.
    const auto rep = report_for(cfg, "replay");
    CHECK(cell(rep, "series SHORT", "outstanding_units") == "0");
    CHECK(cell(rep, "series SHORT", "destroyed_units") == "20");
    const auto& events = rep.tables.at(0).second;
    REQUIRE(events.rows.size() == 6);
    CHECK(events.rows[3][3] == "OverdueRepriced");
    CHECK(events.rows[3][4] == "rate=0.002;effective_day=30");
}

TEST_CASE("replay writes a log that replays to the same snapshot") {
    const auto cfg = load_file_ok(kAu999);
    const auto r = report_for(cfg, "replay");
    CHECK(cell(r, "series SDC_AU999", "outstanding_units") == "11");
    CHECK(cell(r, "series SDC_AU999", "destroyed_units") == "2000");
    const auto dir = scratch("replay");
    r.write(dir);
    const auto events = ledger::read_log(dir / "ledger.log");
    CHECK(events.size() == 7);
    CHECK(ledger::encode_snapshot(ledger::replay(events)) == slurp(dir / "snapshot.json"));

    RunOptions o;
    o.subcommand = "replay";
    o.log = dir / "ledger.log";
    const auto again = build_report(cfg, o);
    CHECK(again.files == r.files);
}

TEST_CASE("solvency with an empty timeline is all zero") {
    const auto cfg = load_ok(R"(scenario: idle
epoch: 2000-01-01
currency: USD
solvency:
  processing_fee_per_token: "0.2"
  warehouse_rate: "0.001"
  rate_unit: gram
  grams_per_token: "1"
  horizon_day: 30
)");
    const auto r = report_for(cfg, "solvency");
    CHECK(cell(r, "simulation", "first_insolvency_day") == "none");
    CHECK(cell(r, "simulation", "margin") == "0");
    const auto& series = r.tables.at(0).second;
    REQUIRE(series.rows.size() == 31);
    for (const auto& row : series.rows) {
        CHECK(row[1] == "0");
        CHECK(row[2] == "0");
        CHECK(row[3] == "0");
        CHECK(row[5] == "0");
    }
}

TEST_CASE("bretton woods margin runs out on day floor(0.2 / rate) + 1") {
    std::ifstream in(kBrettonWoods);
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::mt19937_64 rng(1944);
    for (int i = 0; i < 40; ++i) {
        // rate = k / 10^5 per ounce-day; the crossing day by integer arithmetic
        // is floor(20000 / k) + 1.
        std::uniform_int_distribution<int> dist(1, 2000);
        const int k = dist(rng);
        std::string t = text;
        t.replace(t.find("warehouse_rate: \"0.001\""), 23, "warehouse_rate: \"" + std::to_string(k) + "e-5\"");
        t.replace(t.find("horizon_day: 400"), 16, "horizon_day: 20001");
        CAPTURE(k);
        const auto r = report_for(load_ok(t), "solvency");
        CHECK(cell(r, "simulation", "first_insolvency_day") == std::to_string(20000 / k + 1));
    }
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    Table t{{"a", "b"}, {{"1", "x,y"}}};
    CHECK(t.csv() == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("tool runs are byte-identical") {
    const auto a = scratch("run_a");
    const auto b = scratch("run_b");
    for (const char* sub : {"quote", "redeem", "buyback", "calibrate", "overdue", "replay"}) {
        CAPTURE(sub);
        REQUIRE(tool(std::string(sub) + " --config " + kAu999 + " --out " + a.string()) == 0);
        REQUIRE(tool(std::string(sub) + " --config " + kAu999 + " --out " + b.string()) == 0);
    }
    REQUIRE(tool("solvency --config " + kBrettonWoods + " --out " + a.string()) == 0);
    REQUIRE(tool("solvency --config " + kBrettonWoods + " --out " + b.string()) == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        CAPTURE(name.string());
        CHECK(slurp(entry.path()) == slurp(b / name));
        ++files;
    }
    CHECK(files == 18);
}

TEST_CASE("tool exit codes") {
    const auto dir = scratch("exit");
    CHECK(tool("validate --config " + kAu999) == kExitOk);
    CHECK(tool("quote --config /nonexistent.yaml --out " + dir.string()) == kExitIo);

    const auto bad = dir / "bad.yaml";
    std::ofstream(bad) << "scenario: x\nepoch: 2030-01-01\ncurrency: usd\n";
    CHECK(tool("validate --config " + bad.string()) == kExitInvalidConfig);
    CHECK(tool("quote --config " + bad.string() + " --out " + dir.string()) == kExitInvalidConfig);

    CHECK(tool("redeem --config " + kAu999 + " --day 365 --units 500 --out " + dir.string()) == kExitDomain);
    CHECK(tool("solvency --config " + kAu999 + " --out " + dir.string()) == kExitInvalidConfig);  // no section
    CHECK(tool("frobnicate --config " + kAu999) == kExitInvalidConfig);

    // Output directory comes from the environment when --out is absent.
    const auto env_dir = dir / "from_env";
    const std::string cmd = "SDC_OUT_DIR=" + env_dir.string() + " " + SDC_TOOL_PATH + " quote --config " + kAu999 +
                            " >/dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(env_dir / "quote.csv"));
}

TEST_CASE("tampered log is rejected by replay --log") {
    const auto dir = scratch("tamper");
    REQUIRE(tool("replay --config " + kAu999 + " --out " + dir.string()) == 0);
    std::string log = slurp(dir / "ledger.log");
    log[log.find("alice")] = 'A';
    std::ofstream(dir / "edited.log", std::ios::binary) << log;
    CHECK(tool("replay --config " + kAu999 + " --log " + (dir / "edited.log").string() + " --out " +
               (dir / "out").string()) == kExitIo);
}
