// Command-line front end: `sdc <subcommand> --config <file> --out <dir>`.
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "sdc/runner.hpp"

namespace {

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("SDC_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "sdc-out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable devalued coin engine: quotes, settlements, calibration, solvency and ledger replay"};
    app.require_subcommand(1);

    sdc::cli::RunOptions opts;
    std::string config, out, log;
    std::int64_t day = 0;
    std::uint64_t units = 0;
    std::string series;

    for (const auto& name : sdc::cli::subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "scenario file (YAML)")->required();
        if (name == "validate") {
            continue;
        }
        sub->add_option("--out", out, "output directory (default $SDC_OUT_DIR or ./sdc-out)");
        if (name == "quote" || name == "redeem" || name == "buyback") {
            sub->add_option("--day", day, "scenario day; without it every matching event is reported");
            sub->add_option("--units", units, "certificate count for --day (default 1)");
            sub->add_option("--series", series, "series id for --day when the scenario has several");
        }
        if (name == "replay") {
            sub->add_option("--log", log, "replay this event log instead of the scenario events");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : sdc::cli::kExitInvalidConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    opts.subcommand = sub->get_name();
    opts.config = config;
    opts.out_dir = out.empty() ? default_out_dir() : std::filesystem::path(out);
    auto given = [sub](const char* flag) {
        try {
            return sub->get_option(flag)->count() > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };
    if (given("--day")) {
        opts.day = day;
    }
    if (given("--units")) {
        opts.units = units;
    }
    if (given("--series")) {
        opts.series = series;
    }
    if (given("--log")) {
        opts.log = log;
    }
    return sdc::cli::run(opts, std::cout, std::cerr);
}
