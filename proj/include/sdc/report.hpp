#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sdc::cli {

/// One result with its provenance: the formula it came from, the inputs fed
/// to it, and the rounding applied by the producing module.
struct ReportRow {
    std::string subject;
    std::string quantity;
    std::string value;
    std::string unit;
    std::string formula;
    std::string inputs;
    std::string rounding;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const;
};

struct Report {
    std::string scenario;
    std::string subcommand;
    std::vector<ReportRow> rows;
    // Extra artifacts keyed by file name, written next to the main report.
    std::vector<std::pair<std::string, Table>> tables;
    std::vector<std::pair<std::string, std::string>> files;

    Table main_table() const;
    /// Results grouped by subject, in row order.
    nlohmann::ordered_json summary() const;

    /// Writes `<subcommand>.csv`, `<subcommand>.json` and the extras; returns
    /// the file names written. Throws IoError.
    std::vector<std::string> write(const std::filesystem::path& dir) const;
};

/// RFC 4180 quoting: fields containing a comma, quote or line break are quoted.
std::string csv_field(const std::string& field);

}  // namespace sdc::cli
