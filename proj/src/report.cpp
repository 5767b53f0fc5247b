#include "sdc/report.hpp"

#include <fstream>

#include "sdc/error.hpp"

namespace sdc::cli {

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string Table::csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += csv_field(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) {
        line(r);
    }
    return out;
}

Table Report::main_table() const {
    Table t;
    t.header = {"row", "subject", "quantity", "value", "unit", "formula", "inputs", "rounding"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        t.rows.push_back({std::to_string(i + 1), r.subject, r.quantity, r.value, r.unit, r.formula, r.inputs,
                          r.rounding});
    }
    return t;
}

nlohmann::ordered_json Report::summary() const {
    nlohmann::ordered_json doc;
    doc["scenario"] = scenario;
    doc["subcommand"] = subcommand;
    doc["row_count"] = rows.size();
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    for (const auto& r : rows) {
        results[r.subject][r.quantity] = r.unit.empty() ? nlohmann::ordered_json(r.value)
                                                        : nlohmann::ordered_json{{"value", r.value}, {"unit", r.unit}};
    }
    doc["results"] = std::move(results);
    return doc;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    out.close();
    if (!out) {
        throw IoError("error writing " + path.string());
    }
}

}  // namespace

std::vector<std::string> Report::write(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    std::vector<std::string> names;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        names.push_back(name);
    };
    emit(subcommand + ".csv", main_table().csv());
    for (const auto& [name, table] : tables) {
        emit(name, table.csv());
    }
    for (const auto& [name, content] : files) {
        emit(name, content);
    }
    auto doc = summary();
    doc["files"] = names;
    emit(subcommand + ".json", doc.dump(2) + "\n");
    return names;
}

}  // namespace sdc::cli
