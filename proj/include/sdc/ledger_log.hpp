#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sdc/ledger.hpp"

// Persistent forms of the ledger.
//
// Log: UTF-8, one record per line, tab-separated. The first line is the
// header `SDC-LEDGER<TAB>v1`. Each event line is
//
//   seq <TAB> day <TAB> series <TAB> Kind <TAB> key=value ... <TAB> chk=xxxxxxxx
//
// where chk is the CRC-32 (lower-case hex) of the previous line's chk value,
// a newline, and this line's text before `<TAB>chk=`. The header chains from
// an empty previous value. Editing any byte breaks the chain at that line.
//
// Snapshot: one JSON document holding the full LedgerState.
namespace sdc::ledger {

inline constexpr std::string_view kLogHeader = "SDC-LEDGER\tv1";

class LogCorrupted : public IoError {
public:
    LogCorrupted(std::size_t line, const std::string& detail);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

std::string encode_log(std::span<const LedgerEvent> events);
/// Throws LogCorrupted("log corrupted at line N") on any checksum or format
/// failure. Empty input decodes to no events.
std::vector<LedgerEvent> decode_log(std::string_view text);

void write_log(const std::filesystem::path& path, std::span<const LedgerEvent> events);
std::vector<LedgerEvent> read_log(const std::filesystem::path& path);

std::string encode_snapshot(const LedgerState& state);
LedgerState decode_snapshot(std::string_view text);

void save_snapshot(const std::filesystem::path& path, const LedgerState& state);
LedgerState load_snapshot(const std::filesystem::path& path);

}  // namespace sdc::ledger
