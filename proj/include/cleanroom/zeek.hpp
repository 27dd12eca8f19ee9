#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "cleanroom/common.hpp"

namespace cleanroom {

/// One connection event from a Zeek conn.log. Fields that Zeek marks unset
/// ('-') are absent here.
struct ConnRecord {
  double ts = 0.0;
  std::string orig_host;
  std::string resp_host;
  int orig_port = 0;
  int resp_port = 0;
  std::string proto;
  std::optional<std::string> service;
  std::optional<double> duration;
  std::optional<std::int64_t> orig_bytes;
  std::optional<std::int64_t> resp_bytes;
  std::string conn_state;
  std::optional<std::int64_t> orig_pkts;
  std::optional<std::int64_t> resp_pkts;
};

struct ZeekParseResult {
  std::vector<ConnRecord> records;
  struct SkippedLine {
    std::size_t line_no;
    std::string message;
  };
  std::vector<SkippedLine> skipped;
};

/// Parses Zeek TSV conn.log text. Column positions come from the `#fields`
/// header line, not from an assumed order; a missing `#fields` line is a
/// format error. Lines with unparsable numeric fields are skipped, counted
/// and reported with their line number.
ZeekParseResult parse_zeek_conn(std::istream& in);

}  // namespace cleanroom
