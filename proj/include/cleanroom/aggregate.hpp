#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cleanroom/dataset.hpp"
#include "cleanroom/zeek.hpp"

namespace cleanroom {

/// Grouping key for windowed aggregation: tumbling window index
/// (floor(ts / window_seconds)), the internal endpoint's address, and the
/// connection's destination (responder) port.
struct AggregationKey {
  std::int64_t window_index = 0;
  std::string internal_ip;
  int dest_port = 0;

  auto operator<=>(const AggregationKey&) const = default;

  /// Canonical string form, also the label-map key:
  /// "<window_index>|<internal_ip>|<dest_port>".
  std::string to_string() const;
};

struct AggregationOptions {
  double window_seconds = 30.0;
  /// String prefixes deciding which endpoint counts as internal. A record
  /// with neither endpoint internal is skipped (and counted). When both
  /// match, the originator wins.
  std::vector<std::string> internal_prefixes;
  /// Protocol / conn_state vocabularies for the count columns; values not
  /// listed fall into an "other" bucket. The defaults cover Zeek's standard
  /// codes; the real vocabulary of a deployment is configurable because the
  /// resulting column count depends on it.
  std::vector<std::string> protocols = {"tcp", "udp", "icmp"};
  std::vector<std::string> conn_states = {"S0",   "S1",   "S2",     "S3",
                                          "SF",   "REJ",  "RSTO",   "RSTR",
                                          "RSTOS0", "RSTRH", "SH",  "SHR",
                                          "OTH"};
  /// key-string -> label. Keys absent from the map label 0.
  std::map<std::string, int> labels;
};

struct AggregationResult {
  Dataset data;
  std::size_t skipped_external = 0;  // records with no internal endpoint
};

/// Aggregates connection records into one feature row per key. Statistics
/// are oriented relative to the internal endpoint: "sent" is the internal
/// side's originator/responder contribution, "received" the external
/// side's. Distinct destination ports are counted at (window, internal IP)
/// scope, since the port is constant within a key by construction. Absent
/// numeric fields contribute nothing; a statistic with no present values is
/// zero. Output rows are sorted by key, so the result is independent of the
/// input record order.
AggregationResult aggregate_windows(const std::vector<ConnRecord>& records,
                                    const AggregationOptions& options);

/// Two-column CSV "key,label" -> map.
std::map<std::string, int> load_label_map_csv(
    const std::filesystem::path& path);

}  // namespace cleanroom
