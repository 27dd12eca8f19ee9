#include "cleanroom/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cleanroom {

std::string AggregationKey::to_string() const {
  return std::to_string(window_index) + "|" + internal_ip + "|" +
         std::to_string(dest_port);
}

namespace {

struct Stat {
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  void add(double v) {
    if (count == 0) {
      min = max = v;
    } else {
      min = std::min(min, v);
      max = std::max(max, v);
    }
    sum += v;
    ++count;
  }
};

struct Group {
  std::vector<std::size_t> proto_counts;
  std::vector<std::size_t> state_counts;
  Stat pkts_sent, pkts_recv;
  Stat bytes_sent, bytes_recv;
  Stat duration;
  std::set<std::string> external_orig;
  std::set<std::string> external_resp;
};

bool matches_prefix(const std::string& host,
                    const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes) {
    if (host.compare(0, p.size(), p) == 0) return true;
  }
  return false;
}

std::size_t bucket_of(const std::string& value,
                      const std::vector<std::string>& vocabulary) {
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    if (vocabulary[i] == value) return i;
  }
  return vocabulary.size();  // "other"
}

}  // namespace

AggregationResult aggregate_windows(const std::vector<ConnRecord>& records,
                                    const AggregationOptions& options) {
  if (!(options.window_seconds > 0.0)) {
    throw ConfigError("aggregate: window_seconds must be > 0");
  }
  if (options.internal_prefixes.empty()) {
    throw ConfigError("aggregate: internal_prefixes must be non-empty");
  }

  const std::size_t n_proto = options.protocols.size() + 1;
  const std::size_t n_state = options.conn_states.size() + 1;

  std::map<AggregationKey, Group> groups;
  std::map<std::pair<std::int64_t, std::string>, std::set<int>> ports_by_ip;
  std::size_t skipped = 0;

  for (const auto& rec : records) {
    const bool orig_internal =
        matches_prefix(rec.orig_host, options.internal_prefixes);
    const bool resp_internal =
        matches_prefix(rec.resp_host, options.internal_prefixes);
    if (!orig_internal && !resp_internal) {
      ++skipped;
      continue;
    }
    AggregationKey key;
    key.window_index = static_cast<std::int64_t>(
        std::floor(rec.ts / options.window_seconds));
    key.internal_ip = orig_internal ? rec.orig_host : rec.resp_host;
    key.dest_port = rec.resp_port;

    Group& g = groups[key];
    if (g.proto_counts.empty()) {
      g.proto_counts.assign(n_proto, 0);
      g.state_counts.assign(n_state, 0);
    }
    g.proto_counts[bucket_of(rec.proto, options.protocols)]++;
    g.state_counts[bucket_of(rec.conn_state, options.conn_states)]++;

    const auto& sent_pkts = orig_internal ? rec.orig_pkts : rec.resp_pkts;
    const auto& recv_pkts = orig_internal ? rec.resp_pkts : rec.orig_pkts;
    const auto& sent_bytes = orig_internal ? rec.orig_bytes : rec.resp_bytes;
    const auto& recv_bytes = orig_internal ? rec.resp_bytes : rec.orig_bytes;
    if (sent_pkts) g.pkts_sent.add(double(*sent_pkts));
    if (recv_pkts) g.pkts_recv.add(double(*recv_pkts));
    if (sent_bytes) g.bytes_sent.add(double(*sent_bytes));
    if (recv_bytes) g.bytes_recv.add(double(*recv_bytes));
    if (rec.duration) g.duration.add(*rec.duration);

    if (orig_internal) {
      g.external_resp.insert(rec.resp_host);
    } else {
      g.external_orig.insert(rec.orig_host);
    }
    ports_by_ip[{key.window_index, key.internal_ip}].insert(key.dest_port);
  }

  Dataset data;
  for (const auto& p : options.protocols) {
    data.feature_names.push_back("proto_count_" + p);
  }
  data.feature_names.push_back("proto_count_other");
  for (const auto& s : options.conn_states) {
    data.feature_names.push_back("state_count_" + s);
  }
  data.feature_names.push_back("state_count_other");
  for (const char* fam : {"pkts_sent", "pkts_recv", "bytes_sent", "bytes_recv",
                          "duration"}) {
    for (const char* stat : {"sum", "min", "max"}) {
      data.feature_names.push_back(std::string(fam) + "_" + stat);
    }
  }
  data.feature_names.push_back("distinct_external_orig");
  data.feature_names.push_back("distinct_external_resp");
  data.feature_names.push_back("distinct_dest_ports");

  const auto n_cols = static_cast<Eigen::Index>(data.feature_names.size());
  data.features.resize(static_cast<Eigen::Index>(groups.size()), n_cols);
  data.labels.resize(static_cast<Eigen::Index>(groups.size()));

  Eigen::Index row = 0;
  for (const auto& [key, g] : groups) {
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < n_proto; ++i) {
      data.features(row, col++) = double(g.proto_counts[i]);
    }
    for (std::size_t i = 0; i < n_state; ++i) {
      data.features(row, col++) = double(g.state_counts[i]);
    }
    for (const Stat* stat : {&g.pkts_sent, &g.pkts_recv, &g.bytes_sent,
                             &g.bytes_recv, &g.duration}) {
      data.features(row, col++) = stat->sum;
      data.features(row, col++) = stat->min;
      data.features(row, col++) = stat->max;
    }
    data.features(row, col++) = double(g.external_orig.size());
    data.features(row, col++) = double(g.external_resp.size());
    data.features(row, col++) =
        double(ports_by_ip.at({key.window_index, key.internal_ip}).size());

    const auto label_it = options.labels.find(key.to_string());
    data.labels[row] = label_it == options.labels.end() ? 0 : label_it->second;
    ++row;
  }

  data.row_ids.resize(static_cast<std::size_t>(groups.size()));
  for (std::size_t i = 0; i < data.row_ids.size(); ++i) {
    data.row_ids[i] = static_cast<std::int64_t>(i);
  }
  data.validate();
  return {std::move(data), skipped};
}

std::map<std::string, int> load_label_map_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("label map: cannot open '" + path.string() + "'");
  }
  std::map<std::string, int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw DataError("label map: line " + std::to_string(line_no) +
                      " has no comma");
    }
    const std::string key = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (line_no == 1 && key == "key") continue;  // optional header
    try {
      labels[key] = std::stoi(value);
    } catch (const std::exception&) {
      throw DataError("label map: bad label '" + value + "' at line " +
                      std::to_string(line_no));
    }
  }
  return labels;
}

}  // namespace cleanroom
