#include "cleanroom/zeek.hpp"

#include <charconv>
#include <map>

namespace cleanroom {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
    out.back().pop_back();
  }
  return out;
}

bool unset(const std::string& cell) { return cell == "-" || cell.empty(); }

template <typename T>
T parse_num(const std::string& cell, const char* field) {
  T value{};
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError(std::string("zeek: bad ") + field + " value '" + cell +
                    "'");
  }
  return value;
}

int parse_port(const std::string& cell, const char* field) {
  const int port = parse_num<int>(cell, field);
  if (port < 0 || port > 65535) {
    throw DataError(std::string("zeek: ") + field + " " +
                    std::to_string(port) + " out of range");
  }
  return port;
}

}  // namespace

ZeekParseResult parse_zeek_conn(std::istream& in) {
  ZeekParseResult result;
  std::map<std::string, std::size_t> columns;
  bool saw_fields = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto cells = split_tabs(line);
      if (!cells.empty() && cells.front() == "#fields") {
        columns.clear();
        for (std::size_t j = 1; j < cells.size(); ++j) {
          columns[cells[j]] = j - 1;
        }
        saw_fields = true;
      }
      continue;
    }
    if (!saw_fields) {
      throw DataError("zeek: data before a #fields header (line " +
                      std::to_string(line_no) + ")");
    }

    const auto cells = split_tabs(line);
    auto cell = [&](const char* name) -> const std::string& {
      static const std::string kUnset = "-";
      const auto it = columns.find(name);
      if (it == columns.end() || it->second >= cells.size()) return kUnset;
      return cells[it->second];
    };

    try {
      ConnRecord rec;
      const std::string& ts = cell("ts");
      if (unset(ts)) throw DataError("zeek: missing ts");
      rec.ts = parse_num<double>(ts, "ts");
      if (rec.ts < 0) throw DataError("zeek: negative ts");
      rec.orig_host = cell("id.orig_h");
      rec.resp_host = cell("id.resp_h");
      rec.orig_port = parse_port(cell("id.orig_p"), "id.orig_p");
      rec.resp_port = parse_port(cell("id.resp_p"), "id.resp_p");
      rec.proto = cell("proto");
      if (!unset(cell("service"))) rec.service = cell("service");
      if (!unset(cell("duration"))) {
        rec.duration = parse_num<double>(cell("duration"), "duration");
      }
      auto count_field = [&](const char* name) -> std::optional<std::int64_t> {
        const std::string& c = cell(name);
        if (unset(c)) return std::nullopt;
        const auto v = parse_num<std::int64_t>(c, name);
        if (v < 0) throw DataError(std::string("zeek: negative ") + name);
        return v;
      };
      rec.orig_bytes = count_field("orig_bytes");
      rec.resp_bytes = count_field("resp_bytes");
      rec.conn_state = cell("conn_state");
      rec.orig_pkts = count_field("orig_pkts");
      rec.resp_pkts = count_field("resp_pkts");
      result.records.push_back(std::move(rec));
    } catch (const DataError& err) {
      result.skipped.push_back({line_no, err.what()});
    }
  }

  if (!saw_fields) {
    throw DataError("zeek: no #fields header line found");
  }
  return result;
}

}  // namespace cleanroom
