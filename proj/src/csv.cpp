#include "cleanroom/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace cleanroom {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r') {
    cells.back().pop_back();
  }
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no,
                  const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError("csv: cannot parse '" + cell + "' as a number at line " +
                    std::to_string(line_no) + ", column '" + column + "'");
  }
  return value;
}

}  // namespace

Dataset load_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("csv: cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("csv: '" + path.string() + "' is empty");
  }
  const auto header = split_line(line, ',');

  std::size_t first_feature = 0;
  const bool has_row_id = !header.empty() && header.front() == "row_id";
  if (has_row_id) first_feature = 1;

  std::size_t label_col = header.size();
  std::size_t poison_col = header.size();
  for (std::size_t j = first_feature; j < header.size(); ++j) {
    if (header[j] == "label") label_col = j;
    if (header[j] == "is_poison") poison_col = j;
  }
  if (label_col == header.size()) {
    throw DataError("csv: '" + path.string() + "' has no 'label' column");
  }
  const std::size_t last_feature = label_col;  // features end before label

  Dataset data;
  for (std::size_t j = first_feature; j < last_feature; ++j) {
    data.feature_names.push_back(header[j]);
  }
  const auto n_features = data.feature_names.size();

  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::int64_t> row_ids;
  std::vector<std::uint8_t> mask;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line, ',');
    if (cells.size() != header.size()) {
      throw DataError("csv: line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    if (has_row_id) {
      row_ids.push_back(static_cast<std::int64_t>(
          parse_cell(cells[0], line_no, "row_id")));
    } else {
      row_ids.push_back(static_cast<std::int64_t>(row_ids.size()));
    }
    for (std::size_t j = first_feature; j < last_feature; ++j) {
      values.push_back(parse_cell(cells[j], line_no, header[j]));
    }
    const double label = parse_cell(cells[label_col], line_no, "label");
    if (label != 0.0 && label != 1.0) {
      throw DataError("csv: label '" + cells[label_col] + "' at line " +
                      std::to_string(line_no) +
                      " is not binary; only labels {0,1} are supported");
    }
    labels.push_back(static_cast<int>(label));
    if (poison_col != header.size()) {
      mask.push_back(parse_cell(cells[poison_col], line_no, "is_poison") != 0.0
                         ? 1
                         : 0);
    }
  }

  const auto n_rows = labels.size();
  data.features.resize(static_cast<Eigen::Index>(n_rows),
                       static_cast<Eigen::Index>(n_features));
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_features; ++j) {
      data.features(static_cast<Eigen::Index>(i),
                    static_cast<Eigen::Index>(j)) = values[i * n_features + j];
    }
  }
  data.labels.resize(static_cast<Eigen::Index>(n_rows));
  for (std::size_t i = 0; i < n_rows; ++i) {
    data.labels[static_cast<Eigen::Index>(i)] = labels[i];
  }
  data.row_ids = std::move(row_ids);
  if (!mask.empty()) data.set_poison_mask(std::move(mask));
  data.validate();
  return data;
}

void write_dataset_csv(const Dataset& data,
                       const std::filesystem::path& path) {
  data.validate();
  std::ofstream out(path);
  if (!out) {
    throw DataError("csv: cannot write '" + path.string() + "'");
  }
  bool default_ids = true;
  for (std::size_t i = 0; i < data.row_ids.size(); ++i) {
    if (data.row_ids[i] != static_cast<std::int64_t>(i)) {
      default_ids = false;
      break;
    }
  }
  const bool with_ids = !default_ids;
  const bool with_mask = data.has_poison_mask();

  std::ostringstream header;
  if (with_ids) header << "row_id,";
  for (const auto& name : data.feature_names) header << name << ',';
  header << "label";
  if (with_mask) header << ",is_poison";
  out << header.str() << '\n';

  for (Eigen::Index i = 0; i < data.n_rows(); ++i) {
    std::ostringstream row;
    if (with_ids) row << data.row_ids[static_cast<std::size_t>(i)] << ',';
    for (Eigen::Index j = 0; j < data.n_cols(); ++j) {
      row << format_double(data.features(i, j)) << ',';
    }
    row << data.labels[i];
    if (with_mask) {
      row << ',' << int(data.poison_mask()[static_cast<std::size_t>(i)]);
    }
    out << row.str() << '\n';
  }
  if (!out) {
    throw DataError("csv: write to '" + path.string() + "' failed");
  }
}

}  // namespace cleanroom
